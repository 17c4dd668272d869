//! Dense univariate polynomials over Q and Z, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;

pub(crate) type UPoly = Vec<Rat>;
pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim<T: Zero>(f: &mut Vec<T>) {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
}

#[cfg(test)]
pub(crate) fn mul(a: &[Rat], b: &[Rat]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[Rat], b: &[Rat]) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn divrem(a: &[Rat], b: &[Rat]) -> (UPoly, UPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn monic(f: &[Rat]) -> UPoly {
    match f.last() {
        None => Vec::new(),
        Some(l) => f.iter().map(|c| c / l).collect(),
    }
}

/// Monic gcd.
pub(crate) fn gcd(a: &[Rat], b: &[Rat]) -> UPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = monic(&r);
    }
    monic(&x)
}

pub(crate) fn derivative(f: &[Rat]) -> UPoly {
    let mut out: UPoly = f.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer(i.into())).collect();
    trim(&mut out);
    out
}

/// Yun's algorithm: monic squarefree `(a_i, i)` with `monic(f) = ∏ a_i^i`.
pub(crate) fn squarefree(f: &[Rat]) -> Vec<(UPoly, u32)> {
    let f = monic(f);
    if f.len() <= 1 {
        return Vec::new();
    }
    let df = derivative(&f);
    let mut a = gcd(&f, &df);
    let mut b = divrem(&f, &a).0;
    let mut c = divrem(&df, &a).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        a = gcd(&b, &d);
        if a.len() > 1 {
            out.push((a.clone(), i));
        }
        b = divrem(&b, &a).0;
        if b.len() <= 1 {
            break;
        }
        c = divrem(&d, &a).0;
        d = sub(&c, &derivative(&b));
        i += 1;
    }
    out
}

/// `f = c·F` with `F` primitive over Z and positive leading coefficient.
pub(crate) fn primitive_int(f: &[Rat]) -> (Rat, ZPoly) {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for c in f {
        g = g.gcd(c.numer());
        l = l.lcm(c.denom());
    }
    if f.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    let content = Rat::new(g, l);
    let prim = f.iter().map(|c| (c / &content).to_integer()).collect();
    (content, prim)
}

pub(crate) fn to_rat(f: &[BigInt]) -> UPoly {
    f.iter().map(|c| Rat::from_integer(c.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn u(c: &[i64]) -> UPoly {
        c.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn division_and_gcd() {
        let (q, r) = divrem(&u(&[-1, 0, 1]), &u(&[1, 1]));
        assert_eq!(q, u(&[-1, 1]));
        assert!(r.is_empty());
        assert_eq!(gcd(&u(&[-1, 0, 1]), &u(&[-1, 1])), u(&[-1, 1]));
        assert_eq!(gcd(&u(&[1, 0, 1]), &u(&[-1, 1])), u(&[1]));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x+2)^3 x
        let f = mul(&mul(&mul(&u(&[-1, 1]), &u(&[-1, 1])), &mul(&u(&[2, 1]), &mul(&u(&[2, 1]), &u(&[2, 1])))), &u(&[0, 1]));
        let sf = squarefree(&f);
        assert_eq!(sf, vec![(u(&[0, 1]), 1), (u(&[-1, 1]), 2), (u(&[2, 1]), 3)]);
    }

    #[test]
    fn primitive_integer_part() {
        let (c, p) = primitive_int(&[rat(-6), rat(-4)]);
        assert_eq!(c, rat(-2));
        assert_eq!(p, vec![BigInt::from(3), BigInt::from(2)]);
    }
}
