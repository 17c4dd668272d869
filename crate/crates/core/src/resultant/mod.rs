//! Resultants of binary forms on P¹ and the local heights they compute.
//!
//! A form of degree n is stored as `a₀,…,a_n` with
//! `f(X₀, X₁) = Σ aᵢ X₀^{n−i} X₁^i`, so `f(x) = a₀xⁿ + … + a_n` in the
//! affine coordinate `x = X₀/X₁`.

mod local;
mod mc;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::arith::{parse_rat, rat_to_f64, Rat};
use crate::error::{Error, Result};
use crate::polyring::{parse_poly, MultiPoly};

pub use local::{
    eps_norm_log_p, eps_norm_log_p_exact, global_consistency_p1, harmonic, local_equality_defect,
    local_height_p1_nonarch, local_height_p1_nonarch_exact, point_resultant_norm, point_resultant_norm_exact,
    proj_height_arch, proj_height_nonarch, proj_height_nonarch_exact, stoll,
};
pub use mc::{sphere_mc_log_integral, MCConfig, MCEstimate};

/// Largest `n + m` for which the universal resultant is expanded.
pub const UNIVERSAL_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Rat>,
}

impl BinaryForm {
    /// Coefficients `a₀,…,a_n`; leading zeros are kept and count as roots at `x = ∞`.
    pub fn new(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a binary form needs at least one coefficient".into()));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| Rat::from_integer(c.into())).collect()).unwrap()
    }

    /// Homogenization of a univariate polynomial in its own degree.
    pub fn from_poly(f: &MultiPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let Some((_, mut c)) = f.univariate_coeffs() else {
            return Err(Error::InvalidArgument(format!("{f} is not univariate")));
        };
        c.reverse();
        BinaryForm::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Number of leading zero coefficients, the multiplicity of the root `X₁ = 0`.
    pub fn infinity_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn scale(&self, c: &Rat) -> BinaryForm {
        BinaryForm { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BinaryForm { coeffs: out }
    }

    /// `f(z₀, z₁)` in floating point.
    pub fn eval_complex(&self, z0: Complex64, z1: Complex64) -> Complex64 {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| z0.powu((n - i) as u32) * z1.powu(i as u32) * rat_to_f64(a))
            .sum()
    }
}

impl FromStr for BinaryForm {
    type Err = Error;

    /// `"a0,a1,...,an"` or univariate polynomial text such as `"x^2 - 3"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.contains(',') || parse_rat(t).is_ok() {
            let coeffs = t.split(',').map(|c| parse_rat(c.trim())).collect::<Result<Vec<_>>>()?;
            return BinaryForm::new(coeffs);
        }
        BinaryForm::from_poly(&parse_poly(t)?)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The `(n+m)×(n+m)` Sylvester matrix: `m` shifted rows of `a`, then `n` of `b`.
pub fn sylvester_matrix(f: &BinaryForm, g: &BinaryForm) -> Vec<Vec<Rat>> {
    let (n, m) = (f.degree(), g.degree());
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for (shift, src) in (0..m).map(|s| (s, f)).chain((0..n).map(|s| (s, g))) {
        let mut row = vec![Rat::zero(); size];
        for (i, c) in src.coeffs.iter().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Exact determinant by Gaussian elimination over Q.
pub fn determinant(mut a: Vec<Vec<Rat>>) -> Rat {
    let n = a.len();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            for c in col..n {
                let t = &factor * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// `Res(f, g) = a₀^m b₀^n ∏(αᵢ − βⱼ)`.
pub fn sylvester_res(f: &BinaryForm, g: &BinaryForm) -> Result<Rat> {
    if f.degree() + g.degree() == 0 {
        return Err(Error::DegenerateResultant);
    }
    Ok(determinant(sylvester_matrix(f, g)))
}

/// The resultant as an integer polynomial in indeterminates `a0..an`, `b0..bm`.
pub fn universal_sylvester(n: usize, m: usize) -> Result<MultiPoly> {
    if n + m == 0 {
        return Err(Error::DegenerateResultant);
    }
    if n + m > UNIVERSAL_CAP {
        return Err(Error::UnsupportedDegree { degree: n + m, cap: UNIVERSAL_CAP });
    }
    let size = n + m;
    // Entry (row, col) as an index into the variable list, or None for zero.
    let entry = |row: usize, col: usize| -> Option<usize> {
        if row < m {
            (col >= row && col - row <= n).then(|| col - row)
        } else {
            let s = row - m;
            (col >= s && col - s <= m).then(|| n + 1 + col - s)
        }
    };
    let mut acc: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    let mut stack = vec![(0usize, 0u32, vec![0u32; n + m + 2], 1i64)];
    while let Some((row, used, mono, sign)) = stack.pop() {
        if row == size {
            *acc.entry(mono).or_insert(0) += sign;
            continue;
        }
        for col in 0..size {
            if used >> col & 1 == 1 {
                continue;
            }
            let Some(v) = entry(row, col) else { continue };
            // Sign of the permutation via the number of used columns to the right.
            let inversions = (used >> col).count_ones();
            let mut next = mono.clone();
            next[v] += 1;
            stack.push((row + 1, used | 1 << col, next, if inversions % 2 == 1 { -sign } else { sign }));
        }
    }
    let vars: Vec<String> = (0..=n).map(|i| format!("a{i}")).chain((0..=m).map(|j| format!("b{j}"))).collect();
    Ok(MultiPoly::new(vars, acc.into_iter().map(|(e, c)| (e, Rat::from_integer(c.into())))))
}

/// `R(u, v) = Res(u, v) / Res(s₀, s₁)`, the resultant normalized to 1 at `(s₀, s₁)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedResultant {
    pub n: usize,
    pub m: usize,
    pub delta: Rat,
}

impl NormalizedResultant {
    pub fn new(s0: &BinaryForm, s1: &BinaryForm) -> Result<Self> {
        let delta = sylvester_res(s0, s1)?;
        if delta.is_zero() {
            return Err(Error::ImproperIntersection);
        }
        Ok(NormalizedResultant { n: s0.degree(), m: s1.degree(), delta })
    }

    pub fn eval(&self, u: &BinaryForm, v: &BinaryForm) -> Result<Rat> {
        if u.degree() != self.n {
            return Err(Error::DegreeMismatch { expected: self.n, got: u.degree() });
        }
        if v.degree() != self.m {
            return Err(Error::DegreeMismatch { expected: self.m, got: v.degree() });
        }
        Ok(sylvester_res(u, v)? / &self.delta)
    }
}

pub fn normalized_res_eval(s0: &BinaryForm, s1: &BinaryForm, u: &BinaryForm, v: &BinaryForm) -> Result<Rat> {
    NormalizedResultant::new(s0, s1)?.eval(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};
    use num_bigint::BigInt;
    use num_integer::Integer;

    fn bf(c: &[i64]) -> BinaryForm {
        BinaryForm::from_ints(c)
    }

    #[test]
    fn sylvester_examples() {
        assert_eq!(sylvester_res(&bf(&[1, -1]), &bf(&[1, -2])).unwrap(), rat(-1));
        assert_eq!(sylvester_res(&bf(&[1, 0, 1]), &bf(&[7])).unwrap(), rat(49));
        assert_eq!(sylvester_res(&bf(&[1, 0, 1]), &bf(&[1, 0, -1])).unwrap(), rat(4));
        assert_eq!(sylvester_res(&bf(&[3]), &bf(&[5])), Err(Error::DegenerateResultant));
    }

    #[test]
    fn root_product_oracle() {
        // (x-1)(x-3) against 2(x+2): 2^2 · (1+2)(3+2)
        let f = bf(&[1, -4, 3]);
        let g = bf(&[2, 4]);
        assert_eq!(sylvester_res(&f, &g).unwrap(), rat(4 * 3 * 5));
    }

    #[test]
    fn normalized_examples() {
        let s0 = bf(&[1, 2, 0]);
        let s1 = bf(&[1, -1]);
        assert_eq!(normalized_res_eval(&s0, &s1, &s0, &s1).unwrap(), rat(1));
        let c = rat_frac(3, 7);
        assert!(normalized_res_eval(&s0, &s1, &s0, &s1.scale(&c)).unwrap() == c.clone() * c);
        assert_eq!(normalized_res_eval(&s0, &s1, &s1, &s0), Err(Error::DegreeMismatch { expected: 2, got: 1 }));
        let t0 = bf(&[2, 1]);
        assert_eq!(normalized_res_eval(&t0, &s1, &s1, &t0).unwrap(), rat(-1));
        assert_eq!(normalized_res_eval(&s1, &s1, &s1, &s1), Err(Error::ImproperIntersection));
    }

    #[test]
    fn universal_content_is_one() {
        for n in 0..=UNIVERSAL_CAP {
            for m in 0..=UNIVERSAL_CAP - n {
                if n + m == 0 {
                    continue;
                }
                let u = universal_sylvester(n, m).unwrap();
                let g = u.terms().values().fold(BigInt::zero(), |g, c| {
                    assert!(c.is_integer());
                    g.gcd(c.numer())
                });
                assert_eq!(g, BigInt::one(), "n={n} m={m}");
            }
        }
        assert!(matches!(universal_sylvester(4, 3), Err(Error::UnsupportedDegree { .. })));
    }

    #[test]
    fn universal_matches_numeric() {
        let f = bf(&[2, -1, 3]);
        let g = bf(&[1, 5, 0, -4]);
        let u = universal_sylvester(2, 3).unwrap();
        let mut value = Rat::zero();
        for (e, c) in u.terms() {
            let mut t = c.clone();
            for (name, k) in u.vars().iter().zip(e) {
                let idx: usize = name[1..].parse().unwrap();
                let src = if name.starts_with('a') { &f } else { &g };
                t *= num_traits::pow(src.coeffs()[idx].clone(), *k as usize);
            }
            value += t;
        }
        assert_eq!(value, sylvester_res(&f, &g).unwrap());
    }

    #[test]
    fn parsing() {
        assert_eq!("1,0,-1".parse::<BinaryForm>().unwrap(), bf(&[1, 0, -1]));
        assert_eq!("x^2 - 1".parse::<BinaryForm>().unwrap(), bf(&[1, 0, -1]));
        assert_eq!("0,1".parse::<BinaryForm>().unwrap().infinity_multiplicity(), 1);
        assert_eq!("5".parse::<BinaryForm>().unwrap().degree(), 0);
        assert!("1,,2".parse::<BinaryForm>().is_err());
        assert_eq!(bf(&[1, 0, -1]).to_string(), "1,0,-1");
    }
}
