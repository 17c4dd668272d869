//! Univariate factorization over Q: squarefree decomposition, factorization
//! modulo a good prime, Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Field, PPoly};
use super::upoly::{self, ZPoly};
use super::MultiPoly;
use crate::arith::{is_prime_u64, Rat};
use crate::error::{Error, Result};

pub const DEGREE_CAP: usize = 30;

const PRIME_TRIALS: usize = 5;

/// `unit · ∏ F^m`, factors canonical and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(MultiPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> MultiPoly {
        self.factors
            .iter()
            .fold(MultiPoly::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

pub fn factor_univariate(f: &MultiPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (var, coeffs) = f.univariate_coeffs().ok_or(Error::UnsupportedMultivariateFactorization)?;
    let Some(var) = var else {
        return Ok(Factorization { unit: coeffs[0].clone(), factors: Vec::new() });
    };
    let degree = coeffs.len() - 1;
    if degree > DEGREE_CAP {
        return Err(Error::UnsupportedDegree { degree, cap: DEGREE_CAP });
    }
    let mut factors: Vec<(ZPoly, u32)> = Vec::new();
    for (part, mult) in upoly::squarefree(&coeffs) {
        let (_, prim) = upoly::primitive_int(&part);
        for g in factor_squarefree_z(&prim) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut lead = Rat::one();
    for (g, m) in &factors {
        lead *= Rat::from_integer(g.last().unwrap().pow(*m));
    }
    let unit = coeffs.last().unwrap() / lead;
    let factors = factors
        .into_iter()
        .map(|(g, m)| (MultiPoly::from_univariate(&var, &upoly::to_rat(&g)), m))
        .collect();
    Ok(Factorization { unit, factors })
}

/// True when `f` is a nonconstant univariate polynomial irreducible over Q.
pub fn is_irreducible_univariate(f: &MultiPoly) -> Result<bool> {
    if f.is_zero() || f.is_constant() {
        return Ok(false);
    }
    let fac = factor_univariate(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

fn to_modp(f: &[BigInt], fp: &Field) -> PPoly {
    let p = BigInt::from(fp.p);
    let mut out: PPoly = f.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect();
    fp.trim(&mut out);
    out
}

fn from_modp(f: &[u64]) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    upoly::trim(&mut out);
    out
}

fn zmod(f: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = f.iter().map(|c| c.mod_floor(m)).collect();
    upoly::trim(&mut out);
    out
}

fn symmetric(f: &[BigInt], m: &BigInt) -> ZPoly {
    let half: BigInt = m >> 1;
    let mut out: ZPoly = f
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    upoly::trim(&mut out);
    out
}

fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return None;
    }
    let lead = &b[db];
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let (c, r) = rem[k + db].div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lifts `f ≡ G·H (mod p)` to `mod p^k`, `G` monic, `lc(H) = lc(f)`.
fn lift_pair(f: &[BigInt], g0: &PPoly, h0: &PPoly, fp: &Field, k: u32) -> (ZPoly, ZPoly) {
    let (_, _, t) = fp.egcd(g0, h0);
    let p = BigInt::from(fp.p);
    let mut g = from_modp(g0);
    let mut h = from_modp(h0);
    *h.last_mut().unwrap() = f.last().unwrap().clone();
    let mut m = p.clone();
    for _ in 1..k {
        let err: ZPoly = {
            let gh = zmul(&g, &h);
            let n = f.len().max(gh.len());
            (0..n)
                .map(|i| f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default())
                .collect()
        };
        let e: ZPoly = err
            .iter()
            .map(|c| {
                debug_assert!((c % &m).is_zero());
                c / &m
            })
            .collect();
        let e = to_modp(&e, fp);
        let tau = fp.rem(&fp.poly_mul(t.as_slice(), &e), g0);
        let (sigma, r) = fp.divrem(&fp.poly_sub(&e, &fp.poly_mul(&tau, h0)), g0);
        debug_assert!(r.is_empty());
        let next = &m * &p;
        let bump = |x: &mut ZPoly, d: &PPoly| {
            if x.len() < d.len() {
                x.resize(d.len(), BigInt::zero());
            }
            for (i, &c) in d.iter().enumerate() {
                x[i] += &m * c;
            }
        };
        bump(&mut g, &tau);
        bump(&mut h, &sigma);
        g = zmod(&g, &next);
        h = zmod(&h, &next);
        m = next;
    }
    (g, h)
}

/// Monic lifts of the modular factors of `f` to `mod p^k`.
fn hensel_lift(f: &[BigInt], facs: &[PPoly], fp: &Field, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(fp.p).pow(k);
    let lc = f.last().unwrap().clone();
    let lc_p = to_modp(&[lc.clone()], fp).first().copied().unwrap_or(0);
    let mut current = zmod(f, &modulus);
    let mut out = Vec::with_capacity(facs.len());
    for i in 0..facs.len() - 1 {
        let rest = facs[i + 1..].iter().fold(vec![lc_p], |acc, g| fp.poly_mul(&acc, g));
        let cur_lc = current.last().cloned();
        let (g, mut h) = lift_pair(&current, &facs[i], &rest, fp, k);
        if let Some(l) = cur_lc {
            *h.last_mut().unwrap() = l;
        }
        out.push(g);
        current = h;
    }
    let inv = modinv(&lc, &modulus);
    out.push(zmod(&current.iter().map(|c| c * &inv).collect::<Vec<_>>(), &modulus));
    out
}

fn primitive_zpoly(f: ZPoly) -> ZPoly {
    let g = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if f.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    f.into_iter().map(|c| &c / &g * &sign).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| is_prime_u64(n))
}

/// Irreducible factors of a primitive squarefree integer polynomial with
/// positive leading coefficient.
pub(crate) fn factor_squarefree_z(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f.last().unwrap().clone();
    let fprime: ZPoly = f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut best: Option<(Field, Vec<PPoly>)> = None;
    let mut tried = 0;
    for p in odd_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Field { p };
        let fm = to_modp(f, &fp);
        if fp.gcd(&fm, &to_modp(&fprime, &fp)).len() != 1 {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let facs = fp.factor_squarefree(&fp.monic(&fm), &mut rng);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((fp, facs));
        }
        tried += 1;
        if tried == PRIME_TRIALS {
            break;
        }
    }
    let (fp, facs) = best.unwrap();
    let max_coef = f.iter().map(|c| c.abs()).max().unwrap();
    let bound: BigInt = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * max_coef;
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let lifts = hensel_lift(f, &facs, &fp, k);
    recombine(f.to_vec(), lifts, &pk)
}

fn recombine(mut f: ZPoly, mut lifts: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifts.len() {
        let mut found = None;
        for subset in combinations(lifts.len(), s) {
            let lc = f.last().unwrap().clone();
            let prod = subset.iter().fold(vec![lc], |acc, &i| zmod(&zmul(&acc, &lifts[i]), modulus));
            let cand = primitive_zpoly(symmetric(&prod, modulus));
            if let Some(q) = zdiv_exact(&f, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                f = q;
                for &i in subset.iter().rev() {
                    lifts.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if f.len() > 1 {
        out.push(primitive_zpoly(f));
    }
    out
}
