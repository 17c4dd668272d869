use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::heights::{rat_height_lambda_with, tuple_height_lambda_with};
use super::{poly_height, LambdaMeasure};
use crate::error::{Error, Result};
use crate::mahler::{Estimate, QuadratureConfig};
use crate::polyring::{upoly, MultiPoly, RatFunc};
use crate::Rat;

/// Absolute slack added to every height comparison.
pub const TOLERANCE: f64 = 1e-6;

/// The box searched by the enumeration: integer coefficients in
/// `[-coeff_bound, coeff_bound]`, degree at most `max_deg` in `var`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NorthcottSearch {
    pub max_deg: u32,
    pub coeff_bound: u32,
    pub var: String,
}

impl Default for NorthcottSearch {
    fn default() -> Self {
        NorthcottSearch { max_deg: 2, coeff_bound: 20, var: "T".into() }
    }
}

/// The three a-priori bounds satisfied by any `f = F₁/F₂` (coprime) with
/// `h(f, 1) ≤ C`.
#[derive(Clone, Debug, PartialEq)]
pub struct NorthcottBounds {
    /// `max(deg F₁, deg F₂)`
    pub max_degree: u32,
    /// `max(h_{S_L}(F₁), h_{S_L}(F₂))`
    pub max_poly_height: Estimate,
    /// Height of the leading coefficients `(a₁₀, a₂₀)` in `var`.
    pub leading_height: Estimate,
    pub degree_ok: bool,
    pub poly_height_ok: bool,
    pub leading_ok: bool,
}

impl NorthcottBounds {
    pub fn all_hold(&self) -> bool {
        self.degree_ok && self.poly_height_ok && self.leading_ok
    }
}

fn within(e: &Estimate, c: f64) -> bool {
    e.value <= c + e.abs_error_bound + TOLERANCE
}

pub(crate) fn northcott_bounds_with(f: &RatFunc, c: f64, m: &LambdaMeasure, var: &str) -> Result<NorthcottBounds> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let (f1, f2) = (f.num(), f.den());
    let max_degree = f1.total_degree().unwrap().max(f2.total_degree().unwrap());
    let h1 = poly_height(f1, m.cfg())?;
    let h2 = poly_height(f2, m.cfg())?;
    let max_poly_height = if h1.value >= h2.value { h1 } else { h2 };
    let lead = |g: &MultiPoly| g.coeffs_in(var).pop().unwrap();
    let leading_height = tuple_height_lambda_with(&[lead(f1), lead(f2)], m, None)?.total;
    let lambda = m.lambda();
    Ok(NorthcottBounds {
        max_degree,
        degree_ok: lambda * max_degree as f64 <= c + TOLERANCE,
        poly_height_ok: within(&max_poly_height, c),
        leading_ok: within(&leading_height, c),
        max_poly_height,
        leading_height,
    })
}

/// Evaluate the bounds for `f` against the level `C`.
pub fn northcott_bounds(f: &RatFunc, c: f64, lambda: f64, var: &str, cfg: &QuadratureConfig) -> Result<NorthcottBounds> {
    northcott_bounds_with(f, c, &LambdaMeasure::new(lambda, cfg.clone())?, var)
}

struct Candidate {
    poly: MultiPoly,
    content: BigInt,
    coeffs: Vec<Rat>,
    height: Estimate,
    degree: u32,
}

fn coefficient_vectors(deg: u32, bound: i64) -> Vec<Vec<i64>> {
    let width = (2 * bound + 1) as u64;
    let n = deg as usize + 1;
    let total = width.pow(n as u32);
    (0..total)
        .filter_map(|mut idx| {
            let v: Vec<i64> = (0..n)
                .map(|_| {
                    let d = (idx % width) as i64 - bound;
                    idx /= width;
                    d
                })
                .collect();
            (v[n - 1] != 0).then_some(v)
        })
        .collect()
}

pub(crate) fn enumerate(c: f64, m: &LambdaMeasure, search: &NorthcottSearch) -> Result<Vec<RatFunc>> {
    let lambda = m.lambda();
    if !(lambda > 0.0) {
        return Err(Error::NorthcottRequiresPositiveLambda);
    }
    if c < 0.0 {
        return Ok(Vec::new());
    }
    let dmax = search.max_deg.min(((c + TOLERANCE) / lambda).floor() as u32);
    let bound = search.coeff_bound as i64;
    let var = search.var.as_str();

    let vectors: Vec<Vec<i64>> = (0..=dmax).flat_map(|d| coefficient_vectors(d, bound)).collect();
    let candidates: Vec<Candidate> = vectors
        .par_iter()
        .map(|v| -> Result<Option<Candidate>> {
            let coeffs: Vec<Rat> = v.iter().map(|&a| Rat::from_integer(a.into())).collect();
            let poly = MultiPoly::from_univariate(var, &coeffs);
            let degree = v.len() as u32 - 1;
            let height = poly_height(&poly, m.cfg())?;
            if !within(&height, c - lambda * degree as f64) {
                return Ok(None);
            }
            let content = v.iter().fold(BigInt::zero(), |g, &a| g.gcd(&BigInt::from(a)));
            Ok(Some(Candidate { poly, content, coeffs, height, degree }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let dens: Vec<&Candidate> = candidates.iter().filter(|g| g.coeffs.last().unwrap().is_positive()).collect();
    let mut out: Vec<RatFunc> = candidates
        .par_iter()
        .map(|f1| -> Result<Vec<RatFunc>> {
            let mut found = Vec::new();
            for f2 in &dens {
                let pair_floor = lambda * f1.degree.max(f2.degree) as f64 + f1.height.value.max(f2.height.value);
                let slack = f1.height.abs_error_bound + f2.height.abs_error_bound;
                if pair_floor > c + slack + TOLERANCE {
                    continue;
                }
                if !f1.content.gcd(&f2.content).is_one_abs() || upoly::gcd(&f1.coeffs, &f2.coeffs).len() > 1 {
                    continue;
                }
                let f = RatFunc::new(f1.poly.clone(), f2.poly.clone())?;
                if !within(&rat_height_lambda_with(&f, m)?.total, c) {
                    continue;
                }
                if !northcott_bounds_with(&f, c, m, var)?.all_hold() {
                    return Err(Error::InvalidArgument(format!("{f} violates the a-priori bounds at level {c}")));
                }
                found.push(f);
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    out.sort_by_cached_key(|f| (f.num().total_degree().max(f.den().total_degree()), f.to_string()));
    Ok(out)
}

trait IsOneAbs {
    fn is_one_abs(&self) -> bool;
}

impl IsOneAbs for BigInt {
    fn is_one_abs(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}
