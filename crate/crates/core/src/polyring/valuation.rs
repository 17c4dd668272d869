//! F-adic orders, the degree valuation and weighted Gauss norms.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{factor_univariate, is_irreducible_univariate, MultiPoly, RatFunc};
use crate::arith::{rat_valuation, LogRat};
use crate::error::{Error, Result};
use crate::qplaces::Prime;

/// Per-variable weights `e_i > 0`; variables not listed have weight 1.
pub type Weights = BTreeMap<String, f64>;

fn order_in(f: &MultiPoly, g: &MultiPoly) -> i64 {
    let mut n = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.div_exact(g) {
        cur = q;
        n += 1;
    }
    n
}

/// Order of `g` at the irreducible `F`. Irreducibility is checked for
/// univariate `F` and taken on trust otherwise.
pub fn ord_f(g: &RatFunc, f: &MultiPoly) -> Result<i64> {
    if g.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if f.is_zero() || f.is_constant() {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    if f.is_univariate() && !is_irreducible_univariate(f)? {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    Ok(order_in(g.num(), f) - order_in(g.den(), f))
}

pub fn deg_valuation(g: &RatFunc) -> Result<i64> {
    if g.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    Ok(g.num().total_degree().unwrap() as i64 - g.den().total_degree().unwrap() as i64)
}

/// `deg(g) = Σ_F deg(F)·ord_F(g)` over the irreducible factors of `g`.
pub fn check_deg_identity(g: &RatFunc) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if !g.is_univariate() {
        return Err(Error::UnsupportedMultivariateFactorization);
    }
    let mut sum = 0i64;
    for (side, sign) in [(g.num(), 1i64), (g.den(), -1)] {
        for (f, m) in factor_univariate(side)?.factors {
            assert_eq!(ord_f(g, &f)?, sign * m as i64);
            sum += sign * f.total_degree().unwrap() as i64 * m as i64;
        }
    }
    Ok(sum == deg_valuation(g)?)
}

/// `min_d v_p(a_d)` over the coefficients of `f`.
pub fn gauss_valuation(f: &MultiPoly, p: &Prime) -> Result<i64> {
    f.terms()
        .values()
        .map(|c| rat_valuation(c, p.value()))
        .min()
        .ok_or(Error::ValuationOfZero)
}

/// The unit-weight Gauss norm as an exact logarithm.
pub fn gauss_norm_log_exact(f: &MultiPoly, p: &Prime) -> Result<LogRat> {
    Ok(LogRat::prime_multiple(p.value(), -gauss_valuation(f, p)?))
}

/// `ln max_d |a_d|_p · ∏ e_i^{d_i}`.
pub fn gauss_norm_log(f: &MultiPoly, p: &Prime, weights: Option<&Weights>) -> Result<f64> {
    let weights = weights.filter(|w| !w.is_empty());
    let Some(w) = weights else {
        return gauss_norm_log_exact(f, p).map(|l| l.to_f64());
    };
    if f.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let ln_e: Vec<f64> = f.vars().iter().map(|v| w.get(v).copied().unwrap_or(1.0).ln()).collect();
    let lnp = p.ln();
    Ok(f.terms()
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| {
            let mono: f64 = e.iter().zip(&ln_e).map(|(&d, l)| d as f64 * l).sum();
            -(rat_valuation(c, p.value()) as f64) * lnp + mono
        })
        .fold(f64::NEG_INFINITY, f64::max))
}
