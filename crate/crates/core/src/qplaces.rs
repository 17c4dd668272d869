//! Places of Q, their logarithmic absolute values, the product formula and
//! Weil heights of rational tuples.
//!
//! Every quantity here is computed from exact valuation data and kept as a
//! [`LogRat`] until the caller asks for a float.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{is_prime, prime_support, rat_valuation, LogRat, Rat};
use crate::error::{Error, Result};

/// A verified prime.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(BigUint);

impl Prime {
    pub fn new(n: impl Into<BigUint>) -> Result<Self> {
        let n = n.into();
        if is_prime(&n) {
            Ok(Prime(n))
        } else {
            Err(Error::NotPrime(n.to_string()))
        }
    }

    pub(crate) fn new_unchecked(n: BigUint) -> Self {
        debug_assert!(is_prime(&n));
        Prime(n)
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn ln(&self) -> f64 {
        crate::arith::ln_biguint(&self.0)
    }

    pub fn as_rat(&self) -> Rat {
        Rat::from_integer(BigInt::from_biguint(Sign::Plus, self.0.clone()))
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A place of Q. Every place carries measure weight 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaceQ {
    Finite(Prime),
    Arch,
}

impl fmt::Display for PlaceQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceQ::Finite(p) => write!(f, "p={p}"),
            PlaceQ::Arch => write!(f, "arch"),
        }
    }
}

pub fn padic_val(q: &Rat, p: &Prime) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    Ok(rat_valuation(q, p.value()))
}

/// `|q|_ω` as an exact rational.
pub fn abs_at(q: &Rat, place: &PlaceQ) -> Result<Rat> {
    if q.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    Ok(match place {
        PlaceQ::Arch => q.abs(),
        PlaceQ::Finite(p) => crate::arith::pow_rat(&p.as_rat(), -padic_val(q, p)?),
    })
}

pub fn log_abs_exact(q: &Rat, place: &PlaceQ) -> Result<LogRat> {
    abs_at(q, place).map(LogRat::ln)
}

pub fn log_abs(q: &Rat, place: &PlaceQ) -> Result<f64> {
    match place {
        PlaceQ::Finite(p) => Ok(-(padic_val(q, p)? as f64) * p.ln()),
        PlaceQ::Arch => log_abs_exact(q, place).map(|l| l.to_f64()),
    }
}

/// Finite places where `values` are not all units.
pub fn support(values: &[Rat]) -> Vec<Prime> {
    prime_support(values.iter()).into_iter().map(Prime::new_unchecked).collect()
}

/// `|q|_∞ · ∏_p |q|_p`, computed exactly over the primes dividing `q`.
pub fn product_formula_value(q: &Rat) -> Result<Rat> {
    if q.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let mut acc = abs_at(q, &PlaceQ::Arch)?;
    for p in support(std::slice::from_ref(q)) {
        acc *= abs_at(q, &PlaceQ::Finite(p))?;
    }
    Ok(acc)
}

/// `ln max_i |a_i|_ω` at one place; `None` when every entry is zero.
pub fn log_max_at(values: &[Rat], place: &PlaceQ) -> Option<LogRat> {
    values
        .iter()
        .filter(|a| !a.is_zero())
        .map(|a| abs_at(a, place).unwrap())
        .max()
        .map(LogRat::ln)
}

/// Per-place contributions to the Weil height; places not listed contribute 0.
pub fn weil_height_breakdown(values: &[Rat]) -> Result<Vec<(PlaceQ, LogRat)>> {
    if values.iter().all(Zero::is_zero) {
        return Err(Error::AllZeroTuple);
    }
    let mut out = vec![(PlaceQ::Arch, log_max_at(values, &PlaceQ::Arch).unwrap())];
    for p in support(values) {
        let place = PlaceQ::Finite(p);
        let term = log_max_at(values, &place).unwrap();
        out.push((place, term));
    }
    Ok(out)
}

/// `h(a_1,…,a_n) = Σ_ω ln max_i |a_i|_ω` as an exact logarithm.
///
/// Clearing denominators gives integers `b_i` with `h = ln(max|b_i| / gcd(b_i))`,
/// which needs no factorization.
pub fn weil_height_exact(values: &[Rat]) -> Result<LogRat> {
    let nonzero: Vec<&Rat> = values.iter().filter(|a| !a.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZeroTuple);
    }
    let l = nonzero.iter().fold(BigInt::from(1), |l, a| l.lcm(a.denom()));
    let ints: Vec<BigInt> = nonzero.iter().map(|a| (a.numer() * &l / a.denom()).abs()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, b| g.gcd(b));
    let max = ints.into_iter().max().unwrap();
    Ok(LogRat::ln(Rat::new(max, g)))
}

pub fn weil_height(values: &[Rat]) -> Result<f64> {
    weil_height_exact(values).map(|h| h.to_f64())
}
