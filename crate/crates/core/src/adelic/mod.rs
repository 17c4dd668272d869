//! Heights on Q(T_1,…,T_n) for the fibration over the standard adelic
//! structure of Q and its λ-twisted compactification.

mod fermat;
mod heights;
mod monic;
mod northcott;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::arith::LogRat;
use crate::error::{Error, Result};
use crate::mahler::{mahler_jensen, torus_log_integral, Estimate, QuadratureConfig};
use crate::polyring::{gauss_norm_log_exact, is_irreducible_univariate, MultiPoly};
use crate::qplaces::{support, Prime};

pub use fermat::{fermat_m0, unity_height_zero_test};
pub use heights::{product_formula_lambda_report, tuple_height_lambda_with};
pub use monic::{monic_normalize, MonicPoly};
pub use northcott::{northcott_bounds, NorthcottBounds, NorthcottSearch};

/// A place of Q(T_I) under the λ-twisted structure.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlaceL {
    QFinite(Prime),
    QArch,
    Ord(MultiPoly),
    DegInfinity,
}

impl fmt::Display for PlaceL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceL::QFinite(p) => write!(f, "p={p}"),
            PlaceL::QArch => write!(f, "arch"),
            PlaceL::Ord(g) => write!(f, "ord:{g}"),
            PlaceL::DegInfinity => write!(f, "deg"),
        }
    }
}

/// Per-place contributions and their sum.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightReport {
    pub total: Estimate,
    pub breakdown: Vec<(PlaceL, Estimate)>,
}

impl HeightReport {
    pub(crate) fn from_parts(breakdown: Vec<(PlaceL, Estimate)>) -> Self {
        let total = Estimate::sum(breakdown.iter().map(|(_, e)| e));
        HeightReport { total, breakdown }
    }

    pub fn get(&self, place: &PlaceL) -> Option<&Estimate> {
        self.breakdown.iter().find(|(p, _)| p == place).map(|(_, e)| e)
    }
}

struct ValueErr<'a>(&'a Estimate, Option<String>);

impl Serialize for ValueErr<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        if let Some(p) = &self.1 {
            m.serialize_entry("place", p)?;
        }
        m.serialize_entry("value", &self.0.value)?;
        m.serialize_entry("err", &self.0.abs_error_bound)?;
        m.end()
    }
}

struct Places<'a>(&'a [(PlaceL, Estimate)]);

impl Serialize for Places<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (p, e) in self.0 {
            seq.serialize_element(&ValueErr(e, Some(p.to_string())))?;
        }
        seq.end()
    }
}

impl Serialize for HeightReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("total", &ValueErr(&self.total, None))?;
        m.serialize_entry("places", &Places(&self.breakdown))?;
        m.end()
    }
}

/// Finite-place Gauss norms of `f` as exact logarithms.
pub(crate) fn finite_parts(f: &MultiPoly) -> Vec<(Prime, LogRat)> {
    let coeffs: Vec<_> = f.terms().values().cloned().collect();
    support(&coeffs)
        .into_iter()
        .map(|p| {
            let v = gauss_norm_log_exact(f, &p).unwrap();
            (p, v)
        })
        .collect()
}

pub(crate) fn arch_integral(f: &MultiPoly, cfg: &QuadratureConfig) -> Result<Estimate> {
    if f.is_univariate() {
        mahler_jensen(f)
    } else {
        torus_log_integral(f, cfg)
    }
}

/// `h_{S_L}(F) = Σ_p ln|F|_p + ∫ ln|F(e(t))| dt`.
///
/// The finite part cancels the content exactly, so the result is the
/// archimedean integral of the primitive part.
pub fn poly_height(f: &MultiPoly, cfg: &QuadratureConfig) -> Result<Estimate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, prim) = f.content_primitive()?;
    arch_integral(&prim, cfg)
}

/// `h_{S_L}(F)` with its per-place breakdown over Q.
pub fn poly_height_report(f: &MultiPoly, cfg: &QuadratureConfig) -> Result<HeightReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut parts: Vec<(PlaceL, Estimate)> = finite_parts(f)
        .into_iter()
        .map(|(p, v)| (PlaceL::QFinite(p), Estimate::exact(v.to_f64())))
        .collect();
    parts.push((PlaceL::QArch, arch_integral(f, cfg)?));
    let mut report = HeightReport::from_parts(parts);
    report.total = poly_height(f, cfg)?;
    Ok(report)
}

fn check_canonical_irreducible(f: &MultiPoly) -> Result<()> {
    if f.is_constant() {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    if !f.is_canonical() {
        return Err(Error::NotCanonicalIrreducible(f.to_string()));
    }
    if f.is_univariate() && !is_irreducible_univariate(f)? {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    Ok(())
}

/// The λ-twisted measure on the places of Q(T_I), with a session cache of
/// `h_{S_L}(F)` per canonical irreducible `F`.
#[derive(Debug)]
pub struct LambdaMeasure {
    lambda: f64,
    cfg: QuadratureConfig,
    cache: Mutex<HashMap<MultiPoly, Estimate>>,
}

impl LambdaMeasure {
    pub fn new(lambda: f64, cfg: QuadratureConfig) -> Result<Self> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::InvalidArgument(format!("lambda must be a finite nonnegative real, got {lambda}")));
        }
        cfg.validate()?;
        Ok(LambdaMeasure { lambda, cfg, cache: Mutex::new(HashMap::new()) })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn cfg(&self) -> &QuadratureConfig {
        &self.cfg
    }

    pub(crate) fn height_cached(&self, f: &MultiPoly) -> Result<Estimate> {
        if let Some(e) = self.cache.lock().unwrap().get(f) {
            return Ok(*e);
        }
        let e = poly_height(f, &self.cfg)?;
        self.cache.lock().unwrap().entry(f.clone()).or_insert(e);
        Ok(e)
    }

    /// `h_{S_L}(F) + λ·deg F` for a canonical irreducible `F`.
    pub fn lambda_weight(&self, f: &MultiPoly) -> Result<Estimate> {
        check_canonical_irreducible(f)?;
        self.ord_weight_unchecked(f)
    }

    pub(crate) fn ord_weight_unchecked(&self, f: &MultiPoly) -> Result<Estimate> {
        let h = self.height_cached(f)?;
        Ok(Estimate { value: h.value + self.lambda * f.total_degree().unwrap() as f64, ..h })
    }

    pub fn weight(&self, place: &PlaceL) -> Result<Estimate> {
        match place {
            PlaceL::QFinite(_) | PlaceL::QArch => Ok(Estimate::exact(1.0)),
            PlaceL::DegInfinity => Ok(Estimate::exact(self.lambda)),
            PlaceL::Ord(f) => self.lambda_weight(f),
        }
    }

    pub fn cached_weights(&self) -> usize {
        self.cache.lock().unwrap().len()
    }
}

/// `h_{S_L}(F) + λ·deg F`.
pub fn lambda_weight(f: &MultiPoly, lambda: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    LambdaMeasure::new(lambda, cfg.clone())?.lambda_weight(f)
}

pub fn tuple_height_lambda(fs: &[MultiPoly], lambda: f64, cfg: &QuadratureConfig) -> Result<HeightReport> {
    tuple_height_lambda_with(fs, &LambdaMeasure::new(lambda, cfg.clone())?, None)
}

pub fn rat_height_lambda(f: &crate::polyring::RatFunc, lambda: f64, cfg: &QuadratureConfig) -> Result<HeightReport> {
    heights::rat_height_lambda_with(f, &LambdaMeasure::new(lambda, cfg.clone())?)
}

pub fn product_formula_lambda_defect(
    f: &crate::polyring::RatFunc,
    lambda: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    Ok(product_formula_lambda_report(f, &LambdaMeasure::new(lambda, cfg.clone())?)?.total)
}

pub fn northcott_enumerate(
    c: f64,
    lambda: f64,
    search: &NorthcottSearch,
    cfg: &QuadratureConfig,
) -> Result<Vec<crate::polyring::RatFunc>> {
    if !(lambda > 0.0) {
        return Err(Error::NorthcottRequiresPositiveLambda);
    }
    northcott::enumerate(c, &LambdaMeasure::new(lambda, cfg.clone())?, search)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn poly_height_examples() {
        let cfg = QuadratureConfig::default();
        assert_eq!(poly_height(&p("T1"), &cfg).unwrap().value, 0.0);
        assert_eq!(poly_height(&p("1"), &cfg).unwrap().value, 0.0);
        assert_eq!(poly_height(&p("2"), &cfg).unwrap(), Estimate::exact(0.0));
        let e = poly_height(&p("T - 2"), &cfg).unwrap();
        assert!((e.value - 2f64.ln()).abs() < 1e-12);
        let r = poly_height_report(&p("2"), &cfg).unwrap();
        assert_eq!(r.breakdown.len(), 2);
        assert_eq!(r.total.value, 0.0);
        assert_eq!(poly_height(&MultiPoly::zero(), &cfg), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn weight_examples() {
        let cfg = QuadratureConfig::default();
        assert_eq!(lambda_weight(&p("T"), 1.0, &cfg).unwrap().value, 1.0);
        assert!((lambda_weight(&p("T - 2"), 0.0, &cfg).unwrap().value - 2f64.ln()).abs() < 1e-12);
        assert_eq!(lambda_weight(&p("T"), 0.0, &cfg).unwrap().value, 0.0);
        assert!(matches!(lambda_weight(&p("T^2 - 1"), 1.0, &cfg), Err(Error::NotIrreducible(_))));
        assert!(matches!(lambda_weight(&p("2T - 4"), 1.0, &cfg), Err(Error::NotCanonicalIrreducible(_))));
        let m = LambdaMeasure::new(0.5, cfg).unwrap();
        assert_eq!(m.weight(&PlaceL::DegInfinity).unwrap().value, 0.5);
        assert_eq!(m.weight(&PlaceL::QArch).unwrap().value, 1.0);
        m.weight(&PlaceL::Ord(p("T + 3"))).unwrap();
        m.weight(&PlaceL::Ord(p("T + 3"))).unwrap();
        assert_eq!(m.cached_weights(), 1);
    }

    #[test]
    fn place_labels() {
        assert_eq!(PlaceL::QFinite(Prime::new(2u32).unwrap()).to_string(), "p=2");
        assert_eq!(PlaceL::QArch.to_string(), "arch");
        assert_eq!(PlaceL::Ord(p("T - 2")).to_string(), "ord:T - 2");
        assert_eq!(PlaceL::DegInfinity.to_string(), "deg");
    }
}
