//! Archimedean integrals over the unit torus: exact univariate Mahler
//! measures via Jensen's formula, adaptive torus quadrature and log-max
//! integrals.

mod cubature;
mod roots;

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{ln_abs_rat, rat_to_f64, Rat};
use crate::error::{Error, Result};
use crate::polyring::{poly::var_order, upoly, MultiPoly};

pub const MAX_QUADRATURE_DIM: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub grid_points_per_axis: usize,
    pub max_subdivision_depth: u32,
    pub target_abs_error: f64,
    pub rng_seed: u64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { grid_points_per_axis: 16, max_subdivision_depth: 40, target_abs_error: 1e-8, rng_seed: 0x5eed }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_axis < 16 {
            return Err(Error::InvalidConfig("grid_points_per_axis must be at least 16".into()));
        }
        if !(1e-9..=1e-1).contains(&self.target_abs_error) {
            return Err(Error::InvalidConfig("target_abs_error must lie in [1e-9, 1e-1]".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    JensenExact,
    Quadrature,
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub abs_error_bound: f64,
    pub method: Method,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, abs_error_bound: 0.0, method: Method::JensenExact }
    }

    pub fn is_exact(&self) -> bool {
        self.abs_error_bound == 0.0
    }

    /// Sum of estimates; the method is the weakest of the inputs.
    pub fn sum<'a>(parts: impl IntoIterator<Item = &'a Estimate>) -> Estimate {
        let mut acc = Estimate::exact(0.0);
        for p in parts {
            acc.value += p.value;
            acc.abs_error_bound += p.abs_error_bound;
            acc.method = acc.method.max_weak(p.method);
        }
        acc
    }

    pub fn scale(&self, c: f64) -> Estimate {
        Estimate { value: self.value * c, abs_error_bound: self.abs_error_bound * c.abs(), method: self.method }
    }
}

impl Method {
    fn rank(self) -> u8 {
        match self {
            Method::JensenExact => 0,
            Method::Quadrature => 1,
            Method::MonteCarlo => 2,
        }
    }

    fn max_weak(self, other: Method) -> Method {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }
}

fn lnp(x: f64) -> f64 {
    if x > 1.0 {
        x.ln()
    } else {
        0.0
    }
}

fn univariate(f: &MultiPoly) -> Result<Vec<Rat>> {
    match f.univariate_coeffs() {
        Some((_, c)) => Ok(c),
        None => Err(Error::InvalidArgument(format!("{f} is not univariate"))),
    }
}

fn roots_squarefree(part: &[Rat]) -> Vec<roots::Root> {
    let c: Vec<Complex64> = part.iter().map(|q| Complex64::new(rat_to_f64(q), 0.0)).collect();
    roots::aberth(&c)
}

/// All roots with multiplicity, each with an a-posteriori error bound.
fn roots_with_errors(coeffs: &[Rat]) -> Vec<(roots::Root, u32)> {
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let mut out = Vec::new();
    if zeros > 0 {
        out.push((roots::Root { z: Complex64::new(0.0, 0.0), err: 0.0 }, zeros as u32));
    }
    for (part, mult) in upoly::squarefree(&coeffs[zeros..]) {
        for r in roots_squarefree(&part) {
            out.push((r, mult));
        }
    }
    out
}

/// The complex roots of a nonconstant univariate polynomial, with multiplicity.
pub fn roots_complex(f: &MultiPoly) -> Result<Vec<Complex64>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let coeffs = univariate(f)?;
    if coeffs.len() <= 1 {
        return Err(Error::ConstantPolynomial);
    }
    let mut out = Vec::with_capacity(coeffs.len() - 1);
    for (r, m) in roots_with_errors(&coeffs) {
        out.extend(std::iter::repeat(r.z).take(m as usize));
    }
    Ok(out)
}

/// `ln|a_d| + Σ ln⁺|α|`.
pub fn mahler_jensen(f: &MultiPoly) -> Result<Estimate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let coeffs = univariate(f)?;
    let lead = coeffs.last().unwrap();
    let mut est = Estimate::exact(ln_abs_rat(lead));
    let nonzero_roots = coeffs.iter().skip_while(|c| c.is_zero()).count() - 1;
    if nonzero_roots == 0 {
        return Ok(est);
    }
    let mut err = 0.0;
    for (r, m) in roots_with_errors(&coeffs) {
        let a = r.z.norm();
        est.value += m as f64 * lnp(a);
        if a + r.err > 1.0 {
            err += m as f64 * (r.err / (a - r.err).max(1.0) + 2.0 * f64::EPSILON * lnp(a));
        }
    }
    est.abs_error_bound = err + 4.0 * f64::EPSILON * (est.value.abs() + nonzero_roots as f64);
    Ok(est)
}

/// The variables that occur, with the polynomial re-embedded over them.
fn occurring(f: &MultiPoly) -> (Vec<String>, MultiPoly) {
    let vars = f.occurring_vars();
    let g = f.with_vars(&vars);
    (vars, g)
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_QUADRATURE_DIM {
        Err(Error::DimensionTooLarge(n))
    } else {
        Ok(())
    }
}

fn unit(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * t)
}

fn safe_ln(x: f64) -> f64 {
    if x > 0.0 {
        x.ln()
    } else {
        f64::MIN_POSITIVE.ln()
    }
}

struct FloatPoly {
    terms: Vec<(Vec<u32>, f64)>,
}

impl FloatPoly {
    fn new(f: &MultiPoly) -> Self {
        FloatPoly { terms: f.to_float_terms() }
    }

    fn eval(&self, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            let mut m = Complex64::new(*c, 0.0);
            for (zi, &d) in z.iter().zip(e) {
                if d > 0 {
                    m *= zi.powu(d);
                }
            }
            acc += m;
        }
        acc
    }
}

/// Fiberwise Jensen integrand `x ↦ ∫ ln|F(x, e(s))| ds` for the last variable.
struct Fiber {
    coeffs: Vec<FloatPoly>,
}

impl Fiber {
    fn new(f: &MultiPoly, var: &str) -> Self {
        let cs = f.coeffs_in(var);
        let low = cs.iter().take_while(|c| c.is_zero()).count();
        Fiber { coeffs: cs[low..].iter().map(FloatPoly::new).collect() }
    }

    fn eval(&self, z: &[Complex64]) -> f64 {
        let c: Vec<Complex64> = self.coeffs.iter().map(|p| p.eval(z)).collect();
        let lead = c.last().unwrap().norm();
        if c.len() == 1 {
            return safe_ln(lead);
        }
        if lead == 0.0 {
            return safe_ln(0.0);
        }
        if c.len() == 2 {
            return safe_ln(lead) + lnp((c[0] / c[1]).norm());
        }
        safe_ln(lead) + roots::aberth(&c).iter().map(|r| lnp(r.z.norm())).sum::<f64>()
    }
}

/// `∫_{[0,1]^n} ln|F(e(t_1),…,e(t_n))| dt` by adaptive quadrature.
///
/// Constants and monomials are exact. Univariate input is split into
/// squarefree parts, each integrated on the circle; with more variables
/// the last one is integrated out by Jensen's formula on each fiber.
pub fn torus_log_integral(f: &MultiPoly, cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (vars, g) = occurring(f);
    check_dim(vars.len())?;
    if g.is_monomial() {
        return Ok(Estimate::exact(ln_abs_rat(g.leading_coeff().unwrap())));
    }
    let (value, err) = if vars.len() == 1 {
        let c = univariate(&g)?;
        let zeros = c.iter().take_while(|q| q.is_zero()).count();
        let c = &c[zeros..];
        let (mut v, mut e) = (ln_abs_rat(c.last().unwrap()), 0.0);
        for (part, k) in upoly::squarefree(c) {
            let fp = FloatPoly::new(&MultiPoly::from_univariate(&vars[0], &part));
            let (pv, pe, _) = cubature::integrate(1, cfg, |t| safe_ln(fp.eval(&[unit(t[0])]).norm()));
            v += k as f64 * pv;
            e += k as f64 * pe;
        }
        (v, e)
    } else {
        let last = fiber_variable(&g, &vars);
        let outer: Vec<String> = vars.iter().filter(|v| **v != last).cloned().collect();
        let mut order = outer.clone();
        order.push(last.clone());
        let g = g.with_vars(&order);
        let fiber = Fiber::new(&g, &last);
        let k = outer.len();
        let (v, e, _) = cubature::integrate(k, cfg, |t| {
            let z: Vec<Complex64> = t.iter().map(|&x| unit(x)).collect();
            fiber.eval(&z)
        });
        (v, e)
    };
    Ok(Estimate { value, abs_error_bound: err, method: Method::Quadrature })
}

/// The variable of smallest positive degree, ties broken by variable order.
fn fiber_variable(g: &MultiPoly, vars: &[String]) -> String {
    let mut best = vars[0].clone();
    for v in vars {
        let (d, b) = (g.degree_in(v), g.degree_in(&best));
        if d < b || (d == b && var_order(v, &best).is_gt()) {
            best = v.clone();
        }
    }
    best
}

/// `∫ ln max_i |F_i(e(t))| dt`.
pub fn torus_logmax_integral(fs: &[MultiPoly], cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    let nonzero: Vec<&MultiPoly> = fs.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZeroTuple);
    }
    if nonzero.iter().all(|f| f.is_monomial()) {
        let best = nonzero.iter().map(|f| f.leading_coeff().unwrap().abs()).max().unwrap();
        return Ok(Estimate::exact(ln_abs_rat(&best)));
    }
    let mut vars: Vec<String> = Vec::new();
    for f in &nonzero {
        vars = crate::polyring::poly::merge_vars(&vars, &f.occurring_vars());
    }
    check_dim(vars.len())?;
    let polys: Vec<FloatPoly> = nonzero.iter().map(|f| FloatPoly::new(&f.with_vars(&vars))).collect();
    let (value, err, _) = cubature::integrate(vars.len(), cfg, |t| {
        let z: Vec<Complex64> = t.iter().map(|&x| unit(x)).collect();
        let m = polys.iter().map(|p| p.eval(&z).norm()).fold(0.0, f64::max);
        safe_ln(m)
    });
    Ok(Estimate { value, abs_error_bound: err, method: Method::Quadrature })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn roots_examples() {
        let mut r = roots_complex(&p("x^2 + 1")).unwrap();
        r.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((r[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((r[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let r = roots_complex(&p("x - 2")).unwrap();
        assert!((r[0] - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert_eq!(roots_complex(&p("5")), Err(Error::ConstantPolynomial));
        let r = roots_complex(&p("x^4 - 2x^3 + x^2")).unwrap();
        assert_eq!(r.len(), 4);
    }

    #[test]
    fn jensen_examples() {
        let e = mahler_jensen(&p("T - 2")).unwrap();
        assert!((e.value - 2f64.ln()).abs() < 1e-12);
        assert_eq!(e.method, Method::JensenExact);
        assert!(e.abs_error_bound <= 1e-9);
        assert_eq!(mahler_jensen(&p("T")).unwrap(), Estimate::exact(0.0));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((mahler_jensen(&p("T^2 - T - 1")).unwrap().value - phi.ln()).abs() < 1e-12);
        assert_eq!(mahler_jensen(&p("-3")).unwrap(), Estimate::exact(3f64.ln()));
    }

    #[test]
    fn torus_examples() {
        let cfg = QuadratureConfig::default();
        assert_eq!(torus_log_integral(&p("-5"), &cfg).unwrap(), Estimate::exact(5f64.ln()));
        let e = torus_log_integral(&p("T - 2"), &cfg).unwrap();
        assert!((e.value - 2f64.ln()).abs() < 1e-8);
        let e = torus_log_integral(&p("1 + x + y"), &cfg).unwrap();
        assert!((e.value - 0.3230659472).abs() < 1e-6, "{e:?}");
        assert_eq!(
            torus_log_integral(&p("x + y + z + w"), &cfg),
            Err(Error::DimensionTooLarge(4))
        );
    }

    #[test]
    fn logmax_examples() {
        let cfg = QuadratureConfig::default();
        assert_eq!(torus_logmax_integral(&[p("1"), p("T")], &cfg).unwrap(), Estimate::exact(0.0));
        assert_eq!(torus_logmax_integral(&[p("2"), p("3")], &cfg).unwrap(), Estimate::exact(3f64.ln()));
        let vals: Vec<f64> = (1..=3)
            .map(|n| torus_logmax_integral(&[p("1"), p(&format!("T^{n} - 1"))], &cfg).unwrap().value)
            .collect();
        for v in &vals {
            assert!((v - vals[0]).abs() < 1e-6);
            assert!(*v <= 2f64.ln() + 1e-9);
        }
        assert_eq!(torus_logmax_integral(&[MultiPoly::zero()], &cfg), Err(Error::AllZeroTuple));
    }
}
