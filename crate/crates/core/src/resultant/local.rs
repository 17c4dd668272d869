use num_traits::Zero;

use super::mc::{sphere_mc_log_integral, MCConfig};
use super::{determinant, universal_sylvester, BinaryForm, NormalizedResultant};
use crate::arith::{rat_to_f64, LogRat, Rat};
use crate::error::{Error, Result};
use crate::mahler::{Estimate, Method};
use crate::polyring::{is_irreducible_univariate, MultiPoly};
use crate::qplaces::{log_abs_exact, support, PlaceQ, Prime};

fn max_log(values: impl IntoIterator<Item = LogRat>) -> LogRat {
    values.into_iter().max_by(|a, b| a.argument().cmp(b.argument())).unwrap()
}

fn finite(p: &Prime) -> PlaceQ {
    PlaceQ::Finite(p.clone())
}

/// `ln‖R‖_p` for the normalized resultant of `(s₀, s₁)` in the monomial basis
/// of the universal coefficients.
pub fn eps_norm_log_p_exact(s0: &BinaryForm, s1: &BinaryForm, p: &Prime) -> Result<LogRat> {
    let r = NormalizedResultant::new(s0, s1)?;
    let universal = universal_sylvester(r.n, r.m)?;
    let place = finite(p);
    let logs = universal
        .terms()
        .values()
        .map(|c| log_abs_exact(&(c / &r.delta), &place))
        .collect::<Result<Vec<_>>>()?;
    Ok(max_log(logs))
}

pub fn eps_norm_log_p(s0: &BinaryForm, s1: &BinaryForm, p: &Prime) -> Result<f64> {
    eps_norm_log_p_exact(s0, s1, p).map(|l| l.to_f64())
}

fn require_linear(s: &BinaryForm) -> Result<()> {
    if s.degree() != 1 {
        return Err(Error::DegreeMismatch { expected: 1, got: s.degree() });
    }
    Ok(())
}

/// `|uX₀ + vX₁|_φ` at the point with homogeneous coordinates `(x₀, x₁)`,
/// for the quotient metric of the orthonormal sup norm.
fn metric_at(s: &BinaryForm, x0: &Rat, x1: &Rat, place: &PlaceQ) -> Result<LogRat> {
    let (u, v) = (&s.coeffs()[0], &s.coeffs()[1]);
    // Chart x₀ = 1 when possible, otherwise x₁ = 1.
    let (t, value) = if !x0.is_zero() {
        let t = x1 / x0;
        let value = u + v * &t;
        (t, value)
    } else {
        let t = x0 / x1;
        let value = u * &t + v;
        (t, value)
    };
    if value.is_zero() {
        return Err(Error::ImproperIntersection);
    }
    let denom = if t.is_zero() { LogRat::zero() } else { max_log([LogRat::zero(), log_abs_exact(&t, place)?]) };
    Ok(log_abs_exact(&value, place)?.sub(&denom))
}

/// Gauss-point value `max(|u|_p, |v|_p)`.
fn metric_gauss(s: &BinaryForm, place: &PlaceQ) -> Result<LogRat> {
    let logs = s.coeffs().iter().filter(|c| !c.is_zero()).map(|c| log_abs_exact(c, place)).collect::<Result<Vec<_>>>()?;
    if logs.is_empty() {
        return Err(Error::ImproperIntersection);
    }
    Ok(max_log(logs))
}

/// Local height of P¹ at `p` by the recursion
/// `−ln|s₀|_φ(div s₁) − ln|s₁|_φ(ξ)`, `ξ` the Gauss point.
pub fn local_height_p1_nonarch_exact(s0: &BinaryForm, s1: &BinaryForm, p: &Prime) -> Result<LogRat> {
    require_linear(s0)?;
    require_linear(s1)?;
    NormalizedResultant::new(s0, s1)?;
    let place = finite(p);
    // The zero of b₀X₀ + b₁X₁ is (b₁ : −b₀).
    let (b0, b1) = (&s1.coeffs()[0], &s1.coeffs()[1]);
    let at_zero = metric_at(s0, b1, &-b0, &place)?;
    let gauss = metric_gauss(s1, &place)?;
    Ok(at_zero.neg().sub(&gauss))
}

pub fn local_height_p1_nonarch(s0: &BinaryForm, s1: &BinaryForm, p: &Prime) -> Result<f64> {
    local_height_p1_nonarch_exact(s0, s1, p).map(|l| l.to_f64())
}

/// `ln‖R^{X,s₀}‖_p` for the zero-dimensional `X = div(q) ⊂ P¹`.
///
/// `q` is read in the affine coordinate `T = X₁/X₀`, the chart of the
/// metric formulas, so its coefficients from degree 0 up are the form's `a₀,…,a_d`.
pub fn point_resultant_norm_exact(q: &MultiPoly, s0: &BinaryForm, p: &Prime) -> Result<LogRat> {
    if q.is_constant() {
        return Err(Error::NotIrreducible(q.to_string()));
    }
    if !q.is_canonical() {
        return Err(Error::NotCanonicalIrreducible(q.to_string()));
    }
    if !is_irreducible_univariate(q)? {
        return Err(Error::NotIrreducible(q.to_string()));
    }
    require_linear(s0)?;
    let Some((_, coeffs)) = q.univariate_coeffs() else {
        return Err(Error::InvalidArgument(format!("{q} is not univariate")));
    };
    let form = BinaryForm::new(coeffs)?;
    let r = match NormalizedResultant::new(&form, s0) {
        Err(Error::ImproperIntersection) => return Err(Error::SectionVanishesAtPoint),
        other => other?,
    };
    // R(s) = Res(q̃, s)/Res(q̃, s₀) is a form in the coefficients of s whose
    // coefficients are ±aᵢ/Δ.
    let place = finite(p);
    let gauss = metric_gauss(&form, &place)?;
    Ok(gauss.sub(&log_abs_exact(&r.delta, &place)?))
}

pub fn point_resultant_norm(q: &MultiPoly, s0: &BinaryForm, p: &Prime) -> Result<f64> {
    point_resultant_norm_exact(q, s0, p).map(|l| l.to_f64())
}

/// `H_r = Σ_{ℓ=1}^r 1/ℓ`.
pub fn harmonic(r: u64) -> Rat {
    (1..=r).map(|l| Rat::new(1.into(), l.into())).fold(Rat::zero(), |a, b| a + b)
}

/// `σ_r = ½ Σ_{m=1}^r H_m`.
pub fn stoll(r: u64) -> Rat {
    let mut h = Rat::zero();
    let mut total = Rat::zero();
    for m in 1..=r {
        h += Rat::new(1.into(), m.into());
        total += &h;
    }
    total / Rat::from_integer(2.into())
}

fn basis_det(sections: &[Vec<Rat>]) -> Result<Rat> {
    let n = sections.len();
    if n == 0 || sections.iter().any(|s| s.len() != n) {
        return Err(Error::NotABasis);
    }
    let d = determinant(sections.to_vec());
    if d.is_zero() {
        return Err(Error::NotABasis);
    }
    Ok(d)
}

/// `−ln|det(s₀,…,s_r)| + σ_r` for the orthonormal Hermitian ambient norm.
pub fn proj_height_arch(sections: &[Vec<Rat>]) -> Result<f64> {
    let d = basis_det(sections)?;
    let sigma = stoll(sections.len() as u64 - 1);
    Ok(-LogRat::ln_abs(&d).to_f64() + rat_to_f64(&sigma))
}

pub fn proj_height_nonarch_exact(sections: &[Vec<Rat>], p: &Prime) -> Result<LogRat> {
    let d = basis_det(sections)?;
    Ok(log_abs_exact(&d, &finite(p))?.neg())
}

/// `−ln|det(s₀,…,s_r)|_p` for the orthonormal sup norm at `p`.
pub fn proj_height_nonarch(sections: &[Vec<Rat>], p: &Prime) -> Result<f64> {
    proj_height_nonarch_exact(sections, p).map(|l| l.to_f64())
}

/// Discrepancy between the local height of P¹ and `ln‖R‖` at one place.
///
/// Finite places compare exactly. At the archimedean place the sphere
/// integral plus its Stoll correction `½(δ₀H₁ + δ₁H₁) = 1` is compared
/// with `−ln|Δ| + σ₁`, and the error bound is three standard errors.
pub fn local_equality_defect(s0: &BinaryForm, s1: &BinaryForm, place: &PlaceQ, mc: &MCConfig) -> Result<Estimate> {
    match place {
        PlaceQ::Finite(p) => {
            let lhs = local_height_p1_nonarch_exact(s0, s1, p)?;
            let rhs = eps_norm_log_p_exact(s0, s1, p)?;
            Ok(Estimate::exact(lhs.sub(&rhs).to_f64().abs()))
        }
        PlaceQ::Arch => {
            require_linear(s0)?;
            require_linear(s1)?;
            let r = NormalizedResultant::new(s0, s1)?;
            let lhs = -LogRat::ln_abs(&r.delta).to_f64() + 0.5;
            let sphere = sphere_mc_log_integral(s0, s1, mc)?;
            // ½(δ₀H₁ + δ₁H₁) with δ₀ = δ₁ = 1
            let correction = rat_to_f64(&harmonic(1));
            Ok(Estimate {
                value: (lhs - (sphere.value + correction)).abs(),
                abs_error_bound: 3.0 * sphere.stderr,
                method: Method::MonteCarlo,
            })
        }
    }
}

/// `Σ_p h_p + (−ln|Δ|_∞ + σ₁)`, which the product formula forces to be `σ₁ = 1/2`.
pub fn global_consistency_p1(s0: &BinaryForm, s1: &BinaryForm) -> Result<Estimate> {
    require_linear(s0)?;
    require_linear(s1)?;
    let r = NormalizedResultant::new(s0, s1)?;
    let mut values: Vec<Rat> = s0.coeffs().iter().chain(s1.coeffs()).filter(|c| !c.is_zero()).cloned().collect();
    values.push(r.delta.clone());
    let mut exact = LogRat::zero();
    for p in support(&values) {
        exact = exact.add(&local_height_p1_nonarch_exact(s0, s1, &p)?);
    }
    exact = exact.sub(&log_abs_exact(&r.delta, &PlaceQ::Arch)?);
    Ok(Estimate::exact(exact.to_f64() + rat_to_f64(&stoll(1))))
}
