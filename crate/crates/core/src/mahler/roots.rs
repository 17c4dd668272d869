//! Simultaneous root finding (Aberth–Ehrlich) for dense complex polynomials.

use num_complex::Complex64;

const MAX_ITER: usize = 800;

/// Horner evaluation of `p` and `p'` plus a running rounding bound on `p`.
pub(crate) fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let n = coeffs.len() - 1;
    let mut p = coeffs[n];
    let mut dp = Complex64::new(0.0, 0.0);
    let mut scale = coeffs[n].norm();
    let az = z.norm();
    for c in coeffs[..n].iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        scale = scale * az + c.norm();
    }
    (p, dp, scale * 4.0 * (n as f64 + 1.0) * f64::EPSILON)
}

/// A root together with an a-posteriori bound on its absolute error.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Root {
    pub z: Complex64,
    pub err: f64,
}

/// Roots of `Σ coeffs[i] z^i`, highest coefficient nonzero, `coeffs[0] ≠ 0`
/// not required.
pub(crate) fn aberth(coeffs: &[Complex64]) -> Vec<Root> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        let z = -monic[0];
        let err = f64::EPSILON * 4.0 * z.norm();
        return vec![Root { z, err }];
    }
    // Initial guesses on a circle whose radius is the Fujiwara-style bound
    // scaled down to the geometric mean of the root moduli.
    let radius = {
        let c0 = monic[0].norm();
        let geo = if c0 > 0.0 { c0.powf(1.0 / n as f64) } else { 0.0 };
        let upper = (0..n).map(|i| monic[i].norm().powf(1.0 / (n - i) as f64)).fold(0.0, f64::max) * 2.0;
        if geo > 0.0 {
            geo.min(upper).max(1e-3)
        } else {
            upper.max(1e-3)
        }
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp, _) = eval_with_derivative(&monic, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = ratio / (1.0 - ratio * sum);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z.into_iter()
        .map(|mut r| {
            // Newton polish; keep the iterate with the smallest residual.
            for _ in 0..3 {
                let (p, dp, _) = eval_with_derivative(&monic, r);
                if dp.norm() == 0.0 || p.norm() == 0.0 {
                    break;
                }
                let next = r - p / dp;
                if eval_with_derivative(&monic, next).0.norm() < p.norm() {
                    r = next;
                } else {
                    break;
                }
            }
            let (p, dp, rounding) = eval_with_derivative(&monic, r);
            let err = if dp.norm() > 0.0 {
                n as f64 * (p.norm() + rounding) / dp.norm()
            } else {
                f64::INFINITY
            };
            Root { z: r, err }
        })
        .collect()
}
