use std::collections::BTreeMap;

use super::{finite_parts, HeightReport, LambdaMeasure, PlaceL};
use crate::arith::LogRat;
use crate::error::{Error, Result};
use crate::mahler::{mahler_jensen, torus_logmax_integral, Estimate};
use crate::polyring::{factor_univariate, upoly, MultiPoly, RatFunc};
use crate::qplaces::Prime;

fn order_in(f: &MultiPoly, g: &MultiPoly) -> u32 {
    let mut n = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.div_exact(g) {
        cur = q;
        n += 1;
    }
    n
}

/// Irreducible `F` dividing every entry, with `min_i ord_F(F_i)`.
fn common_ord_places(fs: &[&MultiPoly], ord_factors: Option<&[MultiPoly]>) -> Result<Vec<(MultiPoly, u32)>> {
    if fs.iter().any(|f| f.is_constant()) {
        return Ok(Vec::new());
    }
    let mut vars: Vec<String> = fs.iter().flat_map(|f| f.occurring_vars()).collect();
    vars.sort();
    vars.dedup();
    let candidates: Vec<MultiPoly> = if vars.len() == 1 {
        let v = std::slice::from_ref(&vars[0]);
        let mut g = fs[0].with_vars(v).univariate_coeffs().unwrap().1;
        for f in &fs[1..] {
            g = upoly::gcd(&g, &f.with_vars(v).univariate_coeffs().unwrap().1);
        }
        if g.len() <= 1 {
            return Ok(Vec::new());
        }
        factor_univariate(&MultiPoly::from_univariate(&vars[0], &g))?.factors.into_iter().map(|(f, _)| f).collect()
    } else {
        let Some(list) = ord_factors else {
            return Err(Error::UnsupportedMultivariateFactorization);
        };
        for (i, f) in list.iter().enumerate() {
            if f.is_constant() || !f.is_canonical() {
                return Err(Error::InconsistentFactorization(format!("{f} is not a canonical nonconstant factor")));
            }
            if list[..i].contains(f) {
                return Err(Error::InconsistentFactorization(format!("{f} listed twice")));
            }
        }
        list.to_vec()
    };
    Ok(candidates
        .into_iter()
        .map(|f| {
            let k = fs.iter().map(|g| order_in(g, &f)).min().unwrap();
            (f, k)
        })
        .filter(|(_, k)| *k > 0)
        .collect())
}

fn max_log(values: impl Iterator<Item = LogRat>) -> LogRat {
    values.max_by(|a, b| a.argument().cmp(b.argument())).unwrap()
}

/// Direct place-by-place height of a tuple under the λ-twisted structure.
///
/// Ord places come from the common factors of the entries: univariate
/// tuples are factored; multivariate tuples need `ord_factors`, an
/// empty list asserting that the entries are coprime.
pub fn tuple_height_lambda_with(
    fs: &[MultiPoly],
    m: &LambdaMeasure,
    ord_factors: Option<&[MultiPoly]>,
) -> Result<HeightReport> {
    let nonzero: Vec<&MultiPoly> = fs.iter().filter(|f| !f.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::AllZeroTuple);
    }
    let mut finite: BTreeMap<Prime, Vec<LogRat>> = BTreeMap::new();
    for f in &nonzero {
        for (p, v) in finite_parts(f) {
            finite.entry(p).or_default().push(v);
        }
    }
    let mut parts = Vec::new();
    for (p, mut vals) in finite {
        // Entries whose coefficients are all p-units have Gauss norm 1.
        if vals.len() < nonzero.len() {
            vals.push(LogRat::zero());
        }
        let best = max_log(vals.into_iter());
        parts.push((PlaceL::QFinite(p), Estimate::exact(best.to_f64())));
    }
    let owned: Vec<MultiPoly> = nonzero.iter().map(|f| (*f).clone()).collect();
    parts.push((PlaceL::QArch, torus_logmax_integral(&owned, m.cfg())?));
    for (f, k) in common_ord_places(&nonzero, ord_factors)? {
        let w = m.ord_weight_unchecked(&f)?;
        parts.push((PlaceL::Ord(f), w.scale(-(k as f64))));
    }
    let max_deg = nonzero.iter().map(|f| f.total_degree().unwrap()).max().unwrap();
    parts.push((PlaceL::DegInfinity, Estimate::exact(m.lambda() * max_deg as f64)));
    Ok(HeightReport::from_parts(parts))
}

/// `h(f, 1)` for `f = num/den` in reduced form.
pub(crate) fn rat_height_lambda_with(f: &RatFunc, m: &LambdaMeasure) -> Result<HeightReport> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    tuple_height_lambda_with(&[f.num().clone(), f.den().clone()], m, Some(&[]))
}

/// `Σ_ω weight(ω)·ln|f|_ω` over every place where `f` is not a unit.
pub fn product_formula_lambda_report(f: &RatFunc, m: &LambdaMeasure) -> Result<HeightReport> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if !f.is_univariate() {
        return Err(Error::UnsupportedMultivariateFactorization);
    }
    let mut finite: BTreeMap<Prime, LogRat> = BTreeMap::new();
    for (p, v) in finite_parts(f.num()) {
        finite.insert(p, v);
    }
    for (p, v) in finite_parts(f.den()) {
        let e = finite.entry(p).or_insert_with(LogRat::zero);
        *e = e.sub(&v);
    }
    let mut parts: Vec<(PlaceL, Estimate)> =
        finite.into_iter().map(|(p, v)| (PlaceL::QFinite(p), Estimate::exact(v.to_f64()))).collect();
    let arch_num = mahler_jensen(f.num())?;
    let arch_den = mahler_jensen(f.den())?;
    parts.push((PlaceL::QArch, Estimate::sum([&arch_num, &arch_den.scale(-1.0)])));
    let mut ords: Vec<(MultiPoly, i64)> = Vec::new();
    for (side, sign) in [(f.num(), 1i64), (f.den(), -1)] {
        for (g, k) in factor_univariate(side)?.factors {
            ords.push((g, sign * k as i64));
        }
    }
    for (g, k) in ords {
        let w = m.ord_weight_unchecked(&g)?;
        parts.push((PlaceL::Ord(g), w.scale(-(k as f64))));
    }
    let deg = f.num().total_degree().unwrap() as f64 - f.den().total_degree().unwrap() as f64;
    parts.push((PlaceL::DegInfinity, Estimate::exact(m.lambda() * deg)));
    Ok(HeightReport::from_parts(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mahler::QuadratureConfig;
    use crate::polyring::{parse_poly, parse_ratfunc};

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    fn measure(lambda: f64) -> LambdaMeasure {
        LambdaMeasure::new(lambda, QuadratureConfig::default()).unwrap()
    }

    #[test]
    fn tuple_examples() {
        for lambda in [0.0, 0.5, 1.0, 2.0] {
            let m = measure(lambda);
            let r = tuple_height_lambda_with(&[p("1"), p("T")], &m, None).unwrap();
            assert_eq!(r.total.value, lambda);
            assert!(r.total.is_exact());
            let r = tuple_height_lambda_with(&[p("1"), p("1")], &m, None).unwrap();
            assert_eq!(r.total.value, 0.0);
            let r = tuple_height_lambda_with(&[p("2"), p("3")], &m, None).unwrap();
            assert!((r.total.value - 3f64.ln()).abs() < 1e-15);
        }
        let m = measure(1.0);
        assert_eq!(tuple_height_lambda_with(&[MultiPoly::zero()], &m, None), Err(Error::AllZeroTuple));
    }

    #[test]
    fn common_factor_lowers_height() {
        let m = measure(1.0);
        let coprime = tuple_height_lambda_with(&[p("T + 1"), p("T - 3")], &m, None).unwrap();
        assert!(coprime.breakdown.iter().all(|(pl, _)| !matches!(pl, PlaceL::Ord(_))));
        let f = &p("T + 2") * &p("T + 1");
        let g = &p("T + 2") * &p("T - 3");
        let r = tuple_height_lambda_with(&[f, g], &m, None).unwrap();
        let w = m.ord_weight_unchecked(&p("T + 2")).unwrap();
        assert_eq!(r.get(&PlaceL::Ord(p("T + 2"))).unwrap().value, -w.value);
        assert!(w.value > 0.0);
    }

    #[test]
    fn rational_function_examples() {
        let m = measure(1.0);
        assert_eq!(rat_height_lambda_with(&parse_ratfunc("T").unwrap(), &m).unwrap().total.value, 1.0);
        assert_eq!(rat_height_lambda_with(&parse_ratfunc("1").unwrap(), &m).unwrap().total.value, 0.0);
        let r = rat_height_lambda_with(&parse_ratfunc("2").unwrap(), &m).unwrap();
        assert!((r.total.value - 2f64.ln()).abs() < 1e-15);
        assert_eq!(rat_height_lambda_with(&parse_ratfunc("0").unwrap(), &m), Err(Error::ZeroFunction));
    }

    #[test]
    fn product_formula_examples() {
        let m = measure(1.0);
        for s in ["7/3", "-1", "T"] {
            let r = product_formula_lambda_report(&parse_ratfunc(s).unwrap(), &m).unwrap();
            assert_eq!(r.total.value, 0.0, "{s}");
        }
        let m = measure(0.5);
        let r = product_formula_lambda_report(&parse_ratfunc("(x-1)/(x+1)").unwrap(), &m).unwrap();
        assert!(r.total.value.abs() <= r.total.abs_error_bound + 1e-6);
        let r = product_formula_lambda_report(&parse_ratfunc("(6x^3 - 3x + 9)/(4x^2 + 7)").unwrap(), &m).unwrap();
        assert!(r.total.value.abs() <= r.total.abs_error_bound + 1e-6, "{r:?}");
    }
}
