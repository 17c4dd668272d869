use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat_to_f64, Rat};
use crate::error::{Error, Result};

/// Exponent vector, dense over the polynomial's variable list.
pub type Exponents = Vec<u32>;

/// Sparse polynomial over Q in an ordered list of named variables.
///
/// Terms are keyed by exponent vector; the `BTreeMap` order is the
/// lexicographic monomial order with the first variable most significant, so
/// the last entry is the lex-leading term.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, Rat>,
}

/// Natural ordering of variable names: `T2 < T10`, `x < y`.
pub fn var_order(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, &str) {
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        s.split_at(cut)
    }
    let (pa, da) = split(a);
    let (pb, db) = split(b);
    pa.cmp(pb)
        .then(da.trim_start_matches('0').len().cmp(&db.trim_start_matches('0').len()))
        .then(da.trim_start_matches('0').cmp(db.trim_start_matches('0')))
        .then(a.cmp(b))
}

pub(crate) fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut all: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
    all.sort_by(|x, y| var_order(x, y));
    all.dedup();
    all
}

impl MultiPoly {
    /// Builds a polynomial from raw terms, summing duplicates, dropping
    /// zeros and sorting the variable list canonically.
    pub fn new(vars: Vec<String>, terms: impl IntoIterator<Item = (Exponents, Rat)>) -> Self {
        let mut uniq = vars.clone();
        uniq.sort_by(|a, b| var_order(a, b));
        uniq.dedup();
        let slot: Vec<usize> =
            vars.iter().map(|v| uniq.binary_search_by(|u| var_order(u, v)).unwrap()).collect();
        let mut map: BTreeMap<Exponents, Rat> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length must match variables");
            if c.is_zero() {
                continue;
            }
            let mut key = vec![0; uniq.len()];
            for (j, &d) in e.iter().enumerate() {
                key[slot[j]] += d;
            }
            *map.entry(key).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        MultiPoly { vars: uniq, terms: map }
    }

    pub fn zero() -> Self {
        MultiPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        MultiPoly::new(Vec::new(), [(Vec::new(), c)])
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rat::one())
    }

    pub fn var(name: &str) -> Self {
        MultiPoly::new(vec![name.to_string()], [(vec![1], Rat::one())])
    }

    /// Polynomial in `var` from dense coefficients, lowest degree first.
    pub fn from_univariate(var: &str, coeffs: &[Rat]) -> Self {
        MultiPoly::new(
            vec![var.to_string()],
            coeffs.iter().enumerate().map(|(d, c)| (vec![d as u32], c.clone())),
        )
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rat> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&d| d == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rat::zero))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Variables that actually occur with positive exponent.
    pub fn occurring_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Drops variables that never occur.
    pub fn trimmed(&self) -> MultiPoly {
        let keep = self.occurring_vars();
        if keep.len() == self.vars.len() {
            return self.clone();
        }
        self.with_vars_unchecked(&keep)
    }

    /// Re-embeds into a variable list; every occurring variable must be present.
    pub fn with_vars(&self, vars: &[String]) -> MultiPoly {
        for v in self.occurring_vars() {
            assert!(vars.contains(&v), "variable {v} missing from target list");
        }
        self.with_vars_unchecked(vars)
    }

    fn with_vars_unchecked(&self, vars: &[String]) -> MultiPoly {
        let map: Vec<Option<usize>> = vars.iter().map(|v| self.var_index(v)).collect();
        let terms = self.terms.iter().map(|(e, c)| {
            (map.iter().map(|m| m.map(|i| e[i]).unwrap_or(0)).collect::<Vec<_>>(), c.clone())
        });
        MultiPoly::new(vars.to_vec(), terms)
    }

    /// Both operands over the union of their variables.
    pub fn align(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let vars = merge_vars(&a.vars, &b.vars);
        (a.with_vars(&vars), b.with_vars(&vars))
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one().with_vars(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// `f = ±c·F` with `c > 0` and `F` integer-coefficient, primitive and with
    /// positive lex-leading coefficient. The sign is that of the lex-leading
    /// coefficient of `f`.
    pub fn content_primitive(&self) -> Result<(Rat, MultiPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let content = Rat::new(num_gcd, den_lcm);
        let sign = if self.leading_coeff().unwrap().is_negative() { -Rat::one() } else { Rat::one() };
        let prim = self.scale(&(sign / &content));
        Ok((content, prim))
    }

    pub fn is_canonical(&self) -> bool {
        match self.content_primitive() {
            Ok((c, _)) => {
                self.has_integer_coeffs() && c.is_one() && self.leading_coeff().unwrap().is_positive()
            }
            Err(_) => false,
        }
    }

    /// Exact quotient when `divisor` divides `self`, by lex-order division.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (mut rem, d) = MultiPoly::align(self, divisor);
        let vars = rem.vars.clone();
        let (lead_e, lead_c) = {
            let (e, c) = d.leading_term().unwrap();
            (e.clone(), c.clone())
        };
        let mut quot: BTreeMap<Exponents, Rat> = BTreeMap::new();
        while let Some((e, c)) = rem.leading_term() {
            if e.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let shift: Exponents = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let coeff = c / &lead_c;
            let term = MultiPoly { vars: vars.clone(), terms: BTreeMap::from([(shift.clone(), coeff.clone())]) };
            rem = &rem - &(&term * &d);
            *quot.entry(shift).or_insert_with(Rat::zero) += coeff;
        }
        Some(MultiPoly::new(vars, quot))
    }

    pub fn divides(&self, other: &MultiPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Dense coefficients when at most one variable occurs.
    pub fn univariate_coeffs(&self) -> Option<(Option<String>, Vec<Rat>)> {
        let occ = self.occurring_vars();
        match occ.len() {
            0 => Some((None, self.constant_value().into_iter().filter(|c| !c.is_zero()).collect())),
            1 => {
                let i = self.var_index(&occ[0]).unwrap();
                let deg = self.degree_in(&occ[0]) as usize;
                let mut coeffs = vec![Rat::zero(); deg + 1];
                for (e, c) in &self.terms {
                    coeffs[e[i] as usize] = c.clone();
                }
                Some((Some(occ[0].clone()), coeffs))
            }
            _ => None,
        }
    }

    pub fn is_univariate(&self) -> bool {
        self.occurring_vars().len() <= 1
    }

    /// Coefficients as polynomials in the remaining variables, indexed by
    /// degree in `var`.
    pub fn coeffs_in(&self, var: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(var) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(var) as usize;
        let others: Vec<String> = self.vars.iter().filter(|v| *v != var).cloned().collect();
        let mut buckets: Vec<Vec<(Exponents, Rat)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let rest: Exponents = e.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &d)| d).collect();
            buckets[e[i] as usize].push((rest, c.clone()));
        }
        buckets.into_iter().map(|b| MultiPoly::new(others.clone(), b)).collect()
    }

    /// Evaluation at a complex point given in `self.vars()` order.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = Complex64::new(rat_to_f64(c), 0.0);
            for (z, &d) in point.iter().zip(e) {
                if d > 0 {
                    m *= z.powu(d);
                }
            }
            acc += m;
        }
        acc
    }

    /// Floating-point view for repeated evaluation.
    pub fn to_float_terms(&self) -> Vec<(Exponents, f64)> {
        self.terms.iter().map(|(e, c)| (e.clone(), rat_to_f64(c))).collect()
    }

    pub fn substitute_var_name(&self, from: &str, to: &str) -> MultiPoly {
        let vars = self.vars.iter().map(|v| if v == from { to.to_string() } else { v.clone() }).collect();
        MultiPoly::new(vars, self.terms.clone())
    }

    fn combine(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        let (a, b) = MultiPoly::align(self, other);
        let mut terms = a.terms;
        for (e, c) in b.terms {
            let entry = terms.entry(e).or_insert_with(Rat::zero);
            if negate {
                *entry -= c;
            } else {
                *entry += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { vars: a.vars, terms }
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.trimmed(), other.trimmed());
        a.vars == b.vars && a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl Hash for MultiPoly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let t = self.trimmed();
        t.vars.hash(state);
        for (e, c) in &t.terms {
            e.hash(state);
            c.hash(state);
        }
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.combine(rhs, false)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.combine(rhs, true)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::align(self, rhs);
        let mut terms: BTreeMap<Exponents, Rat> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *terms.entry(e).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { vars: a.vars, terms }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &d)| d > 0)
                .map(|(v, &d)| if d == 1 { v.clone() } else { format!("{v}^{d}") })
                .collect();
            let mono = mono.join("*");
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (k, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};
    use crate::polyring::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&p("x+1") * &p("x-1"), p("x^2-1"));
        assert!((&p("x+1") * &MultiPoly::zero()).is_zero());
        assert_eq!(&p("2x+1") * &p("2x+3"), p("4x^2+8x+3"));
        let f = p("x*y + 3");
        let g = p("y^2 - x");
        assert_eq!((&f * &g).total_degree(), Some(4));
    }

    #[test]
    fn content_examples() {
        assert_eq!(p("6x + 9").content_primitive().unwrap(), (rat(3), p("2x+3")));
        assert_eq!(p("1/2*x").content_primitive().unwrap(), (rat_frac(1, 2), p("x")));
        let (c, f) = p("-4x^2 - 6y").content_primitive().unwrap();
        assert_eq!(c, rat(2));
        assert_eq!(f, p("2x^2 + 3y"));
        assert_eq!(MultiPoly::zero().content_primitive(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn exact_division() {
        let f = p("x^3*y - x*y^3");
        assert_eq!(f.div_exact(&p("x - y")).unwrap(), p("x^2*y + x*y^2"));
        assert!(f.div_exact(&p("x + 2")).is_none());
        assert_eq!(p("5").div_exact(&p("2")).unwrap(), p("5/2"));
    }

    #[test]
    fn variable_ordering_is_natural() {
        let f = p("T10 + T2 + T1");
        assert_eq!(f.vars(), ["T1", "T2", "T10"]);
        assert_eq!(f.to_string(), "T1 + T2 + T10");
    }

    #[test]
    fn equality_ignores_unused_variables() {
        let a = p("x + 1");
        let b = a.with_vars(&["x".to_string(), "y".to_string()]);
        assert_eq!(a, b);
        assert_eq!(b.occurring_vars(), ["x"]);
    }

    #[test]
    fn coefficients_in_a_variable() {
        let f = p("x*T^2 + 2T + y");
        let c = f.coeffs_in("T");
        assert_eq!(c, vec![p("y"), p("2"), p("x")]);
    }
}
