use std::fmt;

use crate::error::{Error, Result};
use crate::polyring::{MultiPoly, RatFunc};

/// A polynomial in `var` with coefficients in the field of the other
/// variables, leading coefficient 1. Coefficients run from degree 0 up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicPoly {
    pub var: String,
    pub coeffs: Vec<RatFunc>,
}

impl MonicPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `F / a₀` where `a₀` is the leading coefficient of `F` in `var`.
pub fn monic_normalize(f: &MultiPoly, var: &str) -> Result<MonicPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree_in(var) == 0 {
        return Err(Error::DegreeZeroInVariable(var.to_string()));
    }
    let cs = f.coeffs_in(var);
    let lead = cs.last().unwrap().clone();
    let coeffs = cs.into_iter().map(|c| RatFunc::new(c, lead.clone())).collect::<Result<Vec<_>>>()?;
    Ok(MonicPoly { var: var.to_string(), coeffs })
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{k}", self.var),
            };
            let one = RatFunc::from_poly(MultiPoly::one());
            let text = c.to_string();
            let text = if text.contains(' ') { format!("({text})") } else { text };
            match (c == &one, mono.is_empty()) {
                (true, false) => write!(f, "{mono}")?,
                (_, true) => write!(f, "{text}")?,
                (false, false) => write!(f, "{text}*{mono}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, parse_ratfunc};

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn monic_examples() {
        let m = monic_normalize(&p("2T^2 + 4T"), "T").unwrap();
        assert_eq!(m.coeffs, vec![parse_ratfunc("0").unwrap(), parse_ratfunc("2").unwrap(), parse_ratfunc("1").unwrap()]);
        let m = monic_normalize(&p("x*T + 1"), "T").unwrap();
        assert_eq!(m.coeffs, vec![parse_ratfunc("(1)/(x)").unwrap(), parse_ratfunc("1").unwrap()]);
        assert_eq!(m.to_string(), "T + (1)/(x)");
        let m = monic_normalize(&p("T^3"), "T").unwrap();
        assert_eq!(m.degree(), 3);
        assert_eq!(monic_normalize(&p("2T^2 + 4T"), "T").unwrap().to_string(), "T^2 + 2*T");
        assert_eq!(m.to_string(), "T^3");
        assert_eq!(monic_normalize(&p("x + 1"), "T"), Err(Error::DegreeZeroInVariable("T".into())));
    }
}
