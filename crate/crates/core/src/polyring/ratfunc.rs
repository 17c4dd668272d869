use std::fmt;

use num_traits::{One, Zero};

use super::upoly;
use super::MultiPoly;
use crate::arith::Rat;
use crate::error::{Error, Result};

/// Quotient of two polynomials with normalized denominator.
///
/// Common factors are cancelled eagerly when numerator and denominator
/// share at most one variable; multivariate fractions are only reduced
/// when the denominator divides the numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(RatFunc { num: MultiPoly::zero(), den: MultiPoly::one() });
        }
        let (mut num, mut den) = (num.trimmed(), den.trimmed());
        let mut vars = num.occurring_vars();
        vars.extend(den.occurring_vars());
        vars.sort();
        vars.dedup();
        if vars.len() == 1 {
            let v = &vars[0];
            let a = num.with_vars(std::slice::from_ref(v)).univariate_coeffs().unwrap().1;
            let b = den.with_vars(std::slice::from_ref(v)).univariate_coeffs().unwrap().1;
            let g = upoly::gcd(&a, &b);
            if g.len() > 1 {
                num = MultiPoly::from_univariate(v, &upoly::divrem(&a, &g).0);
                den = MultiPoly::from_univariate(v, &upoly::divrem(&b, &g).0);
            }
        } else if vars.len() > 1 {
            if let Some(q) = num.div_exact(&den) {
                num = q;
                den = MultiPoly::one();
            }
        }
        let (_, prim) = den.content_primitive()?;
        let k = den.leading_coeff().unwrap() / prim.leading_coeff().unwrap();
        num = num.scale(&(Rat::one() / k));
        Ok(RatFunc { num: num.trimmed(), den: prim.trimmed() })
    }

    pub fn from_poly(f: MultiPoly) -> Self {
        RatFunc::new(f, MultiPoly::one()).unwrap()
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(MultiPoly::constant(c))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_univariate(&self) -> bool {
        let mut v = self.num.occurring_vars();
        v.extend(self.den.occurring_vars());
        v.sort();
        v.dedup();
        v.len() <= 1
    }

    pub fn occurring_vars(&self) -> Vec<String> {
        let mut v = self.num.occurring_vars();
        v.extend(self.den.occurring_vars());
        v.sort_by(|a, b| super::poly::var_order(a, b));
        v.dedup();
        v
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &other.num, &self.den * &other.den).unwrap()
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        RatFunc::new(num, &self.den * &other.den).unwrap()
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::constant(Rat::zero());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl MultiPoly {
    pub(crate) fn is_one_poly(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::polyring::{parse_poly, parse_ratfunc};

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn univariate_reduction() {
        let f = RatFunc::new(p("x^2 - 1"), p("2x + 2")).unwrap();
        assert_eq!(f.num(), &p("1/2*x - 1/2"));
        assert_eq!(f.den(), &p("1"));
        let g = RatFunc::new(p("3"), p("-6x + 3")).unwrap();
        assert_eq!(g.den(), &p("2x - 1"));
        assert_eq!(g.num(), &p("-1"));
    }

    #[test]
    fn arithmetic() {
        let a = parse_ratfunc("(x-1)/(x+1)").unwrap();
        let b = a.inv().unwrap();
        assert_eq!(a.mul(&b), RatFunc::constant(rat(1)));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.to_string(), "(x - 1)/(x + 1)");
        assert_eq!(RatFunc::constant(rat(0)).inv(), Err(Error::ZeroFunction));
    }

    #[test]
    fn multivariate_exact_quotient() {
        let f = RatFunc::new(p("x^2*y - y^3"), p("x - y")).unwrap();
        assert_eq!(f.den(), &p("1"));
        assert_eq!(f.num(), &p("x*y + y^2"));
    }
}
