//! Text and JSON forms of polynomials and rational functions.
//!
//! Text grammar: signed terms joined by `+`/`-`, each term
//! `[Rat][*]var(^exp)(*var(^exp))*`, variables `[A-Za-z][A-Za-z0-9]*`.

use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{MultiPoly, RatFunc};
use crate::arith::{parse_rat_at, Rat};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if pred(b)) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn coefficient(&mut self) -> Result<Option<Rat>> {
        if !matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            return Ok(None);
        }
        let start = self.pos;
        self.take_while(|b| b.is_ascii_digit());
        if self.peek() == Some(b'/') {
            self.pos += 1;
            if self.take_while(|b| b.is_ascii_digit()).is_empty() {
                return Err(self.error("expected denominator digits"));
            }
        }
        parse_rat_at(&self.src[start..self.pos], start).map(Some)
    }

    fn factor(&mut self) -> Result<(String, u32)> {
        if !matches!(self.peek(), Some(b) if b.is_ascii_alphabetic()) {
            return Err(self.error("expected variable"));
        }
        let name = self.take_while(|b| b.is_ascii_alphanumeric()).to_string();
        self.skip_ws();
        let mut exp = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.take_while(|b| b.is_ascii_digit());
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            exp = digits.parse().map_err(|_| self.error("exponent too large"))?;
        }
        Ok((name, exp))
    }

    fn term(&mut self) -> Result<(Rat, Vec<(String, u32)>)> {
        self.skip_ws();
        let coeff = self.coefficient()?;
        let mut factors = Vec::new();
        self.skip_ws();
        let mut need_factor = false;
        if coeff.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
            self.skip_ws();
            need_factor = true;
        }
        if need_factor || coeff.is_none() || matches!(self.peek(), Some(b) if b.is_ascii_alphabetic()) {
            factors.push(self.factor()?);
            loop {
                self.skip_ws();
                if self.peek() != Some(b'*') {
                    break;
                }
                self.pos += 1;
                self.skip_ws();
                factors.push(self.factor()?);
            }
        }
        Ok((coeff.unwrap_or_else(Rat::one), factors))
    }
}

/// Parses the polynomial text grammar.
pub fn parse_poly(text: &str) -> Result<MultiPoly> {
    let mut cur = Cursor { src: text, pos: 0 };
    let mut raw: Vec<(Rat, Vec<(String, u32)>)> = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.error("empty polynomial"));
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let mut negative = false;
        match cur.peek() {
            Some(b'+') => cur.pos += 1,
            Some(b'-') => {
                negative = true;
                cur.pos += 1
            }
            Some(_) if first => {}
            Some(_) => return Err(cur.error("expected '+' or '-'")),
            None => break,
        }
        first = false;
        let (c, f) = cur.term()?;
        raw.push((if negative { -c } else { c }, f));
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
    }
    let mut vars: Vec<String> = raw.iter().flat_map(|(_, f)| f.iter().map(|(v, _)| v.clone())).collect();
    vars.sort();
    vars.dedup();
    let terms: Vec<_> = raw
        .into_iter()
        .map(|(c, f)| {
            let mut e = vec![0u32; vars.len()];
            for (v, d) in f {
                e[vars.binary_search(&v).unwrap()] += d;
            }
            (e, c)
        })
        .collect();
    Ok(MultiPoly::new(vars, terms))
}

/// `(num)/(den)`, `(num)`, `poly/(den)` or a bare polynomial.
pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    let t = text.trim();
    let base = text.len() - text.trim_start().len();
    let group_end = |s: &str, from: usize| -> Result<usize> {
        let mut depth = 0;
        for (i, b) in s.bytes().enumerate().skip(from) {
            match b {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(i);
                    }
                }
                _ => {}
            }
        }
        Err(Error::Syntax { offset: base + from, message: "unbalanced parenthesis".into() })
    };
    let shifted = |e: Error, by: usize| match e {
        Error::Syntax { offset, message } => Error::Syntax { offset: offset + by, message },
        Error::DivisionByZeroCoefficient { offset } => Error::DivisionByZeroCoefficient { offset: offset + by },
        other => other,
    };
    let (num, rest, rest_at) = if t.starts_with('(') {
        let end = group_end(t, 0)?;
        (parse_poly(&t[1..end]).map_err(|e| shifted(e, base + 1))?, t[end + 1..].trim_start(), end + 1)
    } else if let Some(i) = t.find("/(") {
        (parse_poly(&t[..i]).map_err(|e| shifted(e, base))?, &t[i..], i)
    } else {
        return RatFunc::new(parse_poly(t).map_err(|e| shifted(e, base))?, MultiPoly::one());
    };
    if rest.is_empty() {
        return RatFunc::new(num, MultiPoly::one());
    }
    let at = base + rest_at + (t.len() - rest_at - rest.len());
    let Some(after) = rest.strip_prefix('/') else {
        return Err(Error::Syntax { offset: at, message: "expected '/'".into() });
    };
    let after = after.trim_start();
    let inner_at = at + (rest.len() - after.len());
    if !after.starts_with('(') {
        return Err(Error::Syntax { offset: inner_at, message: "expected '('".into() });
    }
    let end = group_end(after, 0)?;
    if !after[end + 1..].trim().is_empty() {
        return Err(Error::Syntax { offset: inner_at + end + 1, message: "trailing input".into() });
    }
    let den = parse_poly(&after[1..end]).map_err(|e| shifted(e, inner_at + 1))?;
    if den.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    RatFunc::new(num, den)
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    c: String,
    e: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    vars: Vec<String>,
    terms: Vec<JsonTerm>,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        JsonPoly {
            vars: self.vars().to_vec(),
            terms: self
                .terms()
                .iter()
                .rev()
                .map(|(e, c)| JsonTerm { c: c.to_string(), e: e.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = JsonPoly::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            if t.e.len() != raw.vars.len() {
                return Err(D::Error::custom("exponent length does not match vars"));
            }
            let c = crate::arith::parse_rat(&t.c).map_err(D::Error::custom)?;
            terms.push((t.e, c));
        }
        for v in &raw.vars {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric());
            if !ok {
                return Err(D::Error::custom(format!("bad variable name {v:?}")));
            }
        }
        Ok(MultiPoly::new(raw.vars, terms))
    }
}

/// Accepts either the text grammar or the JSON object form.
pub fn parse_poly_any(text: &str) -> Result<MultiPoly> {
    let t = text.trim_start();
    if t.starts_with('{') {
        serde_json::from_str(t).map_err(|e| Error::Syntax { offset: e.column().saturating_sub(1), message: e.to_string() })
    } else {
        parse_poly(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};

    #[test]
    fn grammar_examples() {
        let f = parse_poly("3/2*T1^2*T2 - 7").unwrap();
        assert_eq!(f.vars(), ["T1", "T2"]);
        assert_eq!(f.terms()[&vec![2, 1]], rat_frac(3, 2));
        assert_eq!(f.terms()[&vec![0, 0]], rat(-7));
        let g = parse_poly("x^2-1").unwrap();
        assert!(g.is_univariate());
        assert_eq!(parse_poly("1/0*x"), Err(Error::DivisionByZeroCoefficient { offset: 0 }));
    }

    #[test]
    fn implicit_multiplication_and_signs() {
        assert_eq!(parse_poly("2x + 3").unwrap(), parse_poly("2*x+3").unwrap());
        assert_eq!(parse_poly("-x - -0").ok(), None);
        assert_eq!(parse_poly("- x*x").unwrap(), parse_poly("-x^2").unwrap());
        assert_eq!(parse_poly("x + x").unwrap(), parse_poly("2x").unwrap());
        assert!(parse_poly("x - x").unwrap().is_zero());
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_poly("x + * y") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse_poly("2x^") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        match parse_poly("x y") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x + 3/0"), Err(Error::DivisionByZeroCoefficient { offset: 4 })));
    }

    #[test]
    fn json_round_trip() {
        let f = parse_poly("3/2*T1^2*T2 - 7").unwrap();
        let js = serde_json::to_string(&f).unwrap();
        assert_eq!(js, r#"{"vars":["T1","T2"],"terms":[{"c":"3/2","e":[2,1]},{"c":"-7","e":[0,0]}]}"#);
        assert_eq!(parse_poly_any(&js).unwrap(), f);
    }

    #[test]
    fn ratfunc_text() {
        let f = parse_ratfunc("(x-1)/(x+1)").unwrap();
        assert_eq!(f.num(), &parse_poly("x-1").unwrap());
        assert_eq!(f.den(), &parse_poly("x+1").unwrap());
        let g = parse_ratfunc("x^2/(x+1)").unwrap();
        assert_eq!(g.num(), &parse_poly("x^2").unwrap());
        let h = parse_ratfunc("3/2*x").unwrap();
        assert_eq!(h.den(), &MultiPoly::one());
        assert!(parse_ratfunc("(x)/(0)").is_err());
        assert!(parse_ratfunc("(x-1)(x+1)").is_err());
    }
}
