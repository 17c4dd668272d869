//! Exact scalar arithmetic: rationals, primality, integer factorization and
//! logarithms of rationals kept in exact form.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or `p` with an optional leading minus.
pub fn parse_rat(text: &str) -> Result<Rat> {
    parse_rat_at(text.trim(), 0)
}

pub(crate) fn parse_rat_at(text: &str, offset: usize) -> Result<Rat> {
    let syntax = |message: &str| Error::Syntax { offset, message: message.to_string() };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits_ok = |s: &str, signed: bool| {
        let body = if signed { s.strip_prefix('-').unwrap_or(s) } else { s };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits_ok(num, true) {
        return Err(syntax("expected integer"));
    }
    let n: BigInt = num.parse().map_err(|_| syntax("bad integer"))?;
    let d: BigInt = match den {
        Some(d) => {
            if !digits_ok(d, false) {
                return Err(syntax("expected denominator"));
            }
            d.parse().map_err(|_| syntax("bad denominator"))?
        }
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::DivisionByZeroCoefficient { offset });
    }
    Ok(Rat::new(n, d))
}

/// Natural logarithm of a positive big integer without overflowing `f64`.
pub fn ln_biguint(n: &BigUint) -> f64 {
    assert!(!n.is_zero(), "ln of zero");
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln |q|` for nonzero `q`.
pub fn ln_abs_rat(q: &Rat) -> f64 {
    ln_biguint(q.numer().magnitude()) - ln_biguint(q.denom().magnitude())
}

/// Lossy conversion that stays finite for large numerators and denominators.
pub fn rat_to_f64(q: &Rat) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    sign * ln_abs_rat(q).exp()
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(n: &BigInt, p: &BigUint) -> u64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p.clone());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// Signed p-adic valuation of a nonzero rational.
pub fn rat_valuation(q: &Rat, p: &BigUint) -> i64 {
    int_valuation(q.numer(), p) as i64 - int_valuation(q.denom(), p) as i64
}

// ---------------------------------------------------------------------------
// primes

const SIEVE_LIMIT: usize = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT + 1];
        let mut out = Vec::new();
        for i in 2..=SIEVE_LIMIT {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= SIEVE_LIMIT {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

const MR_BASES: [u32; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

fn miller_rabin(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'bases: for &a in MR_BASES.iter() {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality by sieve lookup, trial division and Miller–Rabin.
///
/// The first 13 bases already make Miller–Rabin deterministic below 3.3e24; the
/// remaining bases are used as extra witnesses above that range.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        if small <= SIEVE_LIMIT as u64 {
            return small_primes().binary_search(&(small as u32)).is_ok();
        }
    }
    for &p in small_primes().iter().take(200) {
        if (n % p).is_zero() {
            return false;
        }
    }
    miller_rabin(n)
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = one.clone();
    let mut g = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 128u64;
    let absdiff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * absdiff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = absdiff(&x, &ys).gcd(n);
            if g != one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_cofactor(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    for c in 1..64u64 {
        if let Some(d) = pollard_brent(&n, c) {
            let other = &n / &d;
            split_cofactor(d, out);
            split_cofactor(other, out);
            return;
        }
    }
    panic!("Pollard rho failed to split {n}");
}

/// Prime factorization as a map prime -> exponent.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        while (&rest % p).is_zero() {
            rest /= p;
            *out.entry(pb.clone()).or_insert(0) += 1;
        }
    }
    let mut big = Vec::new();
    split_cofactor(rest, &mut big);
    for p in big {
        *out.entry(p).or_insert(0) += 1;
    }
    out
}

/// Primes dividing the numerator or denominator of any of `values`.
pub fn prime_support<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Vec<BigUint> {
    let mut primes = std::collections::BTreeSet::new();
    for q in values {
        if q.is_zero() {
            continue;
        }
        primes.extend(factorize(q.numer().magnitude()).into_keys());
        primes.extend(factorize(q.denom().magnitude()).into_keys());
    }
    primes.into_iter().collect()
}

// ---------------------------------------------------------------------------
// exact logarithms

/// `ln(q)` for a positive rational `q`, kept exact.
///
/// Sums of such values are products of their arguments, so identities like the
/// product formula can be checked with zero tolerance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogRat(Rat);

impl LogRat {
    pub fn zero() -> Self {
        LogRat(Rat::one())
    }

    pub fn ln(q: Rat) -> Self {
        assert!(q.is_positive(), "LogRat argument must be positive");
        LogRat(q)
    }

    /// `ln |q|` for nonzero `q`.
    pub fn ln_abs(q: &Rat) -> Self {
        LogRat(q.abs())
    }

    /// `k · ln p`.
    pub fn prime_multiple(p: &BigUint, k: i64) -> Self {
        let base = Rat::from_integer(BigInt::from_biguint(Sign::Plus, p.clone()));
        LogRat(pow_rat(&base, k))
    }

    pub fn argument(&self) -> &Rat {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_one()
    }

    pub fn add(&self, other: &LogRat) -> LogRat {
        LogRat(&self.0 * &other.0)
    }

    pub fn sub(&self, other: &LogRat) -> LogRat {
        LogRat(&self.0 / &other.0)
    }

    pub fn neg(&self) -> LogRat {
        LogRat(self.0.recip())
    }

    pub fn scale(&self, k: i64) -> LogRat {
        LogRat(pow_rat(&self.0, k))
    }

    pub fn to_f64(&self) -> f64 {
        ln_abs_rat(&self.0)
    }
}

impl std::iter::Sum for LogRat {
    fn sum<I: Iterator<Item = LogRat>>(iter: I) -> LogRat {
        iter.fold(LogRat::zero(), |acc, x| acc.add(&x))
    }
}

impl fmt::Display for LogRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ln {}", self.0)
    }
}

pub fn pow_rat(q: &Rat, k: i64) -> Rat {
    let base = if k < 0 { q.recip() } else { q.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}
