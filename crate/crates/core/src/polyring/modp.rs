//! Polynomials over Z/p for a word-sized odd prime, lowest degree first.
//! Used only inside univariate factorization.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub(crate) type PPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn trim(&self, f: &mut PPoly) {
        while f.last() == Some(&0) {
            f.pop();
        }
    }

    #[cfg(test)]
    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> PPoly {
        let n = a.len().max(b.len());
        let mut out: PPoly =
            (0..n).map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect();
        self.trim(&mut out);
        out
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> PPoly {
        let n = a.len().max(b.len());
        let mut out: PPoly =
            (0..n).map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0))).collect();
        self.trim(&mut out);
        out
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> PPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        self.trim(&mut out);
        out
    }

    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (PPoly, PPoly) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let mut rem = a.to_vec();
        self.trim(&mut rem);
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut quot = vec![0u64; rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = self.mul(rem[k + db], inv);
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    rem[k + j] = self.sub(rem[k + j], self.mul(c, bj));
                }
            }
            quot[k] = c;
        }
        self.trim(&mut rem);
        self.trim(&mut quot);
        (quot, rem)
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> PPoly {
        self.divrem(a, b).1
    }

    pub fn monic(&self, f: &[u64]) -> PPoly {
        match f.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = self.inv(l);
                f.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> PPoly {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        self.trim(&mut x);
        self.trim(&mut y);
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn egcd(&self, a: &[u64], b: &[u64]) -> (PPoly, PPoly, PPoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        self.trim(&mut r0);
        self.trim(&mut r1);
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().expect("egcd of two zero polynomials"));
        let sc = |v: &[u64]| -> PPoly { v.iter().map(|&c| self.mul(c, inv)).collect() };
        (sc(&r0), sc(&s0), sc(&t0))
    }

    /// `base^e mod modulus`.
    pub fn powmod(&self, base: &[u64], mut e: u128, modulus: &[u64]) -> PPoly {
        let mut acc = vec![1u64];
        let mut b = self.rem(base, modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.poly_mul(&acc, &b), modulus);
            }
            b = self.rem(&self.poly_mul(&b, &b), modulus);
            e >>= 1;
        }
        acc
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(PPoly, usize)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((rest, deg));
                break;
            }
            h = self.powmod(&h, self.p as u128, &rest);
            let g = self.gcd(&rest, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a monic product of distinct irreducibles of degree `d`.
    pub fn equal_degree(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<PPoly> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        let e = (u128::from(self.p).pow(d as u32) - 1) / 2;
        loop {
            let mut a: PPoly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            self.trim(&mut a);
            if a.len() < 2 {
                continue;
            }
            let b = self.powmod(&a, e, f);
            let g = self.gcd(f, &self.poly_sub(&b, &[1]));
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial, sorted.
    pub fn factor_squarefree(&self, f: &[u64], rng: &mut ChaCha8Rng) -> Vec<PPoly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
        out
    }
}
