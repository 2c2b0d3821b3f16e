//! The residue field `K = F_{ell^d}` where `d` is the order of `ell` modulo
//! `p`, so that `K` is the smallest extension of `F_ell` holding a primitive
//! `p`-th root of unity.

use std::fmt;

use super::poly::{self, Poly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct KElem(pub u16);

impl fmt::Debug for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct KField {
    ell: u32,
    p: u32,
    d: u32,
    size: u32,
    modulus: Poly,
    add: Vec<u16>,
    neg: Vec<u16>,
    log: Vec<u32>,
    exp: Vec<u16>,
    omega: KElem,
    factors: Vec<Poly>,
    factor_roots: Vec<KElem>,
}

/// Multiplicative order of `a` modulo `m`.
pub fn mult_order(a: u32, m: u32) -> u32 {
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}

impl KField {
    /// Builds `K` for the pair `(ell, p)`. Deterministic: the modulus is the
    /// smallest monic irreducible of degree `d`, and `omega` is
    /// `x0^{(ell^d - 1)/p}` for the first `x0` in enumeration order whose power
    /// is not 1.
    pub fn new(ell: u32, p: u32) -> Result<Self> {
        if !poly::is_prime(ell as u64) {
            return Err(Error::NotPrime(ell as u64));
        }
        if !poly::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if ell == p {
            return Err(Error::EllEqualsP { ell });
        }
        let d = mult_order(ell % p, p);
        let size = ell.pow(d);
        if size > 1 << 16 {
            return Err(Error::TooLarge(format!("F_{ell}^{d}")));
        }
        let modulus = poly::smallest_irreducible(d as usize, ell);
        let n = size as usize;
        let to_poly = |k: usize| -> Poly {
            let mut c = Vec::with_capacity(d as usize);
            let mut k = k;
            for _ in 0..d {
                c.push((k % ell as usize) as u32);
                k /= ell as usize;
            }
            c
        };
        let from_poly = |c: &[u32]| -> u16 {
            let mut k = 0usize;
            for i in (0..d as usize).rev() {
                k = k * ell as usize + c.get(i).copied().unwrap_or(0) as usize;
            }
            k as u16
        };
        let polys: Vec<Poly> = (0..n).map(to_poly).collect();
        let mut add = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = (0..d as usize).map(|i| (polys[a][i] + polys[b][i]) % ell).collect();
                add[a * n + b] = from_poly(&s);
            }
        }
        let mut neg = vec![0u16; n];
        for a in 0..n {
            let s: Vec<u32> = polys[a].iter().map(|&c| (ell - c) % ell).collect();
            neg[a] = from_poly(&s);
        }
        let mulp = |a: usize, b: usize| -> usize {
            from_poly(&poly::rem(&poly::mul(&polys[a], &polys[b], ell), &modulus, ell)) as usize
        };
        // primitive element: smallest element of order size - 1
        let prim = (1..n)
            .find(|&g| {
                let mut x = 1usize;
                for k in 1..n {
                    x = mulp(x, g);
                    if x == 1 {
                        return k == n - 1;
                    }
                }
                false
            })
            .expect("cyclic multiplicative group");
        let mut exp = vec![0u16; 2 * (n - 1)];
        let mut log = vec![0u32; n];
        let mut x = 1usize;
        for k in 0..n - 1 {
            exp[k] = x as u16;
            exp[k + n - 1] = x as u16;
            log[x] = k as u32;
            x = mulp(x, prim);
        }
        let mut field = KField {
            ell,
            p,
            d,
            size,
            modulus,
            add,
            neg,
            log,
            exp,
            omega: KElem(0),
            factors: Vec::new(),
            factor_roots: Vec::new(),
        };
        let e = (size - 1) / p;
        field.omega = (1..n)
            .map(|x0| field.pow(KElem(x0 as u16), e as u64))
            .find(|&w| w != field.one())
            .expect("K contains a primitive p-th root of unity");
        field.factors = poly::equal_degree_factors(&poly::cyclotomic(p, ell), d as usize, ell);
        debug_assert_eq!(field.factors.len() as u32 * d, p - 1);
        field.factor_roots = field
            .factors
            .iter()
            .map(|g| {
                (1..n)
                    .map(|k| KElem(k as u16))
                    .find(|&x| field.eval_prime_poly(g, x) == field.zero())
                    .expect("factor of the cyclotomic polynomial has a root in K")
            })
            .collect();
        Ok(field)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn size(&self) -> u32 {
        self.size
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The distinguished element of multiplicative order `p`.
    pub fn omega(&self) -> KElem {
        self.omega
    }
    /// Monic irreducible factors of the `p`-th cyclotomic polynomial mod `ell`.
    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }
    /// The root in `K` of factor `index`: the image of `zeta` under reduction.
    pub fn factor_root(&self, index: usize) -> Result<KElem> {
        self.factor_roots
            .get(index)
            .copied()
            .ok_or(Error::FactorIndex { index, count: self.factors.len() })
    }

    pub fn elements(&self) -> impl Iterator<Item = KElem> {
        (0..self.size).map(|k| KElem(k as u16))
    }

    #[inline]
    pub fn zero(&self) -> KElem {
        KElem(0)
    }
    #[inline]
    pub fn one(&self) -> KElem {
        KElem(1)
    }
    #[inline]
    pub fn from_int(&self, k: i64) -> KElem {
        KElem(k.rem_euclid(self.ell as i64) as u16)
    }
    #[inline]
    pub fn from_u64(&self, k: u64) -> KElem {
        KElem((k % self.ell as u64) as u16)
    }

    #[inline]
    pub fn add(&self, a: KElem, b: KElem) -> KElem {
        if self.d == 1 {
            let s = a.0 as u32 + b.0 as u32;
            KElem(if s >= self.ell { s - self.ell } else { s } as u16)
        } else {
            KElem(self.add[a.0 as usize * self.size as usize + b.0 as usize])
        }
    }
    #[inline]
    pub fn neg(&self, a: KElem) -> KElem {
        KElem(self.neg[a.0 as usize])
    }
    #[inline]
    pub fn sub(&self, a: KElem, b: KElem) -> KElem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: KElem, b: KElem) -> KElem {
        if a.0 == 0 || b.0 == 0 {
            return KElem(0);
        }
        if self.d == 1 {
            return KElem((a.0 as u32 * b.0 as u32 % self.ell) as u16);
        }
        KElem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }
    pub fn inv(&self, a: KElem) -> Option<KElem> {
        if a.0 == 0 {
            return None;
        }
        let n1 = self.size - 1;
        Some(KElem(self.exp[((n1 - self.log[a.0 as usize]) % n1) as usize]))
    }
    pub fn pow(&self, a: KElem, k: u64) -> KElem {
        if k == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return self.zero();
        }
        let n1 = (self.size - 1) as u64;
        KElem(self.exp[((self.log[a.0 as usize] as u64 * (k % n1)) % n1) as usize])
    }

    /// Evaluates a polynomial with coefficients in `F_ell` at `x`.
    pub fn eval_prime_poly(&self, f: &[u32], x: KElem) -> KElem {
        f.iter().rev().fold(self.zero(), |acc, &c| self.add(self.mul(acc, x), self.from_int(c as i64)))
    }

    /// `dst -= c * src`, elementwise.
    pub fn sub_scaled(&self, dst: &mut [KElem], c: KElem, src: &[KElem]) {
        if c.0 == 0 {
            return;
        }
        if self.d == 1 {
            let ell = self.ell;
            let f = ell - c.0 as u32;
            for (x, &y) in dst.iter_mut().zip(src) {
                *x = KElem(((x.0 as u32 + f * y.0 as u32) % ell) as u16);
            }
        } else {
            let nc = self.neg(c);
            let lc = self.log[nc.0 as usize] as usize;
            let n = self.size as usize;
            for (x, &y) in dst.iter_mut().zip(src) {
                if y.0 != 0 {
                    let t = self.exp[lc + self.log[y.0 as usize] as usize];
                    *x = KElem(self.add[x.0 as usize * n + t as usize]);
                }
            }
        }
    }

    pub fn scale(&self, v: &mut [KElem], c: KElem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn dot(&self, a: &[KElem], b: &[KElem]) -> KElem {
        if self.d == 1 {
            let ell = self.ell;
            let chunk = self.lazy_steps() as usize;
            let mut acc = 0u32;
            for (ca, cb) in a.chunks(chunk).zip(b.chunks(chunk)) {
                let s: u32 = ca.iter().zip(cb).map(|(x, y)| x.0 as u32 * y.0 as u32).fold(0u32, u32::wrapping_add);
                acc = (acc + s % ell) % ell;
            }
            KElem(acc as u16)
        } else {
            a.iter().zip(b).fold(self.zero(), |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
        }
    }

    /// For `d = 1`: how many products of reduced elements fit in a `u32`
    /// on top of a reduced value.
    pub fn lazy_steps(&self) -> u32 {
        let sq = (self.ell - 1).max(1) * (self.ell - 1).max(1);
        ((u32::MAX - self.ell) / sq).max(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let k = KField::new(3, 2).unwrap();
        assert_eq!(k.d(), 1);
        assert_eq!(k.omega(), KElem(2));
        let k = KField::new(2, 3).unwrap();
        assert_eq!(k.d(), 2);
        assert_eq!(k.size(), 4);
        let k = KField::new(7, 3).unwrap();
        assert_eq!(k.d(), 1);
        assert!(k.omega() == KElem(2) || k.omega() == KElem(4));
        assert_eq!(KField::new(3, 3).unwrap_err(), Error::EllEqualsP { ell: 3 });
    }

    #[test]
    fn omega_has_order_p() {
        for (ell, p) in [(2, 3), (2, 5), (3, 5), (7, 5), (5, 3), (2, 7), (3, 2)] {
            let k = KField::new(ell, p).unwrap();
            assert_eq!(k.pow(k.omega(), p as u64), k.one());
            assert_ne!(k.omega(), k.one());
            // d minimal
            for dd in 1..k.d() {
                assert_ne!((ell.pow(dd) - 1) % p, 0);
            }
            assert_eq!((k.size() - 1) % p, 0);
            for i in 0..k.factors().len() {
                let r = k.factor_root(i).unwrap();
                assert_eq!(k.pow(r, p as u64), k.one());
                assert_ne!(r, k.one());
            }
        }
    }

    #[test]
    fn field_ops_consistent() {
        let k = KField::new(5, 3).unwrap();
        for a in k.elements() {
            for b in k.elements() {
                let ab = k.mul(a, b);
                if let Some(ib) = k.inv(b) {
                    assert_eq!(k.mul(ab, ib), a);
                }
                assert_eq!(k.sub(k.add(a, b), b), a);
            }
        }
        let mut v = vec![KElem(3), KElem(7), KElem(0)];
        let w = vec![KElem(1), KElem(2), KElem(24)];
        let c = KElem(11);
        let expect: Vec<KElem> = v.iter().zip(&w).map(|(&x, &y)| k.sub(x, k.mul(c, y))).collect();
        k.sub_scaled(&mut v, c, &w);
        assert_eq!(v, expect);
    }
}
