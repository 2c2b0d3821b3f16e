//! The field `GF(q)`, `q = p^e`, as residues modulo the smallest monic
//! irreducible polynomial of degree `e`. Elements are identified with the
//! integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}` built from their coefficient
//! tuple, which fixes the enumeration order.

use std::fmt;

use serde::Serialize;

use super::poly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct FqElem(pub u8);

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
pub struct FqField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    trace: Vec<u8>,
    generator: FqElem,
}

impl FqField {
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = poly::prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
        if q > 256 {
            return Err(Error::TooLarge(format!("GF({q})")));
        }
        let modulus = poly::smallest_irreducible(e as usize, p);
        let qs = q as usize;
        let to_poly = |k: usize| -> Vec<u32> {
            let mut c = Vec::with_capacity(e as usize);
            let mut k = k;
            for _ in 0..e {
                c.push((k % p as usize) as u32);
                k /= p as usize;
            }
            c
        };
        let from_poly = |c: &[u32]| -> u8 {
            let mut k = 0usize;
            for &ci in c.iter().rev() {
                k = k * p as usize + ci as usize;
            }
            k as u8
        };
        let polys: Vec<Vec<u32>> = (0..qs).map(to_poly).collect();
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let s: Vec<u32> = (0..e as usize).map(|i| (polys[a][i] + polys[b][i]) % p).collect();
                add[a * qs + b] = from_poly(&s);
                let m = poly::rem(&poly::mul(&polys[a], &polys[b], p), &modulus, p);
                mul[a * qs + b] = from_poly(&m);
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            for b in 0..qs {
                if add[a * qs + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        // absolute trace a + a^p + ... + a^{p^{e-1}}; lands in the prime field
        let mut trace = vec![0u8; qs];
        for (a, t) in trace.iter_mut().enumerate() {
            let mut x = a;
            let mut acc = 0usize;
            for _ in 0..e {
                acc = add[acc * qs + x] as usize;
                let mut y = 1usize;
                for _ in 0..p {
                    y = mul[y * qs + x] as usize;
                }
                x = y;
            }
            debug_assert!(acc < p as usize);
            *t = acc as u8;
        }
        let generator = (1..qs)
            .find(|&g| {
                let mut x = 1usize;
                for k in 1..qs {
                    x = mul[x * qs + g] as usize;
                    if x == 1 {
                        return k == qs - 1;
                    }
                }
                false
            })
            .map(|g| FqElem(g as u8))
            .expect("multiplicative group is cyclic");
        Ok(FqField { p, e, q, modulus, add, mul, neg, inv, trace, generator })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }
    pub fn one(&self) -> FqElem {
        FqElem(1)
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(|k| FqElem(k as u8))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q).map(|k| FqElem(k as u8))
    }

    /// `1, x, ..., x^{e-1}`: a basis of `GF(q)` over `GF(p)`.
    pub fn prime_basis(&self) -> Vec<FqElem> {
        (0..self.e).map(|i| FqElem(self.p.pow(i) as u8)).collect()
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> FqElem {
        FqElem(k.rem_euclid(self.p as i64) as u8)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.add[a.0 as usize * self.q as usize + b.0 as usize])
    }
    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }
    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.0 as usize])
    }
    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }
    /// Multiplicative inverse; `inv(0)` is `None`.
    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            None
        } else {
            Some(FqElem(self.inv[a.0 as usize]))
        }
    }
    pub fn pow(&self, a: FqElem, k: u64) -> FqElem {
        let mut r = self.one();
        for _ in 0..k {
            r = self.mul(r, a);
        }
        r
    }

    /// Absolute trace to `GF(p)`, as an integer in `0..p`.
    pub fn trace(&self, a: FqElem) -> u32 {
        self.trace[a.0 as usize] as u32
    }

    /// The smallest generator of the multiplicative group.
    pub fn generator(&self) -> FqElem {
        self.generator
    }

    /// Discrete logarithm to base `generator()`.
    pub fn log(&self, a: FqElem) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        let mut x = self.one();
        for k in 0..self.q - 1 {
            if x == a {
                return Some(k);
            }
            x = self.mul(x, self.generator);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_tables() {
        let f = FqField::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f.mul(FqElem(2), FqElem(2)), FqElem(3));
        assert_eq!(f.add(FqElem(2), FqElem(3)), FqElem(1));
        // Tr(a) = a + a^2
        let traces: Vec<u32> = f.elements().map(|a| f.trace(a)).collect();
        assert_eq!(traces, vec![0, 0, 1, 1]);
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = FqField::new(q).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
                if let Some(i) = f.inv(a) {
                    assert_eq!(f.mul(a, i), f.one());
                }
                assert_eq!(f.add(a, f.neg(a)), f.zero());
            }
        }
    }

    #[test]
    fn rejects_non_prime_power() {
        assert_eq!(FqField::new(6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn generator_logs() {
        let f = FqField::new(9).unwrap();
        for a in f.nonzero() {
            let k = f.log(a).unwrap();
            assert_eq!(f.pow(f.generator(), k as u64), a);
        }
    }
}
