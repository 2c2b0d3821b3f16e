//! Cyclotomic integers `Z[zeta_p]` in the power basis `1, zeta, ..., zeta^{p-2}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<BigInt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt { p, coeffs: vec![BigInt::zero(); (p - 1) as usize] }
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = n.into();
        z
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let k = k.rem_euclid(p as i64) as usize;
        let mut full = vec![0i64; p as usize];
        full[k] = 1;
        Self::from_cyclic(p, &full)
    }

    /// Reduces a coefficient vector in `Z[x]/(x^p - 1)` (length `p`) modulo
    /// the cyclotomic polynomial.
    pub fn from_cyclic(p: u32, full: &[i64]) -> Self {
        debug_assert_eq!(full.len(), p as usize);
        let top = full[p as usize - 1];
        CycInt { p, coeffs: full[..p as usize - 1].iter().map(|&c| BigInt::from(c - top)).collect() }
    }

    pub fn from_coeffs(p: u32, coeffs: Vec<BigInt>) -> Self {
        assert_eq!(coeffs.len(), (p - 1) as usize);
        CycInt { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &CycInt) -> Result<()> {
        if self.p != other.p {
            Err(Error::PrimeMismatch(self.p, other.p))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        Ok(CycInt { p: self.p, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        Ok(CycInt { p: self.p, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn try_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j) % p] += a * b;
                }
            }
        }
        let top = full.pop().unwrap();
        Ok(CycInt { p: self.p, coeffs: full.into_iter().map(|c| c - &top).collect() })
    }

    pub fn scale(&self, k: &BigInt) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `cyc_arith`: one ring operation, failing on mismatched primes.
    /// `Neg` ignores `y` apart from the prime check.
    pub fn arith(op: CycOp, x: &CycInt, y: &CycInt) -> Result<CycInt> {
        match op {
            CycOp::Add => x.try_add(y),
            CycOp::Sub => x.try_sub(y),
            CycOp::Mul => x.try_mul(y),
            CycOp::Neg => {
                x.check(y)?;
                Ok(-x)
            }
        }
    }

    /// For `p = 2` the ring is `Z`; returns the integer value.
    pub fn as_integer(&self) -> Option<&BigInt> {
        (self.p == 2).then(|| &self.coeffs[0])
    }

    /// Integer iff all non-constant coefficients vanish.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}z")?,
                _ => write!(f, "{c}z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("cyclotomic prime mismatch")
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("cyclotomic prime mismatch")
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("cyclotomic prime mismatch")
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(p: u32) -> CycInt {
        CycInt::zeta_pow(p, 1)
    }

    #[test]
    fn p3_products() {
        let z = zeta(3);
        // zeta^2 = -1 - zeta
        assert_eq!(&z * &z, CycInt::from_coeffs(3, vec![BigInt::from(-1), BigInt::from(-1)]));
        let one_plus = &CycInt::one(3) + &z;
        assert_eq!(&one_plus * &one_plus, z);
    }

    #[test]
    fn p2_is_integer() {
        let z = zeta(2);
        assert_eq!(z.as_integer(), Some(&BigInt::from(-1)));
        let a = CycInt::from_int(2, 7);
        let b = CycInt::from_int(2, -3);
        assert_eq!((&a * &b).as_integer(), Some(&BigInt::from(-21)));
        assert_eq!((&a + &b).as_integer(), Some(&BigInt::from(4)));
    }

    #[test]
    fn mismatch_is_error() {
        let a = CycInt::one(3);
        let b = CycInt::one(5);
        assert_eq!(CycInt::arith(CycOp::Mul, &a, &b).unwrap_err(), Error::PrimeMismatch(3, 5));
    }

    #[test]
    fn zeta_has_order_p() {
        for p in [2, 3, 5, 7] {
            let mut x = CycInt::one(p);
            for _ in 0..p {
                x = &x * &zeta(p);
            }
            assert_eq!(x, CycInt::one(p));
        }
    }
}
