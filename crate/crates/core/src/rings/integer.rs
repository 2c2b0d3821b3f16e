//! Valuations of rational integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

/// An `ell`-adic valuation. `Saturated(n)` means the value vanished at the
/// working precision `n` and the caller should retry with more precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Saturated(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(k) => Some(k),
            _ => None,
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(k) => s.serialize_u32(*k),
            Valuation::Saturated(n) => s.serialize_str(&format!("saturated({n})")),
            Valuation::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Largest `k` with `ell^k | x`; `Infinite` for zero.
pub fn val_int(x: &BigInt, ell: u32) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let ell = BigInt::from(ell);
    let mut k = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&ell);
        if !r.is_zero() {
            return Valuation::Finite(k);
        }
        y = q;
        k += 1;
    }
}

pub fn val_u64(mut x: u64, ell: u32) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut k = 0;
    while x % ell as u64 == 0 {
        x /= ell as u64;
        k += 1;
    }
    Some(k)
}
