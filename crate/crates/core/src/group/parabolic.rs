//! Indices of standard parabolic subgroups via `q`-factorials.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::roots::Root;
use crate::error::{Error, Result};
use crate::rings::{poly, val_int};

/// `[i]_q = 1 + q + ... + q^{i-1}`.
pub fn q_int(i: u32, q: u32) -> BigInt {
    let mut acc = BigInt::from(0);
    let mut pw = BigInt::one();
    for _ in 0..i {
        acc += &pw;
        pw *= q;
    }
    acc
}

/// `[m]_q! = [1]_q [2]_q ... [m]_q`.
pub fn q_factorial(m: u32, q: u32) -> BigInt {
    (1..=m).map(|i| q_int(i, q)).product()
}

/// Maximal runs of consecutive simple roots in `j` (a bitmask, bit `r-1` for
/// `[r, r+1]`), as run lengths.
pub fn blocks(j: u32, n: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut run = 0;
    for r in 0..n.saturating_sub(1) {
        if j >> r & 1 == 1 {
            run += 1;
        } else if run > 0 {
            out.push(run);
            run = 0;
        }
    }
    if run > 0 {
        out.push(run);
    }
    out
}

/// `[P_J : B]`.
pub fn parabolic_over_borel(j: u32, n: usize, q: u32) -> BigInt {
    blocks(j, n).into_iter().map(|b| q_factorial(b + 1, q)).product()
}

/// `[G : B]`.
pub fn borel_index(n: usize, q: u32) -> BigInt {
    q_factorial(n as u32, q)
}

/// `[G : P_J]`.
pub fn parabolic_index(j: u32, n: usize, q: u32) -> BigInt {
    borel_index(n, q) / parabolic_over_borel(j, n, q)
}

pub fn mask_roots(j: u32, n: usize) -> Vec<Root> {
    (1..n).filter(|&r| j >> (r - 1) & 1 == 1).map(Root::simple).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicEntry {
    pub mask: u32,
    pub roots: Vec<Root>,
    pub p_over_b: BigIntStr,
    pub g_over_p: BigIntStr,
    pub val: u32,
}

/// A `BigInt` serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntStr(pub BigInt);

impl Serialize for BigIntStr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicTable {
    pub n: usize,
    pub q: u32,
    pub ell: u32,
    pub entries: Vec<ParabolicEntry>,
    pub kappa1: u32,
    pub kappa2: u32,
    pub levels: BTreeSet<u32>,
}

impl ParabolicTable {
    pub fn entry(&self, mask: u32) -> &ParabolicEntry {
        &self.entries[mask as usize]
    }

    /// `nu_ell([G : P_J])`.
    pub fn val(&self, mask: u32) -> u32 {
        self.entries[mask as usize].val
    }

    /// Subsets `J` with `nu_ell([G:P_J]) = k`.
    pub fn attaining(&self, k: u32) -> Vec<u32> {
        self.entries.iter().filter(|e| e.val == k).map(|e| e.mask).collect()
    }
}

pub fn build_parabolic_table(n: usize, q: u32, ell: u32) -> Result<ParabolicTable> {
    let (p, _) = poly::prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
    if !poly::is_prime(ell as u64) {
        return Err(Error::NotPrime(ell as u64));
    }
    if ell == p {
        return Err(Error::EllEqualsP { ell });
    }
    let full = borel_index(n, q);
    let entries: Vec<ParabolicEntry> = (0..1u32 << (n - 1))
        .map(|mask| {
            let pb = parabolic_over_borel(mask, n, q);
            let gp = &full / &pb;
            debug_assert_eq!(&gp * &pb, full);
            let val = val_int(&gp, ell).finite().expect("index is nonzero");
            ParabolicEntry { mask, roots: mask_roots(mask, n), p_over_b: BigIntStr(pb), g_over_p: BigIntStr(gp), val }
        })
        .collect();
    let kappa1 = entries[0].val;
    let kappa2 = entries[1].val;
    let levels = entries.iter().map(|e| e.val).collect();
    Ok(ParabolicTable { n, q, ell, entries, kappa1, kappa2, levels })
}
