//! Brute-force oracles shared by the integration tests. They work directly in
//! the group algebra and never use the closed forms under test.

#![allow(dead_code)]

use std::collections::HashMap;

use steinberg_core::group::{GLMat, GlGroup, Perm};
use steinberg_core::rings::FqElem;

/// An element of the integral group algebra.
pub type GroupAlg = HashMap<GLMat, i64>;

pub fn all_matrices(g: &GlGroup) -> Vec<GLMat> {
    let n = g.n();
    let q = g.q() as usize;
    let total = q.pow((n * n) as u32);
    (0..total)
        .map(|mut k| {
            let entries = (0..n * n)
                .map(|_| {
                    let d = FqElem((k % q) as u8);
                    k /= q;
                    d
                })
                .collect();
            GLMat { n, entries }
        })
        .collect()
}

/// Every invertible upper triangular matrix.
pub fn borel(g: &GlGroup) -> Vec<GLMat> {
    let n = g.n();
    let q = g.q() as usize;
    let free: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let total = q.pow(free.len() as u32);
    let mut out = Vec::new();
    'outer: for mut k in 0..total {
        let mut m = g.zero();
        for &(i, j) in &free {
            let d = FqElem((k % q) as u8);
            k /= q;
            if i == j && d.0 == 0 {
                continue 'outer;
            }
            m.set(i, j, d);
        }
        out.push(m);
    }
    out
}

/// `e = (sum sign(sigma) sigma) (sum_{b in B} b)`, fully expanded.
pub fn steinberg_e(g: &GlGroup) -> GroupAlg {
    let b = borel(g);
    let mut e = GroupAlg::new();
    for sigma in Perm::all(g.n()) {
        let s = sigma.sign();
        let m = g.perm_matrix(&sigma);
        for x in &b {
            *e.entry(g.mul(&m, x)).or_insert(0) += s;
        }
    }
    e.retain(|_, v| *v != 0);
    e
}

pub fn left_mul(g: &GlGroup, x: &GLMat, a: &GroupAlg) -> GroupAlg {
    a.iter().map(|(k, v)| (g.mul(x, k), *v)).collect()
}

pub fn pairing(a: &GroupAlg, b: &GroupAlg) -> i64 {
    a.iter().map(|(k, v)| v * b.get(k).copied().unwrap_or(0)).sum()
}

/// Coordinates in the basis `{ue}`: `x_u = sign(w0) * coeff(u w0)`, since
/// `u w0` occurs in the support of `ue` alone.
pub fn coordinates(g: &GlGroup, uni: &steinberg_core::group::UniIndex, a: &GroupAlg) -> Vec<i64> {
    let n = g.n();
    let w0 = Perm { img: (0..n).rev().collect() };
    let w0m = g.perm_matrix(&w0);
    let s = w0.sign();
    (0..uni.size())
        .map(|k| s * a.get(&g.mul(&uni.decode(k), &w0m)).copied().unwrap_or(0))
        .collect()
}

/// `|G|` and `|P_J|` by enumeration (`J` as a bitmask of simple roots).
pub fn count_group_and_parabolic(g: &GlGroup, mask: u32) -> (u64, u64) {
    let n = g.n();
    // block of each index: consecutive indices joined by roots in J
    let mut block = vec![0usize; n];
    for i in 1..n {
        block[i] = if mask >> (i - 1) & 1 == 1 { block[i - 1] } else { block[i - 1] + 1 };
    }
    let mut order = 0;
    let mut par = 0;
    for m in all_matrices(g) {
        if g.det(&m).0 == 0 {
            continue;
        }
        order += 1;
        let in_p = (0..n).all(|i| (0..n).all(|j| block[i] <= block[j] || m.get(i, j).0 == 0));
        if in_p {
            par += 1;
        }
    }
    (order, par)
}
