//! The invariant form on the lattice, `f(ue, ve) = c(u^{-1} v)`.

use rayon::prelude::*;

use super::Lattice;
use crate::group::{GLMat, GlGroup, Perm};
use crate::rings::Ring;

/// `c(w) = sum over sigma, sigma' in S_n of sign(sigma) sign(sigma')
/// [sigma^{-1} w sigma' in B]`, for unitriangular `w`.
///
/// For fixed `sigma`, `M sigma'` is upper triangular with nonzero diagonal iff
/// each column `sigma'(j)` of `M = sigma^{-1} w` has its lowest nonzero entry in
/// row `j`, so at most one `sigma'` contributes.
pub fn gram_c(group: &GlGroup, perms: &[(Perm, i64)], w: &GLMat) -> i64 {
    let n = group.n();
    let mut total = 0;
    let mut low = vec![0usize; n];
    for (sigma, sign) in perms {
        // row i of sigma^{-1} w is row sigma(i) of w
        let mut seen = 0u32;
        let mut ok = true;
        for (c, lc) in low.iter_mut().enumerate() {
            let l = (0..n).rev().find(|&i| w.get(sigma.img[i], c).0 != 0).expect("invertible");
            if seen >> l & 1 == 1 {
                ok = false;
                break;
            }
            seen |= 1 << l;
            *lc = l;
        }
        if !ok {
            continue;
        }
        // sigma'(low(c)) = c
        let mut img = vec![0; n];
        for (c, &l) in low.iter().enumerate() {
            img[l] = c;
        }
        total += sign * Perm { img }.sign();
    }
    total
}

pub fn signed_perms(n: usize) -> Vec<(Perm, i64)> {
    Perm::all(n)
        .into_iter()
        .map(|p| {
            let s = p.sign();
            (p, s)
        })
        .collect()
}

/// The values `c(u)` for every `u` in `UniIndex` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramTable {
    pub n: usize,
    pub q: u32,
    pub c: Vec<i64>,
}

pub fn gram_table(lat: &Lattice) -> GramTable {
    let perms = signed_perms(lat.n());
    let c = (0..lat.size())
        .into_par_iter()
        .map(|k| gram_c(lat.group(), &perms, &lat.uni().decode(k)))
        .collect();
    GramTable { n: lat.n(), q: lat.q(), c }
}

impl GramTable {
    /// Dense Gram matrix `A[u][v] = c(u^{-1} v)`.
    pub fn full_matrix(&self, lat: &Lattice) -> Vec<Vec<i64>> {
        let m = lat.size();
        let div = lat.left_div();
        (0..m).map(|u| (0..m).map(|v| self.c[div[u * m + v] as usize]).collect()).collect()
    }

    /// `f(x, y) = sum_{u,v} x_u y_v c(u^{-1} v)`.
    pub fn f_eval<R: Ring>(&self, ring: &R, lat: &Lattice, x: &[R::Elem], y: &[R::Elem]) -> R::Elem {
        let m = lat.size();
        assert!(x.len() == m && y.len() == m);
        let div = lat.left_div();
        let mut acc = ring.zero();
        for (u, xu) in x.iter().enumerate() {
            if ring.is_zero(xu) {
                continue;
            }
            // sum_v y_v c(u^{-1} v), grouped by the integer c
            let mut inner = ring.zero();
            for (v, yv) in y.iter().enumerate() {
                let c = self.c[div[u * m + v] as usize];
                if c != 0 && !ring.is_zero(yv) {
                    inner = ring.add(&inner, &ring.mul(&ring.from_int(c), yv));
                }
            }
            acc = ring.add(&acc, &ring.mul(xu, &inner));
        }
        acc
    }
}
