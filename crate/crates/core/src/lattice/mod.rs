//! The lattice `I` with basis `{ue : u in U}` and the action of `GL_n(q)` on
//! coordinates.

pub mod echar;
pub mod gram;
pub mod operator;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::group::{GLMat, Gen, GlGroup, Root, UniIndex};
use crate::rings::{FqElem, Ring};

pub use echar::UCharacter;
pub use gram::{gram_c, gram_table, GramTable};
pub use operator::{Atom, OperatorExpr};

/// Largest `|U|` for which the `|U|^2` table of `u^{-1} v` is built.
pub const LEFT_DIV_LIMIT: usize = 4096;

/// Sparse matrix of a generator: column `u` holds the image of the basis
/// vector `ue`, at most two signed entries (coefficient 0 marks a free slot).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenAction {
    pub cols: Vec<[(u32, i8); 2]>,
}

impl GenAction {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    /// Permutation actions have a single `+1` per column.
    pub fn as_permutation(&self) -> Option<Vec<u32>> {
        self.cols.iter().map(|c| (c[0].1 == 1 && c[1].1 == 0).then_some(c[0].0)).collect()
    }

    pub fn apply<R: Ring>(&self, ring: &R, x: &[R::Elem]) -> Vec<R::Elem> {
        let mut y = vec![ring.zero(); x.len()];
        for (u, col) in self.cols.iter().enumerate() {
            if ring.is_zero(&x[u]) {
                continue;
            }
            for &(t, c) in col {
                match c {
                    0 => {}
                    1 => y[t as usize] = ring.add(&y[t as usize], &x[u]),
                    -1 => y[t as usize] = ring.sub(&y[t as usize], &x[u]),
                    _ => unreachable!(),
                }
            }
        }
        y
    }

    pub fn apply_i64(&self, x: &[i64]) -> Vec<i64> {
        let mut y = vec![0i64; x.len()];
        for (u, col) in self.cols.iter().enumerate() {
            if x[u] != 0 {
                for &(t, c) in col {
                    y[t as usize] += c as i64 * x[u];
                }
            }
        }
        y
    }

    /// Same action on residues modulo `m`.
    pub fn apply_mod(&self, x: &[u64], m: u64) -> Vec<u64> {
        let mut y = vec![0u64; x.len()];
        for (u, col) in self.cols.iter().enumerate() {
            let v = x[u];
            if v == 0 {
                continue;
            }
            for &(t, c) in col {
                let t = t as usize;
                match c {
                    1 => y[t] = (y[t] + v) % m,
                    -1 => y[t] = (y[t] + m - v) % m,
                    _ => {}
                }
            }
        }
        y
    }

    /// Dense integer matrix, acting on column vectors.
    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let m = self.dim();
        let mut a = vec![vec![0i64; m]; m];
        for (u, col) in self.cols.iter().enumerate() {
            for &(t, c) in col {
                a[t as usize][u] += c as i64;
            }
        }
        a
    }
}

/// `GL_n(q)` acting on the lattice, with cached generator actions.
#[derive(Debug)]
pub struct Lattice {
    group: GlGroup,
    uni: UniIndex,
    actions: RwLock<HashMap<Gen, Arc<GenAction>>>,
    left_div: OnceLock<Vec<u32>>,
}

impl Lattice {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        Self::from_group(GlGroup::new(n, q)?)
    }

    pub fn from_group(group: GlGroup) -> Result<Self> {
        let uni = UniIndex::for_group(&group)?;
        Ok(Lattice { group, uni, actions: RwLock::new(HashMap::new()), left_div: OnceLock::new() })
    }

    pub fn group(&self) -> &GlGroup {
        &self.group
    }
    pub fn uni(&self) -> &UniIndex {
        &self.uni
    }
    pub fn n(&self) -> usize {
        self.group.n()
    }
    pub fn q(&self) -> u32 {
        self.group.q()
    }
    pub fn p(&self) -> u32 {
        self.group.fq().p()
    }
    pub fn size(&self) -> usize {
        self.uni.size()
    }

    /// Table of `index(u^{-1} v)` at `u * |U| + v`.
    pub fn left_div(&self) -> &[u32] {
        self.left_div.get_or_init(|| {
            let m = self.size();
            assert!(m <= LEFT_DIV_LIMIT, "|U| = {m} too large for the quotient table");
            let mut out = vec![0u32; m * m];
            for u in 0..m {
                let ui = self.group.inv(&self.uni.decode(u)).unwrap();
                let row = self.translation(&ui);
                out[u * m..(u + 1) * m].copy_from_slice(&row);
            }
            out
        })
    }

    /// Left translation by a unitriangular `u`: `v -> index(u v)`.
    pub fn translation(&self, u: &GLMat) -> Vec<u32> {
        debug_assert!(self.group.is_unitriangular(u));
        (0..self.size())
            .map(|v| self.uni.index(&self.group.mul(u, &self.uni.decode(v))) as u32)
            .collect()
    }

    /// Applies a translation permutation `perm` (basis `v -> perm[v]`).
    pub fn permute<R: Ring>(ring: &R, perm: &[u32], x: &[R::Elem]) -> Vec<R::Elem> {
        let mut y = vec![ring.zero(); x.len()];
        for (v, xv) in x.iter().enumerate() {
            y[perm[v] as usize] = xv.clone();
        }
        y
    }

    pub fn gen_action(&self, g: Gen) -> Arc<GenAction> {
        if let Some(a) = self.actions.read().unwrap().get(&g) {
            return a.clone();
        }
        let a = Arc::new(self.compute_action(g));
        self.actions.write().unwrap().entry(g).or_insert(a).clone()
    }

    fn compute_action(&self, g: Gen) -> GenAction {
        let grp = &self.group;
        let f = grp.fq();
        let m = self.size();
        let single = |t: usize| [(t as u32, 1i8), (0, 0)];
        let cols = match g {
            Gen::T { i, a } => {
                let t = grp.t_elem(Root::simple(i), a);
                self.translation(&t).into_iter().map(|k| single(k as usize)).collect()
            }
            Gen::H { i } => {
                // h (ue) = (h u h^{-1}) e
                let h = grp.h_elem(i);
                let hi = grp.inv(&h).unwrap();
                (0..m)
                    .map(|k| single(self.uni.index(&grp.mul_all(&[h.clone(), self.uni.decode(k), hi.clone()]))))
                    .collect()
            }
            Gen::W { i } => {
                let r = Root::simple(i);
                let w = grp.w_elem(r);
                (0..m)
                    .map(|k| {
                        let (u2, c) = grp.u_factor(&self.uni.decode(k), r).unwrap();
                        let v = grp.mul_all(&[w.clone(), u2, w.clone()]);
                        let vi = self.uni.index(&v) as u32;
                        if c.0 == 0 {
                            [(vi, -1), (0, 0)]
                        } else {
                            // w_r t_r(c) e = t_r(c^{-1}) e - e for the permutation matrix w_r
                            let a = f.inv(c).unwrap();
                            let vt = self.uni.index(&grp.mul(&v, &grp.t_elem(r, a))) as u32;
                            [(vt, 1), (vi, -1)]
                        }
                    })
                    .collect()
            }
        };
        GenAction { cols }
    }

    /// Applies a word, rightmost letter first.
    pub fn act_word<R: Ring>(&self, ring: &R, word: &[Gen], x: &[R::Elem]) -> Vec<R::Elem> {
        word.iter().rev().fold(x.to_vec(), |acc, &g| self.gen_action(g).apply(ring, &acc))
    }

    /// Applies an arbitrary invertible matrix. Unitriangular elements act by
    /// translation; anything else goes through `gl_word`.
    pub fn act_elem<R: Ring>(&self, ring: &R, g: &GLMat, x: &[R::Elem]) -> Result<Vec<R::Elem>> {
        if self.group.is_unitriangular(g) {
            return Ok(Self::permute(ring, &self.translation(g), x));
        }
        let word = self.group.gl_word(g)?;
        Ok(self.act_word(ring, &word, x))
    }

    /// Basis vector `ue` for `u` at index `k`.
    pub fn basis<R: Ring>(&self, ring: &R, k: usize) -> Vec<R::Elem> {
        let mut v = vec![ring.zero(); self.size()];
        v[k] = ring.one();
        v
    }

    pub fn check_root(&self, r: Root) -> Result<()> {
        if r.j > self.n() || r.i > self.n() {
            return Err(Error::Invalid(format!("root {r} outside n = {}", self.n())));
        }
        Ok(())
    }

    /// `t_r(a)` for positive `r`, as a translation.
    pub fn root_translation(&self, r: Root, a: FqElem) -> Vec<u32> {
        self.translation(&self.group.t_elem(r, a))
    }
}
