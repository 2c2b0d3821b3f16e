//! Enumeration of the unitriangular group `U`.
//!
//! The strictly upper positions are read in row-major order; the entry at the
//! first position is the most significant digit, each digit running over the
//! `GF(q)` element order. The identity has index 0.

use super::glmat::{GLMat, GlGroup};
use crate::error::{Error, Result};
use crate::rings::FqElem;

#[derive(Clone, Debug)]
pub struct UniIndex {
    n: usize,
    q: usize,
    /// 0-based `(row, col)` of each digit, most significant first
    positions: Vec<(usize, usize)>,
    size: usize,
}

impl UniIndex {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        let positions: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let size = (q as usize)
            .checked_pow(positions.len() as u32)
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| Error::TooLarge(format!("|U| for n={n}, q={q}")))?;
        Ok(UniIndex { n, q: q as usize, positions, size })
    }

    pub fn for_group(g: &GlGroup) -> Result<Self> {
        Self::new(g.n(), g.q())
    }

    pub fn size(&self) -> usize {
        self.size
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    /// Weight of the digit at 0-based matrix position `(i, j)`, `i < j`.
    pub fn weight(&self, i: usize, j: usize) -> usize {
        let k = self.positions.iter().position(|&p| p == (i, j)).expect("strictly upper position");
        self.q.pow((self.positions.len() - 1 - k) as u32)
    }

    pub fn digits(&self, mut k: usize) -> Vec<FqElem> {
        let mut d = vec![FqElem(0); self.positions.len()];
        for x in d.iter_mut().rev() {
            *x = FqElem((k % self.q) as u8);
            k /= self.q;
        }
        d
    }

    pub fn decode(&self, k: usize) -> GLMat {
        let mut m = GLMat { n: self.n, entries: vec![FqElem(0); self.n * self.n] };
        for i in 0..self.n {
            m.set(i, i, FqElem(1));
        }
        for (&(i, j), d) in self.positions.iter().zip(self.digits(k)) {
            m.set(i, j, d);
        }
        m
    }

    /// Index of a unitriangular matrix (only the strictly upper part is read).
    pub fn index(&self, u: &GLMat) -> usize {
        self.positions.iter().fold(0, |acc, &(i, j)| acc * self.q + u.get(i, j).0 as usize)
    }
}
