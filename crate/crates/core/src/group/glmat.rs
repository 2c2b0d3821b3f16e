//! Matrices over `GF(q)` and the distinguished elements of `GL_n(q)`.

use std::sync::Arc;

use super::roots::{Perm, Root};
use crate::error::{Error, Result};
use crate::rings::{FqElem, FqField};

/// An `n x n` matrix over `GF(q)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GLMat {
    pub n: usize,
    pub entries: Vec<FqElem>,
}

impl GLMat {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FqElem {
        self.entries[i * self.n + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.entries[i * self.n + j] = v;
    }
    /// Entry at 1-based position `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> FqElem {
        self.get(i - 1, j - 1)
    }
}

/// `GL_n(q)` with its field. Cheap to clone.
#[derive(Clone, Debug)]
pub struct GlGroup {
    n: usize,
    fq: Arc<FqField>,
}

impl GlGroup {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("n = {n} must be at least 2")));
        }
        Ok(GlGroup { n, fq: Arc::new(FqField::new(q)?) })
    }

    pub fn with_field(n: usize, fq: Arc<FqField>) -> Self {
        GlGroup { n, fq }
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn fq(&self) -> &FqField {
        &self.fq
    }
    pub fn fq_arc(&self) -> &Arc<FqField> {
        &self.fq
    }
    pub fn q(&self) -> u32 {
        self.fq.q()
    }

    pub fn zero(&self) -> GLMat {
        GLMat { n: self.n, entries: vec![FqElem(0); self.n * self.n] }
    }

    pub fn identity(&self) -> GLMat {
        let mut m = self.zero();
        for i in 0..self.n {
            m.set(i, i, FqElem(1));
        }
        m
    }

    pub fn mul(&self, a: &GLMat, b: &GLMat) -> GLMat {
        let n = self.n;
        let f = &self.fq;
        let mut out = self.zero();
        for i in 0..n {
            for k in 0..n {
                let x = a.get(i, k);
                if x.0 == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.add(out.get(i, j), f.mul(x, b.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_all(&self, ms: &[GLMat]) -> GLMat {
        ms.iter().fold(self.identity(), |acc, m| self.mul(&acc, m))
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    pub fn inv(&self, a: &GLMat) -> Option<GLMat> {
        let n = self.n;
        let f = &self.fq;
        let mut m = a.clone();
        let mut r = self.identity();
        for c in 0..n {
            let piv = (c..n).find(|&i| m.get(i, c).0 != 0)?;
            for j in 0..n {
                m.entries.swap(piv * n + j, c * n + j);
                r.entries.swap(piv * n + j, c * n + j);
            }
            let s = f.inv(m.get(c, c)).unwrap();
            for j in 0..n {
                m.set(c, j, f.mul(s, m.get(c, j)));
                r.set(c, j, f.mul(s, r.get(c, j)));
            }
            for i in 0..n {
                let x = m.get(i, c);
                if i == c || x.0 == 0 {
                    continue;
                }
                for j in 0..n {
                    m.set(i, j, f.sub(m.get(i, j), f.mul(x, m.get(c, j))));
                    r.set(i, j, f.sub(r.get(i, j), f.mul(x, r.get(c, j))));
                }
            }
        }
        Some(r)
    }

    pub fn det(&self, a: &GLMat) -> FqElem {
        let n = self.n;
        let f = &self.fq;
        let mut m = a.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m.get(i, c).0 != 0) else {
                return f.zero();
            };
            if piv != c {
                for j in 0..n {
                    m.entries.swap(piv * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let d = m.get(c, c);
            det = f.mul(det, d);
            let di = f.inv(d).unwrap();
            for i in c + 1..n {
                let x = f.mul(m.get(i, c), di);
                if x.0 == 0 {
                    continue;
                }
                for j in c..n {
                    m.set(i, j, f.sub(m.get(i, j), f.mul(x, m.get(c, j))));
                }
            }
        }
        det
    }

    /// `t_r(a) = I + a E_{ij}`.
    pub fn t_elem(&self, r: Root, a: FqElem) -> GLMat {
        let mut m = self.identity();
        m.set(r.i - 1, r.j - 1, a);
        m
    }

    /// Permutation matrix with `M[w(j)][j] = 1`, so that
    /// `M t_{[i,j]}(a) M^{-1} = t_{[w(i), w(j)]}(a)`.
    pub fn perm_matrix(&self, w: &Perm) -> GLMat {
        let mut m = self.zero();
        for (j, &i) in w.img.iter().enumerate() {
            m.set(i, j, FqElem(1));
        }
        m
    }

    /// The permutation matrix of the transposition `(i j)` of the root `[i,j]`.
    pub fn w_elem(&self, r: Root) -> GLMat {
        self.perm_matrix(&Perm::transposition(self.n, r.i, r.j))
    }

    pub fn diag(&self, d: &[FqElem]) -> GLMat {
        let mut m = self.zero();
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// `h_i(c)`: the identity with the fixed multiplicative generator at
    /// 1-based diagonal position `i`.
    pub fn h_elem(&self, i: usize) -> GLMat {
        let mut m = self.identity();
        m.set(i - 1, i - 1, self.fq.generator());
        m
    }

    /// Upper triangular with nonzero diagonal.
    pub fn in_b(&self, g: &GLMat) -> bool {
        let n = self.n;
        (0..n).all(|i| g.get(i, i).0 != 0 && (0..i).all(|j| g.get(i, j).0 == 0))
    }

    pub fn is_unitriangular(&self, g: &GLMat) -> bool {
        let n = self.n;
        (0..n).all(|i| g.get(i, i).0 == 1 && (0..i).all(|j| g.get(i, j).0 == 0))
    }

    /// For unitriangular `u` and simple `r = [i,i+1]`, returns `(u'', c)` with
    /// `u = u'' t_r(c)`, `c = u_{i,i+1}` and `u''_{i,i+1} = 0`.
    pub fn u_factor(&self, u: &GLMat, r: Root) -> Result<(GLMat, FqElem)> {
        if !r.is_simple() {
            return Err(Error::NotSimple(r.to_string()));
        }
        let c = u.at(r.i, r.j);
        let inv = self.t_elem(r, self.fq.neg(c));
        Ok((self.mul(u, &inv), c))
    }

    /// `a b a^{-1} b^{-1}`.
    pub fn commutator(&self, a: &GLMat, b: &GLMat) -> GLMat {
        let ai = self.inv(a).expect("invertible");
        let bi = self.inv(b).expect("invertible");
        self.mul_all(&[a.clone(), b.clone(), ai, bi])
    }
}
