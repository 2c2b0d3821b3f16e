//! Generators of `GL_n(q)` and words in them.

use std::fmt;

use serde::Serialize;

use super::glmat::{GLMat, GlGroup};
use super::roots::{Perm, Root};
use crate::error::{Error, Result};
use crate::rings::FqElem;

/// A generator: `t_r(a)` and `w_r` for simple `r = [i, i+1]`, and `h_i(c)`
/// with `c` the fixed generator of `GF(q)*`. Indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gen {
    T { i: usize, a: FqElem },
    W { i: usize },
    H { i: usize },
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::T { i, a } => write!(f, "t{i}({})", a.0),
            Gen::W { i } => write!(f, "w{i}"),
            Gen::H { i } => write!(f, "h{i}"),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl GlGroup {
    pub fn gen_matrix(&self, g: Gen) -> GLMat {
        match g {
            Gen::T { i, a } => self.t_elem(Root::simple(i), a),
            Gen::W { i } => self.w_elem(Root::simple(i)),
            Gen::H { i } => self.h_elem(i),
        }
    }

    /// Product `word[0] * word[1] * ...`.
    pub fn word_matrix(&self, word: &[Gen]) -> GLMat {
        word.iter().fold(self.identity(), |acc, &g| self.mul(&acc, &self.gen_matrix(g)))
    }

    /// A generating set: `t_r(x^k)` over an `F_p`-basis of `GF(q)`, every
    /// `w_r`, and every `h_i`.
    pub fn spin_generators(&self) -> Vec<Gen> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..n {
            for a in self.fq().prime_basis() {
                out.push(Gen::T { i, a });
            }
        }
        out.extend((1..n).map(|i| Gen::W { i }));
        out.extend((1..=n).map(|i| Gen::H { i }));
        out
    }

    /// All `t_r(a)` with `r` simple and `a != 0`.
    pub fn u_generators(&self) -> Vec<Gen> {
        (1..self.n()).flat_map(|i| self.fq().nonzero().map(move |a| Gen::T { i, a })).collect()
    }

    /// Word for `t_{[a,b]}(c)`, `a < b`: conjugate `t_{[a,a+1]}(c)` by the
    /// transposition `(a+1 b)`.
    pub fn root_elem_word(&self, r: Root, c: FqElem) -> Vec<Gen> {
        assert!(r.is_positive());
        let (a, b) = (r.i, r.j);
        let mut pi = Vec::new();
        for k in a + 1..b - 1 {
            pi.push(Gen::W { i: k });
        }
        pi.push(Gen::W { i: b - 1 });
        for k in (a + 1..b - 1).rev() {
            pi.push(Gen::W { i: k });
        }
        if b == a + 1 {
            pi.clear();
        }
        let mut out = pi.clone();
        out.push(Gen::T { i: a, a: c });
        out.extend(pi);
        out
    }

    /// Writes `g` as a word in the generators via a Bruhat-style
    /// elimination `g = u_1 m u_2`.
    pub fn gl_word(&self, g: &GLMat) -> Result<Vec<Gen>> {
        let n = self.n();
        let f = self.fq();
        if self.det(g).0 == 0 {
            return Err(Error::Singular);
        }
        let mut m = g.clone();
        // left ops l_1, l_2, ... applied as l_s ... l_1 g; right ops g r_1 r_2 ...
        let mut left: Vec<(Root, FqElem)> = Vec::new();
        let mut right: Vec<(Root, FqElem)> = Vec::new();
        for k in (0..n).rev() {
            let c = (0..n).find(|&j| m.get(k, j).0 != 0).ok_or(Error::Singular)?;
            let piv_inv = f.inv(m.get(k, c)).unwrap();
            for j in c + 1..n {
                let x = m.get(k, j);
                if x.0 == 0 {
                    continue;
                }
                let t = f.neg(f.mul(x, piv_inv));
                // column j += t * column c
                for i in 0..n {
                    m.set(i, j, f.add(m.get(i, j), f.mul(t, m.get(i, c))));
                }
                right.push((Root::new(c + 1, j + 1), t));
            }
            for i in 0..k {
                let x = m.get(i, c);
                if x.0 == 0 {
                    continue;
                }
                let t = f.neg(f.mul(x, piv_inv));
                // row i += t * row k
                for j in 0..n {
                    m.set(i, j, f.add(m.get(i, j), f.mul(t, m.get(k, j))));
                }
                left.push((Root::new(i + 1, k + 1), t));
            }
        }
        // m is monomial: m[sigma(j)][j] = d_j
        let mut img = vec![0; n];
        let mut d = vec![FqElem(0); n];
        for j in 0..n {
            let i = (0..n).find(|&i| m.get(i, j).0 != 0).unwrap();
            img[j] = i;
            d[j] = m.get(i, j);
        }
        let sigma = Perm { img };
        let mut word = Vec::new();
        for &(r, t) in &left {
            word.extend(self.root_elem_word(r, f.neg(t)));
        }
        for i in sigma.simple_word() {
            word.push(Gen::W { i });
        }
        for (j, &x) in d.iter().enumerate() {
            for _ in 0..f.log(x).unwrap() {
                word.push(Gen::H { i: j + 1 });
            }
        }
        for &(r, t) in right.iter().rev() {
            word.extend(self.root_elem_word(r, f.neg(t)));
        }
        Ok(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_letters() {
        let g = GlGroup::new(3, 3).unwrap();
        let t = g.t_elem(Root::simple(2), FqElem(2));
        assert_eq!(g.gl_word(&t).unwrap(), vec![Gen::T { i: 2, a: FqElem(2) }]);
        let w = g.w_elem(Root::simple(1));
        assert_eq!(g.gl_word(&w).unwrap(), vec![Gen::W { i: 1 }]);
        assert!(g.gl_word(&g.zero()).is_err());
    }

    #[test]
    fn random_words_multiply_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, q) in [(2, 5), (3, 3), (3, 4), (4, 2), (4, 9)] {
            let g = GlGroup::new(n, q).unwrap();
            let mut done = 0;
            while done < 30 {
                let m = GLMat { n, entries: (0..n * n).map(|_| FqElem(rng.gen_range(0..q) as u8)).collect() };
                if g.det(&m).0 == 0 {
                    continue;
                }
                let w = g.gl_word(&m).unwrap();
                assert_eq!(g.word_matrix(&w), m);
                done += 1;
            }
        }
    }

    #[test]
    fn root_element_words() {
        let g = GlGroup::new(5, 3).unwrap();
        for i in 1..5 {
            for j in i + 1..=5 {
                let r = Root::new(i, j);
                let w = g.root_elem_word(r, FqElem(2));
                assert_eq!(g.word_matrix(&w), g.t_elem(r, FqElem(2)));
            }
        }
    }
}
