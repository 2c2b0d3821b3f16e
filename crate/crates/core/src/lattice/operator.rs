//! Products of group elements and hat-sums, applied to lattice vectors.

use super::Lattice;
use crate::error::{Error, Result};
use crate::group::{positive_roots, root_orth, root_sum, GLMat, Root};
use crate::rings::{FqElem, Ring};

#[derive(Clone, Debug)]
pub enum Atom<E> {
    Group(GLMat),
    /// `X^_r = sum_a t_r(a)`, `r` positive.
    RootSum(Root),
    /// `sum_a nu(c a) t_r(a)`.
    TwistedRootSum(Root, FqElem),
    /// Sum over the product of `X_t`, `t` positive and not in `{r, s, r+s}`.
    ComplementSum(Root, Root),
    Scalar(E),
}

/// Atoms in written order; the rightmost acts first.
#[derive(Clone, Debug)]
pub struct OperatorExpr<E> {
    pub atoms: Vec<Atom<E>>,
}

impl<E> OperatorExpr<E> {
    pub fn new(atoms: Vec<Atom<E>>) -> Self {
        OperatorExpr { atoms }
    }
}

/// Roots whose subgroups make up the complement of `{r, s, r+s}`.
pub fn complement_roots(n: usize, r: Root, s: Root) -> Result<Vec<Root>> {
    let bad = || Error::Invalid(format!("complement sum needs distinct adjacent simple roots, got {r}, {s}"));
    if n < 3 || !r.is_simple() || !s.is_simple() || r == s || root_orth(r, s) {
        return Err(bad());
    }
    let rs = root_sum(r, s).ok_or_else(bad)?;
    Ok(positive_roots(n).into_iter().filter(|t| *t != r && *t != s && *t != rs).collect())
}

fn add_into<R: Ring>(ring: &R, acc: &mut [R::Elem], perm: &[u32], x: &[R::Elem], coeff: Option<&R::Elem>) {
    for (v, xv) in x.iter().enumerate() {
        if ring.is_zero(xv) {
            continue;
        }
        let t = perm[v] as usize;
        let term = match coeff {
            Some(c) => ring.mul(c, xv),
            None => xv.clone(),
        };
        acc[t] = ring.add(&acc[t], &term);
    }
}

impl Lattice {
    pub fn apply_atom<R: Ring>(&self, ring: &R, atom: &Atom<R::Elem>, x: &[R::Elem]) -> Result<Vec<R::Elem>> {
        let fq = self.group().fq();
        match atom {
            Atom::Group(g) => self.act_elem(ring, g, x),
            Atom::Scalar(z) => Ok(x.iter().map(|v| ring.mul(z, v)).collect()),
            Atom::RootSum(r) => {
                self.check_root(*r)?;
                if !r.is_positive() {
                    return Err(Error::Invalid(format!("root {r} is not positive")));
                }
                let mut acc = vec![ring.zero(); x.len()];
                for a in fq.elements() {
                    add_into(ring, &mut acc, &self.root_translation(*r, a), x, None);
                }
                Ok(acc)
            }
            Atom::TwistedRootSum(r, c) => {
                self.check_root(*r)?;
                if !r.is_positive() {
                    return Err(Error::Invalid(format!("root {r} is not positive")));
                }
                let p = fq.p();
                let mut acc = vec![ring.zero(); x.len()];
                for a in fq.elements() {
                    let k = fq.trace(fq.mul(*c, a));
                    let z = ring
                        .zeta_pow(p, k)
                        .ok_or_else(|| Error::Invalid(format!("ring has no {p}-th root of unity")))?;
                    add_into(ring, &mut acc, &self.root_translation(*r, a), x, Some(&z));
                }
                Ok(acc)
            }
            Atom::ComplementSum(r, s) => {
                let roots = complement_roots(self.n(), *r, *s)?;
                let grp = self.group();
                let q = fq.q() as usize;
                let total = q.pow(roots.len() as u32);
                let mut acc = vec![ring.zero(); x.len()];
                for mut k in 0..total {
                    let mut y = grp.identity();
                    for &t in &roots {
                        y = grp.mul(&y, &grp.t_elem(t, FqElem((k % q) as u8)));
                        k /= q;
                    }
                    add_into(ring, &mut acc, &self.translation(&y), x, None);
                }
                Ok(acc)
            }
        }
    }

    pub fn operator_apply<R: Ring>(
        &self,
        ring: &R,
        expr: &OperatorExpr<R::Elem>,
        x: &[R::Elem],
    ) -> Result<Vec<R::Elem>> {
        let mut v = x.to_vec();
        for atom in expr.atoms.iter().rev() {
            v = self.apply_atom(ring, atom, &v)?;
        }
        Ok(v)
    }
}
