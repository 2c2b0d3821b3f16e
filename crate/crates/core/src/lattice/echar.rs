//! Linear characters of `U` and the eigenvectors `E_lambda`.

use std::fmt;

use serde::Serialize;

use super::Lattice;
use crate::group::GLMat;
use crate::rings::{FqElem, FqField, Ring};

/// `lambda(u) = nu(sum_r c_r u_{i,i+1})` with `nu(a) = zeta^{Tr(a)}`; one
/// coefficient per simple root `[i, i+1]`, `i = 1..n-1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UCharacter {
    pub coeffs: Vec<FqElem>,
}

impl fmt::Debug for UCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<u8> = self.coeffs.iter().map(|x| x.0).collect();
        write!(f, "lambda{c:?}")
    }
}

impl UCharacter {
    pub fn trivial(n: usize) -> Self {
        UCharacter { coeffs: vec![FqElem(0); n - 1] }
    }

    /// `lambda[r]` for the root `[r, r+1]` built from `nu(c .)`.
    pub fn single(n: usize, r: usize, c: FqElem) -> Self {
        let mut x = Self::trivial(n);
        x.coeffs[r - 1] = c;
        x
    }

    /// All `q^{n-1}` characters, first root most significant.
    pub fn all(n: usize, fq: &FqField) -> Vec<Self> {
        let q = fq.q() as usize;
        let count = q.pow((n - 1) as u32);
        (0..count)
            .map(|mut k| {
                let mut coeffs = vec![FqElem(0); n - 1];
                for x in coeffs.iter_mut().rev() {
                    *x = FqElem((k % q) as u8);
                    k /= q;
                }
                UCharacter { coeffs }
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.coeffs.len() + 1
    }

    /// Bitmask of `J(lambda)`: bit `r-1` set iff `c_r != 0`.
    pub fn j_mask(&self) -> u32 {
        self.coeffs.iter().enumerate().filter(|(_, c)| c.0 != 0).map(|(i, _)| 1 << i).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.j_mask() == 0
    }

    pub fn inverse(&self, fq: &FqField) -> Self {
        UCharacter { coeffs: self.coeffs.iter().map(|&c| fq.neg(c)).collect() }
    }

    pub fn mul(&self, other: &Self, fq: &FqField) -> Self {
        UCharacter { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| fq.add(a, b)).collect() }
    }

    /// Exponent `k` with `lambda(u) = zeta^k`.
    pub fn exponent(&self, fq: &FqField, u: &GLMat) -> u32 {
        let s = self
            .coeffs
            .iter()
            .enumerate()
            .fold(fq.zero(), |acc, (i, &c)| fq.add(acc, fq.mul(c, u.get(i, i + 1))));
        fq.trace(s)
    }

    /// Exponents for every basis element in `UniIndex` order.
    pub fn exponents(&self, lat: &Lattice) -> Vec<u32> {
        let fq = lat.group().fq();
        (0..lat.size()).map(|k| self.exponent(fq, &lat.uni().decode(k))).collect()
    }
}

/// `E_lambda = sum_u lambda(u) ue`.
pub fn build_e<R: Ring>(ring: &R, lat: &Lattice, lambda: &UCharacter) -> Vec<R::Elem> {
    let p = lat.p();
    let pows: Vec<R::Elem> =
        (0..p).map(|k| ring.zeta_pow(p, k).expect("ring lacks a p-th root of unity")).collect();
    lambda.exponents(lat).into_iter().map(|k| pows[k as usize].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Gen;
    use crate::rings::{CycInt, Cyclotomic};

    #[test]
    fn small_cases() {
        let lat = Lattice::new(2, 2).unwrap();
        let ring = Cyclotomic { p: 2 };
        let fq = lat.group().fq();
        let all = UCharacter::all(2, fq);
        assert_eq!(all.len(), 2);
        assert_eq!(build_e(&ring, &lat, &all[0]), vec![CycInt::one(2), CycInt::one(2)]);
        assert_eq!(build_e(&ring, &lat, &all[1]), vec![CycInt::one(2), CycInt::from_int(2, -1)]);
    }

    #[test]
    fn eigen_property() {
        for (n, q) in [(2, 3), (3, 2), (3, 3), (2, 4)] {
            let lat = Lattice::new(n, q).unwrap();
            let fq = lat.group().fq().clone();
            let ring = Cyclotomic { p: fq.p() };
            for lam in UCharacter::all(n, &fq) {
                let e = build_e(&ring, &lat, &lam);
                for i in 1..n {
                    for a in fq.elements() {
                        let img = lat.act_word(&ring, &[Gen::T { i, a }], &e);
                        let t = lat.group().t_elem(crate::group::Root::simple(i), a);
                        let inv = CycInt::zeta_pow(fq.p(), -(lam.exponent(&fq, &t) as i64));
                        let expect: Vec<CycInt> = e.iter().map(|x| x * &inv).collect();
                        assert_eq!(img, expect);
                    }
                }
            }
        }
    }
}
