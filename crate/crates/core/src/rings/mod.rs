//! Exact coefficient rings and the fields the rest of the crate works over.

pub mod cyclotomic;
pub mod fq;
pub mod integer;
pub mod kfield;
pub mod padic;
pub mod poly;

use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use cyclotomic::{CycInt, CycOp};
pub use fq::{FqElem, FqField};
pub use integer::{val_int, val_u64, Valuation};
pub use kfield::{KElem, KField};
pub use padic::{cyc_reduce, cyc_val, PadicCtx};

/// A commutative ring given by a context value. Lattice vectors and operator
/// expressions are generic over this.
pub trait Ring: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, k: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Image of `zeta_p^k`, if this ring carries one for the prime `p`.
    fn zeta_pow(&self, p: u32, k: u32) -> Option<Self::Elem>;
}

/// The rational integers. Only `p = 2` has a root of unity (`-1`).
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, k: i64) -> BigInt {
        BigInt::from(k)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn zeta_pow(&self, p: u32, k: u32) -> Option<BigInt> {
        (p == 2).then(|| if k % 2 == 0 { BigInt::one() } else { -BigInt::one() })
    }
}

/// `Z[zeta_p]` for a fixed `p`.
#[derive(Clone, Copy, Debug)]
pub struct Cyclotomic {
    pub p: u32,
}

impl Ring for Cyclotomic {
    type Elem = CycInt;
    fn zero(&self) -> CycInt {
        CycInt::zero(self.p)
    }
    fn one(&self) -> CycInt {
        CycInt::one(self.p)
    }
    fn from_int(&self, k: i64) -> CycInt {
        CycInt::from_int(self.p, k)
    }
    fn add(&self, a: &CycInt, b: &CycInt) -> CycInt {
        a + b
    }
    fn neg(&self, a: &CycInt) -> CycInt {
        -a
    }
    fn mul(&self, a: &CycInt, b: &CycInt) -> CycInt {
        a * b
    }
    fn is_zero(&self, a: &CycInt) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &CycInt, b: &CycInt) -> CycInt {
        a - b
    }
    fn zeta_pow(&self, p: u32, k: u32) -> Option<CycInt> {
        (p == self.p).then(|| CycInt::zeta_pow(p, k as i64))
    }
}

/// The residue field `K` together with the image of `zeta` selected by a
/// factor index.
#[derive(Clone, Debug)]
pub struct Residue {
    pub field: Arc<KField>,
    pub zeta: KElem,
}

impl Residue {
    pub fn new(field: Arc<KField>, factor_index: usize) -> crate::Result<Self> {
        let zeta = field.factor_root(factor_index)?;
        Ok(Residue { field, zeta })
    }
}

impl Ring for Residue {
    type Elem = KElem;
    fn zero(&self) -> KElem {
        KElem(0)
    }
    fn one(&self) -> KElem {
        KElem(1)
    }
    fn from_int(&self, k: i64) -> KElem {
        self.field.from_int(k)
    }
    fn add(&self, a: &KElem, b: &KElem) -> KElem {
        self.field.add(*a, *b)
    }
    fn neg(&self, a: &KElem) -> KElem {
        self.field.neg(*a)
    }
    fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        self.field.mul(*a, *b)
    }
    fn is_zero(&self, a: &KElem) -> bool {
        a.0 == 0
    }
    fn zeta_pow(&self, p: u32, k: u32) -> Option<KElem> {
        (p == self.field.p()).then(|| self.field.pow(self.zeta, k as u64))
    }
}

/// The additive character `a -> zeta_p^{Tr(a)}` of `GF(q)`.
pub fn additive_char(fq: &FqField, a: FqElem) -> CycInt {
    CycInt::zeta_pow(fq.p(), fq.trace(a) as i64)
}
