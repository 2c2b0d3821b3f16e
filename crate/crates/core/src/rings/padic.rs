//! Valuations on `Z[zeta_p]` at a prime above `ell`.
//!
//! The factor `g` of the cyclotomic polynomial mod `ell` is Hensel-lifted to a
//! monic `g~` dividing it mod `ell^N`. An element is embedded in the
//! unramified ring `(Z/ell^N)[x]/(g~)` by evaluating its coefficient
//! polynomial at `x`; since `1, x, ..., x^{d-1}` is an integral basis there,
//! the valuation is the smallest `ell`-valuation among the coefficients. For
//! `d = 1` this is evaluation at a lifted integer root.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cyclotomic::CycInt;
use super::integer::Valuation;
use super::kfield::KField;
use super::poly;
use crate::error::{Error, Result};

pub const START_PRECISION: u32 = 32;
pub const PRECISION_CAP: u32 = 4096;

#[derive(Clone, Debug)]
pub struct PadicCtx {
    ell: u32,
    p: u32,
    precision: u32,
    factor_index: usize,
    modulus: BigInt,
    /// monic lifted factor, low degree first
    lifted: Vec<BigInt>,
}

fn reduce(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn to_u32_poly(a: &[BigInt], ell: u32) -> Vec<u32> {
    let m = BigInt::from(ell);
    poly::trim(a.iter().map(|c| reduce(c, &m).try_into().unwrap()).collect())
}

fn from_u32_poly(a: &[u32]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn big_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl PadicCtx {
    pub fn new(ell: u32, p: u32, factor_index: usize, precision: u32) -> Result<Self> {
        let field = KField::new(ell, p)?;
        Self::with_field(&field, factor_index, precision)
    }

    pub fn with_field(field: &KField, factor_index: usize, precision: u32) -> Result<Self> {
        let (ell, p) = (field.ell(), field.p());
        let factors = field.factors();
        let g0 = factors
            .get(factor_index)
            .ok_or(Error::FactorIndex { index: factor_index, count: factors.len() })?;
        let phi_mod = poly::cyclotomic(p, ell);
        let (h0, r) = poly::divrem(&phi_mod, g0, ell);
        debug_assert!(r.is_empty());
        let (gcd, _, t) = poly::ext_gcd(g0, &h0, ell);
        debug_assert_eq!(gcd, vec![1]);
        let phi: Vec<BigInt> = vec![BigInt::one(); p as usize];
        let mut g = from_u32_poly(g0);
        let mut h = from_u32_poly(&h0);
        let ell_big = BigInt::from(ell);
        let mut power = ell_big.clone();
        for _ in 1..precision {
            // e = (phi - g h) / ell^k  mod ell
            let gh = big_mul(&g, &h);
            let diff: Vec<BigInt> = (0..phi.len())
                .map(|i| &phi[i] - gh.get(i).cloned().unwrap_or_default())
                .collect();
            let e: Vec<BigInt> = diff
                .iter()
                .map(|c| {
                    debug_assert!((c % &power).is_zero());
                    c / &power
                })
                .collect();
            let e = to_u32_poly(&e, ell);
            let a = poly::rem(&poly::mul(&e, &t, ell), g0, ell);
            let (b, rb) = poly::divrem(&poly::sub(&e, &poly::mul(&a, &h0, ell), ell), g0, ell);
            debug_assert!(rb.is_empty());
            for (i, c) in a.iter().enumerate() {
                g[i] += &power * BigInt::from(*c);
            }
            for (i, c) in b.iter().enumerate() {
                if i < h.len() {
                    h[i] += &power * BigInt::from(*c);
                }
            }
            power *= &ell_big;
        }
        let modulus = power;
        let lifted = g.iter().map(|c| reduce(c, &modulus)).collect();
        Ok(PadicCtx { ell, p, precision, factor_index, modulus, lifted })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }
    pub fn factor_index(&self) -> usize {
        self.factor_index
    }
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }
    /// The lifted factor `g~`, monic, low degree first.
    pub fn lifted_factor(&self) -> &[BigInt] {
        &self.lifted
    }

    /// Reduces a coefficient polynomial modulo `(ell^N, g~)`.
    pub fn embed_poly(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let d = self.lifted.len() - 1;
        let mut r: Vec<BigInt> = coeffs.iter().map(|c| reduce(c, &self.modulus)).collect();
        let mut i = r.len();
        while i > d {
            i -= 1;
            let c = std::mem::take(&mut r[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                let k = i - d + j;
                r[k] = reduce(&(&r[k] - &c * &self.lifted[j]), &self.modulus);
            }
        }
        r.truncate(d);
        r.resize(d, BigInt::zero());
        r
    }

    pub fn embed(&self, x: &CycInt) -> Vec<BigInt> {
        assert_eq!(x.p(), self.p);
        self.embed_poly(x.coeffs())
    }

    /// Valuation at the chosen prime, or `Saturated(N)` when the image
    /// vanishes modulo `ell^N`.
    pub fn val(&self, x: &CycInt) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinite;
        }
        self.val_embedded(&self.embed(x))
    }

    pub fn val_embedded(&self, image: &[BigInt]) -> Valuation {
        let ell = BigInt::from(self.ell);
        let mut best: Option<u32> = None;
        for c in image {
            if c.is_zero() {
                continue;
            }
            let mut k = 0;
            let mut y = c.clone();
            loop {
                let (q, r) = y.div_rem(&ell);
                if !r.is_zero() {
                    break;
                }
                y = q;
                k += 1;
            }
            best = Some(best.map_or(k, |b: u32| b.min(k)));
        }
        match best {
            Some(k) => Valuation::Finite(k),
            None => Valuation::Saturated(self.precision),
        }
    }
}

impl PadicCtx {
    /// `(image / ell^shift) mod ell`, read in `K` by sending `x` to `root`.
    /// Every coefficient must be divisible by `ell^shift`.
    pub fn residue_shifted(&self, image: &[BigInt], shift: u32, field: &KField, root: super::kfield::KElem) -> Result<super::kfield::KElem> {
        if shift + 1 > self.precision {
            return Err(Error::PrecisionCap { cap: self.precision });
        }
        let ell = BigInt::from(self.ell);
        let div = ell.pow(shift);
        let mut acc = field.zero();
        let mut pw = field.one();
        for c in image {
            let (q, r) = c.div_rem(&div);
            if !r.is_zero() {
                return Err(Error::Precondition(format!("coefficient not divisible by {}^{shift}", self.ell)));
            }
            let r: u64 = reduce(&q, &ell).try_into().unwrap();
            acc = field.add(acc, field.mul(field.from_u64(r), pw));
            pw = field.mul(pw, root);
        }
        Ok(acc)
    }

    /// Valuation through this context, escalating only on saturation.
    pub fn val_escalating(&self, x: &CycInt, field: &KField) -> Result<Valuation> {
        match self.val(x) {
            Valuation::Saturated(_) => cyc_val(x, field, self.factor_index),
            v => Ok(v),
        }
    }
}

/// Valuation with the escalation policy: start at `START_PRECISION`, double on
/// saturation, give up past `PRECISION_CAP`.
pub fn cyc_val(x: &CycInt, field: &KField, factor_index: usize) -> Result<Valuation> {
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let mut n = START_PRECISION;
    loop {
        let ctx = PadicCtx::with_field(field, factor_index, n)?;
        match ctx.val(x) {
            Valuation::Saturated(_) => {
                n *= 2;
                if n > PRECISION_CAP {
                    return Err(Error::PrecisionCap { cap: PRECISION_CAP });
                }
            }
            v => return Ok(v),
        }
    }
}

/// Reduction `Z[zeta_p] -> K` sending `zeta` to the root of factor
/// `factor_index`.
pub fn cyc_reduce(x: &CycInt, field: &KField, factor_index: usize) -> Result<super::kfield::KElem> {
    let root = field.factor_root(factor_index)?;
    let ell = BigInt::from(field.ell());
    let mut acc = field.zero();
    let mut pw = field.one();
    for c in x.coeffs() {
        let r: u64 = reduce(c, &ell).try_into().unwrap();
        acc = field.add(acc, field.mul(field.from_u64(r), pw));
        pw = field.mul(pw, root);
    }
    Ok(acc)
}
