//! The filtration `I(k) = {x : f(x, I) in ell^k R}` reduced mod `ell`, its
//! factors `M(k)`, and the checks on `E_lambda`.

pub mod snf;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{build_parabolic_table, Gen, ParabolicTable};
use crate::lattice::{GramTable, Lattice, UCharacter};
use crate::linalg::{Echelon, KMat};
use crate::modrep::{ModRep, Provenance, RepCtx};
use crate::rings::padic::START_PRECISION;
use crate::rings::{CycInt, KElem, KField, PadicCtx, Valuation};

pub use snf::{snf, snf_exact, snf_local, SnfChoice, SnfMode, SnfResult, Transform};

/// Everything derived from one `(n, q, ell)` and a chosen prime above `ell`.
#[derive(Debug)]
pub struct Filtration {
    pub lat: Arc<Lattice>,
    pub gram: Arc<GramTable>,
    pub ell: u32,
    pub table: ParabolicTable,
    pub snf: SnfResult,
    pub ctx: Arc<RepCtx>,
    a: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelRow {
    pub k: u32,
    #[serde(rename = "dimI")]
    pub dim_i: usize,
    #[serde(rename = "dimM")]
    pub dim_m: usize,
    #[serde(rename = "inX")]
    pub in_x: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub n: usize,
    pub q: u32,
    pub ell: u32,
    pub mode: SnfMode,
    /// valuation -> multiplicity
    pub vals: BTreeMap<u32, usize>,
    pub levels: Vec<LevelRow>,
    #[serde(rename = "X")]
    pub x: Vec<u32>,
    pub kappa1: u32,
    pub kappa2: u32,
    pub gow5_levels_match: bool,
    pub steinberg_simple: bool,
}

/// `M(k)` with its paired and symmetric forms.
#[derive(Clone, Debug)]
pub struct FactorModule {
    pub k: u32,
    /// Positions in the SNF basis of the `x_i` with `a_i = k`.
    pub indices: Vec<usize>,
    pub rep: ModRep,
    /// `f_c(x_i, y_j)` with `y_j` rescaled by the unit part of `d_j`.
    pub paired_form: KMat,
    /// `f_c(x_i, x_j)`.
    pub form: KMat,
}

#[derive(Clone, Debug, Serialize)]
pub struct ELambdaRecord {
    pub lambda: UCharacter,
    pub c_lambda: u32,
    pub min_val: u32,
    pub image_nonzero: bool,
    pub pairing_congruence: bool,
}

impl ELambdaRecord {
    pub fn passes(&self) -> bool {
        self.min_val == self.c_lambda && self.image_nonzero && self.pairing_congruence
    }
}

/// `a . b mod m` for entries below `m`, with `(m-1)^2 < 2^32`.
fn dot_u32(a: &[u32], b: &[u32], m: u64) -> u64 {
    let chunk = (u32::MAX as u64 / ((m - 1) * (m - 1)).max(1)).max(1) as usize;
    let mut acc = 0u64;
    for (ca, cb) in a.chunks(chunk).zip(b.chunks(chunk)) {
        acc += ca.iter().zip(cb).map(|(&x, &y)| x * y).fold(0u32, u32::wrapping_add) as u64;
    }
    acc % m
}

/// `sum a_i b_i mod m`.
fn dot_mod(a: &[u64], b: &[u64], m: u64) -> u64 {
    if m < 1 << 20 {
        // at most 2^40 per product, 2^24 terms
        (a.iter().zip(b).map(|(&x, &y)| x * y).sum::<u64>()) % m
    } else {
        (a.iter().zip(b).map(|(&x, &y)| x as u128 * y as u128).sum::<u128>() % m as u128) as u64
    }
}

impl Filtration {
    pub fn new(
        lat: Arc<Lattice>,
        gram: Arc<GramTable>,
        ell: u32,
        choice: SnfChoice,
        factor_index: usize,
    ) -> Result<Self> {
        let table = build_parabolic_table(lat.n(), lat.q(), ell)?;
        let k = Arc::new(KField::new(ell, lat.p())?);
        let ctx = Arc::new(RepCtx::new(&lat, k, factor_index)?);
        let a = gram.full_matrix(&lat);
        let snf = snf(&a, ell, choice)?;
        Ok(Filtration { lat, gram, ell, table, snf, ctx, a })
    }

    pub fn k(&self) -> &KField {
        &self.ctx.k
    }

    pub fn gram_matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn dim_ibar(&self, k: u32) -> usize {
        self.snf.vals.iter().filter(|&&a| a >= k).count()
    }

    pub fn dim_m(&self, k: u32) -> usize {
        self.snf.vals.iter().filter(|&&a| a == k).count()
    }

    /// Levels `k` with `M(k) != 0`.
    pub fn attained(&self) -> Vec<u32> {
        let mut v = self.snf.vals.clone();
        v.dedup();
        v
    }

    pub fn report(&self) -> FiltrationReport {
        let mut vals = BTreeMap::new();
        for &a in &self.snf.vals {
            *vals.entry(a).or_insert(0) += 1;
        }
        let top = self.snf.max_val().max(self.table.kappa1) + 1;
        let levels = (0..=top)
            .map(|k| LevelRow {
                k,
                dim_i: self.dim_ibar(k),
                dim_m: self.dim_m(k),
                in_x: self.table.levels.contains(&k),
            })
            .collect();
        let attained = self.attained();
        let x: Vec<u32> = self.table.levels.iter().copied().collect();
        FiltrationReport {
            n: self.lat.n(),
            q: self.lat.q(),
            ell: self.ell,
            mode: self.snf.mode,
            vals,
            levels,
            gow5_levels_match: attained == x,
            steinberg_simple: self.table.kappa1 == 0,
            x,
            kappa1: self.table.kappa1,
            kappa2: self.table.kappa2,
        }
    }

    /// `I bar` over `K`.
    pub fn ambient(&self) -> ModRep {
        let k = self.k();
        let m = self.lat.size();
        let mats = self
            .ctx
            .gens
            .iter()
            .map(|&g| {
                let act = self.lat.gen_action(g);
                let mut out = KMat::zeros(m, m);
                for (u, col) in act.cols.iter().enumerate() {
                    for &(t, c) in col {
                        if c != 0 {
                            let cur = out.get(t as usize, u);
                            out.set(t as usize, u, k.add(cur, k.from_int(c as i64)));
                        }
                    }
                }
                out
            })
            .collect();
        ModRep::new(self.ctx.clone(), m, mats, Provenance::Ambient)
    }

    /// `I(k)` reduced mod `ell`, as a subspace of `I bar` in the basis `{ue}`.
    pub fn ibar_basis(&self, k: u32) -> Echelon {
        let kf = self.k();
        let rows = self.snf.x_rows_mod(self.ell as u64);
        let mut e = Echelon::new(self.lat.size());
        for (i, row) in rows.into_iter().enumerate() {
            if self.snf.vals[i] >= k {
                let v = row.into_iter().map(|x| kf.from_u64(x)).collect();
                assert!(e.insert(kf, v).is_some(), "x-basis dependent mod ell");
            }
        }
        e
    }

    fn indices(&self, lo: u32, hi: u32) -> Vec<usize> {
        (0..self.snf.dim()).filter(|&i| (lo..hi).contains(&self.snf.vals[i])).collect()
    }

    /// The Gram matrix reduced mod `m`.
    fn a_mod(&self, m: u64) -> Vec<Vec<u64>> {
        self.a.iter().map(|row| row.iter().map(|&x| x.rem_euclid(m as i64) as u64).collect()).collect()
    }

    /// `A y mod m` for `A` already reduced.
    fn a_times(a: &[Vec<u64>], y: &[u64], m: u64) -> Vec<u64> {
        a.iter().map(|row| dot_mod(row, y, m)).collect()
    }

    /// Unit part of `d_j` inverted in `F_ell`.
    fn unit_inv(&self, j: usize) -> KElem {
        let kf = self.k();
        kf.inv(kf.from_u64(self.snf.unit_part_mod_ell(j))).expect("unit")
    }

    /// `I(lo) / I(hi)` mod `ell` in the basis of the `x_i` with
    /// `lo <= a_i < hi`; coordinates come from `f(z, y_j) / d_j`.
    pub fn subquotient(&self, lo: u32, hi: u32) -> Result<(ModRep, Vec<usize>)> {
        let kf = self.k();
        let idx = self.indices(lo, hi);
        let d = idx.len();
        let top = idx.iter().map(|&i| self.snf.vals[i]).max().unwrap_or(0);
        let m = (self.ell as u64).pow(top + 1);
        let xs = self.snf.x_rows_mod(m);
        let ys = self.snf.y_rows_mod(m);
        let am = self.a_mod(m);
        let b: Vec<Vec<u64>> = idx.iter().map(|&j| Self::a_times(&am, &ys[j], m)).collect();
        let units: Vec<KElem> = idx.iter().map(|&j| self.unit_inv(j)).collect();
        let small = (m - 1) * (m - 1) < 1 << 32;
        let b32: Vec<Vec<u32>> = if small { b.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect() } else { Vec::new() };
        let mut mats = Vec::with_capacity(self.ctx.gens.len());
        for &g in &self.ctx.gens {
            if self.lat.q() == 2 && matches!(g, Gen::H { .. }) {
                mats.push(KMat::identity(d));
                continue;
            }
            let act = self.lat.gen_action(g);
            let mut out = KMat::zeros(d, d);
            for (col, &i) in idx.iter().enumerate() {
                let z = act.apply_mod(&xs[i], m);
                let z32: Vec<u32> = if small { z.iter().map(|&x| x as u32).collect() } else { Vec::new() };
                for (row, &j) in idx.iter().enumerate() {
                    let v = if small { dot_u32(&z32, &b32[row], m) } else { dot_mod(&z, &b[row], m) };
                    let s = (self.ell as u64).pow(self.snf.vals[j]);
                    if v % s != 0 {
                        return Err(Error::Invalid(format!("f(g x_{i}, y_{j}) not divisible by d_{j}")));
                    }
                    out.set(row, col, kf.mul(kf.from_u64(v / s), units[row]));
                }
            }
            mats.push(out);
        }
        Ok((ModRep::new(self.ctx.clone(), d, mats, Provenance::Levels { lo, hi }), idx))
    }

    pub fn factor_module(&self, k: u32) -> Result<FactorModule> {
        if self.dim_m(k) == 0 {
            return Err(Error::LevelNotAttained(k));
        }
        let (rep, indices) = self.subquotient(k, k + 1)?;
        let kf = self.k();
        let m = (self.ell as u64).pow(k + 1);
        let s = (self.ell as u64).pow(k);
        let xs = self.snf.x_rows_mod(m);
        let ys = self.snf.y_rows_mod(m);
        let d = indices.len();
        let am = self.a_mod(m);
        let mut paired = KMat::zeros(d, d);
        let mut form = KMat::zeros(d, d);
        for (c, &j) in indices.iter().enumerate() {
            let by = Self::a_times(&am, &ys[j], m);
            let bx = Self::a_times(&am, &xs[j], m);
            let u = self.unit_inv(j);
            for (r, &i) in indices.iter().enumerate() {
                let v = dot_mod(&xs[i], &by, m);
                let w = dot_mod(&xs[i], &bx, m);
                if v % s != 0 || w % s != 0 {
                    return Err(Error::Invalid(format!("form value at level {k} not divisible by ell^{k}")));
                }
                paired.set(r, c, kf.mul(kf.from_u64(v / s), u));
                form.set(r, c, kf.from_u64(w / s));
            }
        }
        Ok(FactorModule { k, indices, rep, paired_form: paired, form })
    }

    /// `f(E_lambda, ue)` for every `u`, split by powers of `zeta`:
    /// entry `[e][u]` is the integer coefficient of `zeta^e`.
    fn e_pairings(&self, lambda: &UCharacter) -> Vec<Vec<i64>> {
        let p = self.lat.p() as usize;
        let m = self.lat.size();
        let ex = lambda.exponents(&self.lat);
        let mut out = vec![vec![0i64; m]; p];
        for (v, &e) in ex.iter().enumerate() {
            let dst = &mut out[e as usize];
            for (u, &x) in self.a[v].iter().enumerate() {
                dst[u] += x;
            }
        }
        out
    }

    fn padic(&self) -> Result<PadicCtx> {
        PadicCtx::with_field(self.k(), self.ctx.factor_index, START_PRECISION)
    }

    pub fn e_lambda_checks(&self, lambda: &UCharacter) -> Result<ELambdaRecord> {
        let p = self.lat.p();
        let kf = self.k();
        let padic = self.padic()?;
        let c = self.table.val(lambda.j_mask());
        let split = self.e_pairings(lambda);
        let m = self.lat.size();
        let column = |u: usize| -> CycInt {
            let full: Vec<i64> = (0..p as usize).map(|e| split[e][u]).collect();
            CycInt::from_cyclic(p, &full)
        };
        let mut min_val = u32::MAX;
        for u in 0..m {
            match padic.val_escalating(&column(u), kf)? {
                Valuation::Finite(v) => min_val = min_val.min(v),
                Valuation::Infinite => {}
                Valuation::Saturated(n) => return Err(Error::PrecisionCap { cap: n }),
            }
        }
        // f(E_lambda, E_{lambda^{-1}}) = sum_u lambda(u)^{-1} f(E_lambda, ue)
        let inv = lambda.inverse(&self.ctx.fq).exponents(&self.lat);
        let mut full = vec![0i64; p as usize];
        for (u, &e) in inv.iter().enumerate() {
            for (s, row) in split.iter().enumerate() {
                full[(s + e as usize) % p as usize] += row[u];
            }
        }
        let index = crate::group::parabolic_index(lambda.j_mask(), self.lat.n(), self.lat.q());
        let target = BigInt::from(m) * index;
        let diff = CycInt::from_cyclic(p, &full).try_sub(&CycInt::from_int(p, target))?;
        let congruence = match padic.val_escalating(&diff, kf)? {
            Valuation::Finite(v) => v > c,
            Valuation::Infinite => true,
            Valuation::Saturated(_) => false,
        };
        let image_nonzero = min_val == c && self.e_image(lambda, c)?.iter().any(|x| x.0 != 0);
        Ok(ELambdaRecord { lambda: lambda.clone(), c_lambda: c, min_val, image_nonzero, pairing_congruence: congruence })
    }

    /// Coordinates of the image of `E_lambda` in `M(k)`; requires
    /// `E_lambda in I(k)`.
    pub fn e_image(&self, lambda: &UCharacter, k: u32) -> Result<Vec<KElem>> {
        let p = self.lat.p() as usize;
        let kf = self.k();
        let padic = self.padic()?;
        let split = self.e_pairings(lambda);
        let modulus = (self.ell as u64).pow(k + 1);
        let ys = self.snf.y_rows_mod(modulus);
        let idx = self.indices(k, k + 1);
        idx.iter()
            .map(|&j| {
                let full: Vec<i64> = (0..p).map(|e| split[e].iter().zip(&ys[j]).map(|(&a, &y)| a * y as i64).sum()).collect();
                let g = CycInt::from_cyclic(p as u32, &full);
                let image = padic.embed(&g);
                let r = padic.residue_shifted(&image, k, kf, self.ctx.zeta)?;
                Ok(kf.mul(r, self.unit_inv(j)))
            })
            .collect()
    }
}
