//! Smith normal form of the Gram matrix, over `Z` or over `Z/ell^N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rings::padic::PRECISION_CAP;
use crate::rings::val_int;

/// Largest `|U|` handled by exact elimination in `Auto` mode.
pub const EXACT_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SnfChoice {
    Exact,
    Local,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnfMode {
    Exact,
    /// Computed modulo `ell^N`.
    Local(u32),
}

impl std::fmt::Display for SnfMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SnfMode::Exact => write!(f, "EXACT"),
            SnfMode::Local(n) => write!(f, "LOCAL({n})"),
        }
    }
}

impl Serialize for SnfMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A transform matrix, kept exactly or as residues.
#[derive(Clone, Debug)]
pub enum Transform {
    Exact(Vec<Vec<BigInt>>),
    Small { modulus: u64, rows: Vec<Vec<u64>> },
    Big { modulus: BigInt, rows: Vec<Vec<BigInt>> },
}

impl Transform {
    pub fn dim(&self) -> usize {
        match self {
            Transform::Exact(r) => r.len(),
            Transform::Small { rows, .. } => rows.len(),
            Transform::Big { rows, .. } => rows.len(),
        }
    }

    /// Entries reduced modulo `m`, which must divide the stored modulus.
    pub fn rows_mod(&self, m: u64) -> Vec<Vec<u64>> {
        let big = |x: &BigInt| x.mod_floor(&BigInt::from(m)).to_u64().unwrap();
        match self {
            Transform::Exact(r) => r.iter().map(|row| row.iter().map(big).collect()).collect(),
            Transform::Small { modulus, rows } => {
                assert_eq!(modulus % m, 0, "modulus {modulus} not a multiple of {m}");
                rows.iter().map(|row| row.iter().map(|x| x % m).collect()).collect()
            }
            Transform::Big { modulus, rows } => {
                assert!((modulus % BigInt::from(m)).is_zero());
                rows.iter().map(|row| row.iter().map(big).collect()).collect()
            }
        }
    }

    pub fn transpose(&self) -> Transform {
        fn tr<T: Clone>(r: &[Vec<T>]) -> Vec<Vec<T>> {
            let n = r.len();
            (0..n).map(|j| (0..n).map(|i| r[i][j].clone()).collect()).collect()
        }
        match self {
            Transform::Exact(r) => Transform::Exact(tr(r)),
            Transform::Small { modulus, rows } => Transform::Small { modulus: *modulus, rows: tr(rows) },
            Transform::Big { modulus, rows } => Transform::Big { modulus: modulus.clone(), rows: tr(rows) },
        }
    }
}

/// `P A Q = diag(d)`; in local mode `d_i = ell^{vals_i}` exactly.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub ell: u32,
    pub mode: SnfMode,
    pub p: Transform,
    /// `Q^T`: its rows are the `y`-basis.
    pub qt: Transform,
    pub diag: Vec<BigInt>,
    pub vals: Vec<u32>,
}

impl SnfResult {
    pub fn dim(&self) -> usize {
        self.vals.len()
    }

    /// Rows of the `x`-basis (rows of `P`) modulo `m`.
    pub fn x_rows_mod(&self, m: u64) -> Vec<Vec<u64>> {
        self.p.rows_mod(m)
    }

    /// Rows of the `y`-basis (rows of `Q^T`) modulo `m`.
    pub fn y_rows_mod(&self, m: u64) -> Vec<Vec<u64>> {
        self.qt.rows_mod(m)
    }

    pub fn max_val(&self) -> u32 {
        self.vals.iter().copied().max().unwrap_or(0)
    }

    /// The `ell`-prime part of `d_i`, reduced mod `ell`.
    pub fn unit_part_mod_ell(&self, i: usize) -> u64 {
        let l = BigInt::from(self.ell);
        let mut d = self.diag[i].clone();
        while (&d % &l).is_zero() {
            d /= &l;
        }
        d.mod_floor(&l).to_u64().unwrap()
    }
}

pub fn snf(a: &[Vec<i64>], ell: u32, choice: SnfChoice) -> Result<SnfResult> {
    let exact = match choice {
        SnfChoice::Exact => true,
        SnfChoice::Local => false,
        SnfChoice::Auto => a.len() <= EXACT_LIMIT,
    };
    if exact {
        snf_exact(a, ell)
    } else {
        snf_local(a, ell)
    }
}

/// Smith normal form over `Z`: Euclidean pivoting on the entry of least
/// absolute value, with a divisibility fix-up so that `d_i | d_{i+1}`.
pub fn snf_exact(a: &[Vec<i64>], ell: u32) -> Result<SnfResult> {
    let m = a.len();
    let mut a: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let ident = |m: usize| -> Vec<Vec<BigInt>> {
        (0..m).map(|i| (0..m).map(|j| BigInt::from((i == j) as i32)).collect()).collect()
    };
    let mut p = ident(m);
    let mut q = ident(m);
    for t in 0..m {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..m {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let (bi, bj) = best.ok_or(Error::Singular)?;
            a.swap(t, bi);
            p.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in q.iter_mut() {
                row.swap(t, bj);
            }
            let piv = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let f = a[i][t].div_floor(&piv);
                let (top, rest) = a.split_at_mut(i);
                sub_row(&mut rest[0], &top[t], &f, t);
                let (top, rest) = p.split_at_mut(i);
                sub_row(&mut rest[0], &top[t], &f, 0);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..m {
                if a[t][j].is_zero() {
                    continue;
                }
                let f = a[t][j].div_floor(&piv);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &f;
                    row[j] -= v;
                }
                for row in q.iter_mut() {
                    let v = &row[t] * &f;
                    row[j] -= v;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..m).any(|j| !(&a[i][j] % &piv).is_zero()));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    add_row(&mut top[t], &rest[0]);
                    let (top, rest) = p.split_at_mut(i);
                    add_row(&mut top[t], &rest[0]);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in p[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let diag: Vec<BigInt> = (0..m).map(|i| a[i][i].clone()).collect();
    let vals = diag.iter().map(|d| val_int(d, ell).finite().expect("nonzero")).collect();
    let qt = Transform::Exact(q).transpose();
    Ok(SnfResult { ell, mode: SnfMode::Exact, p: Transform::Exact(p), qt, diag, vals })
}

fn sub_row(dst: &mut [BigInt], src: &[BigInt], f: &BigInt, from: usize) {
    for j in from..dst.len() {
        if !src[j].is_zero() {
            dst[j] -= &src[j] * f;
        }
    }
}

fn add_row(dst: &mut [BigInt], src: &[BigInt]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s;
    }
}

/// Arithmetic in `Z/ell^N` as needed by the local elimination.
trait LocalRing {
    type E: Clone + Send + Sync;
    fn from_i64(&self, x: i64) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    /// `ell`-adic valuation, `N` for zero.
    fn val(&self, x: &Self::E) -> u32;
    /// `x / ell^v` for `x` divisible by `ell^v`.
    fn shift(&self, x: &Self::E, v: u32) -> Self::E;
    /// Inverse of the unit part of a nonzero `x`.
    fn unit_inv(&self, x: &Self::E) -> Self::E;
    /// `dst -= f * src` elementwise.
    fn axpy(&self, dst: &mut [Self::E], f: &Self::E, src: &[Self::E]);
    fn scale(&self, v: &mut [Self::E], f: &Self::E);
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn transform(&self, rows: Vec<Vec<Self::E>>) -> Transform;
}

/// Modulus below `2^32` with Barrett reduction of 64-bit products.
struct SmallRing {
    ell: u64,
    modulus: u64,
    n: u32,
    r: u128,
}

impl SmallRing {
    fn new(ell: u32, n: u32) -> Self {
        let modulus = (ell as u64).pow(n);
        assert!(modulus < 1 << 32);
        SmallRing { ell: ell as u64, modulus, n, r: (1u128 << 64) / modulus as u128 }
    }

    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.r) >> 64) as u64;
        let mut t = x - q * self.modulus;
        if t >= self.modulus {
            t -= self.modulus;
        }
        t
    }
}

impl LocalRing for SmallRing {
    type E = u64;
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn val(&self, x: &u64) -> u32 {
        if *x == 0 {
            return self.n;
        }
        let mut v = 0;
        let mut y = *x;
        while y % self.ell == 0 {
            y /= self.ell;
            v += 1;
        }
        v
    }
    fn shift(&self, x: &u64, v: u32) -> u64 {
        x / self.ell.pow(v)
    }
    fn unit_inv(&self, x: &u64) -> u64 {
        let u = self.shift(x, self.val(x));
        let (g, s, _) = egcd(u as i128, self.modulus as i128);
        debug_assert_eq!(g, 1);
        s.rem_euclid(self.modulus as i128) as u64
    }
    fn axpy(&self, dst: &mut [u64], f: &u64, src: &[u64]) {
        if *f == 0 {
            return;
        }
        let nf = self.modulus - f;
        for (d, &s) in dst.iter_mut().zip(src) {
            *d = self.reduce(*d + nf * s);
        }
    }
    fn scale(&self, v: &mut [u64], f: &u64) {
        for x in v.iter_mut() {
            *x = self.reduce(*x * f);
        }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn transform(&self, rows: Vec<Vec<u64>>) -> Transform {
        Transform::Small { modulus: self.modulus, rows }
    }
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, s, t) = egcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

/// Arbitrary precision fallback.
struct BigRing {
    ell: BigInt,
    modulus: BigInt,
    n: u32,
}

impl LocalRing for BigRing {
    type E = BigInt;
    fn from_i64(&self, x: i64) -> BigInt {
        BigInt::from(x).mod_floor(&self.modulus)
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn val(&self, x: &BigInt) -> u32 {
        if x.is_zero() {
            return self.n;
        }
        let mut v = 0;
        let mut y = x.clone();
        while (&y % &self.ell).is_zero() {
            y /= &self.ell;
            v += 1;
        }
        v
    }
    fn shift(&self, x: &BigInt, v: u32) -> BigInt {
        x / self.ell.pow(v)
    }
    fn unit_inv(&self, x: &BigInt) -> BigInt {
        let u = self.shift(x, self.val(x));
        let e = u.extended_gcd(&self.modulus);
        e.x.mod_floor(&self.modulus)
    }
    fn axpy(&self, dst: &mut [BigInt], f: &BigInt, src: &[BigInt]) {
        if f.is_zero() {
            return;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d = (&*d - f * s).mod_floor(&self.modulus);
            }
        }
    }
    fn scale(&self, v: &mut [BigInt], f: &BigInt) {
        for x in v.iter_mut() {
            *x = (&*x * f).mod_floor(&self.modulus);
        }
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn transform(&self, rows: Vec<Vec<BigInt>>) -> Transform {
        Transform::Big { modulus: self.modulus.clone(), rows }
    }
}

/// Outcome of one local pass: `None` when the precision was too low.
fn local_pass<L: LocalRing>(ring: &L, a: &[Vec<i64>], n: u32) -> Option<(Vec<u32>, Transform, Transform)> {
    let m = a.len();
    let mut a: Vec<Vec<L::E>> = a.iter().map(|r| r.iter().map(|&x| ring.from_i64(x)).collect()).collect();
    let mut p: Vec<Vec<L::E>> =
        (0..m).map(|i| (0..m).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
    let mut qt = p.clone();
    let mut vals = Vec::with_capacity(m);
    for t in 0..m {
        // pivot of least valuation, first in row-major order
        let mut best = (n, t, t);
        'scan: for i in t..m {
            for j in t..m {
                if ring.is_zero(&a[i][j]) {
                    continue;
                }
                let v = ring.val(&a[i][j]);
                if v < best.0 {
                    best = (v, i, j);
                    if v == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let (v, bi, bj) = best;
        if v + 2 > n {
            return None;
        }
        a.swap(t, bi);
        p.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        qt.swap(t, bj);
        let u = ring.unit_inv(&a[t][t]);
        ring.scale(&mut a[t][t..], &u);
        ring.scale(&mut p[t], &u);
        let (top, rest) = a.split_at_mut(t + 1);
        let (ptop, prest) = p.split_at_mut(t + 1);
        let prow = &top[t];
        for (i, row) in rest.iter_mut().enumerate() {
            if ring.is_zero(&row[t]) {
                continue;
            }
            let f = ring.shift(&row[t], v);
            ring.axpy(&mut row[t..], &f, &prow[t..]);
            ring.axpy(&mut prest[i], &f, &ptop[t]);
        }
        // the column step only touches row t of A
        for j in t + 1..m {
            if ring.is_zero(&a[t][j]) {
                continue;
            }
            let f = ring.shift(&a[t][j], v);
            a[t][j] = ring.zero();
            let (top, rest) = qt.split_at_mut(j);
            ring.axpy(&mut rest[0], &f, &top[t]);
        }
        vals.push(v);
    }
    Some((vals, ring.transform(p), ring.transform(qt)))
}

/// Local elimination modulo `ell^N`, raising `N` until every valuation is at
/// most `N - 2`.
pub fn snf_local(a: &[Vec<i64>], ell: u32) -> Result<SnfResult> {
    let mut n = 1;
    while (ell as u64).pow(n + 1) < 1 << 32 {
        n += 1;
    }
    if let Some(r) = local_pass(&SmallRing::new(ell, n), a, n) {
        return Ok(finish(ell, n, r));
    }
    loop {
        n *= 2;
        if n > PRECISION_CAP {
            return Err(Error::PrecisionCap { cap: PRECISION_CAP });
        }
        let l = BigInt::from(ell);
        let ring = BigRing { modulus: l.pow(n), ell: l, n };
        if let Some(r) = local_pass(&ring, a, n) {
            return Ok(finish(ell, n, r));
        }
    }
}

fn finish(ell: u32, n: u32, (vals, p, qt): (Vec<u32>, Transform, Transform)) -> SnfResult {
    let diag = vals.iter().map(|&v| BigInt::from(ell).pow(v)).collect();
    SnfResult { ell, mode: SnfMode::Local(n), p, qt, diag, vals }
}
