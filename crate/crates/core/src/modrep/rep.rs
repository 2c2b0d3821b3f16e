//! Matrix representations over `K` and the module algorithms built on
//! spinning.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Gen;
use crate::lattice::{Lattice, UCharacter};
use crate::linalg::{Echelon, KMat};
use crate::rings::{FqElem, FqField, KElem, KField};

/// Most eigen-lines enumerated for a single character.
pub const LINE_CAP: u128 = 100_000;
/// Exhaustive search bound for nondegenerate invariant forms.
pub const FORM_SEARCH_LIMIT: u128 = 1_000_000;
/// Random samples when the form space is too large to search.
pub const FORM_SAMPLES: usize = 128;

/// Field, root of unity and generator list shared by related modules.
#[derive(Debug)]
pub struct RepCtx {
    pub n: usize,
    pub fq: Arc<FqField>,
    pub k: Arc<KField>,
    pub factor_index: usize,
    /// Image of `zeta_p` in `K`.
    pub zeta: KElem,
    pub gens: Vec<Gen>,
}

impl RepCtx {
    pub fn new(lat: &Lattice, k: Arc<KField>, factor_index: usize) -> Result<Self> {
        let zeta = k.factor_root(factor_index)?;
        Ok(RepCtx {
            n: lat.n(),
            fq: lat.group().fq_arc().clone(),
            k,
            factor_index,
            zeta,
            gens: lat.group().spin_generators(),
        })
    }

    /// `lambda(t_i(a))` in `K`.
    pub fn char_value(&self, lambda: &UCharacter, i: usize, a: FqElem) -> KElem {
        let tr = self.fq.trace(self.fq.mul(lambda.coeffs[i - 1], a));
        self.k.pow(self.zeta, tr as u64)
    }

    /// Positions of the `t_r(a)` among the generators.
    pub fn u_gens(&self) -> Vec<(usize, usize, FqElem)> {
        self.gens
            .iter()
            .enumerate()
            .filter_map(|(idx, g)| match *g {
                Gen::T { i, a } => Some((idx, i, a)),
                _ => None,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Ambient,
    /// `I(lo) / I(hi)` reduced mod `ell`.
    Levels { lo: u32, hi: u32 },
    Sub,
    Quotient,
    Dual,
    Conjugated,
}

/// Generator matrices acting on column vectors, in `ctx.gens` order.
#[derive(Clone, Debug)]
pub struct ModRep {
    pub ctx: Arc<RepCtx>,
    pub dim: usize,
    pub mats: Vec<KMat>,
    pub provenance: Provenance,
    spinners: OnceLock<Arc<Vec<KMat>>>,
}

impl ModRep {
    pub fn new(ctx: Arc<RepCtx>, dim: usize, mats: Vec<KMat>, provenance: Provenance) -> Self {
        assert_eq!(mats.len(), ctx.gens.len());
        assert!(mats.iter().all(|m| m.rows == dim && m.cols == dim));
        ModRep { ctx, dim, mats, provenance, spinners: OnceLock::new() }
    }

    pub fn k(&self) -> &KField {
        &self.ctx.k
    }

    /// A smaller generating set of the same group used for spinning:
    /// `t_1(a)` over the prime basis, `w_1`, the cycle `w_1 ... w_{n-1}`
    /// and `h_1`, leaving out identity matrices.
    pub fn spinners(&self) -> Arc<Vec<KMat>> {
        self.spinners
            .get_or_init(|| {
                let k = self.k();
                let n = self.ctx.n;
                let id = KMat::identity(self.dim);
                let mut out = Vec::new();
                for (g, m) in self.ctx.gens.iter().zip(&self.mats) {
                    let keep = match *g {
                        Gen::T { i, .. } => i == 1,
                        Gen::W { i } => i == 1,
                        Gen::H { i } => i == 1,
                    };
                    if keep && *m != id {
                        out.push(m.clone());
                    }
                }
                if n >= 3 {
                    let mut c = self.mat(Gen::W { i: 1 }).clone();
                    for i in 2..n {
                        c = c.mul(k, self.mat(Gen::W { i }));
                    }
                    out.push(c);
                }
                Arc::new(out)
            })
            .clone()
    }

    pub fn mat(&self, g: Gen) -> &KMat {
        let idx = self.ctx.gens.iter().position(|&x| x == g).expect("not a generator");
        &self.mats[idx]
    }

    /// `rho(g)^{-T}` for every generator.
    pub fn dual(&self) -> ModRep {
        let k = self.k();
        let mats = self.mats.iter().map(|m| m.inverse(k).expect("invertible").transpose()).collect();
        ModRep::new(self.ctx.clone(), self.dim, mats, Provenance::Dual)
    }

    /// `S rho(g) S^{-1}`.
    pub fn conjugate(&self, s: &KMat) -> ModRep {
        let k = self.k();
        let si = s.inverse(k).expect("invertible");
        let mats = self.mats.iter().map(|m| s.mul(k, &m.mul(k, &si))).collect();
        ModRep::new(self.ctx.clone(), self.dim, mats, Provenance::Conjugated)
    }

    /// Checks `w^2 = 1`, the braid relation and `t^p = 1`, as far as the generator list allows.
    pub fn relations_hold(&self) -> bool {
        let k = self.k();
        let id = KMat::identity(self.dim);
        let n = self.ctx.n;
        for i in 1..n {
            let w = self.mat(Gen::W { i });
            if w.mul(k, w) != id {
                return false;
            }
            if i + 1 < n {
                let v = self.mat(Gen::W { i: i + 1 });
                if w.mul(k, &v.mul(k, w)) != v.mul(k, &w.mul(k, v)) {
                    return false;
                }
            }
            // t_r(a)^p = 1
            for &(idx, gi, _) in &self.ctx.u_gens() {
                if gi != i {
                    continue;
                }
                let t = &self.mats[idx];
                let mut acc = id.clone();
                for _ in 0..self.ctx.fq.p() {
                    acc = acc.mul(k, t);
                }
                if acc != id {
                    return false;
                }
            }
        }
        true
    }

    /// Representation on a submodule given by an invariant basis.
    pub fn sub(&self, s: &Echelon) -> ModRep {
        let k = self.k();
        let d = s.rank();
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let mut out = KMat::zeros(d, d);
                for (j, b) in s.rows().iter().enumerate() {
                    let img = m.mul_vec(k, b);
                    let c = s.coordinates(k, &img).expect("subspace not invariant");
                    for (i, x) in c.into_iter().enumerate() {
                        out.set(i, j, x);
                    }
                }
                out
            })
            .collect();
        ModRep::new(self.ctx.clone(), d, mats, Provenance::Sub)
    }

    /// Representation on `V / S`, with the unit vectors at the free
    /// columns of `S` as the complement basis.
    pub fn quotient(&self, s: &Echelon) -> ModRep {
        let k = self.k();
        let free = s.free_columns();
        let d = free.len();
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let mut out = KMat::zeros(d, d);
                for (j, &f) in free.iter().enumerate() {
                    let mut col: Vec<KElem> = (0..self.dim).map(|r| m.get(r, f)).collect();
                    s.reduce(k, &mut col);
                    for (i, &g) in free.iter().enumerate() {
                        out.set(i, j, col[g]);
                    }
                }
                out
            })
            .collect();
        ModRep::new(self.ctx.clone(), d, mats, Provenance::Quotient)
    }

    /// Image of `v` in `V / S`, in the complement basis of [`Self::quotient`].
    pub fn project(&self, s: &Echelon, v: &[KElem]) -> Vec<KElem> {
        let mut w = v.to_vec();
        s.reduce(self.k(), &mut w);
        s.free_columns().into_iter().map(|f| w[f]).collect()
    }
}

/// Smallest invariant subspace containing `vectors`.
pub fn spin(rep: &ModRep, vectors: &[Vec<KElem>]) -> Echelon {
    spin_from(rep, Echelon::new(rep.dim), vectors)
}

/// Closure of an invariant `start` plus `vectors`.
pub fn spin_from(rep: &ModRep, mut e: Echelon, vectors: &[Vec<KElem>]) -> Echelon {
    let k = rep.k();
    let mut next = e.rank();
    for v in vectors {
        e.insert(k, v.clone());
    }
    let mats = rep.spinners();
    while next < e.rank() && !e.is_full() {
        let b = e.rows()[next].clone();
        next += 1;
        for m in mats.iter() {
            e.insert(k, m.mul_vec(k, &b));
            if e.is_full() {
                return e;
            }
        }
    }
    e
}

/// Joint eigenspaces of `U`: every character with a nonzero eigenspace,
/// with a basis (rows) of `{v : rho(t) v = lambda(t) v for all t in U}`.
pub fn eigenspaces(rep: &ModRep) -> Vec<(UCharacter, Vec<Vec<KElem>>)> {
    let ctx = &rep.ctx;
    let k = rep.k();
    let ugens = ctx.u_gens();
    let p = ctx.fq.p();
    let omegas: Vec<KElem> = (0..p).map(|e| k.pow(ctx.zeta, e as u64)).collect();
    let start: Vec<Vec<KElem>> = (0..rep.dim)
        .map(|i| {
            let mut v = vec![KElem(0); rep.dim];
            v[i] = KElem(1);
            v
        })
        .collect();
    let mut leaves = Vec::new();
    let mut stack = vec![(Vec::<u32>::new(), start)];
    while let Some((path, basis)) = stack.pop() {
        if basis.is_empty() {
            continue;
        }
        if path.len() == ugens.len() {
            leaves.push((path, basis));
            continue;
        }
        let mat = &rep.mats[ugens[path.len()].0];
        let images: Vec<Vec<KElem>> = basis.iter().map(|b| mat.mul_vec(k, b)).collect();
        for (e, &om) in omegas.iter().enumerate().rev() {
            // columns (rho(t) - om) b_j
            let s = basis.len();
            let mut m = KMat::zeros(rep.dim, s);
            for (j, (b, img)) in basis.iter().zip(&images).enumerate() {
                for r in 0..rep.dim {
                    m.set(r, j, k.sub(img[r], k.mul(om, b[r])));
                }
            }
            let ker = m.kernel(k);
            let sub: Vec<Vec<KElem>> = ker
                .iter()
                .map(|alpha| {
                    let mut v = vec![KElem(0); rep.dim];
                    for (a, b) in alpha.iter().zip(&basis) {
                        k.sub_scaled(&mut v, k.neg(*a), b);
                    }
                    v
                })
                .collect();
            let mut np = path.clone();
            np.push(e as u32);
            stack.push((np, sub));
        }
    }
    let decode = character_decoder(ctx);
    let mut out: Vec<(UCharacter, Vec<Vec<KElem>>)> = leaves
        .into_iter()
        .map(|(path, basis)| (decode(&path), basis))
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Maps a path of eigenvalue exponents (one per `U`-generator) to the
/// character taking those values.
fn character_decoder(ctx: &RepCtx) -> impl Fn(&[u32]) -> UCharacter + '_ {
    let ugens = ctx.u_gens();
    let fq = &ctx.fq;
    // per simple root: trace vector over the basis elements -> c
    let mut tables: Vec<HashMap<Vec<u32>, FqElem>> = vec![HashMap::new(); ctx.n - 1];
    for (i, table) in tables.iter_mut().enumerate() {
        let basis: Vec<FqElem> = ugens.iter().filter(|g| g.1 == i + 1).map(|g| g.2).collect();
        for c in fq.elements() {
            let key = basis.iter().map(|&a| fq.trace(fq.mul(c, a))).collect();
            table.insert(key, c);
        }
    }
    move |path: &[u32]| {
        let mut coeffs = vec![FqElem(0); ctx.n - 1];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let key: Vec<u32> = ugens.iter().zip(path).filter(|(g, _)| g.1 == i + 1).map(|(_, &e)| e).collect();
            *c = tables[i][&key];
        }
        UCharacter { coeffs }
    }
}

/// Basis of the `lambda`-eigenspace.
pub fn eigenspace(rep: &ModRep, lambda: &UCharacter) -> Vec<Vec<KElem>> {
    let k = rep.k();
    let mut basis: Vec<Vec<KElem>> = (0..rep.dim)
        .map(|i| {
            let mut v = vec![KElem(0); rep.dim];
            v[i] = KElem(1);
            v
        })
        .collect();
    for (idx, i, a) in rep.ctx.u_gens() {
        if basis.is_empty() {
            break;
        }
        let om = rep.ctx.char_value(lambda, i, a);
        let mat = &rep.mats[idx];
        let mut m = KMat::zeros(rep.dim, basis.len());
        for (j, b) in basis.iter().enumerate() {
            let img = mat.mul_vec(k, b);
            for r in 0..rep.dim {
                m.set(r, j, k.sub(img[r], k.mul(om, b[r])));
            }
        }
        basis = m
            .kernel(k)
            .iter()
            .map(|alpha| {
                let mut v = vec![KElem(0); rep.dim];
                for (x, b) in alpha.iter().zip(&basis) {
                    k.sub_scaled(&mut v, k.neg(*x), b);
                }
                v
            })
            .collect();
    }
    basis
}

/// Number of one-dimensional subspaces of a `dim`-dimensional space over `K`.
pub fn line_count(k: &KField, dim: usize) -> u128 {
    let s = k.size() as u128;
    (0..dim).map(|i| s.pow(i as u32)).sum()
}

/// Every line of the span of `basis`, one normalized vector each.
pub fn lines_of(k: &KField, basis: &[Vec<KElem>]) -> Result<Vec<Vec<KElem>>> {
    let d = basis.len();
    let count = line_count(k, d);
    if count > LINE_CAP {
        return Err(Error::LineCap { lines: count, dim: d });
    }
    let Some(first) = basis.first() else { return Ok(Vec::new()) };
    let s = k.size() as usize;
    let mut out = Vec::with_capacity(count as usize);
    // leading coefficient 1 at position `lead`, free coefficients after it
    for lead in 0..d {
        let free = d - lead - 1;
        for mut code in 0..s.pow(free as u32) {
            let mut v = basis[lead].clone();
            for b in &basis[lead + 1..] {
                let c = KElem((code % s) as u16);
                code /= s;
                k.sub_scaled(&mut v, k.neg(c), b);
            }
            out.push(v);
        }
    }
    debug_assert_eq!(out.len() as u128, count);
    debug_assert_eq!(out[0].len(), first.len());
    Ok(out)
}

/// All eigen-lines for `lambda`.
pub fn u_eigen_lines(rep: &ModRep, lambda: &UCharacter) -> Result<Vec<Vec<KElem>>> {
    lines_of(rep.k(), &eigenspace(rep, lambda))
}

/// Characters whose eigenspace is the image of the `lambda`-eigenspace under
/// a torus element, found by applying the `h_i` to `basis`. Translated lines
/// generate the same submodules, so spinning one orbit member suffices.
fn torus_orbit(
    rep: &ModRep,
    lambda: &UCharacter,
    basis: &[Vec<KElem>],
    dims: &HashMap<UCharacter, usize>,
) -> Vec<UCharacter> {
    let k = rep.k();
    let ctx = &rep.ctx;
    let ugens = ctx.u_gens();
    let p = ctx.fq.p();
    let omegas: Vec<KElem> = (0..p).map(|e| k.pow(ctx.zeta, e as u64)).collect();
    let decode = character_decoder(ctx);
    let id = KMat::identity(rep.dim);
    let hs: Vec<&KMat> = ctx
        .gens
        .iter()
        .zip(&rep.mats)
        .filter(|(g, m)| matches!(g, Gen::H { .. }) && **m != id)
        .map(|(_, m)| m)
        .collect();
    // eigenvalue exponents of a common eigenvector, if it is one
    let character_of = |vs: &[Vec<KElem>]| -> Option<UCharacter> {
        let mut path = Vec::with_capacity(ugens.len());
        for &(idx, _, _) in &ugens {
            let mut exp = None;
            for v in vs {
                let img = rep.mats[idx].mul_vec(k, v);
                let e = omegas.iter().position(|&om| {
                    img.iter().zip(v).all(|(&x, &y)| x == k.mul(om, y))
                })?;
                if *exp.get_or_insert(e) != e {
                    return None;
                }
            }
            path.push(exp? as u32);
        }
        Some(decode(&path))
    };
    let mut seen: HashSet<UCharacter> = HashSet::from([lambda.clone()]);
    let mut queue = vec![basis.to_vec()];
    while let Some(b) = queue.pop() {
        for h in &hs {
            let img: Vec<Vec<KElem>> = b.iter().map(|v| h.mul_vec(k, v)).collect();
            let Some(mu) = character_of(&img) else { continue };
            if dims.get(&mu) == Some(&b.len()) && seen.insert(mu) {
                queue.push(img);
            }
        }
    }
    seen.into_iter().collect()
}

/// Some eigen-line spinning to a proper nonzero submodule, if any.
pub fn proper_eigen_spin(rep: &ModRep) -> Result<Option<Echelon>> {
    if rep.dim == 0 {
        return Ok(None);
    }
    let spaces = eigenspaces(rep);
    if spaces.is_empty() {
        return Err(Error::Invalid("nonzero module without a U-eigen-line".into()));
    }
    let dims: HashMap<UCharacter, usize> = spaces.iter().map(|(l, b)| (l.clone(), b.len())).collect();
    let mut covered = HashSet::new();
    for (lambda, basis) in &spaces {
        if covered.contains(lambda) {
            continue;
        }
        for line in lines_of(rep.k(), basis)? {
            let s = spin(rep, &[line]);
            if !s.is_full() {
                return Ok(Some(s));
            }
        }
        covered.extend(torus_orbit(rep, lambda, basis, &dims));
    }
    Ok(None)
}

/// Irreducibility by spinning every `U`-eigen-line.
pub fn is_irreducible(rep: &ModRep) -> Result<bool> {
    if rep.dim == 0 {
        return Ok(false);
    }
    Ok(proper_eigen_spin(rep)?.is_none())
}

#[derive(Clone, Debug)]
pub struct CompSeries {
    /// Factors from the bottom up.
    pub factors: Vec<ModRep>,
}

impl CompSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim).collect()
    }
}

pub fn composition_series(rep: &ModRep) -> Result<CompSeries> {
    if rep.dim == 0 {
        return Ok(CompSeries { factors: Vec::new() });
    }
    match proper_eigen_spin(rep)? {
        None => Ok(CompSeries { factors: vec![rep.clone()] }),
        Some(s) => {
            let mut lower = composition_series(&rep.sub(&s))?;
            let upper = composition_series(&rep.quotient(&s))?;
            lower.factors.extend(upper.factors);
            Ok(CompSeries { factors: lower.factors })
        }
    }
}

/// Basis of `Hom(a, b)` as `b.dim x a.dim` matrices `X` with
/// `X rho_a(g) = rho_b(g) X`.
pub fn hom_space(a: &ModRep, b: &ModRep) -> Vec<KMat> {
    let k = a.k();
    let (d1, d2) = (a.dim, b.dim);
    if d1 == 0 || d2 == 0 {
        return Vec::new();
    }
    // images are d2 x u matrices in the unknown w in K^u, u = d2 * seeds
    let mut u = 0usize;
    let mut e = Echelon::new(d1);
    let mut images: Vec<KMat> = Vec::new();
    let mut constraints: Vec<Vec<KElem>> = Vec::new();
    let pad = |m: &KMat, u: usize| -> KMat {
        let mut out = KMat::zeros(m.rows, u);
        for r in 0..m.rows {
            out.row_mut(r)[..m.cols].copy_from_slice(m.row(r));
        }
        out
    };
    // reduce `v` with image `img`; either record a new row or a relation
    let push = |v: Vec<KElem>,
                    img: KMat,
                    e: &mut Echelon,
                    images: &mut Vec<KMat>,
                    constraints: &mut Vec<Vec<KElem>>,
                    u: usize| {
        let mut w = v;
        let coeffs = e.reduce(k, &mut w);
        let mut t = pad(&img, u);
        for (i, &c) in coeffs.iter().enumerate() {
            if c.0 != 0 {
                let ti = pad(&images[i], u);
                t = t.sub(k, &ti.scale(k, c));
            }
        }
        match w.iter().position(|x| x.0 != 0) {
            Some(p) => {
                let s = k.inv(w[p]).unwrap();
                e.insert(k, w);
                images.push(t.scale(k, s));
            }
            None => {
                for r in 0..d2 {
                    if t.row(r).iter().any(|x| x.0 != 0) {
                        constraints.push(t.row(r).to_vec());
                    }
                }
            }
        }
    };
    let mut next = 0;
    for seed in 0..d1 {
        let mut v = vec![KElem(0); d1];
        v[seed] = KElem(1);
        if e.contains(k, &v) {
            continue;
        }
        let old = u;
        u += d2;
        let mut img = KMat::zeros(d2, u);
        for r in 0..d2 {
            img.set(r, old + r, KElem(1));
        }
        push(v, img, &mut e, &mut images, &mut constraints, u);
        while next < e.rank() {
            let row = e.rows()[next].clone();
            let t = pad(&images[next], u);
            next += 1;
            for (ma, mb) in a.mats.iter().zip(&b.mats) {
                push(ma.mul_vec(k, &row), mb.mul(k, &t), &mut e, &mut images, &mut constraints, u);
            }
        }
    }
    let mut cm = Echelon::new(u);
    for c in constraints {
        let mut c = c;
        c.resize(u, KElem(0));
        cm.insert(k, c);
        if cm.is_full() {
            return Vec::new();
        }
    }
    let sols = KMat::from_rows(cm.rows(), u).kernel(k);
    // X R^T = Y with R the spun rows and Y the images applied to w
    let r = e.to_matrix();
    let rt_inv = r.transpose().inverse(k).expect("spun rows span");
    sols.iter()
        .map(|w| {
            let mut y = KMat::zeros(d2, d1);
            for (j, t) in images.iter().enumerate() {
                let tw = pad(t, u).mul_vec(k, w);
                for i in 0..d2 {
                    y.set(i, j, tw[i]);
                }
            }
            y.mul(k, &rt_inv)
        })
        .collect()
}

pub fn hom_dim(a: &ModRep, b: &ModRep) -> usize {
    hom_space(a, b).len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SelfDual {
    Yes,
    No,
    Unknown,
}

/// Invariant bilinear forms `B` with `rho(g)^T B rho(g) = B`.
pub fn invariant_forms(rep: &ModRep) -> Vec<KMat> {
    hom_space(rep, &rep.dual())
}

/// Checks that `form` is invariant under every generator.
pub fn form_is_invariant(rep: &ModRep, form: &KMat) -> bool {
    let k = rep.k();
    rep.mats.iter().all(|m| &m.transpose().mul(k, &form.mul(k, m)) == form)
}

/// Self-duality: a nondegenerate invariant form, searched over the form
/// space. For an irreducible module any nonzero form will do.
pub fn self_dual_check(rep: &ModRep, irreducible: bool) -> SelfDual {
    let k = rep.k();
    if rep.dim == 0 {
        return SelfDual::Yes;
    }
    let forms = invariant_forms(rep);
    if forms.is_empty() {
        return SelfDual::No;
    }
    if irreducible {
        return SelfDual::Yes;
    }
    let nondeg = |f: &KMat| !f.det_is_zero(k);
    if forms.iter().any(nondeg) {
        return SelfDual::Yes;
    }
    let s = forms.len();
    let combine = |coef: &[KElem]| -> KMat {
        forms.iter().zip(coef).fold(KMat::zeros(rep.dim, rep.dim), |acc, (f, &c)| acc.add(k, &f.scale(k, c)))
    };
    let total = (k.size() as u128).checked_pow(s as u32);
    if total.is_some_and(|t| t <= FORM_SEARCH_LIMIT) {
        let basis: Vec<Vec<KElem>> = (0..s)
            .map(|i| {
                let mut v = vec![KElem(0); s];
                v[i] = KElem(1);
                v
            })
            .collect();
        let found = lines_of(k, &basis).expect("bounded").iter().any(|c| nondeg(&combine(c)));
        return if found { SelfDual::Yes } else { SelfDual::No };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f_d0a1);
    for _ in 0..FORM_SAMPLES {
        let c: Vec<KElem> = (0..s).map(|_| KElem(rng.gen_range(0..k.size()) as u16)).collect();
        if nondeg(&combine(&c)) {
            return SelfDual::Yes;
        }
    }
    SelfDual::Unknown
}

/// Socle: the sum of the spins of eigen-lines that generate irreducible
/// submodules.
pub fn socle(rep: &ModRep) -> Result<Echelon> {
    let k = rep.k();
    let mut total = Echelon::new(rep.dim);
    let spaces = eigenspaces(rep);
    let dims: HashMap<UCharacter, usize> = spaces.iter().map(|(l, b)| (l.clone(), b.len())).collect();
    let mut covered = HashSet::new();
    for (lambda, basis) in &spaces {
        if covered.contains(lambda) {
            continue;
        }
        for line in lines_of(k, basis)? {
            if total.contains(k, &line) {
                continue;
            }
            let s = spin(rep, &[line]);
            if is_irreducible(&rep.sub(&s))? {
                for r in s.rows() {
                    total.insert(k, r.clone());
                }
            }
        }
        covered.extend(torus_orbit(rep, lambda, basis, &dims));
    }
    Ok(total)
}
