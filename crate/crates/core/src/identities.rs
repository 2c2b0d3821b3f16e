//! Exact checks of the commutation rules in `GL_n(q)` and of the identities
//! relating `e`, root-subgroup sums and the `E_lambda` in the lattice, all
//! over `Z[zeta_p]`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{positive_roots, root_apply, root_orth, root_sum, simple_roots, GLMat, Perm, Root};
use crate::lattice::echar::build_e;
use crate::lattice::{Atom, Lattice, OperatorExpr, UCharacter};
use crate::rings::{CycInt, Cyclotomic, FqElem, FqField};

/// Characters swept exhaustively up to this `q`; above it a fixed sample.
pub const EXHAUSTIVE_Q: u32 = 4;
pub const SAMPLED_CHARS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityName {
    Conj,
    Commu,
    Hola,
    Hola2,
    Hola3,
    Ex1First,
    Ex1Second,
    Ex2,
    C7,
}

impl IdentityName {
    pub const ALL: [IdentityName; 9] = [
        IdentityName::Conj,
        IdentityName::Commu,
        IdentityName::Hola,
        IdentityName::Hola2,
        IdentityName::Hola3,
        IdentityName::Ex1First,
        IdentityName::Ex1Second,
        IdentityName::Ex2,
        IdentityName::C7,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityName::Conj => "conj",
            IdentityName::Commu => "commu",
            IdentityName::Hola => "hola",
            IdentityName::Hola2 => "hola2",
            IdentityName::Hola3 => "hola3",
            IdentityName::Ex1First => "ex1_first",
            IdentityName::Ex1Second => "ex1_second",
            IdentityName::Ex2 => "ex2",
            IdentityName::C7 => "c7",
        }
    }

    /// Needs a pair of adjacent simple roots.
    pub fn needs_rank_two(self) -> bool {
        matches!(self, IdentityName::Commu | IdentityName::Ex1First | IdentityName::Ex1Second | IdentityName::Ex2 | IdentityName::C7)
    }
}

impl std::str::FromStr for IdentityName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityName::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown identity {s}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Equal,
    Unequal,
}

/// First coordinate where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Lattice coordinate (position in the `U` index), or the flattened
    /// matrix entry for group identities.
    pub position: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCase {
    pub name: IdentityName,
    pub n: usize,
    pub q: u32,
    pub params: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Mismatch>,
}

impl IdentityCase {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Equal
    }
}

/// Which element stands for the reflection `w_r` in lattice identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WRep {
    /// The permutation matrix of the transposition.
    Perm,
    /// The permutation matrix times `-1` in the diagonal slot `i` of `[i,j]`.
    Signed,
}

pub fn w_matrix(lat: &Lattice, r: Root, rep: WRep) -> GLMat {
    let grp = lat.group();
    let w = grp.w_elem(r);
    match rep {
        WRep::Perm => w,
        WRep::Signed => {
            let fq = grp.fq();
            let mut d = vec![fq.one(); lat.n()];
            d[r.i - 1] = fq.neg(fq.one());
            grp.mul(&w, &grp.diag(&d))
        }
    }
}

fn compare<T: PartialEq + std::fmt::Display>(lhs: &[T], rhs: &[T]) -> Option<Mismatch> {
    lhs.iter()
        .zip(rhs)
        .position(|(a, b)| a != b)
        .map(|i| Mismatch { position: i, lhs: lhs[i].to_string(), rhs: rhs[i].to_string() })
}

fn case(name: IdentityName, lat: &Lattice, params: String, mismatch: Option<Mismatch>) -> IdentityCase {
    IdentityCase {
        name,
        n: lat.n(),
        q: lat.q(),
        params,
        verdict: if mismatch.is_none() { Verdict::Equal } else { Verdict::Unequal },
        counterexample: mismatch,
    }
}

/// Ordered pairs of distinct non-orthogonal simple roots.
pub fn adjacent_pairs(n: usize) -> Vec<(Root, Root)> {
    let pi = simple_roots(n);
    let mut out = Vec::new();
    for &r in &pi {
        for &s in &pi {
            if r != s && !root_orth(r, s) {
                out.push((r, s));
            }
        }
    }
    out
}

/// `c` values parametrizing the nontrivial additive characters `nu(c .)`:
/// all of them for `q <= 4`, else the first `SAMPLED_CHARS` in index order.
pub fn character_sweep(fq: &FqField) -> Vec<FqElem> {
    let all: Vec<FqElem> = fq.nonzero().collect();
    if fq.q() <= EXHAUSTIVE_Q {
        all
    } else {
        all.into_iter().take(SAMPLED_CHARS).collect()
    }
}

fn all_roots(n: usize) -> Vec<Root> {
    let pos = positive_roots(n);
    pos.iter().copied().chain(pos.iter().map(|r| r.neg())).collect()
}

/// `w t_r(a) w^{-1} = t_{w(r)}(a)` for every `w` in `S_n`, root `r` and `a`.
pub fn verify_conj(lat: &Lattice) -> Vec<IdentityCase> {
    let grp = lat.group();
    let fq = grp.fq();
    let mut out = Vec::new();
    for w in Perm::all(lat.n()) {
        let wm = grp.perm_matrix(&w);
        let wi = grp.inv(&wm).expect("permutation matrices are invertible");
        for r in all_roots(lat.n()) {
            let mut bad = None;
            for a in fq.elements() {
                let lhs = grp.mul_all(&[wm.clone(), grp.t_elem(r, a), wi.clone()]);
                let rhs = grp.t_elem(root_apply(&w, r), a);
                if lhs != rhs {
                    bad = compare(&lhs.entries, &rhs.entries);
                    break;
                }
            }
            out.push(case(IdentityName::Conj, lat, format!("w={:?} r={r}", w.img), bad));
        }
    }
    out
}

/// Sign exponent: 0 when `r = [i,i+1], s = [i+1,i+2]`, 1 in the swapped order.
pub fn commutator_sign(r: Root, s: Root) -> Result<u32> {
    if r.is_simple() && s.is_simple() {
        if s.i == r.j {
            return Ok(0);
        }
        if r.i == s.j {
            return Ok(1);
        }
    }
    Err(Error::Invalid(format!("{r} and {s} are not adjacent simple roots")))
}

/// `[t_r(a), t_s(b)] = t_{r+s}((-1)^nu ab)` for adjacent simple `r, s`.
pub fn verify_commu(lat: &Lattice) -> Result<Vec<IdentityCase>> {
    if lat.n() < 3 {
        return Err(Error::Precondition("commu needs n >= 3".into()));
    }
    let grp = lat.group();
    let fq = grp.fq();
    let mut out = Vec::new();
    for (r, s) in adjacent_pairs(lat.n()) {
        let sign = commutator_sign(r, s)?;
        // r + s as a positive root; the matrix entry sits at [min i, max j]
        let rs = root_sum(r, s).ok_or_else(|| Error::Invalid("roots do not add".into()))?;
        let mut bad = None;
        'outer: for a in fq.elements() {
            for b in fq.elements() {
                let lhs = grp.commutator(&grp.t_elem(r, a), &grp.t_elem(s, b));
                let mut c = fq.mul(a, b);
                if sign == 1 {
                    c = fq.neg(c);
                }
                let rhs = grp.t_elem(rs, c);
                if lhs != rhs {
                    bad = compare(&lhs.entries, &rhs.entries);
                    break 'outer;
                }
            }
        }
        out.push(case(IdentityName::Commu, lat, format!("r={r} s={s} nu={sign}"), bad));
    }
    Ok(out)
}

struct Ctx<'a> {
    lat: &'a Lattice,
    ring: Cyclotomic,
    e: Vec<CycInt>,
    wrep: WRep,
}

impl<'a> Ctx<'a> {
    fn new(lat: &'a Lattice, wrep: WRep) -> Self {
        let ring = Cyclotomic { p: lat.p() };
        let id = lat.uni().index(&lat.group().identity());
        Ctx { lat, ring, e: lat.basis(&ring, id), wrep }
    }

    fn w(&self, r: Root) -> Atom<CycInt> {
        Atom::Group(w_matrix(self.lat, r, self.wrep))
    }

    fn t(&self, r: Root, a: FqElem) -> Atom<CycInt> {
        Atom::Group(self.lat.group().t_elem(r, a))
    }

    fn scalar(&self, k: i64) -> Atom<CycInt> {
        Atom::Scalar(CycInt::from_int(self.lat.p(), k))
    }

    fn apply(&self, atoms: Vec<Atom<CycInt>>, x: &[CycInt]) -> Result<Vec<CycInt>> {
        self.lat.operator_apply(&self.ring, &OperatorExpr::new(atoms), x)
    }

    fn e_of(&self, lambda: &UCharacter) -> Vec<CycInt> {
        build_e(&self.ring, self.lat, lambda)
    }

    fn sub(&self, a: &[CycInt], b: &[CycInt]) -> Vec<CycInt> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    fn scale(&self, k: i64, a: &[CycInt]) -> Vec<CycInt> {
        let c = CycInt::from_int(self.lat.p(), k);
        a.iter().map(|x| x * &c).collect()
    }
}

/// `w_r e = -e`, `w_r t_r(a) e = t_r(-a^{-1}) e - e` and
/// `w_r X^_r e = X^_r e - (q+1) e` for every simple `r` and `a != 0`.
pub fn verify_hola(lat: &Lattice, name: IdentityName, wrep: WRep) -> Result<Vec<IdentityCase>> {
    let c = Ctx::new(lat, wrep);
    let fq = lat.group().fq();
    let q = lat.q() as i64;
    let mut out = Vec::new();
    for r in simple_roots(lat.n()) {
        match name {
            IdentityName::Hola => {
                let lhs = c.apply(vec![c.w(r)], &c.e)?;
                let rhs = c.scale(-1, &c.e);
                out.push(case(name, lat, format!("r={r}"), compare(&lhs, &rhs)));
            }
            IdentityName::Hola2 => {
                for a in fq.nonzero() {
                    let lhs = c.apply(vec![c.w(r), c.t(r, a)], &c.e)?;
                    let b = fq.neg(fq.inv(a).expect("nonzero"));
                    let rhs = c.sub(&c.apply(vec![c.t(r, b)], &c.e)?, &c.e);
                    out.push(case(name, lat, format!("r={r} a={a}"), compare(&lhs, &rhs)));
                }
            }
            IdentityName::Hola3 => {
                let xe = c.apply(vec![Atom::RootSum(r)], &c.e)?;
                let lhs = c.apply(vec![c.w(r)], &xe)?;
                let rhs = c.sub(&xe, &c.scale(q + 1, &c.e));
                out.push(case(name, lat, format!("r={r}"), compare(&lhs, &rhs)));
            }
            _ => return Err(Error::Invalid(format!("{} is not a lattice identity", name.as_str()))),
        }
    }
    Ok(out)
}

fn check_pair(lat: &Lattice, r: Root, s: Root) -> Result<Root> {
    if lat.n() < 3 {
        return Err(Error::Precondition("needs n >= 3".into()));
    }
    if !r.is_simple() || !s.is_simple() || r == s || root_orth(r, s) {
        return Err(Error::Precondition(format!("{r}, {s} must be distinct adjacent simple roots")));
    }
    root_sum(r, s).ok_or_else(|| Error::Invalid("roots do not add".into()))
}

fn first_mismatch(pairs: &[(&[CycInt], &[CycInt])]) -> Option<Mismatch> {
    pairs.iter().find_map(|(a, b)| compare(a, b))
}

/// Both equalities of the first identity of the pair (`c_lam` nonzero):
/// `X^_r w_r X^_s w_s E = E_{lam[s]} = X^_r X^_{r+s} w_r w_s E`,
/// `E = E_{lam[r]}`.
pub fn verify_ex1_first(lat: &Lattice, c_lam: FqElem, r: Root, s: Root, wrep: WRep) -> Result<IdentityCase> {
    let rs = check_pair(lat, r, s)?;
    let c = Ctx::new(lat, wrep);
    let n = lat.n();
    let e_r = c.e_of(&UCharacter::single(n, r.i, c_lam));
    let e_s = c.e_of(&UCharacter::single(n, s.i, c_lam));
    let a = c.apply(vec![Atom::RootSum(r), c.w(r), Atom::RootSum(s), c.w(s)], &e_r)?;
    let b = c.apply(vec![Atom::RootSum(r), Atom::RootSum(rs), c.w(r), c.w(s)], &e_r)?;
    let bad = first_mismatch(&[(&a, &e_s), (&b, &e_s)]);
    Ok(case(IdentityName::Ex1First, lat, format!("r={r} s={s} lambda={c_lam}"), bad))
}

/// Both equalities of the twisted version: the sums over `X_r` carry
/// `nu(c_mu .)`, and the middle member is `(q^2+q+1) E_{mu[r] lam[s]}`.
pub fn verify_ex1_second(
    lat: &Lattice,
    c_lam: FqElem,
    c_mu: FqElem,
    r: Root,
    s: Root,
    wrep: WRep,
) -> Result<IdentityCase> {
    let rs = check_pair(lat, r, s)?;
    let c = Ctx::new(lat, wrep);
    let n = lat.n();
    let fq = lat.group().fq();
    let q = lat.q() as i64;
    let e_r = c.e_of(&UCharacter::single(n, r.i, c_lam));
    let mixed = UCharacter::single(n, r.i, c_mu).mul(&UCharacter::single(n, s.i, c_lam), fq);
    let mid = c.scale(q * q + q + 1, &c.e_of(&mixed));
    let a = c.apply(vec![Atom::TwistedRootSum(r, c_mu), c.w(r), Atom::RootSum(s), c.w(s)], &e_r)?;
    let b = c.apply(vec![Atom::TwistedRootSum(r, c_mu), Atom::RootSum(rs), c.w(r), c.w(s)], &e_r)?;
    let bad = first_mismatch(&[(&a, &mid), (&b, &mid)]);
    Ok(case(IdentityName::Ex1Second, lat, format!("r={r} s={s} lambda={c_lam} mu={c_mu}"), bad))
}

/// `X^_r w_r X^_s w_s E = E_{lam[s]} = X^_r X^_{r+s} w_r w_s E` with
/// `E = E_{lam[r] mu[s]}`.
pub fn verify_ex2(lat: &Lattice, c_lam: FqElem, c_mu: FqElem, r: Root, s: Root, wrep: WRep) -> Result<IdentityCase> {
    let rs = check_pair(lat, r, s)?;
    let c = Ctx::new(lat, wrep);
    let n = lat.n();
    let fq = lat.group().fq();
    let prod = UCharacter::single(n, r.i, c_lam).mul(&UCharacter::single(n, s.i, c_mu), fq);
    let e = c.e_of(&prod);
    let e_s = c.e_of(&UCharacter::single(n, s.i, c_lam));
    let a = c.apply(vec![Atom::RootSum(r), c.w(r), Atom::RootSum(s), c.w(s)], &e)?;
    let b = c.apply(vec![Atom::RootSum(r), Atom::RootSum(rs), c.w(r), c.w(s)], &e)?;
    let bad = first_mismatch(&[(&a, &e_s), (&b, &e_s)]);
    Ok(case(IdentityName::Ex2, lat, format!("r={r} s={s} lambda={c_lam} mu={c_mu}"), bad))
}

/// `X^_{r+s} w_r w_s E_{lam[r]} = (q^2+q+1) R^ X^_{r+s} X^_{lam(s)} e - (q+1) E_{lam[s]}`,
/// where `R^` sums the root subgroups other than `r, s, r+s`.
pub fn verify_c7(lat: &Lattice, c_lam: FqElem, r: Root, s: Root, wrep: WRep) -> Result<IdentityCase> {
    let rs = check_pair(lat, r, s)?;
    let c = Ctx::new(lat, wrep);
    let n = lat.n();
    let q = lat.q() as i64;
    let e_r = c.e_of(&UCharacter::single(n, r.i, c_lam));
    let e_s = c.e_of(&UCharacter::single(n, s.i, c_lam));
    let lhs = c.apply(vec![Atom::RootSum(rs), c.w(r), c.w(s)], &e_r)?;
    let first = c.apply(
        vec![c.scalar(q * q + q + 1), Atom::ComplementSum(r, s), Atom::RootSum(rs), Atom::TwistedRootSum(s, c_lam)],
        &c.e,
    )?;
    let rhs = c.sub(&first, &c.scale(q + 1, &e_s));
    Ok(case(IdentityName::C7, lat, format!("r={r} s={s} lambda={c_lam}"), compare(&lhs, &rhs)))
}

/// Every case of `name` on `lat` under the character sweep policy.
pub fn verify_identity(lat: &Lattice, name: IdentityName, wrep: WRep) -> Result<Vec<IdentityCase>> {
    if name.needs_rank_two() && lat.n() < 3 {
        return Err(Error::Precondition(format!("{} needs n >= 3", name.as_str())));
    }
    let chars = character_sweep(lat.group().fq());
    let pairs = adjacent_pairs(lat.n());
    let mut jobs: Vec<(Root, Root, FqElem, FqElem)> = Vec::new();
    for &(r, s) in &pairs {
        for &l in &chars {
            match name {
                IdentityName::Ex1Second | IdentityName::Ex2 => {
                    jobs.extend(chars.iter().map(|&m| (r, s, l, m)));
                }
                _ => jobs.push((r, s, l, l)),
            }
        }
    }
    match name {
        IdentityName::Conj => Ok(verify_conj(lat)),
        IdentityName::Commu => verify_commu(lat),
        IdentityName::Hola | IdentityName::Hola2 | IdentityName::Hola3 => verify_hola(lat, name, wrep),
        _ => jobs
            .par_iter()
            .map(|&(r, s, l, m)| match name {
                IdentityName::Ex1First => verify_ex1_first(lat, l, r, s, wrep),
                IdentityName::Ex1Second => verify_ex1_second(lat, l, m, r, s, wrep),
                IdentityName::Ex2 => verify_ex2(lat, l, m, r, s, wrep),
                _ => verify_c7(lat, l, r, s, wrep),
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_signs() {
        assert_eq!(commutator_sign(Root::simple(1), Root::simple(2)).unwrap(), 0);
        assert_eq!(commutator_sign(Root::simple(2), Root::simple(1)).unwrap(), 1);
        assert!(commutator_sign(Root::simple(1), Root::simple(3)).is_err());
    }

    #[test]
    fn names_round_trip() {
        for x in IdentityName::ALL {
            assert_eq!(x.as_str().parse::<IdentityName>().unwrap(), x);
        }
    }
}
