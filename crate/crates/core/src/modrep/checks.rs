//! Module-level checks on the filtration: irreducibility of the factors,
//! the parabolic criterion, the top factor `S_2/S_1`, self-duality and the
//! socle series.

use rayon::prelude::*;
use serde::Serialize;

use super::rep::{
    composition_series, form_is_invariant, hom_dim, is_irreducible, self_dual_check, socle, spin, spin_from, ModRep,
    SelfDual,
};
use crate::error::{Error, Result};
use crate::filtration::{FactorModule, Filtration};
use crate::lattice::UCharacter;
use crate::linalg::{Echelon, KMat};
use crate::rings::FqElem;

/// The character with `c_r = 1` exactly on the roots of `mask`; its
/// eigenvector stands for the parabolic `P_J`.
pub fn parabolic_character(n: usize, mask: u32) -> UCharacter {
    UCharacter { coeffs: (0..n - 1).map(|i| FqElem(((mask >> i) & 1) as u8)).collect() }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelVerdict {
    pub k: u32,
    pub dim: usize,
    pub irreducible: bool,
    /// Masks `J` with `nu([G:P_J]) = k`.
    pub parabolics: Vec<u32>,
    /// `contained[a][b]`: image of `E_{P_a}` lies in the spin of `E_{P_b}`.
    pub contained: Vec<Vec<bool>>,
    pub criterion: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GowReport {
    pub n: usize,
    pub q: u32,
    pub ell: u32,
    pub levels: Vec<LevelVerdict>,
    /// Every nonzero `M(k)` irreducible (reported, not asserted).
    pub conjecture_holds: bool,
    pub all_agree: bool,
}

/// Eigen-line verdict and parabolic criterion for one factor module.
pub fn level_verdict(f: &Filtration, fm: &FactorModule) -> Result<LevelVerdict> {
    let n = f.lat.n();
    let k = fm.k;
    let parabolics = f.table.attaining(k);
    let images: Vec<Vec<_>> = parabolics
        .iter()
        .map(|&mask| f.e_image(&parabolic_character(n, mask), k))
        .collect::<Result<_>>()?;
    let kf = fm.rep.k();
    let spins: Vec<Echelon> = images.iter().map(|v| spin(&fm.rep, std::slice::from_ref(v))).collect();
    let contained: Vec<Vec<bool>> =
        images.iter().map(|v| spins.iter().map(|s| s.contains(kf, v)).collect()).collect();
    let criterion = !parabolics.is_empty() && contained.iter().any(|row| row.iter().all(|&b| b));
    let irreducible = is_irreducible(&fm.rep)?;
    Ok(LevelVerdict { k, dim: fm.rep.dim, irreducible, parabolics, contained, criterion, agree: criterion == irreducible })
}

pub fn gow_conjecture(f: &Filtration) -> Result<GowReport> {
    let levels: Vec<LevelVerdict> = f
        .attained()
        .into_par_iter()
        .map(|k| level_verdict(f, &f.factor_module(k)?))
        .collect::<Result<_>>()?;
    Ok(GowReport {
        n: f.lat.n(),
        q: f.lat.q(),
        ell: f.ell,
        conjecture_holds: levels.iter().all(|l| l.irreducible),
        all_agree: levels.iter().all(|l| l.agree),
        levels,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CasaReport {
    pub kappa1: u32,
    pub kappa2: u32,
    /// Largest attained level below `kappa1`.
    pub next_level: Option<u32>,
    pub dim: usize,
    pub irreducible: bool,
}

impl CasaReport {
    pub fn passed(&self) -> bool {
        self.dim > 0 && self.irreducible && self.next_level == Some(self.kappa2)
    }
}

/// `S_2 / S_1 = I(kappa2) / I(kappa1)` mod `ell`; needs `ell | q+1`.
pub fn casa_check(f: &Filtration) -> Result<CasaReport> {
    let q = f.lat.q();
    if (q + 1) % f.ell != 0 {
        return Err(Error::Precondition(format!("ell = {} does not divide q + 1 = {}", f.ell, q + 1)));
    }
    let (k1, k2) = (f.table.kappa1, f.table.kappa2);
    let next_level = f.attained().into_iter().filter(|&k| k < k1).max();
    let (rep, _) = f.subquotient(k2, k1)?;
    let irreducible = rep.dim > 0 && is_irreducible(&rep)?;
    Ok(CasaReport { kappa1: k1, kappa2: k2, next_level, dim: rep.dim, irreducible })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorChecks {
    pub k: u32,
    pub dim: usize,
    pub paired_form_identity: bool,
    /// `f_c` is invariant and nondegenerate.
    pub self_dual: bool,
    /// Spins of the `E_lambda` images with `c_lambda = k` fill `M(k)`.
    pub eigen_spins_fill: bool,
    pub factor_dims: Vec<usize>,
    pub factors_self_dual: bool,
}

impl FactorChecks {
    pub fn passed(&self) -> bool {
        self.paired_form_identity && self.self_dual && self.eigen_spins_fill && self.factors_self_dual
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Section6Report {
    pub n: usize,
    pub q: u32,
    pub ell: u32,
    /// `None` when the ambient series was not computed.
    pub series_dims: Option<Vec<usize>>,
    pub multiplicity_free: Option<bool>,
    pub ibar_irreducible: Option<bool>,
    pub ibar_self_dual: Option<SelfDual>,
    pub self_dual_iff_irreducible: Option<bool>,
    pub series_factors_self_dual: Option<bool>,
    pub levels: Vec<FactorChecks>,
}

impl Section6Report {
    pub fn passed(&self) -> bool {
        self.multiplicity_free != Some(false)
            && self.self_dual_iff_irreducible != Some(false)
            && self.series_factors_self_dual != Some(false)
            && self.levels.iter().all(FactorChecks::passed)
    }
}

fn nondegenerate(k: &crate::rings::KField, m: &KMat) -> bool {
    m.rows == m.cols && m.rank(k) == m.rows
}

pub fn factor_checks(f: &Filtration, fm: &FactorModule) -> Result<FactorChecks> {
    let rep = &fm.rep;
    let kf = rep.k();
    let n = f.lat.n();
    let paired_form_identity = fm.paired_form == KMat::identity(rep.dim);
    let self_dual = form_is_invariant(rep, &fm.form) && nondegenerate(kf, &fm.form);
    let mut acc = Echelon::new(rep.dim);
    for lambda in UCharacter::all(n, &f.ctx.fq) {
        if f.table.val(lambda.j_mask()) == fm.k && !acc.is_full() {
            let v = f.e_image(&lambda, fm.k)?;
            acc = spin_from(rep, acc, &[v]);
        }
    }
    let series = composition_series(rep)?;
    let factors_self_dual = if series.factors.len() == 1 {
        self_dual
    } else {
        series.factors.iter().all(|x| self_dual_check(x, true) == SelfDual::Yes)
    };
    Ok(FactorChecks {
        k: fm.k,
        dim: rep.dim,
        paired_form_identity,
        self_dual,
        eigen_spins_fill: acc.is_full(),
        factor_dims: series.dims(),
        factors_self_dual,
    })
}

/// Pairwise non-isomorphic factors (iso tested by a nonzero hom space).
pub fn multiplicity_free(factors: &[ModRep]) -> bool {
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if factors[i].dim == factors[j].dim && hom_dim(&factors[i], &factors[j]) > 0 {
                return false;
            }
        }
    }
    true
}

/// `full_series` adds the checks that need a composition series of `I bar`.
pub fn section6_suite(f: &Filtration, full_series: bool) -> Result<Section6Report> {
    let levels: Vec<FactorChecks> = f
        .attained()
        .into_par_iter()
        .map(|k| factor_checks(f, &f.factor_module(k)?))
        .collect::<Result<_>>()?;
    let mut report = Section6Report {
        n: f.lat.n(),
        q: f.lat.q(),
        ell: f.ell,
        series_dims: None,
        multiplicity_free: None,
        ibar_irreducible: None,
        ibar_self_dual: None,
        self_dual_iff_irreducible: None,
        series_factors_self_dual: None,
        levels,
    };
    if full_series {
        let ambient = f.ambient();
        let series = composition_series(&ambient)?;
        let irreducible = series.factors.len() == 1;
        let sd = self_dual_check(&ambient, irreducible);
        report.series_dims = Some(series.dims());
        report.multiplicity_free = Some(multiplicity_free(&series.factors));
        report.ibar_irreducible = Some(irreducible);
        report.ibar_self_dual = Some(sd);
        report.self_dual_iff_irreducible = Some(match sd {
            SelfDual::Yes => irreducible,
            SelfDual::No => !irreducible,
            SelfDual::Unknown => false,
        });
        report.series_factors_self_dual =
            Some(series.factors.iter().all(|x| self_dual_check(x, true) == SelfDual::Yes));
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleStep {
    /// `S_i = I(k_i)`; `None` for the start `S_0 = 0`.
    pub k_i: Option<u32>,
    pub k_next: u32,
    pub quotient_dim: usize,
    pub socle_dim: usize,
    /// `dim S_{i+1} / S_i`.
    pub layer_dim: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SocleReport {
    pub n: usize,
    pub q: u32,
    pub ell: u32,
    pub steps: Vec<SocleStep>,
    pub all_agree: bool,
}

/// Compares `soc(I bar / S_i)` with `S_{i+1} / S_i` along the attained
/// levels taken from the top down.
pub fn explore_socle(f: &Filtration) -> Result<SocleReport> {
    let ambient = f.ambient();
    let kf = ambient.k();
    let mut levels = f.attained();
    levels.reverse();
    let mut steps = Vec::new();
    let mut prev: Option<u32> = None;
    for &k in &levels {
        let lower = match prev {
            Some(kp) => f.ibar_basis(kp),
            None => Echelon::new(ambient.dim),
        };
        let upper = f.ibar_basis(k);
        let quot = ambient.quotient(&lower);
        let soc = socle(&quot)?;
        let mut layer = Echelon::new(quot.dim);
        for r in upper.rows() {
            layer.insert(kf, ambient.project(&lower, r));
        }
        let agree = soc.rank() == layer.rank() && soc.rows().iter().all(|r| layer.contains(kf, r));
        steps.push(SocleStep {
            k_i: prev,
            k_next: k,
            quotient_dim: quot.dim,
            socle_dim: soc.rank(),
            layer_dim: layer.rank(),
            agree,
        });
        prev = Some(k);
    }
    Ok(SocleReport { n: f.lat.n(), q: f.lat.q(), ell: f.ell, all_agree: steps.iter().all(|s| s.agree), steps })
}
