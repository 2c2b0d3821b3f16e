use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use steinberg_core::filtration::{Filtration, SnfChoice};
use steinberg_core::group::{GLMat, Gen};
use steinberg_core::lattice::echar::build_e;
use steinberg_core::lattice::{gram_table, Lattice, UCharacter};
use steinberg_core::linalg::{Echelon, KMat};
use steinberg_core::modrep::*;
use steinberg_core::rings::{FqElem, KElem, Residue};

fn filtration(n: usize, q: u32, ell: u32) -> Filtration {
    let lat = Arc::new(Lattice::new(n, q).unwrap());
    let gram = Arc::new(gram_table(&lat));
    Filtration::new(lat, gram, ell, SnfChoice::Auto, 0).unwrap()
}

/// Modules of small dimension, some reducible.
fn sample_modules() -> Vec<ModRep> {
    let mut out = Vec::new();
    for (n, q, ell) in [(2, 2, 3), (2, 3, 2), (3, 2, 3), (2, 4, 5)] {
        let f = filtration(n, q, ell);
        out.push(f.ambient());
        for k in f.attained() {
            out.push(f.factor_module(k).unwrap().rep);
        }
    }
    out
}

fn random_invertible(rep: &ModRep, rng: &mut ChaCha8Rng) -> KMat {
    let k = rep.k();
    loop {
        let mut m = KMat::zeros(rep.dim, rep.dim);
        for i in 0..rep.dim {
            for j in 0..rep.dim {
                m.set(i, j, KElem(rng.gen_range(0..k.size()) as u16));
            }
        }
        if m.inverse(k).is_some() {
            return m;
        }
    }
}

/// `rho` of a word over a prime field, where `t_r(a) = t_r(1)^a`.
fn word_image(rep: &ModRep, word: &[Gen]) -> KMat {
    let k = rep.k();
    let mut acc = KMat::identity(rep.dim);
    for &g in word {
        match g {
            Gen::T { i, a } => {
                for _ in 0..a.0 {
                    acc = acc.mul(k, rep.mat(Gen::T { i, a: FqElem(1) }));
                }
            }
            _ => acc = acc.mul(k, rep.mat(g)),
        }
    }
    acc
}

fn random_group_element(f: &Filtration, rng: &mut ChaCha8Rng) -> GLMat {
    let g = f.lat.group();
    loop {
        let mut m = g.zero();
        for i in 0..g.n() {
            for j in 0..g.n() {
                m.set(i, j, FqElem(rng.gen_range(0..g.q()) as u8));
            }
        }
        if g.det(&m) != g.fq().zero() {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(24) })]

    #[test]
    fn spin_is_idempotent_and_invariant(seed in any::<u64>(), count in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for rep in sample_modules() {
            let k = rep.k();
            let vs: Vec<Vec<KElem>> = (0..count)
                .map(|_| (0..rep.dim).map(|_| KElem(rng.gen_range(0..k.size()) as u16)).collect())
                .collect();
            let s = spin(&rep, &vs);
            let again = spin(&rep, s.rows());
            prop_assert_eq!(again.rank(), s.rank());
            for v in &vs {
                prop_assert!(s.contains(k, v));
            }
            for m in &rep.mats {
                for r in s.rows() {
                    prop_assert!(s.contains(k, &m.mul_vec(k, r)));
                }
            }
        }
    }

    #[test]
    fn verdicts_survive_a_change_of_basis(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for rep in sample_modules() {
            let s = random_invertible(&rep, &mut rng);
            let conj = rep.conjugate(&s);
            prop_assert_eq!(is_irreducible(&rep).unwrap(), is_irreducible(&conj).unwrap());
            let mut a = composition_series(&rep).unwrap().dims();
            let mut b = composition_series(&conj).unwrap().dims();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn matrices_form_a_representation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for (n, q, ell) in [(2, 3, 2), (3, 2, 3), (3, 3, 2)] {
            let f = filtration(n, q, ell);
            let reps: Vec<ModRep> = std::iter::once(f.ambient())
                .chain(f.attained().into_iter().map(|k| f.factor_module(k).unwrap().rep))
                .collect();
            let g = f.lat.group();
            let (a, b) = (random_group_element(&f, &mut rng), random_group_element(&f, &mut rng));
            let (wa, wb, wab) = (g.gl_word(&a).unwrap(), g.gl_word(&b).unwrap(), g.gl_word(&g.mul(&a, &b)).unwrap());
            for rep in &reps {
                let k = rep.k();
                prop_assert_eq!(word_image(rep, &wa).mul(k, &word_image(rep, &wb)), word_image(rep, &wab));
            }
        }
    }
}

#[test]
fn relations_and_dimensions() {
    for (n, q, ell) in [(2, 2, 3), (2, 3, 2), (2, 5, 3), (3, 2, 3), (3, 2, 7), (3, 3, 2), (4, 2, 3)] {
        let f = filtration(n, q, ell);
        let amb = f.ambient();
        assert!(amb.relations_hold());
        let total: usize = f.attained().into_iter().map(|k| f.dim_m(k)).sum();
        assert_eq!(total, f.lat.size());
        for k in f.attained() {
            let fm = f.factor_module(k).unwrap();
            assert!(fm.rep.relations_hold());
            let back = fm.rep.dual().dual();
            assert_eq!(back.mats, fm.rep.mats);
        }
        // U acts by permutation matrices
        for &g in f.ctx.gens.iter().filter(|g| matches!(g, Gen::T { .. })) {
            let m = amb.mat(g);
            for c in 0..m.cols {
                let col: Vec<u16> = (0..m.rows).map(|r| m.get(r, c).0).collect();
                assert_eq!(col.iter().filter(|&&x| x == 1).count(), 1);
                assert_eq!(col.iter().filter(|&&x| x != 0).count(), 1);
            }
        }
    }
}

#[test]
fn n2_q2_ell3_examples() {
    let f = filtration(2, 2, 3);
    let amb = f.ambient();
    let k = amb.k();
    let w = KMat::from_rows(&[vec![k.from_int(2), k.from_int(2)], vec![k.from_int(0), k.from_int(1)]], 2);
    assert_eq!(amb.mat(Gen::W { i: 1 }), &w);

    let trivial = UCharacter::trivial(2);
    let lines = u_eigen_lines(&amb, &trivial).unwrap();
    assert_eq!(lines, vec![vec![k.one(), k.one()]]);
    let ring = Residue::new(f.ctx.k.clone(), 0).unwrap();
    let e_triv = build_e(&ring, &f.lat, &trivial);
    assert_eq!(spin(&amb, &[e_triv]).rank(), 1);
    assert_eq!(spin(&amb, &[]).rank(), 0);
    let full: Vec<Vec<KElem>> = (0..2).map(|i| (0..2).map(|j| if i == j { k.one() } else { k.zero() }).collect()).collect();
    assert!(spin(&amb, &full).is_full());

    assert!(!is_irreducible(&amb).unwrap());
    let series = composition_series(&amb).unwrap();
    assert_eq!(series.dims(), vec![1, 1]);
    assert_eq!(hom_dim(&series.factors[0], &series.factors[1]), 0);
    assert!(hom_dim(&amb, &amb) >= 1);
    assert_eq!(self_dual_check(&amb, false), SelfDual::No);

    for kk in f.attained() {
        let fm = f.factor_module(kk).unwrap();
        assert!(is_irreducible(&fm.rep).unwrap());
        assert_eq!(self_dual_check(&fm.rep, true), SelfDual::Yes);
    }
    let gow = gow_conjecture(&f).unwrap();
    assert!(gow.conjecture_holds && gow.all_agree);
    let casa = casa_check(&f).unwrap();
    assert!(casa.passed() && casa.dim == 1);
    assert!(section6_suite(&f, true).unwrap().passed());
}

#[test]
fn trivial_module() {
    let f = filtration(2, 3, 2);
    let ctx = f.ctx.clone();
    let mats = vec![KMat::identity(1); ctx.gens.len()];
    let triv = ModRep::new(ctx, 1, mats, Provenance::Sub);
    assert!(is_irreducible(&triv).unwrap());
    assert_eq!(hom_dim(&triv, &triv), 1);
    assert_eq!(self_dual_check(&triv, true), SelfDual::Yes);
}

#[test]
fn eigenspaces_of_the_regular_action() {
    for (n, q, ell) in [(2, 3, 2), (3, 2, 3), (2, 4, 3)] {
        let f = filtration(n, q, ell);
        let amb = f.ambient();
        let ring = Residue::new(f.ctx.k.clone(), 0).unwrap();
        for l in UCharacter::all(n, &f.ctx.fq) {
            let space = eigenspace(&amb, &l);
            assert_eq!(space.len(), 1);
            // E_lambda transforms by lambda^{-1}
            let e = build_e(&ring, &f.lat, &l.inverse(&f.ctx.fq));
            let mut ech = Echelon::new(amb.dim);
            ech.insert(amb.k(), space[0].clone());
            assert!(ech.contains(amb.k(), &e), "({n},{q},{ell}) {l:?}");
        }
    }
}

#[test]
fn top_layer_and_suites() {
    let f = filtration(2, 3, 2);
    assert_eq!((f.table.kappa1, f.table.kappa2), (2, 0));
    assert!(casa_check(&f).unwrap().passed());

    let f = filtration(3, 2, 3);
    assert!(casa_check(&f).unwrap().passed());
    let series = composition_series(&f.ambient()).unwrap();
    assert_eq!(series.dims().iter().sum::<usize>(), 8);
    assert_eq!(socle(&f.ambient()).unwrap().rank(), f.dim_m(1));

    let f = filtration(3, 2, 7);
    assert_eq!(f.attained(), vec![0, 1]);
    assert!(section6_suite(&f, true).unwrap().passed());
    assert!(casa_check(&f).is_err());

    let f = filtration(2, 2, 5);
    let s6 = section6_suite(&f, true).unwrap();
    assert_eq!((s6.ibar_irreducible, s6.ibar_self_dual), (Some(true), Some(SelfDual::Yes)));
    assert!(s6.passed());
}
