use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use steinberg_core::filtration::{snf_exact, snf_local, Filtration, SnfChoice, SnfResult};
use steinberg_core::lattice::echar::build_e;
use steinberg_core::lattice::{gram_table, Lattice, UCharacter};
use steinberg_core::modrep::{eigenspace, is_irreducible};
use steinberg_core::rings::{val_int, Residue};
use steinberg_core::Error;

const SMALL: [(usize, u32); 7] = [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2)];
const ELLS: [u32; 4] = [2, 3, 5, 7];
/// Largest search space for the enumeration oracle.
const ENUM_LIMIT: u64 = 2_000_000;

fn p_of(q: u32) -> u32 {
    (2..=q).find(|d| q % d == 0).unwrap()
}

fn small_triples() -> Vec<(usize, u32, u32)> {
    SMALL.iter().flat_map(|&(n, q)| ELLS.iter().filter(move |&&l| l != p_of(q)).map(move |&l| (n, q, l))).collect()
}

fn filtration(n: usize, q: u32, ell: u32, choice: SnfChoice, idx: usize) -> Filtration {
    let lat = Arc::new(Lattice::new(n, q).unwrap());
    let gram = Arc::new(gram_table(&lat));
    Filtration::new(lat, gram, ell, choice, idx).unwrap()
}

/// Fraction-free elimination; exact determinant.
fn bareiss_det(a: &[Vec<i64>]) -> BigInt {
    let m = a.len();
    let mut x: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..m {
        let Some(p) = (k..m).find(|&i| !x[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            x.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                x[i][j] = (&x[i][j] * &x[k][k] - &x[i][k] * &x[k][j]) / &prev;
            }
            x[i][k] = BigInt::zero();
        }
        prev = x[k][k].clone();
    }
    sign * &x[m - 1][m - 1]
}

/// `dim I(k) mod ell` by enumerating `(Z/ell^k)^m`, or `None` when the
/// space is too large.
fn ibar_dim_by_enumeration(a: &[Vec<i64>], ell: u32, k: u32) -> Option<usize> {
    let m = a.len();
    let modulus = (ell as i64).pow(k);
    if (modulus as u64).checked_pow(m as u32).map_or(true, |s| s > ENUM_LIMIT) {
        return None;
    }
    let mut x = vec![0i64; m];
    let mut images: HashSet<Vec<i64>> = HashSet::new();
    loop {
        if a.iter().all(|row| row.iter().zip(&x).map(|(r, v)| r * v).sum::<i64>().rem_euclid(modulus) == 0) {
            images.insert(x.iter().map(|v| v % ell as i64).collect());
        }
        let mut i = 0;
        while i < m {
            x[i] += 1;
            if x[i] < modulus {
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == m {
            break;
        }
    }
    // the image is an F_ell-subspace
    let mut size = images.len();
    let mut dim = 0;
    while size > 1 {
        assert_eq!(size % ell as usize, 0);
        size /= ell as usize;
        dim += 1;
    }
    Some(dim)
}

#[test]
fn ibar_dims_match_enumeration() {
    let mut checked = 0;
    for (n, q, ell) in small_triples() {
        let f = filtration(n, q, ell, SnfChoice::Auto, 0);
        for k in 1..=f.table.kappa1 + 1 {
            if let Some(d) = ibar_dim_by_enumeration(f.gram_matrix(), ell, k) {
                assert_eq!(f.dim_ibar(k), d, "({n},{q},{ell}) k={k}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 20, "only {checked} levels enumerated");
}

#[test]
fn valuations_sum_to_determinant_valuation() {
    for (n, q) in SMALL {
        let lat = Lattice::new(n, q).unwrap();
        let a = gram_table(&lat).full_matrix(&lat);
        let det = bareiss_det(&a);
        assert!(!det.is_zero(), "({n},{q}) singular Gram");
        for ell in ELLS.into_iter().filter(|&l| l != p_of(q)) {
            let want = val_int(&det, ell).finite().unwrap();
            for r in [snf_exact(&a, ell).unwrap(), snf_local(&a, ell).unwrap()] {
                assert_eq!(r.vals.iter().sum::<u32>(), want, "({n},{q},{ell}) {}", r.mode);
            }
        }
    }
}

fn rank_mod(rows: &[Vec<u64>], ell: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % ell).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        let inv = (1..ell).find(|&t| t * m[rank][c] % ell == 1).unwrap();
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * inv % ell;
                for j in 0..cols {
                    m[i][j] = (m[i][j] + ell * ell - f * m[rank][j] % ell) % ell;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn check_snf(a: &[Vec<i64>], r: &SnfResult, ell: u32) {
    let m = a.len();
    assert!(r.vals.windows(2).all(|w| w[0] <= w[1]));
    let modulus = (ell as u64).pow(r.max_val() + 1);
    let (x, y) = (r.x_rows_mod(modulus), r.y_rows_mod(modulus));
    for i in 0..m {
        let xa: Vec<i128> = (0..m)
            .map(|j| (0..m).map(|t| x[i][t] as i128 * a[t][j] as i128).sum::<i128>().rem_euclid(modulus as i128))
            .collect();
        for j in 0..m {
            let v = (0..m).map(|t| xa[t] * y[j][t] as i128).sum::<i128>().rem_euclid(modulus as i128);
            let d = if i == j { (&r.diag[i] % BigInt::from(modulus) + BigInt::from(modulus)) % BigInt::from(modulus) } else { BigInt::zero() };
            assert_eq!(BigInt::from(v), d, "entry ({i},{j})");
        }
    }
    assert_eq!(rank_mod(&x, ell as u64), m, "P not a unit");
    assert_eq!(rank_mod(&y, ell as u64), m, "Q not a unit");
    for (d, &v) in r.diag.iter().zip(&r.vals) {
        assert_eq!(val_int(d, ell).finite(), Some(v));
    }
}

#[test]
fn smith_forms_satisfy_their_identity_and_agree() {
    for (n, q) in SMALL {
        let lat = Lattice::new(n, q).unwrap();
        let a = gram_table(&lat).full_matrix(&lat);
        for ell in ELLS.into_iter().filter(|&l| l != p_of(q)) {
            let exact = snf_exact(&a, ell).unwrap();
            let local = snf_local(&a, ell).unwrap();
            check_snf(&a, &exact, ell);
            check_snf(&a, &local, ell);
            assert!(exact.diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()), "divisibility");
            assert!(exact.diag.iter().all(|d| d.is_positive() || d.is_negative()));
            assert_eq!(exact.vals, local.vals, "({n},{q},{ell})");
        }
    }
}

#[test]
fn modes_and_prime_choices_give_the_same_modules() {
    for (n, q, ell) in [(2, 2, 3), (2, 3, 2), (3, 2, 3), (3, 2, 7), (3, 3, 2), (2, 4, 5), (4, 2, 3)] {
        let exact = filtration(n, q, ell, SnfChoice::Exact, 0);
        let local = filtration(n, q, ell, SnfChoice::Local, 0);
        assert_eq!(exact.attained(), local.attained());
        for k in exact.attained() {
            let (a, b) = (exact.factor_module(k).unwrap(), local.factor_module(k).unwrap());
            assert_eq!(a.rep.dim, b.rep.dim);
            assert_eq!(is_irreducible(&a.rep).unwrap(), is_irreducible(&b.rep).unwrap(), "({n},{q},{ell}) k={k}");
        }
    }
    // Phi_3 splits mod 7: both primes above 7
    for (n, q) in [(2, 3), (3, 3)] {
        let f0 = filtration(n, q, 7, SnfChoice::Auto, 0);
        let f1 = filtration(n, q, 7, SnfChoice::Auto, 1);
        assert_eq!(f0.attained(), f1.attained());
        for k in f0.attained() {
            let (a, b) = (f0.factor_module(k).unwrap(), f1.factor_module(k).unwrap());
            assert_eq!(is_irreducible(&a.rep).unwrap(), is_irreducible(&b.rep).unwrap());
        }
        assert!(Filtration::new(f0.lat.clone(), f0.gram.clone(), 7, SnfChoice::Auto, 2).is_err());
    }
}

#[test]
fn basis_permutation_leaves_valuations_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (n, q, ell) in [(2, 5, 3), (3, 2, 3), (3, 3, 2), (4, 2, 5)] {
        let lat = Lattice::new(n, q).unwrap();
        let a = gram_table(&lat).full_matrix(&lat);
        let mut perm: Vec<usize> = (0..a.len()).collect();
        perm.shuffle(&mut rng);
        let b: Vec<Vec<i64>> = perm.iter().map(|&i| perm.iter().map(|&j| a[i][j]).collect()).collect();
        assert_eq!(snf_exact(&a, ell).unwrap().vals, snf_exact(&b, ell).unwrap().vals);
        assert_eq!(snf_local(&a, ell).unwrap().vals, snf_local(&b, ell).unwrap().vals);
    }
}

#[test]
fn eigenvectors_enter_at_their_level() {
    for (n, q, ell) in small_triples() {
        let f = filtration(n, q, ell, SnfChoice::Auto, 0);
        let ring = Residue::new(f.ctx.k.clone(), 0).unwrap();
        let kf = f.k();
        let chars = UCharacter::all(n, &f.ctx.fq);
        assert_eq!(chars.len(), (q as usize).pow(n as u32 - 1));
        for k in f.attained() {
            let at_k: Vec<&UCharacter> = chars.iter().filter(|l| f.table.val(l.j_mask()) == k).collect();
            let fm = f.factor_module(k).unwrap();
            assert!(at_k.len() <= fm.rep.dim);
            for l in at_k {
                assert_eq!(eigenspace(&fm.rep, l).len(), 1, "({n},{q},{ell}) k={k} {l:?}");
            }
        }
        for l in &chars {
            let c = f.table.val(l.j_mask());
            let e = build_e(&ring, &f.lat, l);
            assert!(f.ibar_basis(c).contains(kf, &e), "({n},{q},{ell}) {l:?} not in I({c})");
            assert!(!f.ibar_basis(c + 1).contains(kf, &e), "({n},{q},{ell}) {l:?} in I({})", c + 1);
            assert!(f.e_lambda_checks(l).unwrap().passes());
        }
    }
}

#[test]
fn small_examples() {
    let f = filtration(2, 2, 3, SnfChoice::Auto, 0);
    assert_eq!(f.gram_matrix(), [vec![2, 1], vec![1, 2]]);
    assert_eq!((f.dim_m(0), f.dim_m(1), f.dim_ibar(2)), (1, 1, 0));
    let r = f.report();
    assert!(r.gow5_levels_match && !r.steinberg_simple);
    let m1 = f.factor_module(1).unwrap();
    assert_eq!(m1.rep.dim, 1);
    assert_eq!(m1.paired_form.get(0, 0), f.k().one());
    assert!(matches!(f.factor_module(2), Err(Error::LevelNotAttained(_))));
    let fq = &f.ctx.fq;
    let trivial = f.e_lambda_checks(&UCharacter::trivial(2)).unwrap();
    let other = f.e_lambda_checks(&UCharacter::single(2, 1, fq.one())).unwrap();
    assert_eq!((trivial.c_lambda, other.c_lambda), (1, 0));

    let f = filtration(2, 2, 5, SnfChoice::Auto, 0);
    assert_eq!(f.attained(), vec![0]);
    assert_eq!(f.dim_m(0), 2);
    assert!(f.report().steinberg_simple);

    let f = filtration(3, 2, 3, SnfChoice::Auto, 0);
    assert_eq!(f.attained(), vec![0, 1]);
    assert_eq!(f.dim_m(0) + f.dim_m(1), 8);
    for k in f.attained() {
        let fm = f.factor_module(k).unwrap();
        assert_eq!(fm.paired_form, steinberg_core::linalg::KMat::identity(fm.rep.dim));
    }
}
