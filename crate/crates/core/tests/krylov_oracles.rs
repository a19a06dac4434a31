mod common;

use fermiwalk::encoding::WalkOperator;
use fermiwalk::fock::{
    build_fci_matrix, enumerate_sector, FockState, SqHamiltonian, SymmetrySector,
};
use fermiwalk::io::reference::{self, CA42_PARTICLES, CA46_PARTICLES};
use fermiwalk::krylov::{
    assemble_matrices, compute_moments, hadamard_test_estimate, krylov_bound_report, select_pivot,
    solve_co, solve_sector, solve_sector_spectrum, KrylovConfig, MomentChain,
};
use fermiwalk::precision::{to_c64, Dd};
use fermiwalk::Complex64;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{calcium_hamiltonian, calcium_table_hamiltonian, chebyshev_moments};

struct Sector {
    h: SqHamiltonian,
    walk: WalkOperator,
    basis: Vec<FockState>,
    pivot: usize,
    /// FCI matrix in scaled units.
    m: DMatrix<Complex64>,
}

fn sector(particles: u32, twice_mj: i32) -> Sector {
    let h = calcium_table_hamiltonian();
    let walk = WalkOperator::new(&h).unwrap();
    let basis = enumerate_sector(
        8,
        SymmetrySector::new(particles, twice_mj),
        &reference::sp_twice_m(),
    );
    let pivot = select_pivot(&h, &basis).unwrap();
    let m = build_fci_matrix(&h, &basis) / Complex64::new(h.scale(), 0.0);
    Sector {
        h,
        walk,
        basis,
        pivot,
        m,
    }
}

fn lowest_fci(s: &Sector) -> f64 {
    (s.m.map(|z| z.re) * s.h.scale())
        .symmetric_eigen()
        .eigenvalues
        .min()
}

#[test]
fn moments_match_chebyshev_recurrence() {
    for (a, mj) in [
        (CA42_PARTICLES, 0),
        (CA46_PARTICLES, 0),
        (CA42_PARTICLES, 4),
    ] {
        let s = sector(a, mj);
        let circuit: Vec<Complex64> = compute_moments(&s.walk, &s.basis[s.pivot], 9);
        let classical = chebyshev_moments(&s.m, s.pivot, 9);
        assert_eq!(circuit[0], Complex64::new(1.0, 0.0));
        assert!((circuit[1] - s.m[(s.pivot, s.pivot)]).norm() <= 1e-10);
        for (k, (x, y)) in circuit.iter().zip(&classical).enumerate() {
            assert!((x - y).norm() <= 1e-8, "k={k}: {x} vs {y}");
            assert!(x.norm() <= 1.0 + 1e-12);
            assert!(x.im.abs() <= 1e-10);
        }
    }
}

#[test]
fn double_double_moments_agree_with_double() {
    let s = sector(CA42_PARTICLES, 0);
    let plain: Vec<Complex64> = compute_moments(&s.walk, &s.basis[s.pivot], 12);
    let extended: Vec<Complex<Dd>> = compute_moments(&s.walk, &s.basis[s.pivot], 12);
    for (x, y) in plain.iter().zip(&extended) {
        assert!((x - to_c64(*y)).norm() <= 1e-13);
    }
    let mut chain = MomentChain::<Dd>::new(&s.walk, &s.basis[s.pivot]);
    chain.extend_to(6);
    assert_eq!(chain.moments_f64().len(), 6);
    assert!(chain.max_support() > 1);
}

/// `⟨ψ₀|T_i(M) T_j(M)|ψ₀⟩` and `⟨ψ₀|T_i(M) M T_j(M)|ψ₀⟩` from explicit vectors.
fn direct_krylov(
    m: &DMatrix<Complex64>,
    pivot: usize,
    k: usize,
) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let n = m.nrows();
    let mut t = vec![DVector::from_fn(n, |i, _| {
        Complex64::new(if i == pivot { 1.0 } else { 0.0 }, 0.0)
    })];
    t.push(m * &t[0]);
    while t.len() < k {
        let next = (m * &t[t.len() - 1]) * Complex64::new(2.0, 0.0) - &t[t.len() - 2];
        t.push(next);
    }
    let s = DMatrix::from_fn(k, k, |i, j| t[i].dotc(&t[j]));
    let h = DMatrix::from_fn(k, k, |i, j| t[i].dotc(&(m * &t[j])));
    (h, s)
}

#[test]
fn krylov_matrices_match_direct_construction() {
    let s = sector(CA42_PARTICLES, 0);
    let k = 4;
    let mu: Vec<Complex64> = compute_moments(&s.walk, &s.basis[s.pivot], 2 * k);
    let km = assemble_matrices(&mu, k).unwrap();
    let (h, o) = direct_krylov(&s.m, s.pivot, k);
    for i in 0..k {
        for j in 0..k {
            assert!((km.hamiltonian[(i, j)] - h[(i, j)]).norm() <= 1e-8);
            assert!((km.overlap[(i, j)] - o[(i, j)]).norm() <= 1e-8);
        }
    }
    assert_eq!(km.overlap[(0, 0)], Complex64::new(1.0, 0.0));
    assert!((km.hamiltonian[(0, 0)] - mu[1]).norm() <= 1e-15);
    let floor = km.overlap.map(|z| z.re).symmetric_eigen().eigenvalues.min();
    assert!(floor >= -1e-10);
    assert!(assemble_matrices(&mu[..2 * k - 1], k).is_err());
}

#[test]
fn lowest_eigenvalue_is_monotone_in_k() {
    let s = sector(CA42_PARTICLES, 0);
    let dim = s.basis.len();
    let mu: Vec<Complex<Dd>> = compute_moments(&s.walk, &s.basis[s.pivot], 2 * dim);
    let mut prev = f64::INFINITY;
    for k in 1..=dim {
        let sol = solve_co(&assemble_matrices(&mu, k).unwrap(), 1e-12).unwrap();
        let lowest = sol.eigenvalues[0];
        assert!(lowest <= prev + 1e-10, "K={k}: {lowest} > {prev}");
        prev = lowest;
        for w in sol.eigenvalues.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }
    assert!((prev * s.h.scale() - lowest_fci(&s)).abs() <= 1e-8);
}

#[test]
fn higher_projection_excludes_ground_state() {
    let zero = sector(CA42_PARTICLES, 0);
    let four = sector(CA42_PARTICLES, 4);
    let table = reference::spectrum_table();
    let two_plus = table.iter().find(|r| r.twice_j == 4).unwrap().e_ca42;
    let res = solve_sector(
        &four.walk,
        &four.h,
        SymmetrySector::new(CA42_PARTICLES, 4),
        &reference::sp_twice_m(),
        &KrylovConfig::default(),
    )
    .unwrap();
    assert!((res.lowest() - lowest_fci(&four)).abs() <= 1e-8);
    assert!(res.lowest() > lowest_fci(&zero) + 1.0);
    assert!((res.lowest() - two_plus).abs() <= 5e-6);
}

#[test]
fn forced_single_vector_is_rayleigh_quotient() {
    let s = sector(CA42_PARTICLES, 0);
    let cfg = KrylovConfig {
        fixed_k: Some(1),
        ..KrylovConfig::default()
    };
    let res = solve_sector(
        &s.walk,
        &s.h,
        SymmetrySector::new(CA42_PARTICLES, 0),
        &reference::sp_twice_m(),
        &cfg,
    )
    .unwrap();
    assert_eq!(res.k, 1);
    assert!(!res.converged);
    assert!((res.eigenvalues_scaled[0] - s.m[(s.pivot, s.pivot)].re).abs() <= 1e-12);
}

#[test]
fn converged_k_within_sector_dimension() {
    let twice_m = reference::sp_twice_m();
    let h = calcium_table_hamiltonian();
    let sectors: Vec<_> = [0, 4, 8, 12]
        .iter()
        .map(|&mj| SymmetrySector::new(CA42_PARTICLES, mj))
        .collect();
    let result = solve_sector_spectrum(&h, &sectors, &twice_m, &KrylovConfig::default()).unwrap();
    for r in result.solved() {
        assert!(r.converged);
        assert!(r.k <= r.dimension.max(2));
        assert!(r.retained <= r.k);
        assert_eq!(r.trace.last().unwrap().0, r.k);
    }
    let bound = krylov_bound_report(0.5, 0.05, 1e-6).unwrap();
    assert!(bound.is_finite() && bound > 0.0);
}

#[test]
fn isotopes_share_excitation_spectrum() {
    // The tabulated elements are rounded, which breaks particle-hole
    // symmetry at the 1e-7 level; the generated interaction is exact.
    let twice_m = reference::sp_twice_m();
    let h = calcium_hamiltonian();
    let run = |a: u32| {
        let sectors: Vec<_> = [0, 4, 8, 12]
            .iter()
            .map(|&mj| SymmetrySector::new(a, mj))
            .collect();
        let r = solve_sector_spectrum(&h, &sectors, &twice_m, &KrylovConfig::default()).unwrap();
        let ground = r.ground_energy().unwrap();
        r.solved().map(|s| s.lowest() - ground).collect::<Vec<_>>()
    };
    let (light, heavy) = (run(CA42_PARTICLES), run(CA46_PARTICLES));
    assert_eq!(light.len(), 4);
    for (x, y) in light.iter().zip(&heavy) {
        assert!((x - y).abs() <= 1e-9, "{x} vs {y}");
    }
}

#[test]
fn double_precision_path_still_close() {
    let s = sector(CA42_PARTICLES, 0);
    let cfg = KrylovConfig {
        extended_precision: false,
        ..KrylovConfig::default()
    };
    let res = solve_sector(
        &s.walk,
        &s.h,
        SymmetrySector::new(CA42_PARTICLES, 0),
        &reference::sp_twice_m(),
        &cfg,
    )
    .unwrap();
    assert!((res.lowest() - lowest_fci(&s)).abs() <= 1e-6);
}

#[test]
fn hadamard_test_examples() {
    let s = sector(CA42_PARTICLES, 0);
    let pivot = s.basis[s.pivot];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let zero = hadamard_test_estimate(&s.walk, &pivot, 0, 1000, &mut rng).unwrap();
    assert_eq!(zero.re, 1.0);
    assert_eq!(zero.re_stderr, 0.0);

    let exact: Vec<Complex64> = compute_moments(&s.walk, &pivot, 3);
    for order in [1, 2] {
        let est = hadamard_test_estimate(&s.walk, &pivot, order, 100_000, &mut rng).unwrap();
        // Infinite-shot limit.
        assert!((2.0 * est.p0_re - 1.0 - exact[order].re).abs() <= 1e-12);
        assert!((2.0 * est.p0_im - 1.0 - exact[order].im).abs() <= 1e-12);
        assert!((est.re - exact[order].re).abs() <= 3.0 * est.re_stderr);
        assert!((est.im - exact[order].im).abs() <= 3.0 * est.im_stderr.max(1e-3));
    }
    assert!(hadamard_test_estimate(&s.walk, &pivot, 1, 0, &mut rng).is_err());
}

#[test]
fn co_rejects_bad_threshold_and_empty_space() {
    let s = sector(CA42_PARTICLES, 0);
    let mu: Vec<Complex64> = compute_moments(&s.walk, &s.basis[s.pivot], 4);
    let km = assemble_matrices(&mu, 2).unwrap();
    assert!(solve_co(&km, 0.0).is_err());
    assert!(solve_co(&km, 10.0).is_err());
}
