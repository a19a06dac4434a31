//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use fermiwalk::fock::{
    enumerate_sector, sign_brute_force, FockState, SqHamiltonian, SymmetrySector, Term,
};
use fermiwalk::io::reference;
use fermiwalk::nuclear::build_valence_hamiltonian;
use fermiwalk::Complex64;
use nalgebra::{DMatrix, DVector};
use rand::seq::index::sample;
use rand::Rng;

/// Full-CI matrix built with the literal operator-by-operator sign oracle.
pub fn fci_brute(h: &SqHamiltonian, basis: &[FockState]) -> DMatrix<Complex64> {
    let n = basis.len();
    let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for (fi, f) in basis.iter().enumerate() {
        for mono in h.monomials() {
            if let Some((sign, out)) = sign_brute_force(mono, f) {
                if let Some(gi) = basis.iter().position(|g| *g == out) {
                    m[(gi, fi)] += mono.coefficient() * f64::from(sign);
                }
            }
        }
    }
    m
}

/// `⟨e_i|T_k(M)|e_i⟩` for `k < n` by the three-term recurrence on vectors.
pub fn chebyshev_moments(m: &DMatrix<Complex64>, i: usize, n: usize) -> Vec<Complex64> {
    let dim = m.nrows();
    let mut prev = DVector::from_element(dim, Complex64::new(0.0, 0.0));
    prev[i] = Complex64::new(1.0, 0.0);
    let mut cur = m * &prev;
    let mut out = vec![prev[i], cur[i]];
    while out.len() < n {
        let next = (m * &cur) * Complex64::new(2.0, 0.0) - &prev;
        out.push(next[i]);
        prev = cur;
        cur = next;
    }
    out.truncate(n);
    out
}

/// Every Fock state over `n_sp` orbitals, grouped by particle number.
pub fn full_fock_space(n_sp: usize) -> Vec<FockState> {
    (0..=n_sp as u32)
        .flat_map(|a| enumerate_sector(n_sp, SymmetrySector::any_mj(a), &vec![0; n_sp]))
        .collect()
}

fn random_pair(rng: &mut impl Rng, n_sp: usize) -> Vec<usize> {
    let mut v = sample(rng, n_sp, 2).into_vec();
    v.sort_unstable();
    v
}

/// Random Hermitian two-body Hamiltonian: `n_terms` distinct upper-half
/// pair-to-pair terms with complex off-diagonal coefficients.
pub fn random_two_body(rng: &mut impl Rng, n_sp: usize, n_terms: usize) -> SqHamiltonian {
    let mut terms: Vec<Term> = Vec::new();
    let mut attempts = 0;
    while terms.len() < n_terms && attempts < 100 * n_terms {
        attempts += 1;
        let (a, b) = (random_pair(rng, n_sp), random_pair(rng, n_sp));
        let (q, p) = if a <= b { (a, b) } else { (b, a) };
        if terms.iter().any(|t| t.q == q && t.p == p) {
            continue;
        }
        let re = rng.random_range(-1.0..1.0);
        let im = if q == p {
            0.0
        } else {
            rng.random_range(-1.0..1.0)
        };
        terms.push(Term::new(q, p, Complex64::new(re, im)));
    }
    fermiwalk::fock::hermitize(n_sp, &terms).expect("generated terms are valid")
}

/// Calcium valence Hamiltonian generated from the interaction formulas.
pub fn calcium_hamiltonian() -> SqHamiltonian {
    build_valence_hamiltonian(&reference::sp_basis(), &reference::model_params())
        .expect("bundled inputs are valid")
}

/// Calcium valence Hamiltonian read from the bundled two-body table.
pub fn calcium_table_hamiltonian() -> SqHamiltonian {
    fermiwalk::io::hamiltonian_from_two_body(
        8,
        &reference::two_body_table(),
        fermiwalk::io::TABLE_FOLD_TOLERANCE,
    )
    .expect("bundled table is Hermitian")
}

/// Largest entry modulus.
pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
