use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{apply_monomial, FockState, SqHamiltonian};

/// Particle number and (optionally) doubled total `M_J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymmetrySector {
    pub particle_number: u32,
    /// `2 M_J`; `None` admits every projection.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twice_mj: Option<i32>,
}

impl SymmetrySector {
    pub fn new(particle_number: u32, twice_mj: i32) -> Self {
        Self {
            particle_number,
            twice_mj: Some(twice_mj),
        }
    }

    pub fn any_mj(particle_number: u32) -> Self {
        Self {
            particle_number,
            twice_mj: None,
        }
    }

    pub fn contains(&self, f: &FockState, orbital_2m: &[i32]) -> bool {
        f.particle_number() == self.particle_number
            && self.twice_mj.is_none_or(|m| f.twice_mj(orbital_2m) == m)
    }
}

/// All Fock states of the sector in ascending bit-pattern order.
///
/// `orbital_2m` is only consulted when the sector fixes `M_J`.
pub fn enumerate_sector(n_sp: usize, sector: SymmetrySector, orbital_2m: &[i32]) -> Vec<FockState> {
    let a = sector.particle_number as usize;
    if a > n_sp || n_sp > FockState::MAX_ORBITALS {
        return Vec::new();
    }
    if sector.twice_mj.is_some() {
        assert!(
            orbital_2m.len() >= n_sp,
            "missing 2m values for the orbitals"
        );
    }
    let limit: u128 = 1u128 << n_sp;
    let mut out = Vec::new();
    if a == 0 {
        let vac = FockState::vacuum(n_sp).expect("width checked");
        if sector.contains(&vac, orbital_2m) {
            out.push(vac);
        }
        return out;
    }
    // Gosper's hack: next larger integer with the same popcount.
    let mut v: u128 = (1u128 << a) - 1;
    while v < limit {
        let f = FockState::new(n_sp, v as u64).expect("width checked");
        if sector.contains(&f, orbital_2m) {
            out.push(f);
        }
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

/// Full-CI matrix `M[g][f] = ⟨basis[g]|H|basis[f]⟩` in the units of the
/// coefficients.
pub fn build_fci_matrix(h: &SqHamiltonian, basis: &[FockState]) -> DMatrix<Complex64> {
    let index: HashMap<u64, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, f)| (f.bits(), i))
        .collect();
    let n = basis.len();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for (col, f) in basis.iter().enumerate() {
        for mono in h.monomials() {
            if let Some((sign, out)) = apply_monomial(mono, f) {
                if let Some(&row) = index.get(&out.bits()) {
                    m[(row, col)] += mono.coefficient() * f64::from(sign);
                }
            }
        }
    }
    m
}

/// Diagonal `⟨f|H|f⟩` for each basis state, without forming the matrix.
pub fn fci_diagonal(h: &SqHamiltonian, basis: &[FockState]) -> Vec<f64> {
    basis
        .iter()
        .map(|f| {
            h.monomials()
                .iter()
                .filter_map(|m| match apply_monomial(m, f) {
                    Some((sign, out)) if out == *f => Some(m.coefficient().re * f64::from(sign)),
                    _ => None,
                })
                .sum()
        })
        .collect()
}
