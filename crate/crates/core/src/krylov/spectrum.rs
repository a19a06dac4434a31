use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::matrices::{assemble_matrices, solve_co};
use super::moments::MomentChain;
use crate::encoding::WalkOperator;
use crate::error::{Error, Result};
use crate::fock::{enumerate_sector, fci_diagonal, FockState, SqHamiltonian, SymmetrySector};
use crate::precision::{Dd, Real};

pub const DEFAULT_XI: f64 = 1e-12;
/// Change of the lowest scaled eigenvalue below which doubling `K` stops.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrylovConfig {
    pub xi: f64,
    pub tolerance: f64,
    /// Run exactly this Krylov dimension instead of the doubling schedule.
    pub fixed_k: Option<usize>,
    /// Upper limit for the doubling schedule (defaults to the sector size).
    pub k_max: Option<usize>,
    /// Carry amplitudes, moments and the CO solve in double-double
    /// arithmetic. The Chebyshev overlap matrix is ill-conditioned enough
    /// that plain `f64` moments can cost several digits in the energies.
    pub extended_precision: bool,
}

impl Default for KrylovConfig {
    fn default() -> Self {
        Self {
            xi: DEFAULT_XI,
            tolerance: DEFAULT_TOLERANCE,
            fixed_k: None,
            k_max: None,
            extended_precision: true,
        }
    }
}

/// Krylov solution of one symmetry sector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorResult {
    pub particle_number: u32,
    pub twice_mj: Option<i32>,
    pub dimension: usize,
    pub pivot: String,
    pub k: usize,
    pub converged: bool,
    pub retained: usize,
    /// CO eigenvalues in scaled units, ascending.
    pub eigenvalues_scaled: Vec<f64>,
    /// CO eigenvalues in MeV, ascending.
    pub eigenvalues: Vec<f64>,
    /// `(K, lowest scaled eigenvalue)` for every `K` tried.
    pub trace: Vec<(usize, f64)>,
    pub moments: Vec<Complex64>,
    pub max_support: usize,
}

impl SectorResult {
    pub fn lowest(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Outcome for one requested sector; failures do not abort the others.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorOutcome {
    pub twice_mj: Option<i32>,
    pub result: Option<SectorResult>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub d: usize,
    pub d_pad: usize,
    pub lambda: f64,
    pub scale: f64,
    pub sectors: Vec<SectorOutcome>,
}

impl SpectralResult {
    /// Lowest energy over all solved sectors (MeV).
    pub fn ground_energy(&self) -> Option<f64> {
        self.solved().map(|r| r.lowest()).min_by(f64::total_cmp)
    }

    pub fn solved(&self) -> impl Iterator<Item = &SectorResult> {
        self.sectors.iter().filter_map(|s| s.result.as_ref())
    }
}

/// Index of the basis state with the lowest full-CI diagonal; ties go to the
/// smallest bit pattern (the basis is ascending).
pub fn select_pivot(h: &SqHamiltonian, basis: &[FockState]) -> Option<usize> {
    let diag = fci_diagonal(h, basis);
    let mut best: Option<usize> = None;
    for (i, &e) in diag.iter().enumerate() {
        if best.is_none_or(|b| e < diag[b]) {
            best = Some(i);
        }
    }
    best
}

/// Runs the moment → matrices → CO chain for one sector.
pub fn solve_sector(
    walk: &WalkOperator,
    h: &SqHamiltonian,
    sector: SymmetrySector,
    orbital_2m: &[i32],
    cfg: &KrylovConfig,
) -> Result<SectorResult> {
    if cfg.extended_precision {
        solve_sector_in::<Dd>(walk, h, sector, orbital_2m, cfg)
    } else {
        solve_sector_in::<f64>(walk, h, sector, orbital_2m, cfg)
    }
}

fn solve_sector_in<R: Real>(
    walk: &WalkOperator,
    h: &SqHamiltonian,
    sector: SymmetrySector,
    orbital_2m: &[i32],
    cfg: &KrylovConfig,
) -> Result<SectorResult> {
    let basis = enumerate_sector(h.n_sp(), sector, orbital_2m);
    let pivot_idx = select_pivot(h, &basis).ok_or(Error::EmptySector)?;
    let pivot = basis[pivot_idx];
    let dim = basis.len();
    let mut chain = MomentChain::<R>::new(walk, &pivot);

    let mut trace = Vec::new();
    let mut solve = |k: usize| -> Result<_> {
        let moments = chain.extend_to(2 * k).to_vec();
        let sol = solve_co(&assemble_matrices(&moments, k)?, cfg.xi)?;
        trace.push((k, sol.eigenvalues[0]));
        Ok(sol)
    };
    let (k, sol, converged) = match cfg.fixed_k {
        Some(0) => return Err(Error::EmptyKrylov),
        Some(k) => (k, solve(k)?, k >= dim),
        None => {
            let cap = cfg.k_max.unwrap_or(dim).max(1);
            let mut k = cap.min(2);
            let mut prev: Option<f64> = None;
            loop {
                let sol = solve(k)?;
                let lowest = sol.eigenvalues[0];
                let settled = prev.is_some_and(|p| (p - lowest).abs() < cfg.tolerance);
                if settled || k >= cap {
                    break (k, sol, settled || k >= dim);
                }
                prev = Some(lowest);
                k = (2 * k).min(cap);
            }
        }
    };
    let scale = h.scale();
    Ok(SectorResult {
        particle_number: sector.particle_number,
        twice_mj: sector.twice_mj,
        dimension: dim,
        pivot: pivot.to_string(),
        k,
        converged,
        retained: sol.retained,
        eigenvalues: sol.eigenvalues.iter().map(|e| e * scale).collect(),
        eigenvalues_scaled: sol.eigenvalues,
        trace,
        moments: chain.moments_f64()[..2 * k].to_vec(),
        max_support: chain.max_support(),
    })
}

/// Solves every sector (in parallel) and reports the per-sector spectra.
pub fn solve_sector_spectrum(
    h: &SqHamiltonian,
    sectors: &[SymmetrySector],
    orbital_2m: &[i32],
    cfg: &KrylovConfig,
) -> Result<SpectralResult> {
    if orbital_2m.len() != h.n_sp() {
        return Err(Error::InvalidParameter(format!(
            "{} orbital projections given for {} orbitals",
            orbital_2m.len(),
            h.n_sp()
        )));
    }
    let walk = WalkOperator::new(h)?;
    let outcomes = sectors
        .par_iter()
        .map(
            |&sector| match solve_sector(&walk, h, sector, orbital_2m, cfg) {
                Ok(r) => SectorOutcome {
                    twice_mj: sector.twice_mj,
                    result: Some(r),
                    error: None,
                },
                Err(e) => SectorOutcome {
                    twice_mj: sector.twice_mj,
                    result: None,
                    error: Some(e.to_string()),
                },
            },
        )
        .collect();
    Ok(SpectralResult {
        d: h.len(),
        d_pad: h.d_pad(),
        lambda: h.lambda(),
        scale: h.scale(),
        sectors: outcomes,
    })
}

/// `(ln|γ₀|⁻¹ + ln E⁻¹) · min(E⁻¹, Δ⁻¹)`, the argument of the asymptotic
/// Krylov-dimension estimate for pivot overlap `γ₀`, gap `Δ` and target
/// error `E`.
pub fn krylov_bound_report(gamma0: f64, gap: f64, error: f64) -> Result<f64> {
    if gamma0 == 0.0 || !gamma0.is_finite() {
        return Err(Error::InvalidParameter(
            "pivot overlap must be nonzero".into(),
        ));
    }
    if gap.is_nan() || gap <= 0.0 || error.is_nan() || error <= 0.0 {
        return Err(Error::InvalidParameter(
            "gap and target error must be positive".into(),
        ));
    }
    Ok(((1.0 / gamma0.abs()).ln() + (1.0 / error).ln()) * (1.0 / error).min(1.0 / gap))
}
