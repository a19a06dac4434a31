//! Symmetry-adapted Krylov diagonalization from Chebyshev moments.
//!
//! Moments `μ_k = ⟨ψ₀|T_k(H')|ψ₀⟩` of the scaled Hamiltonian
//! `H' = H / (D_pad Λ)` come from alternating `U_H Π` and `U_H† Π` on the
//! simulator. The Krylov matrices follow from the Chebyshev product rule and
//! the generalized eigenproblem is solved by canonical orthogonalization.

mod hadamard;
mod matrices;
mod moments;
mod spectrum;

pub use hadamard::{hadamard_test_estimate, HadamardEstimate};
pub use matrices::{assemble_matrices, solve_co, CoSolution, KrylovMatrices};
pub use moments::{compute_moments, MomentChain};
pub use spectrum::{
    krylov_bound_report, select_pivot, solve_sector, solve_sector_spectrum, KrylovConfig,
    SectorOutcome, SectorResult, SpectralResult, DEFAULT_TOLERANCE, DEFAULT_XI,
};
