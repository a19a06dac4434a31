//! Walk-state block encoding of a [`SqHamiltonian`](crate::fock::SqHamiltonian).
//!
//! `T_f` prepares `Σ_j |j⟩ ⊗ (b†_{Q_j} b_{P_j}|F⟩ with its sign, phase and
//! magnitude)` from `|F⟩`, `T_b` prepares the same structure from the
//! conjugate monomials without amplitudes, and the bit-wise swap `S` lines
//! the two up so that `⟨G,0| T_b† S T_f |F,0⟩ = ⟨G|H|F⟩ / (D_pad Λ)`.

mod oracles;
mod report;
mod walk;

pub use oracles::{build_isometry, build_oracle_of, build_oracle_oh, build_swap, Direction};
pub use report::{
    fit_exponent, gate_count_report, pairing_family, pairing_hamiltonian, GateReport, GateReportRow,
};
pub use walk::{verify_block_encoding, BlockCheck, WalkOperator};
