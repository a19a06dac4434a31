//! Second-quantized Hamiltonians on occupation-number bitstrings.
//!
//! A Fock state is the ordered product `a†_{p1} a†_{p2} … |0⟩` with
//! `p1 < p2 < …`; bit `p` of [`FockState`] records whether orbital `p` is
//! occupied. Every sign computed in this crate follows that convention.

mod brute;
mod hamiltonian;
mod monomial;
mod sector;
mod state;

pub use brute::sign_brute_force;
pub use hamiltonian::{fold_conjugates, hermitize, SqHamiltonian, Term};
pub use monomial::{apply_monomial, Monomial, SignWindows};
pub use sector::{build_fci_matrix, enumerate_sector, fci_diagonal, SymmetrySector};
pub use state::FockState;

/// Bit mask with the listed orbitals set.
pub(crate) fn orbital_mask(orbitals: &[usize]) -> u64 {
    orbitals.iter().fold(0u64, |m, &p| m | (1u64 << p))
}

/// Mask of orbitals strictly between `lo` and `hi` (`lo < hi`).
pub(crate) fn between_mask(lo: usize, hi: usize) -> u64 {
    debug_assert!(lo < hi);
    let below_hi = if hi >= 64 { u64::MAX } else { (1u64 << hi) - 1 };
    below_hi & !((1u64 << (lo + 1)) - 1)
}

/// Mask of orbitals `0..hi`.
pub(crate) fn below_mask(hi: usize) -> u64 {
    if hi >= 64 {
        u64::MAX
    } else {
        (1u64 << hi) - 1
    }
}
