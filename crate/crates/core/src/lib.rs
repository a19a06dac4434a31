//! Classical simulation of a walk-state block encoding for second-quantized
//! many-fermion Hamiltonians, and of the symmetry-adapted quantum Krylov
//! subspace diagonalization built on top of it.
//!
//! The crate is organised bottom-up:
//!
//! * [`fock`] – occupation-bitstring states, normal-ordered monomials, the
//!   Hermitian monomial table and a full-CI reference matrix builder.
//! * [`nuclear`] – the pairing plus quadrupole-quadrupole interaction in an
//!   oscillator valence space (angular-momentum algebra, radial integrals).
//! * [`statevector`] – a sparse amplitude-map simulator for the mostly
//!   classical-reversible circuits produced here.
//! * [`encoding`] – compilation of the enumerator and matrix-element oracles,
//!   the forward/backward walk isometries and the block encoding `U_H`.
//! * [`krylov`] – Chebyshev moments via qubitization, Krylov matrices,
//!   canonical orthogonalization and the per-sector spectrum driver.
//! * [`precision`] – double-double scalars for the ill-conditioned Krylov
//!   stage.
//! * [`io`] – interchange file formats and the bundled reference data.

pub mod encoding;
pub mod error;
pub mod fock;
pub mod io;
pub mod krylov;
pub mod nuclear;
pub mod precision;
pub mod statevector;

pub use error::{Error, Result};
pub use num_complex::Complex64;
