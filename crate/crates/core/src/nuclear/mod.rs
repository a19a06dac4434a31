//! Pairing plus quadrupole-quadrupole interaction in a harmonic-oscillator
//! valence space.

mod angular;
mod interaction;
mod oscillator;

pub use angular::{clebsch_gordan, gaunt, ln_factorial, wigner_3j};
pub use interaction::{
    build_valence_hamiltonian, quadrupole_me, two_body_me, valence_terms, ModelParams, SpOrbital,
    TwoBodyElement, DROP_THRESHOLD,
};
pub use oscillator::{radial_integral_r2, radial_wavefunction};
