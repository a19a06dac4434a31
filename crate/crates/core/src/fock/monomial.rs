use num_complex::Complex64;

use super::{below_mask, between_mask, orbital_mask, FockState};
use crate::error::{Error, Result};

/// One normal-ordered term `⟨Q|H|P⟩ b†_Q b_P`.
///
/// With `Q = {p < q < … < r}` and `P = {u < v < … < w}` the operator string is
/// `a†_p a†_q … a†_r a_w … a_v a_u`.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    creations: Vec<usize>,
    annihilations: Vec<usize>,
    coefficient: Complex64,
    creation_mask: u64,
    annihilation_mask: u64,
}

/// Occupancy windows whose parities give the fermionic sign of a monomial.
///
/// The sign of `b†_Q b_P |F⟩` is `(-1)^(popcount(F & annihilation) +
/// popcount(F_j & creation))`, where `F_j` is the resulting state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignWindows {
    /// Orbitals of the input state `F` to count.
    pub annihilation: u64,
    /// Orbitals of the output state `F_j` to count.
    pub creation: u64,
}

/// Window mask for removing the ascending orbital list `ops` from a state.
///
/// Operators are grouped in pairs from the largest index down; each pair
/// counts the occupancy strictly between its two orbitals, and an unpaired
/// lowest operator counts the occupancy below it.
fn window_mask(ops: &[usize]) -> u64 {
    let mut mask = 0u64;
    let mut rest = ops;
    if ops.len() % 2 == 1 {
        mask ^= below_mask(ops[0]);
        rest = &ops[1..];
    }
    for pair in rest.chunks_exact(2) {
        // Pair windows are disjoint, so xor and or coincide.
        mask ^= between_mask(pair[0], pair[1]);
    }
    mask
}

fn check_ascending(list: &[usize]) -> Result<()> {
    if list.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(Error::NotAscending(list.to_vec()))
    }
}

impl Monomial {
    pub fn new(
        creations: Vec<usize>,
        annihilations: Vec<usize>,
        coefficient: Complex64,
    ) -> Result<Self> {
        check_ascending(&creations)?;
        check_ascending(&annihilations)?;
        for &p in creations.iter().chain(&annihilations) {
            if p >= FockState::MAX_ORBITALS {
                return Err(Error::OrbitalOutOfRange {
                    orbital: p,
                    n_sp: FockState::MAX_ORBITALS,
                });
            }
        }
        Ok(Self {
            creation_mask: orbital_mask(&creations),
            annihilation_mask: orbital_mask(&annihilations),
            creations,
            annihilations,
            coefficient,
        })
    }

    pub fn creations(&self) -> &[usize] {
        &self.creations
    }

    pub fn annihilations(&self) -> &[usize] {
        &self.annihilations
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    pub fn creation_mask(&self) -> u64 {
        self.creation_mask
    }

    pub fn annihilation_mask(&self) -> u64 {
        self.annihilation_mask
    }

    pub fn is_diagonal(&self) -> bool {
        self.creations == self.annihilations
    }

    /// Largest orbital index touched, if any.
    pub fn max_orbital(&self) -> Option<usize> {
        self.creations
            .iter()
            .chain(&self.annihilations)
            .copied()
            .max()
    }

    /// Hermitian conjugate `(b†_Q b_P)† = b†_P b_Q` with conjugated coefficient.
    pub fn conjugate(&self) -> Self {
        Self {
            creations: self.annihilations.clone(),
            annihilations: self.creations.clone(),
            coefficient: self.coefficient.conj(),
            creation_mask: self.annihilation_mask,
            annihilation_mask: self.creation_mask,
        }
    }

    pub fn with_coefficient(&self, coefficient: Complex64) -> Self {
        Self {
            coefficient,
            ..self.clone()
        }
    }

    pub fn sign_windows(&self) -> SignWindows {
        SignWindows {
            annihilation: window_mask(&self.annihilations),
            creation: window_mask(&self.creations),
        }
    }

    /// Particle-number change produced by the operator string.
    pub fn particle_change(&self) -> i64 {
        self.creations.len() as i64 - self.annihilations.len() as i64
    }
}

/// Applies the operator string of `m` (coefficient ignored) to `f`.
///
/// Returns `None` when an annihilated orbital is vacant or a created orbital
/// is already occupied; otherwise the sign `⟨f'|b†_Q b_P|f⟩` and `f'`.
pub fn apply_monomial(m: &Monomial, f: &FockState) -> Option<(i8, FockState)> {
    if let Some(top) = m.max_orbital() {
        if top >= f.n_sp() {
            return None;
        }
    }
    let bits = f.bits();
    if bits & m.annihilation_mask != m.annihilation_mask {
        return None;
    }
    let removed = bits & !m.annihilation_mask;
    if removed & m.creation_mask != 0 {
        return None;
    }
    let out = removed | m.creation_mask;
    let w = m.sign_windows();
    let parity = (bits & w.annihilation).count_ones() + (out & w.creation).count_ones();
    let sign = if parity.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, f.with_bits(out)))
}
