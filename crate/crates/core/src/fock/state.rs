use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Occupation bitstring over `n_sp` single-particle orbitals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FockState {
    bits: u64,
    n_sp: usize,
}

impl FockState {
    pub const MAX_ORBITALS: usize = 64;

    pub fn new(n_sp: usize, bits: u64) -> Result<Self> {
        if n_sp > Self::MAX_ORBITALS {
            return Err(Error::InvalidParameter(format!(
                "{n_sp} orbitals exceed the supported {}",
                Self::MAX_ORBITALS
            )));
        }
        if n_sp < 64 && bits >> n_sp != 0 {
            return Err(Error::OrbitalOutOfRange {
                orbital: 63 - bits.leading_zeros() as usize,
                n_sp,
            });
        }
        Ok(Self { bits, n_sp })
    }

    pub fn vacuum(n_sp: usize) -> Result<Self> {
        Self::new(n_sp, 0)
    }

    pub fn from_occupied(n_sp: usize, occupied: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &p in occupied {
            if p >= n_sp {
                return Err(Error::OrbitalOutOfRange { orbital: p, n_sp });
            }
            bits |= 1 << p;
        }
        Self::new(n_sp, bits)
    }

    /// Parses a bitstring written with orbital 0 leftmost, e.g. `"11000000"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = 0u64;
        for (p, c) in text.chars().enumerate() {
            match c {
                '1' => bits |= 1 << p,
                '0' => {}
                _ => return Err(Error::Format(format!("bad occupation string {text:?}"))),
            }
        }
        Self::new(text.len(), bits)
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn n_sp(&self) -> usize {
        self.n_sp
    }

    #[inline]
    pub fn is_occupied(&self, p: usize) -> bool {
        p < self.n_sp && self.bits >> p & 1 == 1
    }

    pub fn particle_number(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn occupied(&self) -> Vec<usize> {
        (0..self.n_sp).filter(|&p| self.is_occupied(p)).collect()
    }

    /// Sum of `2m_p` over occupied orbitals.
    pub fn twice_mj(&self, orbital_2m: &[i32]) -> i32 {
        self.occupied().into_iter().map(|p| orbital_2m[p]).sum()
    }

    pub(crate) fn with_bits(&self, bits: u64) -> Self {
        Self {
            bits,
            n_sp: self.n_sp,
        }
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 0..self.n_sp {
            f.write_str(if self.is_occupied(p) { "1" } else { "0" })?;
        }
        Ok(())
    }
}
