use num_complex::Complex64;
use rayon::prelude::*;

use super::oracles::{build_isometry, build_swap, Direction};
use crate::error::Result;
use crate::fock::{build_fci_matrix, FockState, SqHamiltonian};
use crate::precision::Real;
use crate::statevector::{GateCircuit, GateCounts, RegisterLayout, RunStats, SparseState};

/// Compiled block encoding `U_H = T_b† S T_f` of a Hamiltonian.
#[derive(Debug, Clone)]
pub struct WalkOperator {
    layout: RegisterLayout,
    tf: GateCircuit,
    tb: GateCircuit,
    tf_inv: GateCircuit,
    tb_inv: GateCircuit,
    swap: GateCircuit,
    scale: f64,
}

impl WalkOperator {
    pub fn new(h: &SqHamiltonian) -> Result<Self> {
        let layout = RegisterLayout::new(h.n_sp(), h.index_qubits())?;
        let tf = build_isometry(h, Direction::Forward)?;
        let tb = build_isometry(h, Direction::Backward)?;
        Ok(Self {
            layout,
            tf_inv: tf.inverse(),
            tb_inv: tb.inverse(),
            tf,
            tb,
            swap: build_swap(&layout),
            scale: h.scale(),
        })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn forward(&self) -> &GateCircuit {
        &self.tf
    }

    pub fn backward(&self) -> &GateCircuit {
        &self.tb
    }

    pub fn swap(&self) -> &GateCircuit {
        &self.swap
    }

    /// `D_pad · Λ`: block element times this is the matrix element in MeV.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Gate tally of one application of `U_H`.
    pub fn counts(&self) -> GateCounts {
        self.tf.counts() + self.swap.counts() + self.tb_inv.counts()
    }

    /// `|F⟩_s |0⟩_a`.
    pub fn embed<R: Real>(&self, f: &FockState) -> SparseState<R> {
        SparseState::basis(self.layout.width(), self.layout.system_key(f.bits()))
    }

    /// Applies `U_H` (or `U_H†` when `dagger` is set).
    pub fn apply_u<R: Real>(&self, state: &mut SparseState<R>, dagger: bool) -> RunStats {
        let (first, last) = if dagger {
            (&self.tb, &self.tf_inv)
        } else {
            (&self.tf, &self.tb_inv)
        };
        let a = state.run_circuit(first);
        let b = state.run_circuit(&self.swap);
        let c = state.run_circuit(last);
        RunStats {
            gates: a.gates + b.gates + c.gates,
            max_support: a.max_support.max(b.max_support).max(c.max_support),
        }
    }

    /// Reflection `Π`: `+1` where every ancilla qubit is `|0⟩`, `−1` elsewhere.
    pub fn apply_reflection<R: Real>(&self, state: &mut SparseState<R>) {
        let mask = self.layout.ancilla_mask();
        state.apply_sign(|k| k & mask != 0);
    }

    /// Block elements `⟨G,0|U_H|F,0⟩` for every `G` in `basis`.
    pub fn column(&self, f: &FockState, basis: &[FockState]) -> Vec<Complex64> {
        let mut state: SparseState = self.embed(f);
        self.apply_u(&mut state, false);
        basis
            .iter()
            .map(|g| state.amplitude(self.layout.system_key(g.bits())))
            .collect()
    }
}

/// Outcome of comparing the rescaled block of `U_H` with the full-CI matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCheck {
    pub max_deviation: f64,
    /// Basis positions `(G, F)` of the largest deviation.
    pub worst: Option<(usize, usize)>,
    pub pairs: usize,
}

/// Compares `⟨G,0|U_H|F,0⟩ · D_pad Λ` with `⟨G|H_ref|F⟩` over all basis pairs.
///
/// `walk` may be compiled from a different Hamiltonian than `reference`
/// (fault injection).
pub fn verify_block_encoding(
    walk: &WalkOperator,
    reference: &SqHamiltonian,
    basis: &[FockState],
) -> BlockCheck {
    let fci = build_fci_matrix(reference, basis);
    let columns: Vec<Vec<Complex64>> = basis.par_iter().map(|f| walk.column(f, basis)).collect();
    let mut check = BlockCheck {
        max_deviation: 0.0,
        worst: None,
        pairs: basis.len() * basis.len(),
    };
    for (fi, col) in columns.iter().enumerate() {
        for (gi, amp) in col.iter().enumerate() {
            let dev = (amp * walk.scale() - fci[(gi, fi)]).norm();
            if check.worst.is_none() || dev > check.max_deviation {
                check.max_deviation = dev;
                check.worst = Some((gi, fi));
            }
        }
    }
    check
}
