use crate::error::{Error, Result};
use crate::fock::{Monomial, SqHamiltonian};
use crate::statevector::{Controls, GateCircuit, GateKind, RegisterLayout};

/// Which walk state an isometry prepares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Controls selecting index value `j` on the `id` register.
fn index_controls(layout: &RegisterLayout, j: usize) -> Controls {
    Controls::NONE.with_value((0..layout.id.len).map(|b| layout.id.qubit(b)), j as u64)
}

fn check_orbitals(h: &SqHamiltonian) -> Result<()> {
    for m in h.monomials() {
        if let Some(top) = m.max_orbital() {
            if top >= h.n_sp() {
                return Err(Error::OrbitalOutOfRange {
                    orbital: top,
                    n_sp: h.n_sp(),
                });
            }
        }
    }
    Ok(())
}

fn monomial_for(h: &SqHamiltonian, j: usize, conjugate: bool) -> Monomial {
    if conjugate {
        h.monomial(j).conjugate()
    } else {
        h.monomial(j).clone()
    }
}

/// Enumerator oracle `O_F`.
///
/// Copies `s` into `cp`, then for every index `j` (controlled on `id = j`):
/// clears `e_p` when all orbitals of `P_j` are occupied in `cp` and empties
/// them, then clears `e_q` when all orbitals of `Q_j` are vacant and fills
/// them. The flags are expected to start in `|1⟩`. Padded indices `j ≥ D`
/// get no gates. With `conjugate` set, index `j` uses `(b†_{Q_j} b_{P_j})†`.
pub fn build_oracle_of(h: &SqHamiltonian, conjugate: bool) -> Result<GateCircuit> {
    check_orbitals(h)?;
    let layout = RegisterLayout::new(h.n_sp(), h.index_qubits())?;
    let mut c = GateCircuit::new(layout.width());
    for p in 0..h.n_sp() {
        c.add(
            GateKind::X(layout.cp.qubit(p)),
            Controls::closed(layout.s.qubit(p)),
        );
    }
    for j in 0..h.len() {
        let m = monomial_for(h, j, conjugate);
        let id = index_controls(&layout, j);
        let p_check = m
            .annihilations()
            .iter()
            .fold(id, |acc, &p| acc.with(layout.cp.qubit(p), true));
        c.add(GateKind::X(layout.e_p), p_check);
        for &p in m.annihilations() {
            c.add(GateKind::X(layout.cp.qubit(p)), id);
        }
        let q_check = m
            .creations()
            .iter()
            .fold(id, |acc, &q| acc.with(layout.cp.qubit(q), false));
        c.add(GateKind::X(layout.e_q), q_check);
        for &q in m.creations() {
            c.add(GateKind::X(layout.cp.qubit(q)), id);
        }
    }
    Ok(c)
}

/// Matrix-element oracle `O_H`.
///
/// Accumulates the fermionic sign parity of every index into `ζ` from the
/// occupancy windows of `s` (input state) and `cp` (output state), applies
/// `Z` to `ζ` and uncomputes it. Then, per index, `PhaseOnZero(θ_j)` and
/// `R_y(2 arccos ρ_j)` on `me`, which leave `ρ_j e^{iθ_j}` on `me = |0⟩`.
pub fn build_oracle_oh(h: &SqHamiltonian) -> Result<GateCircuit> {
    check_orbitals(h)?;
    let layout = RegisterLayout::new(h.n_sp(), h.index_qubits())?;
    let mut sign = GateCircuit::new(layout.width());
    for (j, m) in h.monomials().iter().enumerate() {
        let id = index_controls(&layout, j);
        let w = m.sign_windows();
        for p in (0..h.n_sp()).filter(|&p| w.annihilation >> p & 1 == 1) {
            sign.add(GateKind::X(layout.zeta), id.with(layout.s.qubit(p), true));
        }
        for p in (0..h.n_sp()).filter(|&p| w.creation >> p & 1 == 1) {
            sign.add(GateKind::X(layout.zeta), id.with(layout.cp.qubit(p), true));
        }
    }
    let mut c = GateCircuit::new(layout.width());
    c.append(&sign);
    if !sign.is_empty() {
        c.add(GateKind::Z(layout.zeta), Controls::NONE);
        c.append(&sign.inverse());
    }
    for j in 0..h.len() {
        let magnitude = h.monomial(j).coefficient().norm() / h.lambda();
        if magnitude > 1.0 + 1e-12 {
            return Err(Error::ScaleViolation {
                magnitude: h.monomial(j).coefficient().norm(),
                lambda: h.lambda(),
            });
        }
        let id = index_controls(&layout, j);
        let theta = h.theta(j);
        if theta != 0.0 {
            c.add(GateKind::PhaseOnZero(layout.me, theta), id);
        }
        let alpha = 2.0 * h.rho(j).acos();
        if alpha != 0.0 {
            c.add(GateKind::Ry(layout.me, alpha), id);
        }
    }
    Ok(c)
}

/// Walk-state isometry: flags `e_p`, `e_q` set to `|1⟩`, Hadamards on the
/// index register, `O_F` (from `H` forward, from `H†` backward) and, forward
/// only, `O_H`.
pub fn build_isometry(h: &SqHamiltonian, direction: Direction) -> Result<GateCircuit> {
    let layout = RegisterLayout::new(h.n_sp(), h.index_qubits())?;
    let mut c = GateCircuit::new(layout.width());
    c.add(GateKind::X(layout.e_p), Controls::NONE);
    c.add(GateKind::X(layout.e_q), Controls::NONE);
    for b in 0..layout.id.len {
        c.add(GateKind::H(layout.id.qubit(b)), Controls::NONE);
    }
    match direction {
        Direction::Forward => {
            c.append(&build_oracle_of(h, false)?);
            c.append(&build_oracle_oh(h)?);
        }
        Direction::Backward => c.append(&build_oracle_of(h, true)?),
    }
    Ok(c)
}

/// Swap operator `S`: `s ↔ cp` qubit-wise, `e_p ↔ b_p`, `e_q ↔ b_q`.
pub fn build_swap(layout: &RegisterLayout) -> GateCircuit {
    let mut c = GateCircuit::new(layout.width());
    for p in 0..layout.n_sp() {
        c.add(
            GateKind::Swap(layout.s.qubit(p), layout.cp.qubit(p)),
            Controls::NONE,
        );
    }
    c.add(GateKind::Swap(layout.e_p, layout.b_p), Controls::NONE);
    c.add(GateKind::Swap(layout.e_q, layout.b_q), Controls::NONE);
    c
}
