use std::fmt::Write as _;

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{Controls, Gate, GateCircuit, GateKind};
use crate::precision::Real;

/// Amplitudes with magnitude below this are dropped after branching gates.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// Entry count above which gates are applied in parallel.
const PAR_THRESHOLD: usize = 1 << 14;

/// Statistics collected by [`SparseState::run_circuit`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunStats {
    pub gates: usize,
    /// Largest number of stored amplitudes seen after any gate.
    pub max_support: usize,
}

/// Sparse state over `width` qubits: a list of `(basis key, amplitude)` with
/// distinct keys. Amplitude components have scalar type `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState<R: Real = f64> {
    width: usize,
    entries: Vec<(u64, Complex<R>)>,
}

fn magnitude<R: Real>(a: &Complex<R>) -> f64 {
    a.norm_sqr().to_f64().sqrt()
}

impl<R: Real> SparseState<R> {
    pub fn basis(width: usize, key: u64) -> Self {
        assert!(
            width <= 64 && (width == 64 || key >> width == 0),
            "key outside register"
        );
        Self {
            width,
            entries: vec![(key, Complex::one())],
        }
    }

    /// Builds a state from arbitrary entries, merging repeated keys and
    /// pruning negligible amplitudes.
    pub fn from_entries(
        width: usize,
        entries: impl IntoIterator<Item = (u64, Complex<R>)>,
    ) -> Self {
        let mut map: FxHashMap<u64, Complex<R>> = FxHashMap::default();
        let mut order = Vec::new();
        for (k, a) in entries {
            assert!(width == 64 || k >> width == 0, "key outside register");
            map.entry(k).and_modify(|v| *v = *v + a).or_insert_with(|| {
                order.push(k);
                a
            });
        }
        let entries = order
            .into_iter()
            .map(|k| (k, map[&k]))
            .filter(|(_, a)| magnitude(a) >= PRUNE_THRESHOLD)
            .collect();
        Self { width, entries }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn entries(&self) -> &[(u64, Complex<R>)] {
        &self.entries
    }

    pub fn support(&self) -> usize {
        self.entries.len()
    }

    pub fn amplitude(&self, key: u64) -> Complex<R> {
        self.entries
            .iter()
            .find(|(k, _)| *k == key)
            .map_or(Complex::zero(), |(_, a)| *a)
    }

    pub fn norm_sqr(&self) -> R {
        self.entries
            .iter()
            .fold(R::zero(), |acc, (_, a)| acc + a.norm_sqr())
    }

    /// `⟨self|other⟩`.
    ///
    /// # Panics
    ///
    /// Panics if the two states live on different registers.
    pub fn inner_product(&self, other: &SparseState<R>) -> Complex<R> {
        assert_eq!(
            self.width, other.width,
            "inner product of states on different registers"
        );
        let (small, large, flip) = if self.entries.len() <= other.entries.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let index: FxHashMap<u64, Complex<R>> = small.entries.iter().copied().collect();
        let mut acc = Complex::zero();
        for (k, b) in &large.entries {
            if let Some(a) = index.get(k) {
                acc = acc + if flip { b.conj() * a } else { a.conj() * b };
            }
        }
        acc
    }

    /// Negates every amplitude whose key satisfies `f`.
    pub fn apply_sign(&mut self, f: impl Fn(u64) -> bool + Sync) {
        let body = |e: &mut (u64, Complex<R>)| {
            if f(e.0) {
                e.1 = -e.1;
            }
        };
        if self.entries.len() >= PAR_THRESHOLD {
            self.entries.par_iter_mut().for_each(body);
        } else {
            self.entries.iter_mut().for_each(body);
        }
    }

    /// Relabels every key by `f`, which must be a bijection on basis keys.
    pub fn apply_permutation(&mut self, f: impl Fn(u64) -> u64 + Sync) {
        let body = |e: &mut (u64, Complex<R>)| e.0 = f(e.0);
        if self.entries.len() >= PAR_THRESHOLD {
            self.entries.par_iter_mut().for_each(body);
        } else {
            self.entries.iter_mut().for_each(body);
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) {
        for t in gate.targets() {
            assert!(
                t < self.width,
                "target {t} outside {}-qubit register",
                self.width
            );
        }
        let c = gate.controls;
        match gate.kind {
            GateKind::X(t) => {
                let bit = 1u64 << t;
                self.apply_permutation(|k| if c.fires(k) { k ^ bit } else { k });
            }
            GateKind::Swap(a, b) => {
                self.apply_permutation(|k| {
                    if c.fires(k) && ((k >> a) ^ (k >> b)) & 1 == 1 {
                        k ^ (1u64 << a) ^ (1u64 << b)
                    } else {
                        k
                    }
                });
            }
            GateKind::Z(t) => {
                self.apply_sign(|k| c.fires(k) && (k >> t) & 1 == 1);
            }
            GateKind::PhaseOnZero(t, theta) => {
                let (cs, sn) = R::unit_phase(theta);
                let phase = Complex::new(cs, sn);
                let body = |e: &mut (u64, Complex<R>)| {
                    if c.fires(e.0) && (e.0 >> t) & 1 == 0 {
                        e.1 = e.1 * phase;
                    }
                };
                if self.entries.len() >= PAR_THRESHOLD {
                    self.entries.par_iter_mut().for_each(body);
                } else {
                    self.entries.iter_mut().for_each(body);
                }
            }
            GateKind::H(t) => {
                let s = R::from_f64(0.5).sqrt();
                self.apply_single_qubit(t, c, [[s, s], [s, -s]]);
            }
            GateKind::Ry(t, alpha) => {
                let (cs, sn) = R::half_angle(alpha);
                self.apply_single_qubit(t, c, [[cs, -sn], [sn, cs]]);
            }
        }
    }

    /// Real 2×2 gate `u` on qubit `t` for keys where `c` fires.
    fn apply_single_qubit(&mut self, t: usize, c: Controls, u: [[R; 2]; 2]) {
        let bit = 1u64 << t;
        // Pair amplitudes by the key with the target cleared; first-seen order
        // keeps the output deterministic.
        let mut pairs: FxHashMap<u64, usize> = FxHashMap::default();
        let mut slots: Vec<(u64, [Complex<R>; 2])> = Vec::new();
        let mut out = Vec::with_capacity(self.entries.len() * 2);
        for &(k, a) in &self.entries {
            if !c.fires(k) {
                out.push((k, a));
                continue;
            }
            let base = k & !bit;
            let idx = *pairs.entry(base).or_insert_with(|| {
                slots.push((base, [Complex::zero(); 2]));
                slots.len() - 1
            });
            slots[idx].1[((k >> t) & 1) as usize] = a;
        }
        for (base, [a0, a1]) in slots {
            let b0 = a0.scale(u[0][0]) + a1.scale(u[0][1]);
            let b1 = a0.scale(u[1][0]) + a1.scale(u[1][1]);
            if magnitude(&b0) >= PRUNE_THRESHOLD {
                out.push((base, b0));
            }
            if magnitude(&b1) >= PRUNE_THRESHOLD {
                out.push((base | bit, b1));
            }
        }
        self.entries = out;
    }

    pub fn run_circuit(&mut self, circuit: &GateCircuit) -> RunStats {
        assert_eq!(
            circuit.width(),
            self.width,
            "circuit and state widths differ"
        );
        let mut stats = RunStats {
            gates: 0,
            max_support: self.entries.len(),
        };
        for g in circuit.gates() {
            self.apply_gate(g);
            stats.gates += 1;
            stats.max_support = stats.max_support.max(self.entries.len());
        }
        stats
    }

    /// Same state with amplitudes converted to another scalar type.
    pub fn convert<S: Real>(&self) -> SparseState<S> {
        SparseState {
            width: self.width,
            entries: self
                .entries
                .iter()
                .map(|&(k, a)| {
                    (
                        k,
                        Complex::new(S::from_f64(a.re.to_f64()), S::from_f64(a.im.to_f64())),
                    )
                })
                .collect(),
        }
    }

    /// Sorts entries by basis key.
    pub fn canonicalize(&mut self) {
        self.entries.sort_unstable_by_key(|e| e.0);
    }

    /// Diagnostic dump: `bitstring re im` per line, sorted by key, for
    /// amplitudes of magnitude at least `1e-12`. The bitstring is printed with
    /// the highest qubit first.
    pub fn dump(&self) -> String {
        let mut sorted: Vec<_> = self
            .entries
            .iter()
            .filter(|(_, a)| magnitude(a) >= 1e-12)
            .collect();
        sorted.sort_unstable_by_key(|e| e.0);
        let mut out = String::new();
        for (k, a) in sorted {
            let bits: String = (0..self.width)
                .rev()
                .map(|q| if (k >> q) & 1 == 1 { '1' } else { '0' })
                .collect();
            let _ = writeln!(out, "{bits} {:.17e} {:.17e}", a.re.to_f64(), a.im.to_f64());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::Dd;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    #[test]
    fn x_flips() {
        let mut s: SparseState = SparseState::basis(1, 0);
        s.apply_gate(&Gate::x(0));
        assert_eq!(s.entries(), &[(1, Complex64::new(1.0, 0.0))]);
    }

    #[test]
    fn hadamard_splits_and_recombines() {
        let mut s: SparseState = SparseState::basis(1, 0);
        let h = Gate::new(GateKind::H(0), Controls::NONE);
        s.apply_gate(&h);
        assert_eq!(s.support(), 2);
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-15);
        assert_eq!(s.amplitude(0), s.amplitude(1));
        assert_abs_diff_eq!(
            s.amplitude(1).re,
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        s.apply_gate(&h);
        assert_eq!(s.support(), 1);
        assert_abs_diff_eq!(s.amplitude(0).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn open_controlled_x() {
        // Qubits 0, 1 are open controls, qubit 2 the target: |1,00⟩ → |0,00⟩.
        let mut s: SparseState = SparseState::basis(3, 0b100);
        s.apply_gate(&Gate::new(GateKind::X(2), Controls::open(0).with(1, false)));
        assert_eq!(s.entries()[0].0, 0);
        let mut s: SparseState = SparseState::basis(3, 0b101);
        s.apply_gate(&Gate::new(GateKind::X(2), Controls::open(0).with(1, false)));
        assert_eq!(s.entries()[0].0, 0b101);
    }

    #[test]
    fn ry_rotation() {
        let mut s: SparseState = SparseState::basis(1, 0);
        s.apply_gate(&Gate::new(
            GateKind::Ry(0, 2.0 * 0.6f64.acos()),
            Controls::NONE,
        ));
        assert_abs_diff_eq!(s.amplitude(0).re, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitude(1).re, 0.8, epsilon = 1e-15);
    }

    #[test]
    fn phase_on_zero() {
        let mut s: SparseState = SparseState::from_entries(
            1,
            [(0, Complex64::new(0.6, 0.0)), (1, Complex64::new(0.8, 0.0))],
        );
        s.apply_gate(&Gate::new(
            GateKind::PhaseOnZero(0, std::f64::consts::PI),
            Controls::NONE,
        ));
        assert_abs_diff_eq!(s.amplitude(0).re, -0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitude(1).re, 0.8, epsilon = 1e-15);
    }

    #[test]
    fn empty_circuit_is_identity() {
        let mut s: SparseState = SparseState::basis(3, 5);
        let before = s.clone();
        let stats = s.run_circuit(&GateCircuit::new(3));
        assert_eq!(s, before);
        assert_eq!(stats.max_support, 1);
    }

    #[test]
    fn orthogonal_basis_states() {
        let a: SparseState = SparseState::basis(2, 1);
        let b: SparseState = SparseState::basis(2, 2);
        assert_eq!(a.inner_product(&b), Complex64::new(0.0, 0.0));
        assert_eq!(a.inner_product(&a), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn dump_format() {
        let s: SparseState = SparseState::from_entries(3, [(0b110, Complex64::new(1.0, 0.0))]);
        assert_eq!(
            s.dump(),
            "110 1.00000000000000000e0 0.00000000000000000e0\n"
        );
    }

    #[test]
    fn double_double_rotation_is_unitary() {
        let mut s: SparseState<Dd> = SparseState::basis(2, 0);
        for (q, a) in [(0, 0.3), (1, 1.1), (0, -2.9), (1, 0.7)] {
            s.apply_gate(&Gate::new(GateKind::Ry(q, a), Controls::NONE));
            s.apply_gate(&Gate::new(GateKind::H(1 - q), Controls::NONE));
        }
        assert!((s.norm_sqr() - Dd::new(1.0)).to_f64().abs() < 1e-30);
    }
}
