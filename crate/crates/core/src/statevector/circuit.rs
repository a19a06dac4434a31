use std::fmt::Write as _;

use serde::Serialize;

/// Control pattern: the gate fires on basis keys with `key & mask == values`.
///
/// A set bit of `values` is a closed (|1⟩) control, a clear bit an open (|0⟩)
/// control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Controls {
    pub mask: u64,
    pub values: u64,
}

impl Controls {
    pub const NONE: Controls = Controls { mask: 0, values: 0 };

    pub fn closed(qubit: usize) -> Self {
        Self::NONE.with(qubit, true)
    }

    pub fn open(qubit: usize) -> Self {
        Self::NONE.with(qubit, false)
    }

    /// Adds a control on `qubit` requiring it to equal `value`.
    pub fn with(mut self, qubit: usize, value: bool) -> Self {
        self.mask |= 1u64 << qubit;
        if value {
            self.values |= 1u64 << qubit;
        } else {
            self.values &= !(1u64 << qubit);
        }
        self
    }

    /// Adds controls requiring `qubits[k]` to equal bit `k` of `pattern`.
    pub fn with_value(mut self, qubits: impl IntoIterator<Item = usize>, pattern: u64) -> Self {
        for (k, q) in qubits.into_iter().enumerate() {
            self = self.with(q, (pattern >> k) & 1 == 1);
        }
        self
    }

    pub fn count(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn open_count(&self) -> u32 {
        (self.mask & !self.values).count_ones()
    }

    #[inline]
    pub fn fires(&self, key: u64) -> bool {
        key & self.mask == self.values
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    X(usize),
    Z(usize),
    /// `|0⟩ → e^{iθ}|0⟩`, `|1⟩ → |1⟩`.
    PhaseOnZero(usize, f64),
    /// `exp(−i α Y / 2)`.
    Ry(usize, f64),
    H(usize),
    Swap(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub controls: Controls,
}

impl Gate {
    pub fn new(kind: GateKind, controls: Controls) -> Self {
        Self { kind, controls }
    }

    pub fn x(target: usize) -> Self {
        Self::new(GateKind::X(target), Controls::NONE)
    }

    pub fn targets(&self) -> Vec<usize> {
        match self.kind {
            GateKind::X(t)
            | GateKind::Z(t)
            | GateKind::PhaseOnZero(t, _)
            | GateKind::Ry(t, _)
            | GateKind::H(t) => {
                vec![t]
            }
            GateKind::Swap(a, b) => vec![a, b],
        }
    }

    /// Permutation gates only relabel basis keys.
    pub fn is_permutation(&self) -> bool {
        matches!(self.kind, GateKind::X(_) | GateKind::Swap(..))
    }

    pub fn dagger(&self) -> Self {
        let kind = match self.kind {
            GateKind::PhaseOnZero(t, theta) => GateKind::PhaseOnZero(t, -theta),
            GateKind::Ry(t, alpha) => GateKind::Ry(t, -alpha),
            k => k,
        };
        Self::new(kind, self.controls)
    }

    fn name(&self) -> &'static str {
        let c = self.controls.count();
        match self.kind {
            GateKind::X(_) if c == 0 => "X",
            GateKind::X(_) if c == 1 => "CX",
            GateKind::X(_) => "MCX",
            GateKind::Z(_) => "Z",
            GateKind::PhaseOnZero(..) => "P0",
            GateKind::Ry(..) => "RY",
            GateKind::H(_) => "H",
            GateKind::Swap(..) => "SWAP",
        }
    }

    /// Elementary-gate estimate: a gate with `c ≥ 2` controls is charged
    /// `2c − 1` (Toffoli ladder with borrowed ancillas), plus two `X` gates per
    /// open control.
    pub fn elementary_cost(&self) -> u64 {
        let c = self.controls.count() as u64;
        let core = if c <= 1 { 1 } else { 2 * c - 1 };
        core + 2 * self.controls.open_count() as u64
    }
}

/// Tally of a circuit's gates by class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GateCounts {
    pub x: u64,
    pub cx: u64,
    pub mcx: u64,
    pub z: u64,
    pub phase: u64,
    pub ry: u64,
    pub h: u64,
    pub swap: u64,
    /// Gates with two or more controls, of any kind.
    pub multi_controlled: u64,
    pub elementary: u64,
}

impl GateCounts {
    pub fn total(&self) -> u64 {
        self.x + self.cx + self.mcx + self.z + self.phase + self.ry + self.h + self.swap
    }

    fn record(&mut self, g: &Gate) {
        let c = g.controls.count();
        match g.kind {
            GateKind::X(_) if c == 0 => self.x += 1,
            GateKind::X(_) if c == 1 => self.cx += 1,
            GateKind::X(_) => self.mcx += 1,
            GateKind::Z(_) => self.z += 1,
            GateKind::PhaseOnZero(..) => self.phase += 1,
            GateKind::Ry(..) => self.ry += 1,
            GateKind::H(_) => self.h += 1,
            GateKind::Swap(..) => self.swap += 1,
        }
        if c >= 2 {
            self.multi_controlled += 1;
        }
        self.elementary += g.elementary_cost();
    }
}

impl std::ops::Add for GateCounts {
    type Output = GateCounts;

    fn add(self, o: GateCounts) -> GateCounts {
        GateCounts {
            x: self.x + o.x,
            cx: self.cx + o.cx,
            mcx: self.mcx + o.mcx,
            z: self.z + o.z,
            phase: self.phase + o.phase,
            ry: self.ry + o.ry,
            h: self.h + o.h,
            swap: self.swap + o.swap,
            multi_controlled: self.multi_controlled + o.multi_controlled,
            elementary: self.elementary + o.elementary,
        }
    }
}

/// Ordered gate list over a fixed number of qubits, with running counters.
#[derive(Debug, Clone, PartialEq)]
pub struct GateCircuit {
    width: usize,
    gates: Vec<Gate>,
    counts: GateCounts,
}

impl GateCircuit {
    pub fn new(width: usize) -> Self {
        assert!(width <= 64, "circuit width {width} exceeds 64 qubits");
        Self {
            width,
            gates: Vec::new(),
            counts: GateCounts::default(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn counts(&self) -> GateCounts {
        self.counts
    }

    /// Appends a gate.
    ///
    /// # Panics
    ///
    /// Panics if a target or control lies outside the circuit, if a target is
    /// also a control, or if a swap acts on a single qubit.
    pub fn push(&mut self, gate: Gate) {
        let limit = if self.width == 64 {
            u64::MAX
        } else {
            (1u64 << self.width) - 1
        };
        assert_eq!(gate.controls.mask & !limit, 0, "control outside circuit");
        assert_eq!(
            gate.controls.values & !gate.controls.mask,
            0,
            "control value without control"
        );
        for t in gate.targets() {
            assert!(
                t < self.width,
                "target {t} outside {}-qubit circuit",
                self.width
            );
            assert_eq!(
                gate.controls.mask >> t & 1,
                0,
                "qubit {t} is both target and control"
            );
        }
        if let GateKind::Swap(a, b) = gate.kind {
            assert_ne!(a, b, "swap needs two distinct qubits");
        }
        self.counts.record(&gate);
        self.gates.push(gate);
    }

    pub fn add(&mut self, kind: GateKind, controls: Controls) {
        self.push(Gate::new(kind, controls));
    }

    pub fn append(&mut self, other: &GateCircuit) {
        assert_eq!(self.width, other.width, "circuit width mismatch");
        for g in &other.gates {
            self.push(*g);
        }
    }

    /// Reversed gate order with every gate daggered.
    pub fn inverse(&self) -> Self {
        let mut out = Self::new(self.width);
        for g in self.gates.iter().rev() {
            out.push(g.dagger());
        }
        out
    }

    /// Tally rebuilt from the gate list.
    pub fn recount(&self) -> GateCounts {
        let mut c = GateCounts::default();
        for g in &self.gates {
            c.record(g);
        }
        c
    }

    /// One line per gate: `NAME targets controls polarity params`.
    ///
    /// Lists are comma separated, `-` marks an empty field, and polarity has
    /// one character per control (`1` closed, `0` open) in control order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.gates {
            let targets = join(g.targets().into_iter());
            let controls: Vec<usize> = (0..64).filter(|&q| g.controls.mask >> q & 1 == 1).collect();
            let polarity: String = controls
                .iter()
                .map(|&q| {
                    if g.controls.values >> q & 1 == 1 {
                        '1'
                    } else {
                        '0'
                    }
                })
                .collect();
            let params = match g.kind {
                GateKind::PhaseOnZero(_, v) | GateKind::Ry(_, v) => format!("{v:.17e}"),
                _ => "-".to_string(),
            };
            let _ = writeln!(
                out,
                "{} {} {} {} {}",
                g.name(),
                targets,
                if controls.is_empty() {
                    "-".to_string()
                } else {
                    join(controls.into_iter())
                },
                if polarity.is_empty() { "-" } else { &polarity },
                params
            );
        }
        out
    }
}

fn join(items: impl Iterator<Item = usize>) -> String {
    items.map(|q| q.to_string()).collect::<Vec<_>>().join(",")
}
