use serde::Serialize;

use crate::error::{Error, Result};

/// Contiguous qubit range `start .. start + len`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Span {
    pub start: usize,
    pub len: usize,
}

impl Span {
    pub fn qubit(&self, k: usize) -> usize {
        debug_assert!(k < self.len);
        self.start + k
    }

    pub fn mask(&self) -> u64 {
        if self.len == 0 {
            0
        } else if self.len == 64 {
            u64::MAX
        } else {
            ((1u64 << self.len) - 1) << self.start
        }
    }

    /// Places `value` (low `len` bits) into this span.
    pub fn embed(&self, value: u64) -> u64 {
        (value << self.start) & self.mask()
    }

    pub fn extract(&self, key: u64) -> u64 {
        (key & self.mask()) >> self.start
    }
}

/// Qubit layout of the walk-state registers.
///
/// From the least significant qubit up: the index register `id`, the system
/// register `s`, its copy `cp`, then the single-qubit flags `e_p`, `e_q`,
/// `ζ`, `me`, `b_p` and `b_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegisterLayout {
    pub id: Span,
    pub s: Span,
    pub cp: Span,
    pub e_p: usize,
    pub e_q: usize,
    pub zeta: usize,
    pub me: usize,
    pub b_p: usize,
    pub b_q: usize,
}

impl RegisterLayout {
    pub fn new(n_sp: usize, index_qubits: usize) -> Result<Self> {
        let width = 2 * n_sp + index_qubits + 6;
        if width > 64 {
            return Err(Error::LayoutTooWide(width));
        }
        let id = Span {
            start: 0,
            len: index_qubits,
        };
        let s = Span {
            start: index_qubits,
            len: n_sp,
        };
        let cp = Span {
            start: index_qubits + n_sp,
            len: n_sp,
        };
        let flags = cp.start + n_sp;
        Ok(Self {
            id,
            s,
            cp,
            e_p: flags,
            e_q: flags + 1,
            zeta: flags + 2,
            me: flags + 3,
            b_p: flags + 4,
            b_q: flags + 5,
        })
    }

    pub fn width(&self) -> usize {
        self.b_q + 1
    }

    pub fn n_sp(&self) -> usize {
        self.s.len
    }

    /// Every qubit outside the system register.
    pub fn ancilla_mask(&self) -> u64 {
        let all = if self.width() == 64 {
            u64::MAX
        } else {
            (1u64 << self.width()) - 1
        };
        all & !self.s.mask()
    }

    /// Basis key of `|F⟩_s |0⟩_a`.
    pub fn system_key(&self, occupations: u64) -> u64 {
        self.s.embed(occupations)
    }

    /// Named spans for reports, in qubit order.
    pub fn registers(&self) -> Vec<(&'static str, Span)> {
        let one = |start| Span { start, len: 1 };
        vec![
            ("id", self.id),
            ("s", self.s),
            ("cp", self.cp),
            ("e_p", one(self.e_p)),
            ("e_q", one(self.e_q)),
            ("zeta", one(self.zeta)),
            ("me", one(self.me)),
            ("b_p", one(self.b_p)),
            ("b_q", one(self.b_q)),
        ]
    }
}
