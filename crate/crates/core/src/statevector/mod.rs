//! Sparse amplitude-map simulation of controlled-gate circuits.
//!
//! Basis index bit `k` is qubit `k` (qubit 0 is the least significant bit).
//! The walk circuits are almost entirely permutations, so the number of
//! stored amplitudes stays close to the number of index branches.

mod circuit;
mod layout;
mod state;

pub use circuit::{Controls, Gate, GateCircuit, GateCounts, GateKind};
pub use layout::{RegisterLayout, Span};
pub use state::{RunStats, SparseState, PRUNE_THRESHOLD};
