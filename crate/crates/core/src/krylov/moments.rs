use num_complex::{Complex, Complex64};
use num_traits::One;

use crate::encoding::WalkOperator;
use crate::fock::FockState;
use crate::precision::{to_c64, Real};
use crate::statevector::SparseState;

/// Incremental evaluation of `μ_k` by alternating `U_H Π` and `U_H† Π`.
///
/// Odd orders apply `U_H Π`, even orders `U_H† Π`, to the running state; `μ_k`
/// is its overlap with `|ψ₀, 0⟩`. Amplitudes use scalar type `R`.
#[derive(Debug, Clone)]
pub struct MomentChain<'a, R: Real = f64> {
    walk: &'a WalkOperator,
    reference: SparseState<R>,
    current: SparseState<R>,
    moments: Vec<Complex<R>>,
    max_support: usize,
}

impl<'a, R: Real> MomentChain<'a, R> {
    pub fn new(walk: &'a WalkOperator, pivot: &FockState) -> Self {
        let reference = walk.embed(pivot);
        Self {
            walk,
            current: reference.clone(),
            reference,
            moments: vec![Complex::one()],
            max_support: 1,
        }
    }

    pub fn moments(&self) -> &[Complex<R>] {
        &self.moments
    }

    /// Moments rounded to `f64`.
    pub fn moments_f64(&self) -> Vec<Complex64> {
        self.moments.iter().map(|&m| to_c64(m)).collect()
    }

    /// Largest sparse support seen while stepping.
    pub fn max_support(&self) -> usize {
        self.max_support
    }

    /// State `V_k |ψ₀, 0⟩` with `μ_k = ⟨ψ₀,0|V_k|ψ₀,0⟩` for the latest `k`.
    pub fn current(&self) -> &SparseState<R> {
        &self.current
    }

    pub fn reference(&self) -> &SparseState<R> {
        &self.reference
    }

    /// Advances by one order.
    pub fn step(&mut self) {
        let k = self.moments.len();
        self.walk.apply_reflection(&mut self.current);
        let stats = self.walk.apply_u(&mut self.current, k.is_multiple_of(2));
        self.max_support = self.max_support.max(stats.max_support);
        self.moments
            .push(self.reference.inner_product(&self.current));
    }

    /// Ensures moments `0 .. n` are available.
    pub fn extend_to(&mut self, n: usize) -> &[Complex<R>] {
        while self.moments.len() < n {
            self.step();
        }
        &self.moments[..n.max(1).min(self.moments.len())]
    }
}

/// Moments `μ_0 … μ_{n−1}` for the pivot state.
pub fn compute_moments<R: Real>(
    walk: &WalkOperator,
    pivot: &FockState,
    n: usize,
) -> Vec<Complex<R>> {
    let mut chain = MomentChain::<R>::new(walk, pivot);
    chain.extend_to(n);
    chain.moments()[..n.min(chain.moments().len())].to_vec()
}
