use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use super::moments::MomentChain;
use crate::encoding::WalkOperator;
use crate::error::{Error, Result};
use crate::fock::FockState;

/// Shot-sampled Hadamard-test estimate of one moment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HadamardEstimate {
    pub order: usize,
    pub shots: u64,
    pub re: f64,
    pub im: f64,
    pub re_stderr: f64,
    pub im_stderr: f64,
    /// Exact probabilities of measuring the control qubit in `|0⟩` for the
    /// real and imaginary circuits.
    pub p0_re: f64,
    pub p0_im: f64,
    pub exact: Complex64,
}

fn sample(p0: f64, shots: u64, rng: &mut impl Rng) -> (f64, f64) {
    let p0 = p0.clamp(0.0, 1.0);
    let zeros = Binomial::new(shots, p0)
        .expect("probability clamped to [0, 1]")
        .sample(rng);
    let est = 2.0 * zeros as f64 / shots as f64 - 1.0;
    let se = ((1.0 - est * est).max(0.0) / shots as f64).sqrt();
    (est, se)
}

/// Simulates the Hadamard test for `μ_order`: the control qubit of
/// `H · c-V · H` (with an `S†` before the last `H` for the imaginary part)
/// reads `|0⟩` with probability `‖ψ + Vψ‖²/4` (resp. `‖ψ − iVψ‖²/4`), and the
/// estimate from `shots` draws is `2 p̂ − 1`.
pub fn hadamard_test_estimate(
    walk: &WalkOperator,
    pivot: &FockState,
    order: usize,
    shots: u64,
    rng: &mut impl Rng,
) -> Result<HadamardEstimate> {
    if shots == 0 {
        return Err(Error::InvalidParameter(
            "Hadamard test needs at least one shot".into(),
        ));
    }
    let mut chain = MomentChain::new(walk, pivot);
    chain.extend_to(order + 1);
    let psi = chain.reference();
    let v_psi = chain.current();
    let overlap = psi.inner_product(v_psi);
    let (nn, vv) = (psi.norm_sqr(), v_psi.norm_sqr());
    // ‖ψ + Vψ‖² = ‖ψ‖² + ‖Vψ‖² + 2 Re⟨ψ|Vψ⟩, and with −iV the cross term is 2 Im⟨ψ|Vψ⟩.
    let p0_re = (nn + vv + 2.0 * overlap.re) / 4.0;
    let p0_im = (nn + vv + 2.0 * overlap.im) / 4.0;
    let (re, re_stderr) = sample(p0_re, shots, rng);
    let (im, im_stderr) = sample(p0_im, shots, rng);
    Ok(HadamardEstimate {
        order,
        shots,
        re,
        im,
        re_stderr,
        im_stderr,
        p0_re,
        p0_im,
        exact: overlap,
    })
}
