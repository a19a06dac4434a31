use serde::{Deserialize, Serialize};

use super::angular::{clebsch_gordan, gaunt};
use super::oscillator::radial_integral_r2;
use crate::error::{Error, Result};
use crate::fock::{hermitize, SqHamiltonian, Term};

/// Two-body elements with magnitude at or below this (MeV) are dropped.
pub const DROP_THRESHOLD: f64 = 1e-12;

/// Oscillator single-particle orbital `|n l j m τ⟩` (spin 1/2 implied).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpOrbital {
    pub n: u32,
    pub l: u32,
    pub twice_j: i32,
    pub twice_m: i32,
    /// `2τ`: −1 for neutrons, +1 for protons.
    pub twice_tau: i32,
}

impl SpOrbital {
    pub fn validate(&self) -> Result<()> {
        let l2 = 2 * self.l as i32;
        if self.twice_j != l2 + 1 && self.twice_j != l2 - 1 {
            return Err(Error::InvalidParameter(format!(
                "2j = {} cannot couple from l = {} and s = 1/2",
                self.twice_j, self.l
            )));
        }
        if self.twice_m.abs() > self.twice_j || (self.twice_j - self.twice_m) % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "2m = {} is not a projection of 2j = {}",
                self.twice_m, self.twice_j
            )));
        }
        if self.twice_tau.abs() != 1 {
            return Err(Error::InvalidParameter(format!(
                "2τ = {} must be ±1",
                self.twice_tau
            )));
        }
        Ok(())
    }

    /// `p̄`: same `(n, l, j, τ)` with opposite projection.
    pub fn time_reversed(&self) -> Self {
        Self {
            twice_m: -self.twice_m,
            ..*self
        }
    }

    /// `ξ_p = (−1)^(j − m)`.
    pub fn xi(&self) -> f64 {
        if ((self.twice_j - self.twice_m) / 2).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Interaction strengths and oscillator parameters (MeV, natural units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Pairing strength `g` (MeV).
    pub g: f64,
    /// Quadrupole coupling `χ`, multiplied in as a raw constant.
    pub chi: f64,
    /// Oscillator energy `ħω` (MeV).
    pub hbar_omega: f64,
    /// Nucleon mass (MeV).
    pub m_n: f64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.hbar_omega > 0.0 && self.m_n > 0.0) {
            return Err(Error::InvalidParameter(
                "oscillator energy and nucleon mass must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Oscillator length `r_0 = 1/√(m_N ω)` in MeV⁻¹.
    pub fn r0(&self) -> f64 {
        1.0 / (self.m_n * self.hbar_omega).sqrt()
    }
}

/// `⟨p| r² Y_{2σ} |q⟩` in units of `r_0²`.
pub fn quadrupole_me(p: &SpOrbital, q: &SpOrbital, sigma: i32) -> f64 {
    if p.twice_tau != q.twice_tau || p.twice_m != q.twice_m + 2 * sigma {
        return 0.0;
    }
    let radial = radial_integral_r2(p.n, p.l, q.n, q.l);
    if radial == 0.0 {
        return 0.0;
    }
    let mut angular = 0.0;
    for twice_ms in [-1, 1] {
        let tml_p = p.twice_m - twice_ms;
        let tml_q = q.twice_m - twice_ms;
        if tml_p.abs() > 2 * p.l as i32 || tml_q.abs() > 2 * q.l as i32 {
            continue;
        }
        let cg_p = clebsch_gordan(2 * p.l as i32, tml_p, 1, twice_ms, p.twice_j, p.twice_m)
            .expect("validated orbital");
        let cg_q = clebsch_gordan(2 * q.l as i32, tml_q, 1, twice_ms, q.twice_j, q.twice_m)
            .expect("validated orbital");
        let y =
            gaunt(p.l as i32, tml_p / 2, 2, sigma, q.l as i32, tml_q / 2).expect("integer l, m");
        angular += cg_p * cg_q * y;
    }
    radial * angular
}

/// Direct quadrupole product `Σ_μ ⟨p|Q_μ|u⟩ ⟨q|Q*_μ|v⟩` in units of `r_0⁴`,
/// with `⟨q|Q*_μ|v⟩ = (−1)^μ ⟨q|Q_{−μ}|v⟩`.
fn quadrupole_direct(p: &SpOrbital, q: &SpOrbital, u: &SpOrbital, v: &SpOrbital) -> f64 {
    (-2..=2)
        .map(|mu: i32| {
            let sign = if mu.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            quadrupole_me(p, u, mu) * sign * quadrupole_me(q, v, -mu)
        })
        .sum()
}

/// Sign relating a time-reversed pair operator to the ordered pair `(a, b)`:
/// `Some(+1)` when `a` carries `m > 0`, `Some(−1)` when `b` does, `None` if
/// `(a, b)` is not a time-reversed pair.
fn pair_orientation(a: &SpOrbital, b: &SpOrbital) -> Option<f64> {
    if *b != a.time_reversed() {
        return None;
    }
    Some(if a.twice_m > 0 { 1.0 } else { -1.0 })
}

/// Antisymmetrized two-body element `⟨pq|H_A|uv⟩` in MeV.
///
/// This is the coefficient of `a†_p a†_q a_v a_u` when the interaction is
/// written as a sum over ordered pairs `p<q`, `u<v`. The pairing part is
/// `−g ξ_a ξ_b` for time-reversed pairs `{a, ā}`, `{b, b̄}`; the
/// quadrupole-quadrupole part is `2 g χ r_0⁴ (direct − exchange)`, the factor
/// two coming from summing the one-body quadrupole product over both ordered
/// nucleon pairs.
pub fn two_body_me(
    p: &SpOrbital,
    q: &SpOrbital,
    u: &SpOrbital,
    v: &SpOrbital,
    params: &ModelParams,
) -> f64 {
    let mut value = 0.0;
    if let (Some(s_left), Some(s_right)) = (pair_orientation(p, q), pair_orientation(u, v)) {
        let a = if s_left > 0.0 { p } else { q };
        let b = if s_right > 0.0 { u } else { v };
        value -= params.g * a.xi() * b.xi() * s_left * s_right;
    }
    if params.chi != 0.0 {
        let r0_4 = params.r0().powi(4);
        let qq = quadrupole_direct(p, q, u, v) - quadrupole_direct(p, q, v, u);
        value += 2.0 * params.g * params.chi * r0_4 * qq;
    }
    value
}

/// `(p, q, u, v, ⟨pq|H_A|uv⟩)`.
pub type TwoBodyElement = (usize, usize, usize, usize, f64);

/// All nonzero `(p, q, u, v, ⟨pq|H_A|uv⟩)` with `p<q`, `u<v`, both halves,
/// sorted by `(p, q, u, v)`.
pub fn valence_terms(orbitals: &[SpOrbital], params: &ModelParams) -> Result<Vec<TwoBodyElement>> {
    for o in orbitals {
        o.validate()?;
    }
    params.validate()?;
    let n = orbitals.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .collect();
    let mut out = Vec::new();
    for &(p, q) in &pairs {
        for &(u, v) in &pairs {
            let value = two_body_me(
                &orbitals[p],
                &orbitals[q],
                &orbitals[u],
                &orbitals[v],
                params,
            );
            if value.abs() > DROP_THRESHOLD {
                out.push((p, q, u, v, value));
            }
        }
    }
    Ok(out)
}

/// Hermitian monomial table of the valence-space interaction.
///
/// The upper half `(p, q) ≤ (u, v)` is computed and passed to
/// [`hermitize`], which appends the conjugates.
pub fn build_valence_hamiltonian(
    orbitals: &[SpOrbital],
    params: &ModelParams,
) -> Result<SqHamiltonian> {
    let terms: Vec<Term> = valence_terms(orbitals, params)?
        .into_iter()
        .filter(|&(p, q, u, v, _)| (p, q) <= (u, v))
        .map(|(p, q, u, v, value)| Term::real(vec![p, q], vec![u, v], value))
        .collect();
    hermitize(orbitals.len(), &terms)
}
