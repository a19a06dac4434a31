use serde::Serialize;

use super::oracles::{build_oracle_of, build_oracle_oh};
use super::walk::WalkOperator;
use crate::error::{Error, Result};
use crate::fock::{hermitize, SqHamiltonian, Term};
use crate::statevector::GateCounts;

/// Gate tallies of one Hamiltonian's circuits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateReportRow {
    pub n_sp: usize,
    pub d: usize,
    pub d_pad: usize,
    pub qubits: usize,
    pub oracle_f: GateCounts,
    pub oracle_h: GateCounts,
    pub walk: GateCounts,
}

/// Per-Hamiltonian counts plus log-log exponent fits across the family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateReport {
    pub rows: Vec<GateReportRow>,
    /// Elementary `O_F` count against `D`.
    pub oracle_f_vs_d: Option<f64>,
    /// Elementary `O_H` count against `D · N_sp`.
    pub oracle_h_vs_d_nsp: Option<f64>,
    /// Elementary `U_H` count against `N_sp`.
    pub walk_vs_nsp: Option<f64>,
    /// Monomial count `D` against `N_sp`.
    pub d_vs_nsp: Option<f64>,
}

/// Least-squares slope of `ln y` against `ln x`.
///
/// Returns `None` with fewer than two distinct `x` values.
pub fn fit_exponent(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len());
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if lx.len() < 2 || sxx < 1e-12 {
        return None;
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

pub fn gate_count_report(family: &[SqHamiltonian]) -> Result<GateReport> {
    if family.is_empty() {
        return Err(Error::InvalidParameter(
            "gate report needs at least one Hamiltonian".into(),
        ));
    }
    let rows = family
        .iter()
        .map(|h| {
            let walk = WalkOperator::new(h)?;
            Ok(GateReportRow {
                n_sp: h.n_sp(),
                d: h.len(),
                d_pad: h.d_pad(),
                qubits: walk.layout().width(),
                oracle_f: build_oracle_of(h, false)?.counts(),
                oracle_h: build_oracle_oh(h)?.counts(),
                walk: walk.counts(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let col = |f: &dyn Fn(&GateReportRow) -> f64| rows.iter().map(f).collect::<Vec<f64>>();
    let d = col(&|r| r.d as f64);
    let nsp = col(&|r| r.n_sp as f64);
    let d_nsp = col(&|r| (r.d * r.n_sp) as f64);
    Ok(GateReport {
        oracle_f_vs_d: fit_exponent(&d, &col(&|r| r.oracle_f.elementary as f64)),
        oracle_h_vs_d_nsp: fit_exponent(&d_nsp, &col(&|r| r.oracle_h.elementary as f64)),
        walk_vs_nsp: fit_exponent(&nsp, &col(&|r| r.walk.elementary as f64)),
        d_vs_nsp: fit_exponent(&nsp, &d),
        rows,
    })
}

/// Pairing Hamiltonian `−g Σ_{k,l} a†_k a†_{k̄} a_{l̄} a_l` on `n_sp` orbitals.
///
/// Orbitals `0 .. n_sp/2` are the `m > 0` members and `k + n_sp/2` is the
/// partner of `k`, so every pair straddles the others and the occupancy
/// windows are non-empty.
pub fn pairing_hamiltonian(n_sp: usize, g: f64) -> Result<SqHamiltonian> {
    if n_sp == 0 || !n_sp.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "pairing space needs a positive even orbital count, got {n_sp}"
        )));
    }
    let half = n_sp / 2;
    let mut terms = Vec::new();
    for k in 0..half {
        for l in k..half {
            terms.push(Term::real(vec![k, k + half], vec![l, l + half], -g));
        }
    }
    hermitize(n_sp, &terms)
}

pub fn pairing_family(sizes: &[usize], g: f64) -> Result<Vec<SqHamiltonian>> {
    sizes.iter().map(|&n| pairing_hamiltonian(n, g)).collect()
}
