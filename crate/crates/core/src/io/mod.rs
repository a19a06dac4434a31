//! File formats: Hamiltonian interchange JSON, two-body table CSV, valence
//! space and parameter JSON, and the bundled reference data.

pub mod reference;

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{fold_conjugates, hermitize, SqHamiltonian, Term};
use crate::nuclear::{ModelParams, SpOrbital, TwoBodyElement};

/// Conjugate rows of a complete two-body table may differ by this much.
pub const TABLE_FOLD_TOLERANCE: f64 = 5e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub q: Vec<usize>,
    pub p: Vec<usize>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// Hamiltonian interchange file: the upper-half term list plus, optionally,
/// the `2m` projection of every orbital.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianFile {
    pub n_sp: usize,
    pub terms: Vec<TermRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twice_m: Option<Vec<i32>>,
}

impl HamiltonianFile {
    pub fn from_hamiltonian(h: &SqHamiltonian, twice_m: Option<Vec<i32>>) -> Self {
        Self {
            n_sp: h.n_sp(),
            terms: h
                .upper_terms()
                .into_iter()
                .map(|t| TermRecord {
                    q: t.q,
                    p: t.p,
                    re: t.coefficient.re,
                    im: t.coefficient.im,
                })
                .collect(),
            twice_m,
        }
    }

    pub fn to_hamiltonian(&self) -> Result<SqHamiltonian> {
        if let Some(m) = &self.twice_m {
            if m.len() != self.n_sp {
                return Err(Error::Format(format!(
                    "twice_m lists {} orbitals but n_sp is {}",
                    m.len(),
                    self.n_sp
                )));
            }
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|r| Term::new(r.q.clone(), r.p.clone(), Complex64::new(r.re, r.im)))
            .collect();
        hermitize(self.n_sp, &terms)
    }
}

fn open(path: &Path) -> Result<fs::File> {
    fs::File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let mut text = String::new();
    open(path)?.read_to_string(&mut text)?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_hamiltonian_file(path: &Path) -> Result<HamiltonianFile> {
    read_json(path)
}

pub fn read_valence_space(path: &Path) -> Result<Vec<SpOrbital>> {
    read_json(path)
}

pub fn read_model_params(path: &Path) -> Result<ModelParams> {
    read_json(path)
}

/// One row `(i, p, q, u, v, ⟨pq|H|uv⟩)` of a two-body table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoBodyRow {
    pub i: usize,
    pub p: usize,
    pub q: usize,
    pub u: usize,
    pub v: usize,
    pub value: f64,
}

impl TwoBodyRow {
    pub fn key(&self) -> (usize, usize, usize, usize) {
        (self.p, self.q, self.u, self.v)
    }
}

pub fn parse_two_body_csv(reader: impl Read) -> Result<Vec<TwoBodyRow>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let rows = rdr
        .deserialize()
        .collect::<std::result::Result<Vec<TwoBodyRow>, _>>()?;
    for r in &rows {
        if r.p >= r.q || r.u >= r.v {
            return Err(Error::Format(format!(
                "row {}: orbital pairs must satisfy p < q and u < v",
                r.i
            )));
        }
    }
    Ok(rows)
}

pub fn read_two_body_csv(path: &Path) -> Result<Vec<TwoBodyRow>> {
    parse_two_body_csv(open(path)?)
}

/// Numbered rows from `(p, q, u, v, value)` tuples.
pub fn two_body_rows(terms: &[TwoBodyElement]) -> Vec<TwoBodyRow> {
    terms
        .iter()
        .enumerate()
        .map(|(i, &(p, q, u, v, value))| TwoBodyRow {
            i,
            p,
            q,
            u,
            v,
            value,
        })
        .collect()
}

/// Writes a two-body table with values at 9 significant digits.
pub fn write_two_body_csv(writer: impl Write, rows: &[TwoBodyRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["i", "p", "q", "u", "v", "value"])?;
    for r in rows {
        w.write_record([
            r.i.to_string(),
            r.p.to_string(),
            r.q.to_string(),
            r.u.to_string(),
            r.v.to_string(),
            format_sig(r.value),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Hamiltonian from a two-body table listing both members of each conjugate
/// pair (or only one).
pub fn hamiltonian_from_two_body(
    n_sp: usize,
    rows: &[TwoBodyRow],
    tol: f64,
) -> Result<SqHamiltonian> {
    let terms: Vec<Term> = rows
        .iter()
        .map(|r| Term::real(vec![r.p, r.q], vec![r.u, r.v], r.value))
        .collect();
    hermitize(n_sp, &fold_conjugates(&terms, tol)?)
}

/// Formats with 9 significant digits.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // Rounding may carry into a new digit (9.999999999 → 10.00000000).
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" {
            "0".to_string()
        } else {
            s
        }
    } else {
        format!("{x:.8e}")
    }
}

/// Reference spectrum row: `2J`, then energy / excitation / measured
/// excitation for the two isotopes (MeV).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub twice_j: i32,
    pub e_ca42: f64,
    pub eex_ca42: f64,
    pub expt_ca42: f64,
    pub e_ca46: f64,
    pub eex_ca46: f64,
    pub expt_ca46: f64,
}

pub fn parse_spectrum_csv(reader: impl Read) -> Result<Vec<SpectrumRow>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    Ok(rdr
        .deserialize()
        .collect::<std::result::Result<Vec<_>, _>>()?)
}
