use std::path::Path;

use anyhow::{Context, Result};
use fermiwalk::io::format_sig;
use fermiwalk::Complex64;
use serde::{Serialize, Serializer};

/// Float serialized with 9 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sig(pub f64);

impl Serialize for Sig {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(format_sig(self.0).parse().unwrap_or(self.0))
    }
}

impl std::fmt::Display for Sig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_sig(self.0))
    }
}

pub fn sigs(xs: &[f64]) -> Vec<Sig> {
    xs.iter().copied().map(Sig).collect()
}

/// `[re, im]` pair at 9 significant digits.
pub fn pair(z: Complex64) -> [Sig; 2] {
    [Sig(z.re), Sig(z.im)]
}

/// `J` label of the lowest state in a `2M_J` sector.
pub fn j_label(twice_mj: Option<i32>) -> String {
    match twice_mj {
        None => "any".into(),
        Some(m) if m % 2 == 0 => (m.abs() / 2).to_string(),
        Some(m) => format!("{}/2", m.abs()),
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fermiwalk::io::write_json(path, value).with_context(|| format!("writing {}", path.display()))
}

pub fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

pub fn csv_writer(path: &Path) -> Result<csv::Writer<std::fs::File>> {
    csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))
}
