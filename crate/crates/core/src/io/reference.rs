//! Bundled reference data for the calcium `0f_{7/2}` calculation.

use super::{parse_spectrum_csv, parse_two_body_csv, SpectrumRow, TwoBodyRow};
use crate::nuclear::{ModelParams, SpOrbital};

/// Published two-body table (both members of each conjugate pair).
pub const TWO_BODY_CSV: &str = include_str!("../../data/two_body_0f7half.csv");
/// Published low-lying spectra of the two calcium isotopes.
pub const SPECTRUM_CSV: &str = include_str!("../../data/spectrum_calcium.csv");
pub const SP_BASIS_JSON: &str = include_str!("../../data/sp_basis_0f7half.json");
pub const MODEL_PARAMS_JSON: &str = include_str!("../../data/model_params.json");

/// Valence-nucleon counts of the two isotopes above the inert core.
pub const CA42_PARTICLES: u32 = 2;
pub const CA46_PARTICLES: u32 = 6;

pub fn two_body_table() -> Vec<TwoBodyRow> {
    parse_two_body_csv(TWO_BODY_CSV.as_bytes()).expect("bundled two-body table parses")
}

pub fn spectrum_table() -> Vec<SpectrumRow> {
    parse_spectrum_csv(SPECTRUM_CSV.as_bytes()).expect("bundled spectrum table parses")
}

pub fn sp_basis() -> Vec<SpOrbital> {
    serde_json::from_str(SP_BASIS_JSON).expect("bundled basis parses")
}

pub fn model_params() -> ModelParams {
    serde_json::from_str(MODEL_PARAMS_JSON).expect("bundled parameters parse")
}

/// `2m` of every orbital of the bundled basis.
pub fn sp_twice_m() -> Vec<i32> {
    sp_basis().iter().map(|o| o.twice_m).collect()
}
