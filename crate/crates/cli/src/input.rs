use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use fermiwalk::fock::{enumerate_sector, FockState, SqHamiltonian, SymmetrySector};
use fermiwalk::io::{self, reference, TABLE_FOLD_TOLERANCE};
use fermiwalk::nuclear::SpOrbital;

use crate::SectorArgs;

pub struct LoadedHamiltonian {
    pub h: SqHamiltonian,
    /// `2m` of every orbital, when known.
    pub twice_m: Option<Vec<i32>>,
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

pub fn load_space(path: Option<&Path>) -> Result<Vec<SpOrbital>> {
    match path {
        Some(p) => io::read_valence_space(p).context("reading valence space"),
        None => Ok(reference::sp_basis()),
    }
}

pub fn load_hamiltonian(path: &Path, space: Option<&Path>) -> Result<LoadedHamiltonian> {
    let ctx = || format!("reading Hamiltonian {}", path.display());
    if is_csv(path) {
        let orbitals = load_space(space)?;
        let rows = io::read_two_body_csv(path).with_context(ctx)?;
        let h = io::hamiltonian_from_two_body(orbitals.len(), &rows, TABLE_FOLD_TOLERANCE)
            .with_context(ctx)?;
        return Ok(LoadedHamiltonian {
            h,
            twice_m: Some(orbitals.iter().map(|o| o.twice_m).collect()),
        });
    }
    let file = io::read_hamiltonian_file(path).context("reading Hamiltonian")?;
    let h = file.to_hamiltonian().with_context(ctx)?;
    let twice_m = match space {
        Some(p) => Some(load_space(Some(p))?.iter().map(|o| o.twice_m).collect()),
        None => file.twice_m,
    };
    if let Some(m) = &twice_m {
        if m.len() != h.n_sp() {
            bail!(
                "{} orbital projections given for {} orbitals",
                m.len(),
                h.n_sp()
            );
        }
    }
    Ok(LoadedHamiltonian { h, twice_m })
}

/// The requested sector and the orbital projections used to filter it.
pub fn resolve_sector(
    loaded: &LoadedHamiltonian,
    args: &SectorArgs,
) -> Result<(SymmetrySector, Vec<i32>)> {
    resolve(loaded, args.particles, args.twice_mj)
}

pub fn resolve(
    loaded: &LoadedHamiltonian,
    particles: u32,
    twice_mj: Option<i32>,
) -> Result<(SymmetrySector, Vec<i32>)> {
    let n_sp = loaded.h.n_sp();
    if particles as usize > n_sp {
        bail!("{particles} particles do not fit in {n_sp} orbitals");
    }
    match (twice_mj, &loaded.twice_m) {
        (Some(m), Some(proj)) => Ok((SymmetrySector::new(particles, m), proj.clone())),
        (Some(_), None) => Err(anyhow!(
            "the Hamiltonian file has no orbital projections; pass --space to select an M_J sector"
        )),
        (None, proj) => Ok((
            SymmetrySector::any_mj(particles),
            proj.clone().unwrap_or_else(|| vec![0; n_sp]),
        )),
    }
}

pub fn sector_basis(
    h: &SqHamiltonian,
    sector: SymmetrySector,
    twice_m: &[i32],
) -> Result<Vec<FockState>> {
    let basis = enumerate_sector(h.n_sp(), sector, twice_m);
    if basis.is_empty() {
        bail!("the requested symmetry sector is empty");
    }
    Ok(basis)
}

fn normalized(path: &Path) -> PathBuf {
    if let Ok(p) = path.canonicalize() {
        return p;
    }
    // Outputs usually do not exist yet; resolve their directory instead.
    match (path.parent(), path.file_name()) {
        (Some(dir), Some(name)) => {
            let dir = if dir.as_os_str().is_empty() {
                Path::new(".")
            } else {
                dir
            };
            dir.canonicalize()
                .map(|d| d.join(name))
                .unwrap_or_else(|_| path.to_path_buf())
        }
        _ => path.to_path_buf(),
    }
}

/// Refuses to write any output onto one of the inputs.
pub fn guard_outputs(outputs: &[&Path], inputs: &[&Path]) -> Result<()> {
    for out in outputs {
        let o = normalized(out);
        for inp in inputs {
            if o == normalized(inp) {
                bail!(
                    "output {} would overwrite input {}",
                    out.display(),
                    inp.display()
                );
            }
        }
    }
    Ok(())
}

pub fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))
}
