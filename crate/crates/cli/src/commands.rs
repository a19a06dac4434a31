use std::fs::File;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use fermiwalk::encoding::{gate_count_report, pairing_family, verify_block_encoding, WalkOperator};
use fermiwalk::fock::FockState;
use fermiwalk::io::{self, format_sig, reference, HamiltonianFile, TermRecord};
use fermiwalk::krylov::{
    compute_moments, hadamard_test_estimate, select_pivot, solve_sector_spectrum, HadamardEstimate,
    KrylovConfig, DEFAULT_TOLERANCE, DEFAULT_XI,
};
use fermiwalk::nuclear::valence_terms;
use fermiwalk::precision::{to_c64, Dd};
use fermiwalk::statevector::GateCounts;
use fermiwalk::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::input::{
    create_dir, guard_outputs, load_hamiltonian, load_space, resolve, resolve_sector, sector_basis,
};
use crate::output::{csv_writer, j_label, pair, print_json, sigs, write_json, Sig};
use crate::{GateArgs, GenArgs, MomentsArgs, SolveArgs, VerifyArgs};

#[derive(Serialize)]
struct GenReport {
    n_sp: usize,
    rows: usize,
    d: usize,
    d_pad: usize,
    lambda: Sig,
    g: Sig,
    chi: Sig,
    hbar_omega: Sig,
    m_n: Sig,
    hamiltonian: PathBuf,
    two_body: PathBuf,
}

pub fn gen_hamiltonian(a: &GenArgs, json: bool) -> Result<bool> {
    let orbitals = load_space(a.space.as_deref())?;
    let mut params = match &a.params {
        Some(p) => io::read_model_params(p).context("reading model parameters")?,
        None => reference::model_params(),
    };
    params.g = a.g.unwrap_or(params.g);
    params.chi = a.chi.unwrap_or(params.chi);
    params.hbar_omega = a.hbar_omega.unwrap_or(params.hbar_omega);
    params.m_n = a.m_n.unwrap_or(params.m_n);
    let terms = valence_terms(&orbitals, &params)?;

    create_dir(&a.out_dir)?;
    let json_path = a.out_dir.join("hamiltonian.json");
    let csv_path = a.out_dir.join("two_body.csv");
    let inputs: Vec<&Path> = a
        .space
        .iter()
        .chain(&a.params)
        .map(|p| p.as_path())
        .collect();
    guard_outputs(&[&json_path, &csv_path], &inputs)?;

    let csv_file =
        File::create(&csv_path).with_context(|| format!("writing {}", csv_path.display()))?;
    io::write_two_body_csv(csv_file, &io::two_body_rows(&terms))
        .with_context(|| format!("writing {}", csv_path.display()))?;
    let file = HamiltonianFile {
        n_sp: orbitals.len(),
        terms: terms
            .iter()
            .filter(|&&(p, q, u, v, _)| (p, q) <= (u, v))
            .map(|&(p, q, u, v, value)| TermRecord {
                q: vec![p, q],
                p: vec![u, v],
                re: value,
                im: 0.0,
            })
            .collect(),
        twice_m: Some(orbitals.iter().map(|o| o.twice_m).collect()),
    };
    write_json(&json_path, &file)?;

    let (d, d_pad, lambda) = if file.terms.is_empty() {
        (0, 0, 0.0)
    } else {
        let h = file.to_hamiltonian()?;
        (h.len(), h.d_pad(), h.lambda())
    };
    let report = GenReport {
        n_sp: orbitals.len(),
        rows: terms.len(),
        d,
        d_pad,
        lambda: Sig(lambda),
        g: Sig(params.g),
        chi: Sig(params.chi),
        hbar_omega: Sig(params.hbar_omega),
        m_n: Sig(params.m_n),
        hamiltonian: json_path,
        two_body: csv_path,
    };
    if json {
        print_json(&report)?;
    } else {
        println!("orbitals      {}", report.n_sp);
        println!("two-body rows {}", report.rows);
        println!("D             {}", report.d);
        println!("D_pad         {}", report.d_pad);
        println!("Lambda        {}", report.lambda);
        println!("wrote {}", report.hamiltonian.display());
        println!("wrote {}", report.two_body.display());
    }
    Ok(true)
}

#[derive(Serialize)]
struct RegisterRow {
    name: &'static str,
    start: usize,
    len: usize,
}

#[derive(Serialize)]
struct CircuitCounts {
    forward: GateCounts,
    backward: GateCounts,
    swap: GateCounts,
    walk: GateCounts,
}

#[derive(Serialize)]
struct WorstPair {
    g_index: usize,
    f_index: usize,
    g: String,
    f: String,
}

#[derive(Serialize)]
struct VerifyReport {
    d: usize,
    d_pad: usize,
    lambda: Sig,
    scale: Sig,
    qubits: usize,
    layout: Vec<RegisterRow>,
    gates: CircuitCounts,
    particles: u32,
    twice_mj: Option<i32>,
    dimension: usize,
    corrupted_term: Option<usize>,
    max_deviation: Sig,
    worst: Option<WorstPair>,
    tolerance: Sig,
    pass: bool,
}

pub fn verify_encoding(a: &VerifyArgs, json: bool) -> Result<bool> {
    let loaded = load_hamiltonian(&a.input.hamiltonian, a.input.space.as_deref())?;
    let h = &loaded.h;
    let (sector, proj) = resolve_sector(&loaded, &a.sector)?;
    let basis = sector_basis(h, sector, &proj)?;
    let compiled = match (a.corrupt_term, a.corrupt_value) {
        (Some(j), Some(v)) => {
            if j >= h.len() {
                bail!(
                    "--corrupt-term {j} is out of range; the Hamiltonian has {} monomials",
                    h.len()
                );
            }
            h.with_coefficient(j, Complex64::new(v, 0.0))?
        }
        _ => h.clone(),
    };
    let walk = WalkOperator::new(&compiled)?;
    let check = verify_block_encoding(&walk, h, &basis);
    let pass = check.max_deviation <= a.tolerance;
    let layout = walk.layout();
    let report = VerifyReport {
        d: h.len(),
        d_pad: h.d_pad(),
        lambda: Sig(h.lambda()),
        scale: Sig(h.scale()),
        qubits: layout.width(),
        layout: layout
            .registers()
            .into_iter()
            .map(|(name, span)| RegisterRow {
                name,
                start: span.start,
                len: span.len,
            })
            .collect(),
        gates: CircuitCounts {
            forward: walk.forward().counts(),
            backward: walk.backward().counts(),
            swap: walk.swap().counts(),
            walk: walk.counts(),
        },
        particles: sector.particle_number,
        twice_mj: sector.twice_mj,
        dimension: basis.len(),
        corrupted_term: a.corrupt_term,
        max_deviation: Sig(check.max_deviation),
        worst: check.worst.map(|(g, f)| WorstPair {
            g_index: g,
            f_index: f,
            g: basis[g].to_string(),
            f: basis[f].to_string(),
        }),
        tolerance: Sig(a.tolerance),
        pass,
    };
    if json {
        print_json(&report)?;
    } else {
        println!("D             {}", report.d);
        println!("D_pad         {}", report.d_pad);
        println!("Lambda        {}", report.lambda);
        println!("D_pad*Lambda  {}", report.scale);
        println!("qubits        {}", report.qubits);
        let regs: Vec<String> = report
            .layout
            .iter()
            .map(|r| format!("{}[{}..{})", r.name, r.start, r.start + r.len))
            .collect();
        println!("layout        {}", regs.join(" "));
        let c = &report.gates.walk;
        println!(
            "U_H gates     total {} (x {}, cx {}, mcx {}, z {}, phase {}, ry {}, h {}, swap {}), elementary {}",
            c.total(),
            c.x,
            c.cx,
            c.mcx,
            c.z,
            c.phase,
            c.ry,
            c.h,
            c.swap,
            c.elementary
        );
        println!(
            "sector        A={} 2M_J={} dimension {}",
            report.particles,
            j_mj(report.twice_mj),
            report.dimension
        );
        println!("max deviation {}", report.max_deviation);
        if pass {
            println!("PASS");
        } else {
            let w = report
                .worst
                .as_ref()
                .expect("a failing check has a located pair");
            println!(
                "FAIL at (G, F) = ({}, {}) = ({}, {})",
                w.g_index, w.f_index, w.g, w.f
            );
        }
    }
    Ok(pass)
}

fn j_mj(twice_mj: Option<i32>) -> String {
    twice_mj.map_or_else(|| "any".into(), |m| m.to_string())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    hamiltonian: PathBuf,
    #[serde(default)]
    space: Option<PathBuf>,
    particles: u32,
    /// `2M_J` values; absent means one sector over all projections.
    #[serde(default)]
    sectors: Option<Vec<i32>>,
    #[serde(default)]
    krylov: KrylovSettings,
    #[serde(default)]
    shots: Option<ShotSettings>,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct KrylovSettings {
    fixed_k: Option<usize>,
    k_max: Option<usize>,
    tolerance: f64,
    xi: f64,
    extended_precision: bool,
}

impl Default for KrylovSettings {
    fn default() -> Self {
        Self {
            fixed_k: None,
            k_max: None,
            tolerance: DEFAULT_TOLERANCE,
            xi: DEFAULT_XI,
            extended_precision: true,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShotSettings {
    count: u64,
    #[serde(default = "default_orders")]
    orders: Vec<usize>,
}

fn default_orders() -> Vec<usize> {
    vec![1, 2]
}

#[derive(Serialize)]
struct HadamardRow {
    order: usize,
    shots: u64,
    estimate: [Sig; 2],
    stderr: [Sig; 2],
    exact: [Sig; 2],
}

impl From<HadamardEstimate> for HadamardRow {
    fn from(e: HadamardEstimate) -> Self {
        Self {
            order: e.order,
            shots: e.shots,
            estimate: [Sig(e.re), Sig(e.im)],
            stderr: [Sig(e.re_stderr), Sig(e.im_stderr)],
            exact: pair(e.exact),
        }
    }
}

#[derive(Serialize)]
struct SolvedSector {
    dimension: usize,
    pivot: String,
    k: usize,
    converged: bool,
    retained: usize,
    energies_mev: Vec<Sig>,
    energies_scaled: Vec<Sig>,
    excitation_mev: Sig,
    trace: Vec<(usize, Sig)>,
    moments: Vec<[Sig; 2]>,
    max_support: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    hadamard: Vec<HadamardRow>,
}

#[derive(Serialize)]
struct SectorReport {
    twice_mj: Option<i32>,
    j: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<SolvedSector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize)]
struct SolveReport {
    hamiltonian: String,
    particles: u32,
    d: usize,
    d_pad: usize,
    lambda: Sig,
    scale: Sig,
    xi: Sig,
    seed: u64,
    ground_energy_mev: Option<Sig>,
    sectors: Vec<SectorReport>,
}

#[derive(Serialize)]
struct Timing {
    solve_seconds: f64,
    hadamard_seconds: f64,
    total_seconds: f64,
}

pub fn solve(a: &SolveArgs, json: bool) -> Result<bool> {
    let start = Instant::now();
    let text = std::fs::read_to_string(&a.manifest)
        .with_context(|| format!("reading manifest {}", a.manifest.display()))?;
    let manifest: Manifest = serde_json::from_str(&text)
        .with_context(|| format!("parsing manifest {}", a.manifest.display()))?;
    let base = a.manifest.parent().unwrap_or(Path::new(""));
    let rel = |p: &Path| {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            base.join(p)
        }
    };
    let ham_path = rel(&manifest.hamiltonian);
    let space_path = manifest.space.as_deref().map(rel);
    let out_dir = match (&a.out_dir, &manifest.output_dir) {
        (Some(d), _) => d.clone(),
        (None, Some(d)) => rel(d),
        (None, None) => base.to_path_buf(),
    };
    let seed = a.seed.unwrap_or(manifest.seed);

    create_dir(&out_dir)?;
    let result_path = out_dir.join("result.json");
    let csv_path = out_dir.join("spectrum.csv");
    let timing_path = out_dir.join("timing.json");
    let mut inputs = vec![a.manifest.as_path(), ham_path.as_path()];
    inputs.extend(space_path.as_deref());
    guard_outputs(&[&result_path, &csv_path, &timing_path], &inputs)?;

    let loaded = load_hamiltonian(&ham_path, space_path.as_deref())?;
    let h = &loaded.h;
    let requested: Vec<Option<i32>> = match &manifest.sectors {
        Some(list) if list.is_empty() => bail!("manifest lists no sectors"),
        Some(list) => list.iter().map(|&m| Some(m)).collect(),
        None => vec![None],
    };
    let mut sectors = Vec::with_capacity(requested.len());
    let mut proj = Vec::new();
    for &m in &requested {
        let (s, p) = resolve(&loaded, manifest.particles, m)?;
        sectors.push(s);
        proj = p;
    }
    let k = &manifest.krylov;
    let cfg = KrylovConfig {
        xi: k.xi,
        tolerance: k.tolerance,
        fixed_k: k.fixed_k,
        k_max: k.k_max,
        extended_precision: k.extended_precision,
    };

    let solve_start = Instant::now();
    let spectrum = solve_sector_spectrum(h, &sectors, &proj, &cfg)?;
    let solve_seconds = solve_start.elapsed().as_secs_f64();

    let hadamard_start = Instant::now();
    let walk = match &manifest.shots {
        Some(_) => Some(WalkOperator::new(h)?),
        None => None,
    };
    let ground = spectrum.ground_energy();
    let mut reports = Vec::with_capacity(spectrum.sectors.len());
    for (i, outcome) in spectrum.sectors.iter().enumerate() {
        let result = match &outcome.result {
            Some(r) => {
                let mut hadamard = Vec::new();
                if let (Some(shots), Some(walk)) = (&manifest.shots, &walk) {
                    let pivot = FockState::parse(&r.pivot)?;
                    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                    for &order in &shots.orders {
                        hadamard.push(
                            hadamard_test_estimate(walk, &pivot, order, shots.count, &mut rng)?
                                .into(),
                        );
                    }
                }
                Some(SolvedSector {
                    dimension: r.dimension,
                    pivot: r.pivot.clone(),
                    k: r.k,
                    converged: r.converged,
                    retained: r.retained,
                    energies_mev: sigs(&r.eigenvalues),
                    energies_scaled: sigs(&r.eigenvalues_scaled),
                    excitation_mev: Sig(
                        r.lowest() - ground.expect("a solved sector sets the ground energy")
                    ),
                    trace: r.trace.iter().map(|&(k, e)| (k, Sig(e))).collect(),
                    moments: r.moments.iter().copied().map(pair).collect(),
                    max_support: r.max_support,
                    hadamard,
                })
            }
            None => None,
        };
        reports.push(SectorReport {
            twice_mj: outcome.twice_mj,
            j: j_label(outcome.twice_mj),
            result,
            error: outcome.error.clone(),
        });
    }
    let hadamard_seconds = hadamard_start.elapsed().as_secs_f64();

    let report = SolveReport {
        hamiltonian: manifest.hamiltonian.display().to_string(),
        particles: manifest.particles,
        d: spectrum.d,
        d_pad: spectrum.d_pad,
        lambda: Sig(spectrum.lambda),
        scale: Sig(spectrum.scale),
        xi: Sig(cfg.xi),
        seed,
        ground_energy_mev: ground.map(Sig),
        sectors: reports,
    };
    write_json(&result_path, &report)?;
    let mut w = csv_writer(&csv_path)?;
    w.write_record(["J", "E_MeV", "Eex_MeV"])?;
    for s in &report.sectors {
        if let Some(r) = &s.result {
            w.write_record([
                s.j.clone(),
                r.energies_mev[0].to_string(),
                r.excitation_mev.to_string(),
            ])?;
        }
    }
    w.flush()?;
    write_json(
        &timing_path,
        &Timing {
            solve_seconds,
            hadamard_seconds,
            total_seconds: start.elapsed().as_secs_f64(),
        },
    )?;

    let any_solved = ground.is_some();
    if json {
        print_json(&report)?;
    } else {
        println!(
            "D {}  D_pad {}  Lambda {}",
            report.d, report.d_pad, report.lambda
        );
        println!(
            "{:>5} {:>14} {:>14} {:>4} {:>9}",
            "J", "E_MeV", "Eex_MeV", "K", "converged"
        );
        for s in &report.sectors {
            match (&s.result, &s.error) {
                (Some(r), _) => println!(
                    "{:>5} {:>14} {:>14} {:>4} {:>9}",
                    s.j,
                    r.energies_mev[0].to_string(),
                    r.excitation_mev.to_string(),
                    r.k,
                    if r.converged { "yes" } else { "NO" }
                ),
                (None, e) => println!(
                    "{:>5} failed: {}",
                    s.j,
                    e.as_deref().unwrap_or("unknown error")
                ),
            }
        }
        println!("wrote {}", result_path.display());
        println!("wrote {}", csv_path.display());
        println!("wrote {}", timing_path.display());
    }
    if !any_solved {
        eprintln!("error: every sector failed");
    }
    Ok(any_solved)
}

#[derive(Serialize)]
struct GateFits {
    oracle_f_vs_d: Option<Sig>,
    oracle_h_vs_d_nsp: Option<Sig>,
    walk_vs_nsp: Option<Sig>,
    d_vs_nsp: Option<Sig>,
}

#[derive(Serialize)]
struct GateReportOut {
    rows: Vec<fermiwalk::encoding::GateReportRow>,
    fits: GateFits,
}

pub fn gate_report(a: &GateArgs, json: bool) -> Result<bool> {
    let mut family = pairing_family(&a.sizes, a.g)?;
    for p in &a.hamiltonian {
        family.push(load_hamiltonian(p, None)?.h);
    }
    if family.is_empty() {
        bail!("empty Hamiltonian family: pass --sizes or --hamiltonian");
    }
    if let Some(out) = &a.out {
        let inputs: Vec<&Path> = a.hamiltonian.iter().map(|p| p.as_path()).collect();
        guard_outputs(&[out], &inputs)?;
    }
    let report = gate_count_report(&family)?;
    if let Some(out) = &a.out {
        let mut w = csv_writer(out)?;
        w.write_record([
            "n_sp",
            "d",
            "d_pad",
            "qubits",
            "oracle_f_elementary",
            "oracle_h_elementary",
            "walk_elementary",
            "walk_multi_controlled",
            "walk_gates",
        ])?;
        for r in &report.rows {
            w.write_record([
                r.n_sp.to_string(),
                r.d.to_string(),
                r.d_pad.to_string(),
                r.qubits.to_string(),
                r.oracle_f.elementary.to_string(),
                r.oracle_h.elementary.to_string(),
                r.walk.elementary.to_string(),
                r.walk.multi_controlled.to_string(),
                r.walk.total().to_string(),
            ])?;
        }
        w.flush()?;
    }
    let fits = GateFits {
        oracle_f_vs_d: report.oracle_f_vs_d.map(Sig),
        oracle_h_vs_d_nsp: report.oracle_h_vs_d_nsp.map(Sig),
        walk_vs_nsp: report.walk_vs_nsp.map(Sig),
        d_vs_nsp: report.d_vs_nsp.map(Sig),
    };
    if json {
        print_json(&GateReportOut {
            rows: report.rows,
            fits,
        })?;
    } else {
        println!(
            "{:>5} {:>6} {:>6} {:>7} {:>10} {:>10} {:>10}",
            "N_sp", "D", "D_pad", "qubits", "O_F", "O_H", "U_H"
        );
        for r in &report.rows {
            println!(
                "{:>5} {:>6} {:>6} {:>7} {:>10} {:>10} {:>10}",
                r.n_sp,
                r.d,
                r.d_pad,
                r.qubits,
                r.oracle_f.elementary,
                r.oracle_h.elementary,
                r.walk.elementary
            );
        }
        let show = |label: &str, fit: Option<Sig>| match fit {
            Some(x) => println!("{label} exponent {x}"),
            None => println!("{label} exponent: no fit (needs two distinct sizes)"),
        };
        show("O_F vs D        ", fits.oracle_f_vs_d);
        show("O_H vs D*N_sp   ", fits.oracle_h_vs_d_nsp);
        show("U_H vs N_sp     ", fits.walk_vs_nsp);
        show("D vs N_sp       ", fits.d_vs_nsp);
        if let Some(out) = &a.out {
            println!("wrote {}", out.display());
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct MomentsReport {
    particles: u32,
    twice_mj: Option<i32>,
    dimension: usize,
    pivot: String,
    scale: Sig,
    precision: &'static str,
    moments: Vec<[Sig; 2]>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    hadamard: Vec<HadamardRow>,
}

pub fn moments(a: &MomentsArgs, json: bool) -> Result<bool> {
    if a.count == 0 {
        bail!("--count must be at least 1");
    }
    let loaded = load_hamiltonian(&a.input.hamiltonian, a.input.space.as_deref())?;
    let h = &loaded.h;
    let (sector, proj) = resolve_sector(&loaded, &a.sector)?;
    let basis = sector_basis(h, sector, &proj)?;
    let pivot = match &a.pivot {
        Some(text) => {
            let f = FockState::parse(text)?;
            if f.n_sp() != h.n_sp() || !sector.contains(&f, &proj) {
                bail!("pivot {text} is outside the requested sector");
            }
            f
        }
        None => basis[select_pivot(h, &basis).expect("basis is non-empty")],
    };
    let walk = WalkOperator::new(h)?;
    let mu: Vec<Complex64> = if a.double {
        compute_moments::<f64>(&walk, &pivot, a.count)
    } else {
        compute_moments::<Dd>(&walk, &pivot, a.count)
            .into_iter()
            .map(to_c64)
            .collect()
    };
    let mut hadamard = Vec::new();
    if let Some(shots) = a.shots {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        for order in 0..a.count {
            hadamard.push(hadamard_test_estimate(&walk, &pivot, order, shots, &mut rng)?.into());
        }
    }
    let report = MomentsReport {
        particles: sector.particle_number,
        twice_mj: sector.twice_mj,
        dimension: basis.len(),
        pivot: pivot.to_string(),
        scale: Sig(h.scale()),
        precision: if a.double { "double" } else { "double-double" },
        moments: mu.iter().copied().map(pair).collect(),
        hadamard,
    };
    if json {
        print_json(&report)?;
    } else {
        println!(
            "pivot {}  dimension {}  D_pad*Lambda {}",
            report.pivot, report.dimension, report.scale
        );
        for (k, z) in mu.iter().enumerate() {
            let mut line = format!("{k:>4} {:>18} {:>18}", format_sig(z.re), format_sig(z.im));
            if let Some(e) = report.hadamard.get(k) {
                line.push_str(&format!("  shots {} ± {}", e.estimate[0], e.stderr[0]));
            }
            println!("{line}");
        }
    }
    Ok(true)
}
