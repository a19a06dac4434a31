mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Block-encoding verification and symmetry-adapted Krylov spectra for
/// second-quantized fermion Hamiltonians.
#[derive(Debug, Parser)]
#[command(name = "fermiwalk", version)]
struct Cli {
    /// Print machine-readable JSON on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the parallel stages (default: all cores).
    #[arg(long, global = true, env = "FERMIWALK_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the pairing plus quadrupole-quadrupole interaction of a valence
    /// space and write the Hamiltonian JSON and the two-body CSV.
    GenHamiltonian(GenArgs),
    /// Check the rescaled block of U_H against the full-CI matrix of a sector.
    VerifyEncoding(VerifyArgs),
    /// Run the Krylov solver over the sectors listed in a manifest.
    Solve(SolveArgs),
    /// Gate counts of a Hamiltonian family and fitted scaling exponents.
    GateReport(GateArgs),
    /// Dump the Chebyshev moments of a sector's pivot state.
    Moments(MomentsArgs),
}

#[derive(Debug, Args)]
struct HamiltonianInput {
    /// Hamiltonian JSON, or a two-body CSV (detected by the .csv extension).
    #[arg(long)]
    hamiltonian: PathBuf,
    /// Valence-space JSON supplying orbital 2m values (and the orbital count
    /// for CSV input). Defaults to the bundled 0f7/2 basis for CSV input.
    #[arg(long)]
    space: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SectorArgs {
    /// Number of particles.
    #[arg(long)]
    particles: u32,
    /// Twice the total M_J projection; omit for all projections.
    #[arg(long, allow_negative_numbers = true)]
    twice_mj: Option<i32>,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Valence-space JSON (default: bundled 0f7/2 basis).
    #[arg(long)]
    space: Option<PathBuf>,
    /// Model-parameter JSON (default: bundled calcium parameters).
    #[arg(long)]
    params: Option<PathBuf>,
    /// Override the pairing strength g (MeV).
    #[arg(long, allow_negative_numbers = true)]
    g: Option<f64>,
    /// Override the quadrupole coupling chi.
    #[arg(long, allow_negative_numbers = true)]
    chi: Option<f64>,
    /// Override the oscillator energy (MeV).
    #[arg(long)]
    hbar_omega: Option<f64>,
    /// Override the nucleon mass (MeV).
    #[arg(long)]
    m_n: Option<f64>,
    /// Directory receiving hamiltonian.json and two_body.csv.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: HamiltonianInput,
    #[command(flatten)]
    sector: SectorArgs,
    /// Largest accepted deviation (MeV).
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    /// Compile the circuit with this monomial's coefficient replaced.
    #[arg(long, requires = "corrupt_value")]
    corrupt_term: Option<usize>,
    /// Replacement coefficient for --corrupt-term.
    #[arg(long, requires = "corrupt_term", allow_negative_numbers = true)]
    corrupt_value: Option<f64>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Run manifest JSON.
    #[arg(long)]
    manifest: PathBuf,
    /// Output directory (overrides the manifest).
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Seed for shot sampling (overrides the manifest).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct GateArgs {
    /// Orbital counts of a generated pairing family.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Pairing strength of the generated family.
    #[arg(long, default_value_t = 1.0)]
    g: f64,
    /// Additional Hamiltonian JSON files to include.
    #[arg(long)]
    hamiltonian: Vec<PathBuf>,
    /// Write the per-Hamiltonian counts as CSV here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MomentsArgs {
    #[command(flatten)]
    input: HamiltonianInput,
    #[command(flatten)]
    sector: SectorArgs,
    /// Number of moments mu_0 .. mu_{count-1}.
    #[arg(long, default_value_t = 16)]
    count: usize,
    /// Pivot bitstring (orbital 0 first); defaults to the lowest diagonal.
    #[arg(long)]
    pivot: Option<String>,
    /// Use plain double precision instead of double-double.
    #[arg(long)]
    double: bool,
    /// Also estimate every moment with this many Hadamard-test shots.
    #[arg(long)]
    shots: Option<u64>,
    /// Seed for shot sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot configure {n} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::GenHamiltonian(a) => commands::gen_hamiltonian(a, cli.json),
        Command::VerifyEncoding(a) => commands::verify_encoding(a, cli.json),
        Command::Solve(a) => commands::solve(a, cli.json),
        Command::GateReport(a) => commands::gate_report(a, cli.json),
        Command::Moments(a) => commands::moments(a, cli.json),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
