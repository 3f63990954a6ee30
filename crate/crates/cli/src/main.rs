//! `tropcount`: exact counts of rational tropical curves with classical and
//! refined multiplicities.
//!
//! Exit codes: 0 success, 1 parse or validation failure, 2 generic
//! instances exhausted, 3 invariance violation, 4 sign-compatibility
//! hypothesis violation.

mod problem_file;
mod regression;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::Zero;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use problem_file::{Loaded, LoadedKind};
use tropcount_core::evaluation::{OmegaProblem, Problem};
use tropcount_core::group_ring::GroupRing;
use tropcount_core::lattice::LatticeVector;
use tropcount_core::moduli::{enumerate_trivalent, enumerate_walls};
use tropcount_core::multiplicity::{
    complex_mult_det, complex_mult_sink, omega_leaves, pluecker_leaves, refined_mult,
};
use tropcount_core::solver::{
    check_continuity, check_wall_identities, greg_components, invariant_general, invariant_omega,
    k_omega, q1_limit_check, sample_delta, InvariantReport, SolverConfig,
};
use tropcount_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "tropcount",
    version,
    about = "Refined counts of rational tropical curves"
)]
struct Cli {
    /// Worker threads for the per-type solves (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the combinatorial types and walls of the problem's degree.
    Enumerate { file: PathBuf },
    /// Compute the refined invariant of the problem.
    Invariant {
        file: PathBuf,
        /// Override the seed from the file.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the trial count from the file.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run one of the verification suites on the problem.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        which: CheckKind,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Recompute the built-in worked examples and compare.
    PaperRegression {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    MachineReadable,
}

#[derive(Copy, Clone, ValueEnum)]
enum CheckKind {
    Walls,
    Sink,
    Continuity,
    Q1,
}

enum CliError {
    /// Unreadable or invalid input file or problem data.
    Parse(String),
    /// An error surfaced by the solver.
    Core(CoreError),
    /// A verification suite found a counterexample.
    CheckFailed(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Core(CoreError::NonGenericExhausted(_)) => 2,
            CliError::Core(CoreError::InvarianceViolation(_))
            | CliError::Core(CoreError::WallIdentity(_)) => 3,
            CliError::Core(CoreError::HypothesisViolation(_)) => 4,
            CliError::Core(_) => 1,
            CliError::CheckFailed(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Parse(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
            CliError::CheckFailed(m) => m.clone(),
        }
    }
}

fn main() -> ExitCode {
    // die quietly when the downstream pipe closes early (e.g. `... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Enumerate { file } => cmd_enumerate(&load(&file)?),
        Command::Invariant {
            file,
            seed,
            trials,
            format,
        } => {
            let mut loaded = load(&file)?;
            if let Some(s) = seed {
                loaded.seed = s;
            }
            if let Some(t) = trials {
                loaded.trials = t;
            }
            cmd_invariant(&loaded, format)
        }
        Command::Check { file, which, seed } => {
            let mut loaded = load(&file)?;
            if let Some(s) = seed {
                loaded.seed = s;
            }
            cmd_check(&loaded, which)
        }
        Command::PaperRegression { seed } => cmd_paper_regression(seed),
    }
}

fn load(path: &PathBuf) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    problem_file::parse(&text).map_err(CliError::Parse)
}

fn config_of(loaded: &Loaded) -> SolverConfig {
    SolverConfig {
        trials: loaded.trials,
        seed: loaded.seed,
        max_resamples: 64,
    }
}

fn deltas_of(loaded: &Loaded, count: usize) -> Vec<LatticeVector> {
    match &loaded.delta {
        Some(d) => vec![d.clone()],
        None => {
            let mut rng = ChaCha20Rng::seed_from_u64(loaded.seed ^ 0xde17a);
            (0..count)
                .map(|_| sample_delta(&loaded.degree, &loaded.omega, loaded.e0, &mut rng))
                .collect()
        }
    }
}

fn cmd_enumerate(loaded: &Loaded) -> Result<(), CliError> {
    let degree = &loaded.degree;
    let types = enumerate_trivalent(degree.len())?;
    println!(
        "degree with {} ends in rank {}; moduli dimension {}",
        degree.len(),
        degree.rank(),
        degree.moduli_dim()
    );
    println!("{} trivalent combinatorial types:", types.len());
    for t in &types {
        println!("  {}", t.display_name(Some(degree)));
    }
    let walls = enumerate_walls(degree.len())?;
    println!("{} walls:", walls.len());
    for w in &walls {
        let resolved: Vec<String> = w
            .resolutions()
            .iter()
            .map(|(t, _)| t.display_name(Some(degree)))
            .collect();
        println!(
            "  {}  ->  {}",
            w.tree().display_name(Some(degree)),
            resolved.join(", ")
        );
    }
    let k = k_omega(degree, &loaded.omega);
    println!("K(omega) has rank {}", k.rank());
    for row in k.basis_rows() {
        let printable: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        println!("  [{}]", printable.join(", "));
    }
    // components of the nonzero-multiplicity graph: reported, not asserted
    let ring = GroupRing::new(degree.rank(), k);
    let nonzero: Vec<bool> = match &loaded.kind {
        LoadedKind::General(p) => {
            let wrapped = Problem::General(p.clone());
            types
                .iter()
                .map(|t| !complex_mult_det(t, &wrapped).is_zero())
                .collect()
        }
        LoadedKind::Omega => types
            .iter()
            .map(|t| {
                refined_mult(t, degree, &loaded.omega, &ring)
                    .map(|b| !b.is_zero())
                    .unwrap_or(false)
            })
            .collect(),
    };
    let comps = greg_components(&types, &nonzero);
    println!(
        "nonzero-multiplicity graph: {} node(s) in {} component(s)",
        nonzero.iter().filter(|&&b| b).count(),
        comps.len()
    );
    Ok(())
}

fn print_report(report: &InvariantReport, format: Format) {
    for (key, value) in &report.metadata {
        println!("# {key}: {value}");
    }
    if !report.k_basis.is_empty() {
        let rows: Vec<String> = report
            .k_basis
            .iter()
            .map(|r| {
                let cs: Vec<String> = r.iter().map(|c| c.to_string()).collect();
                format!("[{}]", cs.join(", "))
            })
            .collect();
        println!("# K basis: {}", rows.join(" "));
    }
    if report.ring.group().has_torsion() {
        println!("# warning: K is not saturated; torsion residues are kept in the exponents");
    }
    for (i, trial) in report.trials.iter().enumerate() {
        let delta = trial
            .delta
            .as_ref()
            .map(|d| {
                let cs: Vec<String> = d.iter().map(|c| c.to_string()).collect();
                format!(" delta=[{}]", cs.join(","))
            })
            .unwrap_or_default();
        println!(
            "# trial {}{delta}: {} solution(s) [{}], {} resample(s)",
            i + 1,
            trial.solution_names.len(),
            trial.solution_names.join(", "),
            trial.rejected_samples
        );
    }
    if let Some(eps) = &report.epsilon {
        let printable: Vec<String> = eps
            .iter()
            .map(|(name, e)| format!("{name}:{}", if *e > 0 { "+" } else { "-" }))
            .collect();
        println!("# epsilon: {}", printable.join(" "));
    }
    match format {
        Format::Text => println!("{}", report.printed()),
        Format::MachineReadable => print!("{}", report.ring.machine_print(&report.polynomial)),
    }
}

fn cmd_invariant(loaded: &Loaded, format: Format) -> Result<(), CliError> {
    let config = config_of(loaded);
    let report = match &loaded.kind {
        LoadedKind::Omega => invariant_omega(
            &loaded.degree,
            &loaded.omega,
            loaded.e0,
            &deltas_of(loaded, 3),
            &loaded.phi,
            &config,
        )?,
        LoadedKind::General(p) => {
            let delta = deltas_of(loaded, 1).remove(0);
            invariant_general(p, &loaded.omega, loaded.e0, &delta, &config)?
        }
    };
    print_report(&report, format);
    Ok(())
}

fn cmd_check(loaded: &Loaded, which: CheckKind) -> Result<(), CliError> {
    let degree = &loaded.degree;
    let config = config_of(loaded);
    match which {
        CheckKind::Walls => {
            let delta = deltas_of(loaded, 1).remove(0);
            let sign_side = OmegaProblem::new(
                degree.clone(),
                loaded.omega.clone(),
                loaded.e0,
                delta,
                loaded.phi.clone(),
            )?;
            let ring = GroupRing::new(degree.rank(), k_omega(degree, &loaded.omega));
            let problem = match &loaded.kind {
                LoadedKind::Omega => Problem::Omega(sign_side.clone()),
                LoadedKind::General(p) => Problem::General(p.clone()),
            };
            let report = check_wall_identities(&problem, &sign_side, &ring)?;
            println!(
                "walls: PASS ({} wall(s), {} with a vanishing side)",
                report.walls_checked, report.degenerate_walls
            );
        }
        CheckKind::Sink => {
            let types = enumerate_trivalent(degree.len())?;
            let (leaves, problem) = match &loaded.kind {
                LoadedKind::General(p) => (pluecker_leaves(p), Problem::General(p.clone())),
                LoadedKind::Omega => {
                    let delta = deltas_of(loaded, 1).remove(0);
                    let p = OmegaProblem::new(
                        degree.clone(),
                        loaded.omega.clone(),
                        loaded.e0,
                        delta,
                        loaded.phi.clone(),
                    )?;
                    (omega_leaves(&p), Problem::Omega(p))
                }
            };
            for t in &types {
                let det = complex_mult_det(t, &problem);
                for sink in 0..t.num_vertices() {
                    let s = complex_mult_sink(t, degree, &leaves, sink);
                    if s != det {
                        return Err(CliError::CheckFailed(format!(
                            "sink: FAIL on type {} (sink {sink}: {s} vs det {det})",
                            t.display_name(Some(degree))
                        )));
                    }
                }
            }
            println!(
                "sink: PASS ({} type(s), all sinks agree with the determinant)",
                types.len()
            );
        }
        CheckKind::Continuity => {
            let coarse = loaded.omega_coarse.as_ref().ok_or_else(|| {
                CliError::Parse("continuity check needs an `omega_coarse` matrix".into())
            })?;
            let ok = check_continuity(degree, &loaded.omega, coarse, loaded.e0, &config)?;
            if ok {
                println!("continuity: PASS (projection matches the coarse invariant)");
            } else {
                return Err(CliError::CheckFailed(
                    "continuity: FAIL (projected invariant mismatch)".into(),
                ));
            }
        }
        CheckKind::Q1 => {
            let delta = deltas_of(loaded, 1).remove(0);
            let ok = q1_limit_check(degree, &loaded.omega, loaded.e0, &delta, &config)?;
            if ok {
                println!("q1: PASS (limit of the refined invariant equals the complex count)");
            } else {
                return Err(CliError::CheckFailed(
                    "q1: FAIL (limit does not match the complex count)".into(),
                ));
            }
        }
    }
    Ok(())
}

fn cmd_paper_regression(seed: u64) -> Result<(), CliError> {
    let lines = regression::run_all(seed);
    let mut failed = 0usize;
    for line in &lines {
        match &line.outcome {
            Ok(detail) => println!("PASS  {:<48} {detail}", line.name),
            Err(reason) => {
                failed += 1;
                println!("FAIL  {:<48} {reason}", line.name);
            }
        }
    }
    if failed > 0 {
        Err(CliError::CheckFailed(format!(
            "{failed} regression(s) failed"
        )))
    } else {
        println!("all {} regressions passed", lines.len());
        Ok(())
    }
}
