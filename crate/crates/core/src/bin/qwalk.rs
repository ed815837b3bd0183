use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qwalk::exec::init_workers;
use qwalk::harness::{
    cmd_algebra, cmd_asym, cmd_charfn, cmd_limit, cmd_simulate, ExperimentConfig, HarnessError,
    Outcome,
};
use qwalk::Exec;

#[derive(Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Quantum walk distributions and limit diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Direct and Chebyshev distributions with their pointwise gap.
    Simulate(Common),
    /// Kolmogorov distance of X_n/n to the limit law.
    Limit(Common),
    /// Characteristic-function gap at xi/n.
    Charfn(Common),
    /// Operator identities on the cyclic lattice.
    Algebra(Common),
    /// Finite-n oscillatory integrals against their limits.
    Asym(Common),
}

#[derive(Args)]
struct Common {
    /// JSON experiment config; defaults are used when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the command's pass/fail tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Upper bound on walk steps.
    #[arg(long)]
    max_n: Option<usize>,
    /// Run sequentially.
    #[arg(long)]
    sequential: bool,
    /// Worker threads for the parallel executor.
    #[arg(long, env = "QWALK_THREADS")]
    threads: Option<usize>,
}

type Cmd = fn(&ExperimentConfig, Exec) -> Result<Outcome, HarnessError>;

fn run(
    common: Common,
    cmd: Cmd,
    set_tol: fn(&mut ExperimentConfig, f64),
) -> Result<Outcome, HarnessError> {
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(out) = common.out {
        cfg.out = Some(out);
    }
    if let Some(tol) = common.tol {
        set_tol(&mut cfg, tol);
    }
    if let Some(max_n) = common.max_n {
        cfg.max_n = max_n;
    }
    cfg.validate()?;
    init_workers(common.threads);
    let exec = if common.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    cmd(&cfg, exec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(c) => run(c, cmd_simulate, |cfg, v| cfg.tolerances.gap = v),
        Command::Limit(c) => run(c, cmd_limit, |cfg, v| cfg.tolerances.kolmogorov = v),
        Command::Charfn(c) => run(c, cmd_charfn, |cfg, v| cfg.tolerances.charfn = v),
        Command::Algebra(c) => run(c, cmd_algebra, |cfg, v| cfg.tolerances.relations = v),
        Command::Asym(c) => run(c, cmd_asym, |cfg, v| cfg.tolerances.parity = v),
    };
    match result {
        Ok(outcome) => {
            for line in &outcome.lines {
                println!("{line}");
            }
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
