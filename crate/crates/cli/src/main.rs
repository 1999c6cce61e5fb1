use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mixmeter_cli::scenario::{gnuplot_script, run_scenario, Scenario};
use mixmeter_cli::{CliError, Result};
use mixmeter_core::states::Cat3Mode;

/// Entropy-fluctuation mixedness sweeps and density-matrix analysis.
#[derive(Parser, Debug)]
#[command(name = "mixmeter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Fock-space truncation for scenarios that build state vectors.
    #[arg(long = "trunc", value_name = "N", global = true, env = "MIXMETER_TRUNC")]
    trunc: Option<usize>,

    /// CSV destination; stdout when absent.
    #[arg(long, value_name = "PATH", global = true)]
    out: Option<PathBuf>,

    /// Also write a gnuplot script next to the CSV (needs --out).
    #[arg(long, global = true)]
    gnuplot: bool,
}

#[derive(Args, Debug)]
struct Sweep {
    #[arg(long, default_value_t = 3.0)]
    alpha: f64,
    #[arg(long, default_value_t = 300)]
    steps: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Two-level mixture over φ ∈ [0, π/2].
    TwoLevel {
        #[arg(long, default_value_t = 400)]
        steps: usize,
    },
    /// Mixture of |α⟩ and |−α⟩ over |α| ∈ [0, alpha].
    Cat2(Sweep),
    /// Mixture of |α⟩, |−α⟩ and |2α⟩ over |α| ∈ [0, alpha].
    Cat3 {
        #[command(flatten)]
        sweep: Sweep,
        #[arg(long, default_value = "recomputed", value_parser = ["paper", "recomputed"])]
        mode: String,
    },
    /// Thermal field over n̄ ∈ [0, nbar-max].
    Thermal {
        #[arg(long, default_value_t = 10.0)]
        nbar_max: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Jaynes–Cummings atom and field entropies against λt.
    Jcm {
        #[arg(long, default_value_t = 4.0)]
        alpha: f64,
        #[arg(long, default_value_t = 20.0)]
        tmax: f64,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
    },
    /// Damped cat state against γt, with times t ∈ [0, tmax].
    Damped {
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long, default_value_t = 7.0)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 5.0)]
        tmax: f64,
        #[arg(long, default_value_t = 0.005)]
        dt: f64,
    },
    /// Report on a density matrix stored as text.
    Analyze {
        file: PathBuf,
        /// Reference dimension for S/ln d and d/(d−1)·ξ.
        #[arg(long, value_name = "d")]
        ref_dim: Option<usize>,
    },
}

fn scenario(cli: &Cli) -> Result<Scenario> {
    Ok(match &cli.command {
        &Command::TwoLevel { steps } => Scenario::TwoLevel { steps },
        Command::Cat2(s) => Scenario::Cat2 {
            alpha_max: s.alpha,
            steps: s.steps,
            truncation: cli.trunc,
        },
        Command::Cat3 { sweep, mode } => Scenario::Cat3 {
            alpha_max: sweep.alpha,
            steps: sweep.steps,
            mode: mode.parse::<Cat3Mode>()?,
        },
        &Command::Thermal { nbar_max, steps } => Scenario::Thermal { nbar_max, steps },
        &Command::Jcm { alpha, tmax, dt } => Scenario::Jcm {
            alpha,
            tmax,
            dt,
            truncation: cli.trunc,
        },
        &Command::Damped {
            alpha,
            beta,
            gamma,
            tmax,
            dt,
        } => Scenario::Damped {
            alpha,
            beta,
            gamma,
            tmax,
            dt,
        },
        Command::Analyze { file, ref_dim } => Scenario::Analyze {
            path: file.clone(),
            reference_dim: *ref_dim,
        },
    })
}

fn run(cli: &Cli) -> Result<()> {
    let scenario = scenario(cli)?;
    if cli.gnuplot && cli.out.is_none() {
        return Err(CliError::Usage("--gnuplot needs --out".into()));
    }
    let table = run_scenario(&scenario)?;
    match &cli.out {
        None => {
            let stdout = std::io::stdout().lock();
            table.write_csv(stdout, "<stdout>")
        }
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
            let mut w = std::io::BufWriter::new(file);
            table.write_csv(&mut w, &path.display().to_string())?;
            w.flush().map_err(|e| CliError::io(path, e))?;
            if cli.gnuplot {
                write_gnuplot(path, &table, scenario.kind())?;
            }
            Ok(())
        }
    }
}

fn write_gnuplot(csv: &Path, table: &mixmeter_cli::table::Table, kind: &str) -> Result<()> {
    let script = csv.with_extension("gp");
    let name = csv.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    std::fs::write(&script, gnuplot_script(table, &name, kind)).map_err(|e| CliError::io(&script, e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mixmeter: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
