use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use twophoton::checks::{verification_suite, Check};
use twophoton::export::{fluorescence_table, momentum_table, spectrum_table, wavefunction_table, Format, Grid, Table};
use twophoton::ImpurityParams;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

/// Two-photon scattering off a two-level emitter in a waveguide: data exports and self-checks.
#[derive(Parser, Debug)]
#[command(name = "twophoton", version)]
struct Cli {
    /// Emitter transition energy Ω.
    #[arg(long, global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    omega: f64,
    /// Emitter width Γ (> 0).
    #[arg(long, global = true, default_value_t = 1.0)]
    gamma: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug)]
struct Labels {
    /// Pair detuning δE = E − 2Ω.
    #[arg(long = "dE", default_value_t = 0.0, allow_negative_numbers = true)]
    de: f64,
    /// Relative momentum Δ = (k − p)/2 of the incident pair.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// |t̄|² and |r̄|² against k (grid in k; default Ω ± 5Γ).
    Spectrum {
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
        #[command(flatten)]
        output: Output,
    },
    /// |t₂|², |r₂|², |rt|² against x̄ = Γx/2 (x̄_c for rt).
    Wavefunctions {
        #[command(flatten)]
        labels: Labels,
        #[arg(long, allow_hyphen_values = true, default_value = "-10:10:401")]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// |B̄|² on a Δ̄₁ × Δ̄₂ grid at scaled detuning Ē.
    Fluorescence {
        /// Ē = (E − 2Ω)/(Γ/2).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        ebar: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "-6:6:21")]
        grid: Grid,
        #[command(flatten)]
        output: Output,
    },
    /// RR, LL and RL momentum-space coefficients against the outgoing Δ₂ (default ±3Γ).
    Momentum {
        #[command(flatten)]
        labels: Labels,
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<Grid>,
        #[command(flatten)]
        output: Output,
    },
    /// Run the verification suite and write a JSON report.
    Verify {
        /// Report file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replace every check's tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long, default_value_t = 20_25)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct Report<'a> {
    params: ImpurityParams,
    passed: usize,
    failed: usize,
    checks: &'a [Check],
}

enum Failure {
    Usage(String),
    Io(String),
    Verify(usize),
}

fn open_sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match out {
        Some(path) => File::create(path)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::Io(format!("cannot create {}: {e}", path.display()))),
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn where_to(out: &Option<PathBuf>) -> String {
    out.as_ref().map_or("standard output".into(), |p| p.display().to_string())
}

fn write_table(table: &Table, output: &Output) -> Result<(), Failure> {
    let mut sink = open_sink(&output.out)?;
    table
        .write(&mut sink, output.format)
        .and_then(|_| sink.flush())
        .map_err(|e| Failure::Io(format!("cannot write {}: {e}", where_to(&output.out))))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let params = ImpurityParams::new(cli.omega, cli.gamma).map_err(|e| Failure::Usage(e.to_string()))?;
    let (om, g) = (params.omega(), params.gamma());
    match cli.command {
        Command::Spectrum { grid, output } => {
            let grid = grid.unwrap_or(Grid { min: om - 5.0 * g, max: om + 5.0 * g, points: 1001 });
            write_table(&spectrum_table(&grid, &params), &output)
        }
        Command::Wavefunctions { labels, grid, output } => {
            write_table(&wavefunction_table(labels.de, labels.delta, &grid, &params), &output)
        }
        Command::Fluorescence { ebar, grid, output } => write_table(&fluorescence_table(ebar, &grid, &params), &output),
        Command::Momentum { labels, grid, output } => {
            let grid = grid.unwrap_or(Grid { min: -3.0 * g, max: 3.0 * g, points: 301 });
            write_table(&momentum_table(labels.de, labels.delta, &grid, &params), &output)
        }
        Command::Verify { out, tolerance, seed } => {
            if let Some(t) = tolerance {
                if !(t >= 0.0) {
                    return Err(Failure::Usage(format!("tolerance must be non-negative, got {t}")));
                }
            }
            let mut checks = verification_suite(&params, seed);
            if let Some(t) = tolerance {
                checks = checks.into_iter().map(|c| c.with_tolerance(t)).collect();
            }
            let failed = checks.iter().filter(|c| !c.pass).count();
            for c in &checks {
                eprintln!("{} {} measured {:.3e} tolerance {:.1e}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.measured, c.tolerance);
            }
            let report = Report { params, passed: checks.len() - failed, failed, checks: &checks };
            let mut sink = open_sink(&out)?;
            serde_json::to_writer_pretty(&mut sink, &report)
                .map_err(io::Error::other)
                .and_then(|_| writeln!(sink))
                .and_then(|_| sink.flush())
                .map_err(|e| Failure::Io(format!("cannot write {}: {e}", where_to(&out))))?;
            if failed > 0 {
                Err(Failure::Verify(failed))
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Verify(n)) => {
            eprintln!("{n} checks failed");
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
