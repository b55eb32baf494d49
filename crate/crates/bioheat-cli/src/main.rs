use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bioheat_cli::{
    cmd_compare, cmd_power, cmd_simulate, cmd_steady, default_times, parse_times, plot_script,
    CliError, Method, Scenario, SourceKind,
};

/// Tissue temperature fields for magnetic nanoparticle hyperthermia:
/// integral-transform, Green's-function and finite-difference solvers with
/// cross-method comparison, plus the Rosensweig nanoparticle power model.
#[derive(Parser)]
#[command(name = "bioheat", version, about)]
struct Cli {
    /// Scenario config file (JSON); omitted sections use the reference
    /// preset (muscle-like tissue, magnetite particles, 5 mT / 500 kHz).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Named parameter preset; `paper` is the reference scenario and the
    /// default when no config is given. Config values override it.
    #[arg(long, global = true)]
    preset: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nanoparticle power dissipation versus diameter (CSV).
    Power {
        /// Multi-curve mode: 'a' sweeps frequency 100..1000 kHz at 5 mT,
        /// 'b' sweeps amplitude 1..10 mT at 500 kHz.
        #[arg(long)]
        panel: Option<char>,
        /// Smallest diameter, nm.
        #[arg(long, default_value_t = 1.0)]
        d_min_nm: f64,
        /// Largest diameter, nm.
        #[arg(long, default_value_t = 30.0)]
        d_max_nm: f64,
        /// Sample count across the diameter range.
        #[arg(long, default_value_t = 291)]
        points: usize,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a gnuplot script referencing the CSV (requires --out).
        #[arg(long)]
        plot_script: Option<PathBuf>,
    },
    /// Radial temperature profiles for one method and source (CSV).
    Simulate {
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long, value_enum)]
        source: Option<SourceKind>,
        /// Comma-separated sample times in seconds (defaults to the
        /// source's reference figure times).
        #[arg(long)]
        times: Option<String>,
        /// Outer radius of the evaluation grid, m.
        #[arg(long, default_value_t = 0.03)]
        rmax: f64,
        /// Grid point count on [0, rmax].
        #[arg(long, default_value_t = 121)]
        nr: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a gnuplot script referencing the CSV (requires --out).
        #[arg(long)]
        plot_script: Option<PathBuf>,
    },
    /// Run two methods on aligned grids and report their differences.
    Compare {
        #[arg(long, value_enum)]
        source: Option<SourceKind>,
        #[arg(long, value_enum)]
        method_a: Method,
        #[arg(long, value_enum)]
        method_b: Method,
        #[arg(long)]
        times: Option<String>,
        #[arg(long, default_value_t = 0.03)]
        rmax: f64,
        #[arg(long, default_value_t = 121)]
        nr: usize,
        /// Per-time metrics CSV (the text report always goes to stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Steady-state profiles with closed-form reference columns (CSV).
    Steady {
        #[arg(long, value_enum)]
        source: Option<SourceKind>,
        #[arg(long, default_value_t = 0.03)]
        rmax: f64,
        #[arg(long, default_value_t = 121)]
        nr: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn init_thread_pool() -> Result<(), CliError> {
    if let Ok(text) = std::env::var("BIOHEAT_THREADS") {
        let n: usize = text
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("BIOHEAT_THREADS must be an integer, got '{text}'")))?;
        if n > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
        }
    }
    Ok(())
}

/// Stdout or a file, decided by --out.
fn open_sink(out: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match out {
        Some(path) => Ok(Box::new(std::fs::File::create(path)?)),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn emit_plot_script(
    script: Option<&PathBuf>,
    out: Option<&PathBuf>,
    columns: usize,
) -> Result<(), CliError> {
    let Some(script_path) = script else {
        return Ok(());
    };
    let Some(csv_path) = out else {
        return Err(CliError::Config(
            "--plot-script needs --out so the script has a CSV to reference".into(),
        ));
    };
    std::fs::write(script_path, plot_script(&csv_path.display().to_string(), columns))?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_thread_pool()?;
    if let Some(name) = cli.preset.as_deref() {
        if name != "paper" {
            return Err(CliError::Config(format!(
                "unknown preset '{name}'; available: paper"
            )));
        }
    }
    let scenario = Scenario::load(cli.config.as_deref())?;
    match cli.command {
        Command::Power {
            panel,
            d_min_nm,
            d_max_nm,
            points,
            out,
            plot_script,
        } => {
            let mut sink = open_sink(out.as_ref())?;
            cmd_power(&scenario, panel, d_min_nm, d_max_nm, points, &mut sink)?;
            sink.flush()?;
            let columns = match panel {
                Some(_) => 11,
                None => 2,
            };
            emit_plot_script(plot_script.as_ref(), out.as_ref(), columns)
        }
        Command::Simulate {
            method,
            source,
            times,
            rmax,
            nr,
            out,
            plot_script,
        } => {
            let source = scenario.resolve_kind(source)?;
            let times = match times {
                Some(text) => parse_times(&text)?,
                None => default_times(source),
            };
            let mut sink = open_sink(out.as_ref())?;
            cmd_simulate(&scenario, method, source, &times, rmax, nr, &mut sink)?;
            sink.flush()?;
            emit_plot_script(plot_script.as_ref(), out.as_ref(), times.len() + 1)
        }
        Command::Compare {
            source,
            method_a,
            method_b,
            times,
            rmax,
            nr,
            out,
        } => {
            let source = scenario.resolve_kind(source)?;
            let times = match times {
                Some(text) => parse_times(&text)?,
                None => default_times(source),
            };
            let mut stdout = std::io::stdout().lock();
            let mut file;
            let csv_sink: Option<&mut dyn Write> = match out {
                Some(ref path) => {
                    file = std::fs::File::create(path)?;
                    Some(&mut file)
                }
                None => None,
            };
            cmd_compare(
                &scenario, source, method_a, method_b, &times, rmax, nr, &mut stdout, csv_sink,
            )
        }
        Command::Steady {
            source,
            rmax,
            nr,
            out,
        } => {
            let source = scenario.resolve_kind(source)?;
            let mut sink = open_sink(out.as_ref())?;
            cmd_steady(&scenario, source, rmax, nr, &mut sink)?;
            sink.flush()
                .map_err(CliError::from)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bioheat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
