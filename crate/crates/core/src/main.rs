use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use udw_harvest::selftest::{self, Mutation};
use udw_harvest::sweep::{
    csv_fields, emit_csv, evaluate_point, figure_preset, run_sweep, ConfigKind, Figure, Measure, SweepSpec, CSV_HEADER,
    PRESET_COUPLING, PRESET_GAPS, PRESET_LAC, PRESET_STEPS,
};
use udw_harvest::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_SELFTEST: u8 = 2;

/// Coherence and entanglement harvested by Unruh-DeWitt detectors with
/// Gaussian switching, to second order in the coupling.
#[derive(Parser, Debug)]
#[command(name = "udw-harvest", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep separation (or the shift D for scalene triangles) and write CSV.
    Sweep(SweepArgs),
    /// Run one of the built-in figure presets and write CSV.
    Figure(FigureArgs),
    /// Evaluate a single parameter point.
    Point(PointArgs),
    /// Run the built-in consistency checks.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// two, equilateral, linear or scalene.
    #[arg(long, default_value = "two")]
    config: String,
    #[arg(long = "lambda", default_value_t = PRESET_COUPLING)]
    coupling: f64,
    /// Gaps in units of 1/sigma, comma separated.
    #[arg(long = "omega-sigma", value_delimiter = ',', allow_negative_numbers = true)]
    omega_sigma: Vec<f64>,
    #[arg(long, default_value_t = 0.25)]
    l_min: f64,
    #[arg(long, default_value_t = 10.0)]
    l_max: f64,
    #[arg(long, default_value_t = PRESET_STEPS)]
    steps: usize,
    /// Shift range for scalene sweeps.
    #[arg(long, default_value_t = 0.0)]
    d_min: f64,
    #[arg(long, default_value_t = 10.0)]
    d_max: f64,
    /// Fixed A-C distance for scalene sweeps.
    #[arg(long, default_value_t = PRESET_LAC)]
    lac: f64,
    /// Comma separated subset of elements,l1,rec,negativity,tripartite_negativity.
    #[arg(long)]
    measures: Option<String>,
    /// Destination file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FigureArgs {
    /// fig1, fig3, fig4 or fig5.
    name: String,
    /// Override the preset gaps, comma separated.
    #[arg(long = "omega-sigma", value_delimiter = ',', allow_negative_numbers = true)]
    omega_sigma: Vec<f64>,
    #[arg(long)]
    measures: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long, default_value = "two")]
    config: String,
    #[arg(long = "lambda", default_value_t = PRESET_COUPLING)]
    coupling: f64,
    #[arg(long = "omega-sigma", default_value_t = 1.0, allow_negative_numbers = true)]
    omega_sigma: f64,
    /// Separation L/sigma (ignored for scalene).
    #[arg(long = "l", default_value_t = 1.0)]
    separation: f64,
    /// Shift D/sigma (scalene only).
    #[arg(long = "d", default_value_t = 0.0)]
    shift: f64,
    #[arg(long, default_value_t = PRESET_LAC)]
    lac: f64,
    #[arg(long)]
    measures: Option<String>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Break one closed form on purpose (lambda9-sign, negativity-c-dependence).
    #[arg(long)]
    mutate: Option<String>,
}

enum Failure {
    Usage(String),
    Runtime(String),
    Selftest,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(msg) => Failure::Runtime(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn measures(arg: &Option<String>) -> Result<BTreeSet<Measure>, Error> {
    match arg {
        Some(list) => Measure::parse_list(list),
        None => Ok(Measure::all()),
    }
}

fn gaps(values: &[f64]) -> Vec<f64> {
    if values.is_empty() {
        PRESET_GAPS.to_vec()
    } else {
        values.to_vec()
    }
}

fn write_csv(spec: &SweepSpec, output: &Option<PathBuf>) -> Result<(), Failure> {
    let records = run_sweep(spec)?;
    let result = match output {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
            emit_csv(&records, &mut BufWriter::new(file))
        }
        None => emit_csv(&records, &mut BufWriter::new(io::stdout().lock())),
    };
    result.map_err(Failure::from)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Sweep(a) => {
            let config: ConfigKind = a.config.parse()?;
            let (min, max) = if config.sweeps_shift() { (a.d_min, a.d_max) } else { (a.l_min, a.l_max) };
            let spec = SweepSpec {
                config,
                coupling: a.coupling,
                gaps: gaps(&a.omega_sigma),
                min,
                max,
                steps: a.steps,
                lac: config.sweeps_shift().then_some(a.lac),
                measures: measures(&a.measures)?,
            };
            write_csv(&spec, &a.output)
        }
        Command::Figure(a) => {
            let mut spec = figure_preset(a.name.parse::<Figure>()?);
            if !a.omega_sigma.is_empty() {
                spec.gaps = a.omega_sigma;
            }
            spec.measures = measures(&a.measures)?;
            write_csv(&spec, &a.output)
        }
        Command::Point(a) => {
            let config: ConfigKind = a.config.parse()?;
            let variable = if config.sweeps_shift() { a.shift } else { a.separation };
            let record =
                evaluate_point(config, a.coupling, a.omega_sigma, variable, Some(a.lac), &measures(&a.measures)?);
            let mut out = io::stdout().lock();
            for (name, value) in CSV_HEADER.split(',').zip(csv_fields(&record)) {
                if !value.is_empty() {
                    writeln!(out, "{name:<22} {value}").map_err(|e| Failure::Runtime(e.to_string()))?;
                }
            }
            Ok(())
        }
        Command::Selftest(a) => {
            let mutation = a.mutate.as_deref().map(str::parse::<Mutation>).transpose()?;
            let report = selftest::run(mutation);
            for check in &report.checks {
                println!("{check}");
            }
            if report.passed() {
                println!("selftest passed");
                Ok(())
            } else {
                println!("selftest FAILED");
                Err(Failure::Selftest)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Selftest) => ExitCode::from(EXIT_SELFTEST),
    }
}
