use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use covox::io::{format_f64, parse_sweep, OutputFormat, RunConfig};
use covox::little_group::{self, DEFAULT_CLASSIFY_TOL};
use covox::observables;
use covox::oscillator::{default_extent, psi_boosted};
use covox::{Error, ExpansionSpectrum, Rapidity, WaveGrid};
use covox_cli::*;

/// Sampled wave functions whose grid norm strays further than this from one
/// are rejected as under-resolved.
const NORM_TOLERANCE: f64 = 1e-3;

/// Quadrature overlaps further than this from the closed form are rejected.
const FORM_FACTOR_TOLERANCE: f64 = 1e-8;

const OUTPUT_DIR_VAR: &str = "COVOX_OUTPUT_DIR";

/// Covariant harmonic oscillator: wave functions, expansions and observables.
///
/// Exit codes: 0 success, 1 I/O failure, 2 usage or invalid input,
/// 3 numerical check failed (offending value printed).
#[derive(Parser)]
#[command(name = "covox", version)]
struct Cli {
    /// `key = value` file with grid_extent, grid_count, truncation_tol,
    /// output_format, output_path.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Table format; overrides the config file.
    #[arg(long, global = true, value_name = "csv|json")]
    format: Option<OutputFormat>,

    /// Output file. Relative paths are resolved against $COVOX_OUTPUT_DIR
    /// when it is set.
    #[arg(long, short, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the boosted wave function on a grid (CSV plus JSON sidecar).
    Wavefunction {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
    },
    /// Rest-frame expansion coefficients until the tail drops below tol.
    Expansion {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
        /// Defaults to truncation_tol from the config.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Entropy of the excitation distribution over a rapidity sweep.
    Entropy {
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// `start:stop:step` or a single value.
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
    },
    /// Coherent and static form factors over a sweep.
    Formfactor(FormFactorArgs),
    /// Unimodular 2×2 matrix operations (JSON output).
    Littlegroup {
        #[command(subcommand)]
        op: LittleGroupOp,
    },
    /// Mass-squared levels and their degeneracies.
    Spectrum {
        #[arg(long)]
        lambda_max: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        m0sq: f64,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct FormFactorArgs {
    /// Rapidity sweep, `start:stop:step` or a single value.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// Momentum-transfer sweep in q².
    #[arg(long)]
    q2: Option<String>,
}

#[derive(Subcommand)]
enum LittleGroupOp {
    /// Trace class of a matrix.
    Classify {
        /// JSON `{"a":…,"b":…,"c":…,"d":…}`, or `@FILE`.
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_CLASSIFY_TOL)]
        tol: f64,
    },
    /// Rotate a matrix until its diagonal entries agree.
    Equidiag {
        #[arg(long)]
        matrix: String,
    },
    /// Boosted rotation approaching the triangular limit.
    Contract {
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_numerical() {
            3
        } else if e.is_io() {
            1
        } else {
            2
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("covox: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

struct Context {
    config: RunConfig,
    explicit_output: Option<PathBuf>,
    root: Option<PathBuf>,
}

impl Context {
    fn format(&self) -> OutputFormat {
        self.config.output_format
    }

    /// Where to write: the explicit path if any, otherwise `default_name`
    /// under the output root. `None` means standard output.
    fn target(&self, default_name: &str) -> Option<PathBuf> {
        match (&self.explicit_output, &self.root) {
            (Some(p), Some(root)) if p.is_relative() => Some(root.join(p)),
            (Some(p), _) => Some(p.clone()),
            (None, Some(root)) => Some(root.join(default_name)),
            (None, None) => None,
        }
    }

    fn emit(&self, default_name: &str, text: &str) -> Result<(), Failure> {
        match self.target(default_name) {
            Some(path) => write_file(&path, text.as_bytes()),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_table<R: Record>(&self, stem: &str, rows: &[R]) -> Result<(), Failure> {
        match self.format() {
            OutputFormat::Csv => self.emit(&format!("{stem}.csv"), &render_csv(rows)),
            OutputFormat::Json => self.emit(&format!("{stem}.json"), &render_json(rows)),
        }
    }
}

/// False for NaN, so non-finite results fail the check.
fn within(value: f64, target: f64, tol: f64) -> bool {
    (value - target).abs() <= tol
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|source| Error::Io { path: path.to_owned(), source }.into())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.clone(), source })?;
            RunConfig::parse(&text).map_err(|e| Failure {
                code: 2,
                message: format!("{}: {e}", path.display()),
            })?
        }
        None => RunConfig::default(),
    };
    if let Some(format) = cli.format {
        config.output_format = format;
    }
    let root = std::env::var_os(OUTPUT_DIR_VAR).filter(|v| !v.is_empty()).map(PathBuf::from);
    let explicit_output = cli.output.clone().or_else(|| config.output_path.clone());
    let ctx = Context { config, explicit_output, root };

    match cli.command {
        Command::Wavefunction { n, eta } => wavefunction(&ctx, n, eta),
        Command::Expansion { n, eta, tol } => expansion(&ctx, n, eta, tol),
        Command::Entropy { n, eta } => entropy(&ctx, n, &eta),
        Command::Formfactor(args) => formfactor(&ctx, &args),
        Command::Littlegroup { op } => littlegroup(&ctx, op),
        Command::Spectrum { lambda_max, m0sq } => spectrum(&ctx, lambda_max, m0sq),
    }
}

fn wavefunction(ctx: &Context, n: usize, eta: f64) -> Result<(), Failure> {
    let rapidity = Rapidity::new(eta)?;
    let extent = ctx.config.grid_extent.unwrap_or_else(|| default_extent(eta));
    let count = ctx.config.grid_count;
    // validate the index before sampling so a bad n is a usage error
    covox::OscillatorIndex::new(n)?;
    let grid = WaveGrid::sample(extent, count, |p| psi_boosted(n, rapidity, p).unwrap_or(f64::NAN))?;
    let norm = grid.norm_l2();
    if !within(norm, 1.0, NORM_TOLERANCE) {
        return Err(Error::NumericalCheck { what: "grid norm (grid too coarse or too narrow)".into(), value: norm }.into());
    }
    let (var_z, var_t) = grid.variances();

    let default_name = format!("wavefunction_n{n}_eta{}.csv", format_f64(eta));
    let csv_path = ctx.target(&default_name).unwrap_or_else(|| PathBuf::from(&default_name));
    let sidecar_path = csv_path.with_extension("json");
    let grid_name = csv_path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let sidecar = WavefunctionSidecar { n, eta, extent, count, norm, var_z, var_t, grid: grid_name };

    let mut csv = Vec::with_capacity(count * count * 24);
    grid.write_csv(&mut csv).expect("writing to memory");
    write_file(&csv_path, &csv)?;
    write_file(&sidecar_path, render_json(&sidecar).as_bytes())
}

fn expansion(ctx: &Context, n: usize, eta: f64, tol: Option<f64>) -> Result<(), Failure> {
    let tol = tol.unwrap_or(ctx.config.truncation_tol);
    let spectrum = ExpansionSpectrum::to_tolerance(n, Rapidity::new(eta)?, tol)?;
    let mut cumulative = 0.0;
    let rows: Vec<ExpansionRow> = spectrum
        .coefficients
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            cumulative += c * c;
            ExpansionRow { k, coefficient: c, probability: c * c, cumulative }
        })
        .collect();
    ctx.emit_table(&format!("expansion_n{n}"), &rows)
}

fn entropy(ctx: &Context, n: usize, sweep: &str) -> Result<(), Failure> {
    let tol = ctx.config.truncation_tol;
    let mut rows = Vec::new();
    for eta in parse_sweep(sweep)? {
        let dist = observables::excitation_probabilities(n, Rapidity::new(eta)?, tol)?;
        let total = dist.total();
        if !within(total, 1.0, 1e-9) {
            return Err(Error::NumericalCheck { what: format!("probability total at eta = {eta}"), value: total }.into());
        }
        let s = dist.entropy();
        rows.push(EntropyRow { n, eta, entropy: s, effective_terms: s.exp(), tail: dist.tail });
    }
    ctx.emit_table(&format!("entropy_n{n}"), &rows)
}

fn formfactor(ctx: &Context, args: &FormFactorArgs) -> Result<(), Failure> {
    let rapidities: Vec<Rapidity> = match (&args.eta, &args.q2) {
        (Some(s), _) => parse_sweep(s)?.into_iter().map(Rapidity::new).collect::<Result<_, _>>()?,
        (None, Some(s)) => parse_sweep(s)?.into_iter().map(observables::breit_rapidity).collect::<Result<_, _>>()?,
        (None, None) => unreachable!("clap enforces one sweep"),
    };
    let mut rows = Vec::with_capacity(rapidities.len());
    for r in rapidities {
        let point = observables::coherent_form_factor(r)?;
        let expected = observables::coherent_form_factor_closed_form(point.eta);
        if !within(point.value, expected, FORM_FACTOR_TOLERANCE) {
            return Err(Error::NumericalCheck {
                what: format!("coherent overlap at eta = {} (closed form {expected})", point.eta),
                value: point.value,
            }
            .into());
        }
        rows.push(FormFactorRow {
            eta: point.eta,
            q_squared: point.q_squared,
            coherent: point.value,
            static_value: observables::static_form_factor_closed_form(point.q_squared.sqrt()),
        });
    }
    ctx.emit_table("formfactor", &rows)
}

fn matrix_argument(arg: &str) -> Result<covox::Unimodular2, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            let path = PathBuf::from(path);
            fs::read_to_string(&path).map_err(|source| Error::Io { path, source })?
        }
        None => arg.to_owned(),
    };
    Ok(read_matrix(&text)?)
}

fn littlegroup(ctx: &Context, op: LittleGroupOp) -> Result<(), Failure> {
    let text = match op {
        LittleGroupOp::Classify { matrix, tol } => {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(Error::InvalidArgument(format!("tolerance {tol} must be non-negative")).into());
            }
            let m = matrix_argument(&matrix)?;
            let kind = little_group::classify(&m, tol);
            render_json(&ClassifyReport { matrix: m, kind, trace: m.trace(), tol })
        }
        LittleGroupOp::Equidiag { matrix } => {
            let m = matrix_argument(&matrix)?;
            let form = little_group::equi_diagonalize(&m);
            render_json(&EquiDiagonalReport { input: m, angle: form.angle, matrix: form.matrix })
        }
        LittleGroupOp::Contract { gamma, eta } => {
            let m = little_group::contraction_sequence(gamma, eta)?;
            let limit = little_group::triangular(gamma)?;
            let theta = (gamma * (-eta).exp()).asin();
            render_json(&ContractionReport { gamma, eta, theta, matrix: m, distance: m.max_distance(&limit) })
        }
    };
    ctx.emit("littlegroup.json", &text)
}

fn spectrum(ctx: &Context, lambda_max: usize, m0sq: f64) -> Result<(), Failure> {
    let rows: Vec<SpectrumRow> = observables::mass_spectrum(lambda_max, m0sq)?
        .into_iter()
        .map(|e| SpectrumRow { lambda: e.lambda, mass_squared: e.mass_squared, degeneracy: e.degeneracy })
        .collect();
    ctx.emit_table("spectrum", &rows)
}
