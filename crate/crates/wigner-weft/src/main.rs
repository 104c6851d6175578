//! Command-line surface: transforms, weak values, reconstructions, the
//! projector-scan demo, and the verification suite.
//!
//! Exit codes: 0 success, 1 parse/IO failure, 2 precondition violation,
//! 3 numerical precondition (orthogonal pair / vanishing transform),
//! 4 verification failures.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use wigner_weft::io::{dump_field, load_field, load_state, save_report, save_state, FieldFormat};
use wigner_weft::{
    cross_ambiguity, cross_wigner, fourier_amplitude_at, lundeen_reconstruct, pointer_readout,
    projector_weak_value_scan, quasi_distribution_rho, reconstruct_phi, reconstruct_psi,
    reconstruction_error, run_verification_suite, weak_value_from_rho, Error, Grid,
    ObservableSymbol, SampledState, SuiteConfig,
};

const EXIT_PARSE_IO: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_VERIFICATION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "wigner-weft",
    version,
    about = "Cross-Wigner transforms, weak values, and wavefunction reconstruction on 1-D grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Phi,
    Psi,
}

#[derive(Subcommand)]
enum Command {
    /// Cross-Wigner transform of a postselected/preselected pair.
    Wigner {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        /// Output path; format inferred from extension (.json or .csv).
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-ambiguity function of a pair.
    Ambiguity {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Complex quasi-distribution W(phi,psi) / <phi|psi>.
    Rho {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Weak value of an observable with pointer readouts (JSON to stdout).
    WeakValue {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        psi: PathBuf,
        /// One of `x`, `p`, or `proj:<x_index>`.
        #[arg(long)]
        observable: String,
        /// Von Neumann coupling strength.
        #[arg(long, default_value_t = 1.0)]
        g: f64,
        /// Pointer readout parameter.
        #[arg(long, default_value_t = 1.0)]
        v: f64,
    },
    /// Recover one member of a pair from a Wigner field and the other member.
    Reconstruct {
        #[arg(long, value_enum)]
        which: Which,
        /// Wigner field (JSON) on the known state's grid.
        #[arg(long)]
        field: PathBuf,
        /// The known member of the pair.
        #[arg(long)]
        known: PathBuf,
        /// Auxiliary state; defaults to the standard Gaussian on the grid.
        #[arg(long)]
        gamma: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Optional ground truth; prints error metrics when given.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Projector weak-value scan plus rebuild; prints the round-trip error.
    LundeenDemo {
        #[arg(long)]
        psi: PathBuf,
        /// Index of the postselection momentum on the grid's momentum lattice.
        #[arg(long = "p0-index")]
        p0_index: usize,
    },
    /// Run the identity verification suite and write a JSON report.
    Verify {
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        dx: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "verification_report.json")]
        out: PathBuf,
    },
}

/// CLI failure: a library error plus the exit class it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn verification() -> Self {
        Failure {
            code: EXIT_VERIFICATION,
            message: "verification suite reported failing checks".into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Io { .. }
            | Error::Json { .. }
            | Error::InvalidFile { .. }
            | Error::UnsupportedSchema { .. } => EXIT_PARSE_IO,
            Error::NearOrthogonal { .. } => EXIT_NUMERICAL,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    configure_threads();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_PARSE_IO,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// Honor WIGNER_WEFT_THREADS as a cap on internal parallelism.
fn configure_threads() {
    if let Ok(raw) = std::env::var("WIGNER_WEFT_THREADS") {
        match raw.parse::<usize>() {
            Ok(threads) if threads >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring invalid WIGNER_WEFT_THREADS={raw:?}"),
        }
    }
}

fn load_pair(phi: &Path, psi: &Path) -> Result<(SampledState, SampledState), Failure> {
    let phi = load_state(phi)?;
    let psi = load_state(psi)?;
    if phi.grid() != psi.grid() {
        return Err(Error::GridMismatch {
            context: "the two input states",
        }
        .into());
    }
    Ok((phi, psi))
}

fn parse_observable(raw: &str, grid: &Grid) -> Result<ObservableSymbol, Failure> {
    match raw {
        "x" => Ok(ObservableSymbol::CoordinateX),
        "p" => Ok(ObservableSymbol::CoordinateP),
        other => {
            let index: usize = other
                .strip_prefix("proj:")
                .and_then(|idx| idx.parse().ok())
                .ok_or(Failure {
                    code: EXIT_PRECONDITION,
                    message: format!(
                        "observable must be `x`, `p`, or `proj:<x_index>`, got {other:?}"
                    ),
                })?;
            if index >= grid.n() {
                return Err(Error::IndexOutOfRange {
                    name: "projector",
                    index,
                    n: grid.n(),
                }
                .into());
            }
            Ok(ObservableSymbol::PositionProjector { index })
        }
    }
}

#[derive(Serialize)]
struct WeakValueOutput {
    observable: String,
    value: ComplexOut,
    pointer_x_mean: f64,
    pointer_p_mean: f64,
    g: f64,
    v: f64,
}

#[derive(Serialize)]
struct ComplexOut {
    re: f64,
    im: f64,
}

impl From<Complex64> for ComplexOut {
    fn from(z: Complex64) -> Self {
        ComplexOut { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct ReconstructionOutput {
    max_abs: f64,
    l2: f64,
    fidelity: f64,
    degenerate: bool,
}

#[derive(Serialize)]
struct LundeenOutput {
    p0: f64,
    fpsi_p0: ComplexOut,
    round_trip_max_abs: f64,
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Wigner { phi, psi, out } => {
            let format = FieldFormat::from_path(&out)?;
            let (phi, psi) = load_pair(&phi, &psi)?;
            let field = cross_wigner(&phi, &psi)?;
            dump_field(&field, &out, format)?;
            Ok(())
        }
        Command::Ambiguity { phi, psi, out } => {
            let format = FieldFormat::from_path(&out)?;
            let (phi, psi) = load_pair(&phi, &psi)?;
            let field = cross_ambiguity(&phi, &psi)?;
            dump_field(&field, &out, format)?;
            Ok(())
        }
        Command::Rho { phi, psi, out } => {
            let format = FieldFormat::from_path(&out)?;
            let (phi, psi) = load_pair(&phi, &psi)?;
            let field = quasi_distribution_rho(&phi, &psi)?;
            dump_field(&field, &out, format)?;
            Ok(())
        }
        Command::WeakValue {
            phi,
            psi,
            observable,
            g,
            v,
        } => {
            let (phi, psi) = load_pair(&phi, &psi)?;
            let symbol = parse_observable(&observable, phi.grid())?;
            let rho = quasi_distribution_rho(&phi, &psi)?;
            let value = weak_value_from_rho(&symbol, &rho)?;
            let report = pointer_readout(value, g, v, phi.grid().hbar());
            let output = WeakValueOutput {
                observable,
                value: value.into(),
                pointer_x_mean: report.pointer_x_mean,
                pointer_p_mean: report.pointer_p_mean,
                g,
                v,
            };
            println!("{}", serde_json::to_string(&output).expect("output serializes"));
            Ok(())
        }
        Command::Reconstruct {
            which,
            field,
            known,
            gamma,
            out,
            truth,
        } => {
            let field = load_field(&field)?;
            let known = load_state(&known)?;
            let gamma = match gamma {
                Some(path) => load_state(&path)?,
                None => SampledState::gaussian(*known.grid(), 0.0, 0.0, 1.0)?,
            };
            let recovered = match which {
                Which::Phi => reconstruct_phi(&field, &known, &gamma)?,
                Which::Psi => reconstruct_psi(&field, &known, &gamma)?,
            };
            save_state(&recovered, &out, Some("reconstructed state"))?;
            if let Some(truth_path) = truth {
                let truth = load_state(&truth_path)?;
                let err = reconstruction_error(&recovered, &truth)?;
                let output = ReconstructionOutput {
                    max_abs: err.max_abs,
                    l2: err.l2,
                    fidelity: err.fidelity,
                    degenerate: err.degenerate,
                };
                println!("{}", serde_json::to_string(&output).expect("output serializes"));
            }
            Ok(())
        }
        Command::LundeenDemo { psi, p0_index } => {
            let psi = load_state(&psi)?;
            let grid = *psi.grid();
            if p0_index >= grid.n() {
                return Err(Error::IndexOutOfRange {
                    name: "p0",
                    index: p0_index,
                    n: grid.n(),
                }
                .into());
            }
            let p0 = grid.p(p0_index);
            let scan = projector_weak_value_scan(&psi, p0)?;
            let k = fourier_amplitude_at(&psi, p0);
            let rebuilt = lundeen_reconstruct(&scan, &grid, p0, k)?;
            let round_trip = reconstruction_error(&rebuilt, &psi)?;
            let output = LundeenOutput {
                p0,
                fpsi_p0: k.into(),
                round_trip_max_abs: round_trip.max_abs,
            };
            println!("{}", serde_json::to_string(&output).expect("output serializes"));
            Ok(())
        }
        Command::Verify {
            n,
            dx,
            hbar,
            seed,
            out,
        } => {
            let grid = Grid::new(n, dx, hbar)?;
            let config = SuiteConfig {
                seed,
                ..SuiteConfig::default()
            };
            let report = run_verification_suite(&grid, &config);
            for check in &report.checks {
                println!(
                    "{} {:<42} residual {:>12.3e}  tolerance {:>9.1e}",
                    if check.pass { "PASS" } else { "FAIL" },
                    check.name,
                    check.residual,
                    check.tolerance
                );
            }
            save_report(&report, &out)?;
            println!(
                "{} of {} checks passed; report written to {}",
                report.checks.iter().filter(|c| c.pass).count(),
                report.checks.len(),
                out.display()
            );
            if report.all_pass {
                Ok(())
            } else {
                Err(Failure::verification())
            }
        }
    }
}
