//! `gauss-renyi` command-line front end.
//!
//! Exit codes: 0 success, 1 unphysical input, 2 usage or parse error,
//! 3 verification failure.

mod document;
mod format;
mod sweep;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gauss_renyi::verify::{run_campaign, trial_rng, Suite};
use gauss_renyi::{
    classical_correlations, classical_correlations_numeric, discord, e2_pure_bipartition, e2_two_mode,
    mutual_information, random_mixed_cm, random_pure_cm, reduce, renyi2_entropy, residual_d2, residual_e2,
    residual_e2_invariant, ssa_gap, validate, von_neumann_entropy, CovarianceMatrix, Direction, Error,
    InseparabilityClass, MeasureReport, ModePartition, NumericOptions, ThreeModeLocalInvariants, Witness,
};

use document::CmDocument;
use format::num;
use sweep::Family;

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn unphysical(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unphysical(_) | Error::NotSymmetric(_) | Error::NotPositiveDefinite => {
                Failure::unphysical(e.to_string())
            }
            _ => Failure::usage(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "gauss-renyi", version, about = "Renyi-2 information measures for Gaussian states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check symmetry, positivity and the uncertainty relation of a covariance document.
    Validate { path: PathBuf },
    /// Evaluate one measure on a covariance document.
    Measure {
        path: PathBuf,
        #[arg(long, value_enum)]
        measure: Measure,
        /// Groups separated by ';', modes by ',', e.g. "0;1" or "0;1,2;3".
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, value_enum, default_value_t = DirectionArg::AGivenB)]
        direction: DirectionArg,
        /// Use the seed search even where a closed form exists.
        #[arg(long)]
        numeric: bool,
    },
    /// Entanglement structure of the pure three-mode state with local invariants a1, a2, a3.
    Tripartite {
        #[arg(long)]
        a1: f64,
        #[arg(long)]
        a2: f64,
        #[arg(long)]
        a3: f64,
        /// Restrict the table to one focus mode.
        #[arg(long)]
        focus: Option<usize>,
    },
    /// Draw a random covariance matrix.
    Random {
        #[arg(long)]
        modes: usize,
        #[arg(long)]
        pure: bool,
        #[arg(long, default_value_t = 1.5)]
        squeeze_cap: f64,
        #[arg(long, default_value_t = 5.0)]
        temp_cap: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a seeded verification campaign and print its report as one JSON line.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to 1e-9 for inequalities, 1e-6 for equalities, 3 standard errors for mc-entropy.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate measures along a one-parameter family and write CSV.
    Sweep {
        #[arg(long, value_enum)]
        family: Family,
        /// Inclusive grid "start:stop:step".
        #[arg(long)]
        param_range: String,
        /// Comma-separated measure names.
        #[arg(long, value_delimiter = ',')]
        measures: Vec<String>,
        /// Noise factor of the squeezed-thermal family.
        #[arg(long, default_value_t = 2.0)]
        nu: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Measure {
    Renyi2,
    Vn,
    Mutual,
    Ssa,
    Classical,
    Discord,
    Entanglement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    /// Measure B, keep A.
    AGivenB,
    /// Measure A, keep B.
    BGivenA,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::AGivenB => Direction::AGivenB,
            DirectionArg::BGivenA => Direction::BGivenA,
        }
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite '{s}', expected one of {}", names.join(", "))
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    let mut out = io::stdout().lock();
    match command {
        Command::Validate { path } => cmd_validate(&mut out, &path),
        Command::Measure { path, measure, partition, direction, numeric } => {
            cmd_measure(&mut out, &path, measure, partition.as_deref(), direction.into(), numeric)
        }
        Command::Tripartite { a1, a2, a3, focus } => cmd_tripartite(&mut out, [a1, a2, a3], focus),
        Command::Random { modes, pure, squeeze_cap, temp_cap, seed, out: path } => {
            cmd_random(&mut out, modes, pure, squeeze_cap, temp_cap, seed, path)
        }
        Command::Verify { suite, trials, seed, tol } => cmd_verify(&mut out, suite, trials, seed, tol),
        Command::Sweep { family, param_range, measures, nu, out: path } => {
            let grid = sweep::parse_range(&param_range)?;
            if !nu.is_finite() || nu < 1.0 {
                return Err(Failure::usage("--nu must be finite and at least 1"));
            }
            match path {
                Some(p) => {
                    let file = fs::File::create(&p)
                        .map_err(|e| Failure::usage(format!("cannot create {}: {e}", p.display())))?;
                    sweep::write_sweep(file, family, &grid, &measures, nu)?;
                }
                None => sweep::write_sweep(&mut out, family, &grid, &measures, nu)?,
            }
            Ok(0)
        }
    }
}

fn write_err(e: io::Error) -> Failure {
    Failure::usage(format!("cannot write output: {e}"))
}

fn load(path: &std::path::Path) -> Result<CovarianceMatrix, Failure> {
    let m = CmDocument::read(path)?.to_matrix()?;
    Ok(CovarianceMatrix::new(m)?)
}

fn cmd_validate<W: Write>(out: &mut W, path: &std::path::Path) -> Result<u8, Failure> {
    let m = CmDocument::read(path)?.to_matrix()?;
    let r = validate(&m)?;
    let nu = r.nu_min.map_or_else(|| "undefined".to_string(), num);
    writeln!(
        out,
        "symmetric: {}, positive_definite: {}, physical: {}, nu_min: {nu}",
        r.symmetric, r.positive_definite, r.physical
    )
    .map_err(write_err)?;
    Ok(if r.physical { 0 } else { 1 })
}

fn default_partition(cm: &CovarianceMatrix, groups: usize, given: Option<&str>) -> Result<ModePartition, Failure> {
    let n = cm.n_modes();
    let p = match given {
        Some(text) => ModePartition::parse(text, n)?,
        None if n == groups => ModePartition::new((0..n).map(|i| vec![i]).collect(), n)?,
        None => return Err(Failure::usage(format!("--partition is required for a {n}-mode state"))),
    };
    if p.len() != groups {
        return Err(Failure::usage(format!("this measure needs {groups} groups, got {}", p.len())));
    }
    Ok(p)
}

fn witness_line(report: &MeasureReport) -> Option<String> {
    let list = |v: &[f64]| v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(" ");
    match &report.witness {
        Witness::None => None,
        Witness::Branch { homodyne } => Some(format!("branch: {}", if *homodyne { "homodyne" } else { "generic" })),
        Witness::Theta(t) => Some(format!("theta: {}", num(*t))),
        Witness::Seed { lambda, phi } => Some(format!("lambda: {}, phi: {}", num(*lambda), num(*phi))),
        Witness::SeedMatrix(v) => Some(format!("seed: {}", list(v))),
        Witness::PureState(v) => Some(format!("pure_state: {}", list(v))),
    }
}

fn print_report<W: Write>(out: &mut W, report: &MeasureReport) -> Result<(), Failure> {
    writeln!(out, "{}", num(report.value)).map_err(write_err)?;
    let method = match report.method {
        gauss_renyi::Method::ClosedForm => "closed_form",
        gauss_renyi::Method::Numeric => "numeric",
    };
    writeln!(out, "method: {method}, converged: {}, iterations: {}", report.converged, report.iterations)
        .map_err(write_err)?;
    if let Some(line) = witness_line(report) {
        writeln!(out, "witness: {line}").map_err(write_err)?;
    }
    Ok(())
}

fn cmd_measure<W: Write>(
    out: &mut W,
    path: &std::path::Path,
    measure: Measure,
    partition: Option<&str>,
    direction: Direction,
    numeric: bool,
) -> Result<u8, Failure> {
    let cm = load(path)?;
    let scalar = |out: &mut W, v: f64| writeln!(out, "{}", num(v)).map_err(write_err);
    let subsystem = |cm: &CovarianceMatrix| -> Result<CovarianceMatrix, Failure> {
        match partition {
            Some(text) => {
                let p = ModePartition::parse(text, cm.n_modes())?;
                Ok(reduce(cm, p.group(0))?)
            }
            None => Ok(cm.clone()),
        }
    };
    match measure {
        Measure::Renyi2 => scalar(out, renyi2_entropy(&subsystem(&cm)?)?)?,
        Measure::Vn => scalar(out, von_neumann_entropy(&subsystem(&cm)?)?)?,
        Measure::Mutual => scalar(out, mutual_information(&cm, &default_partition(&cm, 2, partition)?)?)?,
        Measure::Ssa => scalar(out, ssa_gap(&cm, &default_partition(&cm, 3, partition)?)?)?,
        Measure::Classical => {
            let p = default_partition(&cm, 2, partition)?;
            let r = if numeric {
                classical_correlations_numeric(&cm, &p, direction, NumericOptions::default())?
            } else {
                classical_correlations(&cm, &p, direction)?
            };
            print_report(out, &r)?;
        }
        Measure::Discord => {
            let p = default_partition(&cm, 2, partition)?;
            let r = if numeric {
                let j = classical_correlations_numeric(&cm, &p, direction, NumericOptions::default())?;
                MeasureReport { value: mutual_information(&cm, &p)? - j.value, ..j }
            } else {
                discord(&cm, &p, direction)?
            };
            print_report(out, &r)?;
        }
        Measure::Entanglement => {
            let p = default_partition(&cm, 2, partition)?;
            let (a, b) = (p.group(0), p.group(1));
            if a.len() == 1 && b.len() == 1 {
                print_report(out, &e2_two_mode(&reduce(&cm, &[a[0], b[0]])?)?)?;
            } else if p.covers(cm.n_modes()) {
                scalar(out, e2_pure_bipartition(&cm, &p).map_err(|e| match e {
                    Error::NotPure(_) => Failure::usage(
                        "entanglement across multimode groups is available for pure states only",
                    ),
                    other => other.into(),
                })?)?;
            } else {
                return Err(Failure::usage(
                    "multimode groups must cover every mode of a pure state",
                ));
            }
        }
    }
    Ok(0)
}

fn cmd_tripartite<W: Write>(out: &mut W, a: [f64; 3], focus: Option<usize>) -> Result<u8, Failure> {
    let inv = ThreeModeLocalInvariants::new(a[0], a[1], a[2])?;
    if let Some(f) = focus {
        if f > 2 {
            return Err(Failure::usage("--focus must be 0, 1 or 2"));
        }
    }
    let class = InseparabilityClass::of(&inv);
    let w = |e: io::Error| write_err(e);
    writeln!(
        out,
        "{:<6}{:>18}{:>18}{:>18}{:>18}{:>18}",
        "focus", "E2(i:jk)", "E2(i:j)", "E2(i:k)", "residual_E2", "residual_D2"
    )
    .map_err(w)?;
    let pair_e = |i: usize, j: usize| 0.5 * gauss_renyi::g_reduced(&inv, (i, j)).map(f64::ln).unwrap_or(f64::NAN);
    for (i, &ai) in a.iter().enumerate() {
        if focus.is_some_and(|f| f != i) {
            continue;
        }
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let (j, k) = (j.min(k), j.max(k));
        writeln!(
            out,
            "{:<6}{:>18}{:>18}{:>18}{:>18}{:>18}",
            i,
            num(ai.ln()),
            num(pair_e(i, j)),
            num(pair_e(i, k)),
            num(residual_e2(&inv, i)?),
            num(residual_d2(&inv, i)?)
        )
        .map_err(w)?;
    }
    let branches: Vec<String> = class
        .branches
        .iter()
        .map(|((i, j), b)| format!("({i},{j}) {}", format!("{b:?}").to_lowercase()))
        .collect();
    writeln!(out, "branches: {}", branches.join(", ")).map_err(w)?;
    writeln!(out, "fully_inseparable: {}", class.fully_inseparable).map_err(w)?;
    let invariant = residual_e2_invariant(&inv).map_or_else(|_| "n/a".to_string(), num);
    writeln!(out, "invariant_residual: {invariant}").map_err(w)?;
    Ok(0)
}

fn cmd_random<W: Write>(
    out: &mut W,
    modes: usize,
    pure: bool,
    squeeze_cap: f64,
    temp_cap: f64,
    seed: u64,
    path: Option<PathBuf>,
) -> Result<u8, Failure> {
    if modes == 0 {
        return Err(Failure::usage("--modes must be positive"));
    }
    let mut rng = trial_rng(seed);
    let cm = if pure {
        random_pure_cm(modes, squeeze_cap, &mut rng)?
    } else {
        random_mixed_cm(modes, squeeze_cap, temp_cap, &mut rng)?
    };
    let label = format!("random {} seed {seed}", if pure { "pure" } else { "mixed" });
    let text = CmDocument::from_matrix(cm.matrix(), Some(label)).to_json();
    match path {
        Some(p) => fs::write(&p, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes()).map_err(write_err)?,
    }
    Ok(0)
}

fn cmd_verify<W: Write>(out: &mut W, suite: Suite, trials: usize, seed: u64, tol: Option<f64>) -> Result<u8, Failure> {
    let report = run_campaign(suite, trials, seed, tol.unwrap_or(suite.default_tol()))?;
    let line = serde_json::to_string(&report).expect("reports serialize");
    writeln!(out, "{line}").map_err(write_err)?;
    if report.passed() {
        Ok(0)
    } else {
        eprintln!(
            "{} of {} trials failed; rerun the worst instance with --seed {} --trials 1",
            report.failures,
            report.trials,
            report.worst_seed.map_or_else(|| "?".into(), |s| s.to_string())
        );
        Ok(3)
    }
}
