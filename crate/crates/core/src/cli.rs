//! Command implementations behind the `forrel` binary.
//!
//! Functions are given either as a path to a truth-table file or inline as
//! a 0/1 string of length `2^n` (`1` marks the inputs where `f = -1`).
//! Outcome bitstrings list the register first, then the query register.

use std::ffi::OsString;
use std::path::Path;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bits::parse_bits;
use crate::boolfn::{dual, is_balanced, is_bent, parse_truth_table, TruthTable};
use crate::circuits::{a32, a33, algorithm1, deutsch_jozsa, forrelation2_circuit, Construction, RegisterPrep};
use crate::error::{Error, Result};
use crate::protocols::{
    check_resilient, check_uncorrelated, closed_form, estimate_cross_correlation_point, sample_cross_correlation,
    strategy_curve, CheckConfig, Method, Mode, StrategyValues, Verdict, DEFAULT_PREFILTER_SHOTS,
};
use crate::qsim::{round_probability, sample};
use crate::spectra::{auto_correlation, forrelation_k, resiliency_order, walsh_transform, SpectrumExport};

pub const SEED_ENV: &str = "FORREL_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "forrel",
    version,
    about = "Boolean-function spectra and Forrelation circuits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectra and structural properties of one function.
    Analyze { file: String },
    /// Exact k-fold Forrelation of 2 to 4 functions.
    Forrelation {
        #[arg(long, value_delimiter = ',', required = true)]
        fns: Vec<String>,
    },
    /// Run one of the circuits and print its distribution or sampled counts.
    #[command(group(ArgGroup::new("how").args(["exact", "shots"])))]
    Simulate {
        #[arg(long, value_enum)]
        circuit: CircuitKind,
        #[arg(long, value_delimiter = ',', required = true)]
        fns: Vec<String>,
        /// Register preparation for `alg1`: `point:<bits>`, `uniform` or `dicke:<weight>`.
        #[arg(long, default_value = "uniform")]
        variant: String,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        /// Print the circuit instead of running it.
        #[arg(long)]
        dump: bool,
    },
    /// Resiliency or uncorrelatedness check with a verdict report.
    #[command(group(ArgGroup::new("property").args(["resilient", "uncorrelated"]).required(true)))]
    Check {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        fn2: Option<String>,
        #[arg(long)]
        resilient: Option<usize>,
        #[arg(long)]
        uncorrelated: Option<usize>,
        #[arg(long, value_enum, default_value = "flat")]
        method: MethodArg,
        /// Oracle queries available to the sampled search.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
        /// Decide from exact probabilities instead of sampling.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = DEFAULT_PREFILTER_SHOTS)]
        prefilter_shots: u64,
        /// Exit with status 1 when the verdict is REFUTED.
        #[arg(long)]
        fail_on_refute: bool,
    },
    /// Signed estimate of C_{f,g}(y) / 2^n by amplitude estimation.
    Estimate {
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        fns: Vec<String>,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
    },
    /// Sample the uniform-register circuit and tag the u‖0^n outcomes.
    Correlate {
        #[arg(long, value_delimiter = ',', required = true)]
        fns: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        shots: u64,
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
    },
    /// CSV of the four Walsh-sampling strategies over a grid of p.
    Curves {
        #[arg(long = "fn", requires = "set")]
        function: Option<String>,
        /// Comma-separated Walsh indices, e.g. `00,01`.
        #[arg(long, requires = "function")]
        set: Option<String>,
        /// `start:stop:step`.
        #[arg(long, default_value = "0:1:0.01")]
        pgrid: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CircuitKind {
    Dj,
    Forr2,
    A33,
    A32,
    Alg1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Flat,
    Dicke,
}

/// What a command produced: text for stdout and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

/// Exit status for a failed command: `2` for bad input, `3` when a
/// simulated result disagrees with its classical oracle.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SimulationInconsistency(_) => 3,
        _ => 2,
    }
}

/// Parses `args` (program name first) and runs the command, printing to
/// stdout and stderr. Returns the process exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(command: Command) -> Result<Output> {
    match command {
        Command::Analyze { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {file}: {e}")))?;
            let f = parse_truth_table(&text)?;
            json(&analyze(&f))
        }
        Command::Forrelation { fns } => {
            let fs = load_all(&fns)?;
            json(&forrelation_k(&fs)?)
        }
        Command::Simulate {
            circuit,
            fns,
            variant,
            exact: _,
            shots,
            seed,
            dump,
        } => {
            let fs = load_all(&fns)?;
            let c = build(circuit, &fs, &variant)?;
            if dump {
                return json(&c);
            }
            let dist = c.distribution()?;
            match shots {
                Some(shots) => json(&sample(&dist, shots, seed)?),
                None => json(&dist),
            }
        }
        Command::Check {
            function,
            fn2,
            resilient,
            uncorrelated,
            method,
            budget,
            seed,
            exact,
            prefilter_shots,
            fail_on_refute,
        } => {
            let f = load(&function)?;
            let config = CheckConfig {
                budget,
                seed,
                mode: if exact { Mode::Exact } else { Mode::Sampled },
                prefilter_shots,
            };
            let verdict = match (resilient, uncorrelated) {
                (Some(m), _) => check_resilient(&f, m, &config)?,
                (None, Some(m)) => {
                    let g = match fn2 {
                        Some(g) => load(&g)?,
                        None => f.clone(),
                    };
                    let method = match method {
                        MethodArg::Flat => Method::Flat,
                        MethodArg::Dicke => Method::Dicke,
                    };
                    check_uncorrelated(&f, &g, m, method, &config)?
                }
                (None, None) => unreachable!("clap requires one property"),
            };
            let mut out = json(&verdict)?;
            if fail_on_refute && verdict.verdict == Verdict::Refuted {
                out.code = 1;
            }
            Ok(out)
        }
        Command::Estimate {
            fns,
            y,
            epsilon,
            delta,
            seed,
        } => {
            let (f, g) = pair(&fns)?;
            let y = parse_bits(&y, f.n())?;
            json(&estimate_cross_correlation_point(&f, &g, y, epsilon, delta, seed)?)
        }
        Command::Correlate { fns, shots, seed } => {
            let (f, g) = pair(&fns)?;
            json(&sample_cross_correlation(&f, &g, shots, seed)?)
        }
        Command::Curves { function, set, pgrid } => {
            let grid = parse_grid(&pgrid)?;
            let mut csv = String::from("p,dj_once,dj_twice,dj_aa1,a33,source\n");
            for p in grid {
                csv.push_str(&csv_row(p, &closed_form(p), "closed"));
            }
            if let (Some(function), Some(set)) = (function, set) {
                let f = load(&function)?;
                let indices = set
                    .split(',')
                    .map(|s| parse_bits(s.trim(), f.n()))
                    .collect::<Result<Vec<_>>>()?;
                let curve = strategy_curve(&f, &indices)?;
                csv.push_str(&csv_row(curve.p, &curve.simulated, "simulated"));
            }
            Ok(Output::ok(csv))
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<Output> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidArgument(format!("cannot serialize output: {e}")))?;
    text.push('\n');
    Ok(Output::ok(text))
}

/// Reads a function from a file path, or from an inline 0/1 string.
pub fn load(arg: &str) -> Result<TruthTable> {
    if Path::new(arg).is_file() {
        let text =
            std::fs::read_to_string(arg).map_err(|e| Error::InvalidArgument(format!("cannot read {arg}: {e}")))?;
        return parse_truth_table(&text);
    }
    let len = arg.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "{arg:?} is neither a file nor a 0/1 string of length 2^n"
        )));
    }
    parse_truth_table(&format!("n={}\n{arg}", len.trailing_zeros()))
}

fn load_all(args: &[String]) -> Result<Vec<TruthTable>> {
    args.iter().map(|s| load(s)).collect()
}

fn pair(args: &[String]) -> Result<(TruthTable, TruthTable)> {
    match load_all(args)?.as_slice() {
        [f] => Ok((f.clone(), f.clone())),
        [f, g] => Ok((f.clone(), g.clone())),
        other => Err(Error::InvalidArgument(format!(
            "expected 1 or 2 functions, got {}",
            other.len()
        ))),
    }
}

fn build(kind: CircuitKind, fs: &[TruthTable], variant: &str) -> Result<Construction> {
    let need = match kind {
        CircuitKind::Dj => 1,
        CircuitKind::Forr2 | CircuitKind::Alg1 => 2,
        CircuitKind::A33 | CircuitKind::A32 => 3,
    };
    if fs.len() != need {
        return Err(Error::InvalidArgument(format!(
            "{kind:?} takes {need} functions, got {}",
            fs.len()
        )));
    }
    match kind {
        CircuitKind::Dj => deutsch_jozsa(&fs[0]),
        CircuitKind::Forr2 => forrelation2_circuit(&fs[0], &fs[1]),
        CircuitKind::A33 => a33(&fs[0], &fs[1], &fs[2]),
        CircuitKind::A32 => a32(&fs[0], &fs[1], &fs[2]),
        CircuitKind::Alg1 => algorithm1(parse_variant(variant, fs[0].n())?, &fs[0], &fs[1]),
    }
}

pub fn parse_variant(text: &str, n: usize) -> Result<RegisterPrep> {
    let bad = || {
        Error::InvalidArgument(format!(
            "bad variant {text:?}; use point:<bits>, uniform or dicke:<weight>"
        ))
    };
    match text.split_once(':') {
        None if text == "uniform" => Ok(RegisterPrep::Uniform),
        Some(("point", bits)) => Ok(RegisterPrep::Point(parse_bits(bits, n)?)),
        Some(("dicke", k)) => Ok(RegisterPrep::Dicke(k.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

/// Grid points `start, start + step, …, stop`, rounded to 12 decimals.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidArgument(format!("bad grid {text:?}; use start:stop:step"));
    let parts: Vec<f64> = text
        .split(':')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if !(0.0..=1.0).contains(&start) || !(start..=1.0).contains(&stop) || step <= 0.0 {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| round_probability(start + i as f64 * step)).collect())
}

fn csv_row(p: f64, v: &StrategyValues, source: &str) -> String {
    let cells: Vec<String> = std::iter::once(p)
        .chain(v.as_array())
        .map(|x| format!("{:?}", round_probability(x)))
        .collect();
    format!("{},{source}\n", cells.join(","))
}

#[derive(Debug, Serialize)]
pub struct Analysis<'a> {
    pub n: usize,
    pub walsh: SpectrumExport<'a>,
    pub autocorrelation: SpectrumExport<'a>,
    pub balanced: bool,
    pub bent: bool,
    pub dual: Option<String>,
    pub resiliency_order: i32,
    pub parseval: Parseval,
}

#[derive(Debug, Serialize)]
pub struct Parseval {
    pub energy: i64,
    pub expected: i64,
    pub holds: bool,
}

fn analyze(f: &TruthTable) -> serde_json::Value {
    let walsh = walsh_transform(f);
    let auto = auto_correlation(f);
    let expected = 1i64 << (2 * f.n());
    let report = Analysis {
        n: f.n(),
        walsh: walsh.export(),
        autocorrelation: auto.export(),
        balanced: is_balanced(f),
        bent: is_bent(f),
        dual: dual(f).ok().map(|d| d.bit_string()),
        resiliency_order: resiliency_order(f),
        parseval: Parseval {
            energy: walsh.energy(),
            expected,
            holds: walsh.energy() == expected,
        },
    };
    serde_json::to_value(&report).expect("analysis serializes")
}
