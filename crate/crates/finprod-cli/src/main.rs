//! `finprod` — batch CLI over the finprod library.
//!
//! Exit codes are part of the interface:
//! 0 success (or: the words are equivalent), 1 the words are not
//! equivalent, 2 input error, 3 the input is valid but the domain is empty
//! (no events in a survival input), 4 a required commutation hypothesis
//! fails, 5 an internal identity was violated (a library bug by
//! definition).

mod formats;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use finprod::applications::{build_risk_table, det_diag, kaplan_meier, SurvivalError};
use finprod::heap::{heap_prod, PosetError};
use finprod::trace::trace_equiv;
use finprod::words::{poly_expand, product_one_plus, ExpandError, NumSemiring};
use finprod::{FiniteIndexSet, FnFamily, MulMonoid};

#[derive(Parser)]
#[command(name = "finprod", version, about = "Finite products over index sets: survival curves, traces, heaps, expansions, determinants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kaplan–Meier survival curve from a `time,event` CSV.
    Km {
        /// Input CSV (header `time,event`; event is 1, censored is 0).
        #[arg(long)]
        input: PathBuf,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Fractional digits in the output (trailing zeros trimmed).
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        precision: u32,
    },
    /// Decide whether two words are equivalent over an independence alphabet.
    TraceEq {
        /// Alphabet file: line 1 lists the letters, later lines one
        /// independent pair each.
        #[arg(long)]
        alphabet: PathBuf,
        /// First word, as a string of single-character letters.
        word1: String,
        /// Second word.
        word2: String,
    },
    /// Evaluate an integer-labeled poset file as a heap product.
    HeapEval {
        /// Poset file: `node <name> <label>` and `lt <a> <b>` lines.
        #[arg(long)]
        input: PathBuf,
    },
    /// Print Π(1+bᵢ) and its subset-sum expansion, checking they agree.
    Expand {
        /// The factors bᵢ, as exact rationals (at most 20).
        #[arg(allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Determinant of the diagonal matrix with the given entries.
    DetDiag {
        /// Diagonal entries, as exact rationals; none means the 0×0 matrix.
        #[arg(allow_hyphen_values = true)]
        values: Vec<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn domain_empty(message: impl Into<String>) -> Self {
        Self { code: 3, message: message.into() }
    }

    fn hypothesis(message: impl Into<String>) -> Self {
        Self { code: 4, message: message.into() }
    }

    fn identity_violation(message: impl Into<String>) -> Self {
        Self { code: 5, message: message.into() }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Km { input, output, precision } => cmd_km(&input, output.as_deref(), precision),
        Command::TraceEq { alphabet, word1, word2 } => cmd_trace_eq(&alphabet, &word1, &word2),
        Command::HeapEval { input } => cmd_heap_eval(&input),
        Command::Expand { values } => cmd_expand(&values),
        Command::DetDiag { values } => cmd_det_diag(&values),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn parse_scalars(values: &[String]) -> Result<Vec<BigRational>, Failure> {
    values.iter().map(|v| formats::parse_rational(v).map_err(Failure::input)).collect()
}

fn cmd_km(input: &Path, output: Option<&Path>, precision: u32) -> Result<u8, Failure> {
    let text = read_input(input)?;
    let records = formats::parse_survival_csv(&text)
        .map_err(|msg| Failure::input(format!("{}: {msg}", input.display())))?;
    let table = build_risk_table(&records).map_err(|e| match e {
        SurvivalError::NoEvents => Failure::domain_empty("no events in input; the curve has no steps"),
        other => Failure::input(other.to_string()),
    })?;
    let rendered = formats::render_curve(&kaplan_meier(&table), precision);
    match output {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(0)
}

fn cmd_trace_eq(alphabet_path: &Path, word1: &str, word2: &str) -> Result<u8, Failure> {
    let text = read_input(alphabet_path)?;
    let alphabet = formats::parse_alphabet(&text)
        .map_err(|msg| Failure::input(format!("{}: {msg}", alphabet_path.display())))?;
    let u: Vec<char> = word1.chars().collect();
    let v: Vec<char> = word2.chars().collect();
    let equivalent =
        trace_equiv(&u, &v, &alphabet).map_err(|e| Failure::input(e.to_string()))?;
    if equivalent {
        println!("equivalent");
        Ok(0)
    } else {
        println!("not-equivalent");
        Ok(1)
    }
}

fn cmd_heap_eval(input: &Path) -> Result<u8, Failure> {
    let text = read_input(input)?;
    let poset = formats::parse_poset(&text)
        .map_err(|msg| Failure::input(format!("{}: {msg}", input.display())))?;
    let value = heap_prod(&poset, &MulMonoid::<BigInt>::new()).map_err(|e| match e {
        PosetError::NonCommutingPair(_, _) => Failure::hypothesis(e.to_string()),
        other => Failure::input(other.to_string()),
    })?;
    println!("{value}");
    Ok(0)
}

fn cmd_expand(values: &[String]) -> Result<u8, Failure> {
    let factors = parse_scalars(values)?;
    let family = FnFamily(|i: &usize| factors.get(*i).cloned());
    let indices: FiniteIndexSet<usize> = (0..factors.len()).collect();
    let semiring = NumSemiring::<BigRational>::new();
    let product = product_one_plus(&family, &indices, &semiring)
        .map_err(|e| Failure::input(e.to_string()))?;
    let expanded = poly_expand(&family, &indices, &semiring).map_err(|e| match e {
        ExpandError::SetTooLarge { .. } => Failure::input(e.to_string()),
        ExpandError::Fold(other) => Failure::input(other.to_string()),
    })?;
    if product != expanded {
        return Err(Failure::identity_violation(format!(
            "product {product} and expansion {expanded} disagree"
        )));
    }
    println!("{product} {expanded} equal");
    Ok(0)
}

fn cmd_det_diag(values: &[String]) -> Result<u8, Failure> {
    let diagonal = parse_scalars(values)?;
    println!("{}", det_diag(&diagonal));
    Ok(0)
}
