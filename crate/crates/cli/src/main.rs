mod commands;
mod report;
mod reproduce;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::report::Failure;

/// Hilbert-series obstructions, monomial certificates, Groebner bases and
/// truncated resolutions.
#[derive(Debug, Parser)]
#[command(name = "koszulkit", version)]
pub struct Cli {
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Scan order N for the obstruction series.
    #[arg(long, global = true, value_name = "N")]
    pub order: Option<usize>,
    /// Homological bound h for resolutions.
    #[arg(long, global = true, value_name = "h")]
    pub hbound: Option<usize>,
    /// Internal degree bound D for resolutions.
    #[arg(long, global = true, value_name = "D")]
    pub dbound: Option<u32>,
    /// Characteristic of the base field: 0 for the rationals, else a prime below 2^31.
    #[arg(long = "char", global = true, value_name = "p", default_value_t = 0)]
    pub characteristic: u64,
    /// Degree cap for Buchberger's algorithm and S-pair checks.
    #[arg(long, global = true, value_name = "d")]
    pub cap: Option<u32>,
    /// Ring/ideal/module description; `-` reads standard input.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert numerics of the c-th Veronese of k[x1..xn].
    Veronese { n: u64, c: u64 },
    /// Hilbert numerics of the Segre product of k[x1..xm] and k[y1..yn].
    Segre { m: u64, n: u64 },
    /// Coefficient scan of 1 - h(-z)/(1-z)^c with the sign test on g(-1).
    Obstruction {
        #[arg(long, num_args = 2, value_names = ["N", "C"], conflicts_with = "segre")]
        veronese: Option<Vec<u64>>,
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        segre: Option<Vec<u64>>,
    },
    /// Obstruction reports over a grid of parameters.
    Scan {
        #[arg(value_enum)]
        family: FamilyArg,
        /// First parameter range, e.g. `2..7` (inclusive).
        #[arg(long, default_value = "2..7", value_parser = parse_range)]
        first: RangeInclusive<u64>,
        /// Second parameter range.
        #[arg(long, default_value = "2..7", value_parser = parse_range)]
        second: RangeInclusive<u64>,
    },
    /// Complete-intersection plus 2-linear certificate for a quadratic monomial ideal.
    Monomial,
    /// Universally-Koszul derivation from the H(m) building blocks.
    Uk,
    /// Groebner basis of the input ideal, or the Veronese-2 kernel check.
    Gb {
        /// Check the kernel binomials of Sym(S_2) in n variables instead.
        #[arg(long, value_name = "n")]
        veronese2: Option<usize>,
    },
    /// Truncated minimal resolution of the module (default: k).
    Resolve,
    /// Linearity-defect lower bound of the module (default: k).
    Lind,
    /// Golod test for the map Q -> Q/(extra).
    Golod {
        /// Also compare Poincare series up to this internal degree.
        #[arg(long, value_name = "DEGREE")]
        serre: Option<u32>,
    },
    /// Koszul test: is the resolution of k linear within bounds?
    Koszul,
    /// Recomputes the published numeric values and reports PASS/FAIL.
    ReproducePaper,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    Veronese,
    Segre,
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: u64 = a.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
    let b: u64 = b.trim().parse().map_err(|_| format!("bad range end in `{s}`"))?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok(a..=b)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", report.emit(cli.json));
            match report.cross_check_failed() {
                true => ExitCode::from(Failure::CROSS_CHECK),
                false => ExitCode::SUCCESS,
            }
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
