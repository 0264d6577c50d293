//! The `siegelfc` command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analysis::{
    bessel_period, scan_fundamental, scan_half, scan_primitive, sieve_sum_direct,
    sieve_sum_rearranged,
};
use crate::arith::is_prime;
use crate::bqf::ClassGroup;
use crate::checks::run_suite;
use crate::error::{Error, Result};
use crate::halfint::extract_half_integral;
use crate::jacobi::jacobi_cusp;
use crate::siegel::SiegelForm;
use crate::table::Table;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 5;

const EXIT_CODES: &str = "\
Exit codes:
  0  success (for `check`: every test passed)
  1  I/O failure
  2  usage error
  3  parse failure or invariant violation
  4  precision exhausted
  5  a verification check failed";

#[derive(Parser, Debug)]
#[command(
    name = "siegelfc",
    version,
    about = "Fourier coefficients of Siegel and half-integral weight cusp forms",
    after_help = EXIT_CODES
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Jacobi10,
    Jacobi12,
    Siegel10,
    Siegel12,
    HalfEz10,
    HalfEz12,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanMode {
    Fundamental,
    Primitive,
    Half,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Theta,
    Ez,
    Inversion,
    Sieve,
    Doubling,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a coefficient table for one of the built-in forms.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Discriminant bound: coefficients with |D| < prec.
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        prec: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Squarefree d < X carrying a nonzero coefficient.
    Scan {
        #[arg(long)]
        form: PathBuf,
        #[arg(long, value_enum)]
        mode: ScanMode,
        #[arg(long = "X", value_parser = clap::value_parser!(u64).range(1..))]
        x: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Half-integral weight form extracted from a Siegel table at an odd prime.
    Extract {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        prec: u64,
    },
    /// Bessel periods R(F, K, Λ) for the class group of discriminant −disc.
    Bessel {
        #[arg(long)]
        form: PathBuf,
        /// d or −d; the class group of Q(√−d) is used.
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        /// Restrict to one character (index into the character list).
        #[arg(long = "char")]
        chi: Option<usize>,
    },
    /// Direct and squarefree-sieve forms of S(M, X; f).
    Sieve {
        #[arg(long)]
        form: PathBuf,
        #[arg(long = "M", value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(long = "X")]
        x: f64,
        #[arg(long)]
        cutoff: u64,
    },
    /// Built-in verification suites.
    Check {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Corpus precision used by the suites.
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(i64).range(8..))]
        prec: i64,
    },
}

fn generate(kind: Kind, prec: i64) -> Result<Table> {
    let k = match kind {
        Kind::Jacobi10 | Kind::Siegel10 | Kind::HalfEz10 => 10,
        Kind::Jacobi12 | Kind::Siegel12 | Kind::HalfEz12 => 12,
    };
    let phi = jacobi_cusp(k, prec)?;
    Ok(match kind {
        Kind::Jacobi10 | Kind::Jacobi12 => Table::from_jacobi(&phi),
        Kind::Siegel10 | Kind::Siegel12 => {
            Table::from_siegel(&SiegelForm::maass_lift(&phi, prec)?)?
        }
        Kind::HalfEz10 | Kind::HalfEz12 => Table::from_half(&phi.ez_to_half()?),
    })
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::All => "all",
        Suite::Theta => "theta",
        Suite::Ez => "ez",
        Suite::Inversion => "inversion",
        Suite::Sieve => "sieve",
        Suite::Doubling => "doubling",
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Gen {
            kind,
            prec,
            out: path,
        } => {
            generate(kind, prec)?.save(&path)?;
        }
        Command::Scan {
            form,
            mode,
            x,
            format,
        } => {
            let table = Table::load(&form)?;
            let report = match mode {
                ScanMode::Fundamental => scan_fundamental(&table.to_siegel()?, x)?,
                ScanMode::Primitive => scan_primitive(&table.to_siegel()?, x)?,
                ScanMode::Half => scan_half(&table.to_half()?, x)?,
            };
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&report)?)?,
                Format::Csv => write!(out, "{}", report.to_csv())?,
            }
        }
        Command::Extract { form, p, prec } => {
            if p % 2 == 0 || !is_prime(p) {
                return Err(Error::invalid(format!("--p must be an odd prime, got {p}")));
            }
            let f = Table::load(&form)?.to_siegel()?;
            let h = extract_half_integral(&f, p, prec)?;
            writeln!(out, "{}", Table::from_half(&h).to_json())?;
        }
        Command::Bessel { form, disc, chi } => {
            let f = Table::load(&form)?.to_siegel()?;
            let group = ClassGroup::new(disc.abs())?;
            let chars = group.characters();
            let selected: Vec<usize> = match chi {
                Some(i) if i < chars.len() => vec![i],
                Some(i) => {
                    return Err(Error::invalid(format!(
                        "character index {i} out of range (h = {})",
                        chars.len()
                    )))
                }
                None => (0..chars.len()).collect(),
            };
            // one JSON object per line, one line per character
            for i in selected {
                let r = bessel_period(&f, &group, &chars[i])?;
                writeln!(out, "{}", json!({"char": i, "real": r.re, "imag": r.im}))?;
            }
        }
        Command::Sieve { form, m, x, cutoff } => {
            if !(x > 0.0) {
                return Err(Error::invalid("--X must be positive"));
            }
            let h = Table::load(&form)?.to_half()?;
            let direct = sieve_sum_direct(&h, m, x, cutoff)?;
            let rearranged = sieve_sum_rearranged(&h, m, x, cutoff)?;
            let scale = direct.abs().max(rearranged.abs());
            let relative_diff = if scale == 0.0 {
                0.0
            } else {
                (direct - rearranged).abs() / scale
            };
            writeln!(
                out,
                "{}",
                json!({"direct": direct, "rearranged": rearranged, "relative_diff": relative_diff})
            )?;
        }
        Command::Check { suite, prec } => {
            let results = run_suite(suite_name(suite), prec)?;
            let all_pass = results.iter().all(|r| r.pass);
            let doc = json!({"suite": suite_name(suite), "pass": all_pass, "results": results});
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            if !all_pass {
                return Ok(EXIT_CHECK_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command, returning
/// the process exit code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(err, "{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "siegelfc: {e}");
            e.exit_code()
        }
    }
}
