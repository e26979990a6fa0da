//! Command-line front end: `eval`, `verify` and `catalogue`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::engine::{eval_fd, Engine};
use crate::error::Error;
use crate::formulas::{catalogue, catalogue_entries, find, sample_domain, verify_identity, Identity};
use crate::report::{Section, Settings, VerificationReport};
use crate::series::HgParams;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Default tolerance for `eval`, enough for the 15 printed digits.
pub const EVAL_TOL: f64 = 1e-15;
/// Default verdict tolerance for `verify`.
pub const VERIFY_TOL: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "lkit", version, about = "Hypergeometric functions and checks of their transformation formulas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate 2F1, Appell F1 or Lauricella F_D at one point.
    Eval(EvalArgs),
    /// Check catalogued identities at sampled parameters.
    Verify(VerifyArgs),
    /// Write the formula catalogue as JSON.
    Catalogue(CatalogueArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Function {
    #[value(name = "2f1")]
    F21,
    F1,
    Fd,
}

#[derive(clap::Args, Debug)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub function: Function,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub a: f64,
    /// Comma-separated; two entries for f1.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    pub b: Reals,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub c: f64,
    /// Argument of 2f1.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub z: Option<f64>,
    /// Arguments of fd (comma-separated), or the first argument of f1.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    pub x: Option<Reals>,
    /// Second argument of f1.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub y: Option<f64>,
    #[arg(long, default_value = "auto")]
    pub engine: Engine,
    #[arg(long, env = "LKIT_DEFAULT_TOL", value_parser = parse_real)]
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Formula id, or `all`.
    #[arg(long)]
    pub formula: String,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest relative residual counted as a pass.
    #[arg(long, env = "LKIT_DEFAULT_TOL", value_parser = parse_real)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "off")]
    pub oracle: Switch,
    #[arg(long, default_value = "auto")]
    pub engine: Engine,
    /// Report file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Zero the timestamp and timings so reruns are byte-identical.
    #[arg(long)]
    pub deterministic: bool,
}

#[derive(clap::Args, Debug)]
pub struct CatalogueArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses a decimal or a ratio such as `1/3` or `-7/6`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
            let d: f64 = d.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
            if d == 0.0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            n / d
        }
        None => s.parse().map_err(|_| format!("not a number: `{s}`"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not finite: `{s}`"))
    }
}

/// Comma-separated list of reals.
#[derive(Clone, Debug, PartialEq)]
pub struct Reals(pub Vec<f64>);

pub fn parse_list(s: &str) -> Result<Reals, String> {
    s.split(',').map(parse_real).collect::<Result<_, _>>().map(Reals)
}

/// `%.15g`-style formatting.
pub fn fmt_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..digits as i32).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
        // rounding may carry into a new digit, e.g. 9.99.. -> 10
        s
    } else {
        let s = format!("{:.*e}", digits - 1, v);
        let (m, e) = s.split_once('e').unwrap();
        let m = if m.contains('.') { m.trim_end_matches('0').trim_end_matches('.') } else { m };
        format!("{m}e{e}")
    }
}

fn exit_for(e: &Error) -> i32 {
    if e.is_domain() {
        EXIT_DOMAIN
    } else {
        EXIT_ENGINE
    }
}

fn cmd_eval(args: &EvalArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let tol = args.tol.unwrap_or(EVAL_TOL);
    let (b, x) = match args.function {
        Function::F21 => match (args.b.0.as_slice(), args.z) {
            ([b], Some(z)) => (vec![*b], vec![z]),
            _ => {
                let _ = writeln!(err, "error: 2f1 needs one --b and --z");
                return EXIT_DOMAIN;
            }
        },
        Function::F1 => match (args.b.0.as_slice(), args.x.as_ref().map(|x| x.0.as_slice()), args.y) {
            ([b1, b2], Some([x]), Some(y)) => (vec![*b1, *b2], vec![*x, y]),
            _ => {
                let _ = writeln!(err, "error: f1 needs --b b1,b2, a single --x and --y");
                return EXIT_DOMAIN;
            }
        },
        Function::Fd => match &args.x {
            Some(x) if x.0.len() == args.b.0.len() => (args.b.0.clone(), x.0.clone()),
            _ => {
                let _ = writeln!(err, "error: fd needs --b and --x of equal length");
                return EXIT_DOMAIN;
            }
        },
    };
    match eval_fd(&HgParams::new(args.a, b, args.c), &x, args.engine, tol) {
        Ok((v, used)) => {
            let _ = writeln!(out, "{}", fmt_sig(v, 15));
            let _ = writeln!(out, "engine: {used} (requested {}, tol {tol:e})", args.engine);
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_for(&e)
        }
    }
}

fn run_section(f: &dyn Identity, args: &VerifyArgs, tol: f64) -> Section {
    let samples = match sample_domain(f, args.samples, args.seed) {
        Ok(s) => s,
        Err(e) => return Section::new(f.id(), f.reference(), Vec::new(), Some(e.to_string())),
    };
    let oracle = args.oracle == Switch::On;
    let mut rows: Vec<_> = samples
        .par_iter()
        .enumerate()
        .map(|(i, p)| verify_identity(f, p, tol, args.engine, oracle, i))
        .collect();
    if args.deterministic {
        for r in &mut rows {
            r.ms = 0.0;
        }
    }
    Section::new(f.id(), f.reference(), rows, None)
}

fn write_output(path: &Option<PathBuf>, text: &[u8], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let res = match path {
        Some(p) => fs::write(p, text),
        None => out.write_all(text),
    };
    match res {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write output: {e}");
            EXIT_IO
        }
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let tol = args.tol.unwrap_or(VERIFY_TOL);
    let records: Vec<Box<dyn Identity>> = if args.formula == "all" {
        catalogue()
    } else {
        match find(&args.formula) {
            Ok(f) => vec![f],
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_DOMAIN;
            }
        }
    };
    if args.samples == 0 {
        let _ = writeln!(err, "error: --samples must be at least 1");
        return EXIT_DOMAIN;
    }
    let sections: Vec<Section> = records.iter().map(|f| run_section(f.as_ref(), args, tol)).collect();
    let settings = Settings {
        samples: args.samples,
        seed: args.seed,
        tol,
        engine: args.engine,
        oracle: args.oracle == Switch::On,
    };
    let mut report = VerificationReport::new(settings, sections);
    if args.deterministic {
        report.generated_at = 0;
    }
    let text = match args.format {
        Format::Json => report.to_json().map(|s| s + "\n"),
        Format::Csv => report.to_csv(),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_IO;
        }
    };
    let code = write_output(&args.out, text.as_bytes(), out, err);
    if code != EXIT_OK {
        return code;
    }
    for s in &report.sections {
        let _ = writeln!(
            err,
            "{:<10} {}/{} passed, max residual {}",
            s.formula_id,
            s.summary.passed,
            s.summary.samples,
            s.summary.max_residual.map(|r| format!("{r:.2e}")).unwrap_or_else(|| "-".into())
        );
        if let Some(e) = &s.error {
            let _ = writeln!(err, "{:<10} {e}", "");
        }
    }
    if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn cmd_catalogue(args: &CatalogueArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match serde_json::to_string_pretty(&catalogue_entries()) {
        Ok(s) => write_output(&args.out, (s + "\n").as_bytes(), out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_IO
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
        }
    };
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, out, err),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Catalogue(a) => cmd_catalogue(a, out, err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("lkit").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_real("1/3").unwrap(), 1.0 / 3.0);
        assert_eq!(parse_real("-7/6").unwrap(), -7.0 / 6.0);
        assert_eq!(parse_real("0.25").unwrap(), 0.25);
        assert!(parse_real("1/0").is_err());
        assert!(parse_real("x").is_err());
        assert_eq!(parse_list("1/3,1/3,1/6").unwrap().0, vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0]);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(2.0 * std::f64::consts::LN_2, 15), "1.38629436111989");
        assert_eq!(fmt_sig(1.0, 15), "1");
        assert_eq!(fmt_sig(-0.000123456, 3), "-0.000123");
        assert_eq!(fmt_sig(1.5e20, 15), "1.5e20");
    }

    #[test]
    fn eval_outputs() {
        let (code, out, _) = run_str(&["eval", "--fn", "2f1", "--a", "1", "--b", "1", "--c", "2", "--z", "0.5"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next().unwrap(), "1.38629436111989");
        assert!(out.contains("engine: series"));
        let (code, out, _) = run_str(&["eval", "--fn", "fd", "--a", "0.5", "--b", "1/3,1/3,1/6", "--c", "7/6", "--x", "0,0,0"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next().unwrap(), "1");
    }

    #[test]
    fn eval_exit_codes() {
        let (code, _, _) = run_str(&["eval", "--fn", "2f1", "--a", "1", "--b", "1", "--c", "-2", "--z", "0.5"]);
        assert_eq!(code, EXIT_DOMAIN);
        let (code, _, _) = run_str(&["eval", "--fn", "2f1", "--a", "1", "--b", "1", "--c", "2", "--z", "2", "--engine", "euler"]);
        assert_eq!(code, EXIT_DOMAIN);
        let (code, _, _) = run_str(&["eval", "--fn", "2f1", "--a", "1", "--b", "1", "--c", "2", "--z", "0.9999999", "--engine", "series", "--tol", "1e-300"]);
        assert_eq!(code, EXIT_ENGINE);
    }
}
