//! Command-line surface: `check`, `localize`, `hom` and `ext`.

pub mod config;
pub mod session;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::exangulated::AxiomVerdict;
use crate::localization::{to_json, CheckReport, LocalizationReport};

pub use config::{parse_input, SessionConfig};
pub use session::{DimReport, Session, SessionOptions};

/// Environment variable fixing the decomposition seed.
pub const SEED_VAR: &str = "EXANGULATE_SEED";

#[derive(Debug, Parser)]
#[command(name = "exangulate", version, about = "Check n-exangulated categories of modules and their localizations")]
pub struct Cli {
    /// Characteristic of the ground field, overriding [field] p.
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    /// Per-generator multiplicity bound, overriding [bounds] multiplicity.
    #[arg(long, global = true)]
    pub multiplicity_bound: Option<usize>,
    /// Write the JSON report to this path (`-` for standard output).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Print every witness.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check (C1)-(C4) and WIC on the category.
    Check { file: PathBuf },
    /// Localize and report every verdict.
    Localize { file: PathBuf },
    /// Dimension of Hom(X, Y).
    Hom { file: PathBuf, x: String, y: String },
    /// Dimension of E(C, A) = Ext^n(C, A).
    Ext { file: PathBuf, c: String, a: String },
}

/// Text printed to standard output, the JSON report and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub json: String,
    pub exit_code: i32,
}

/// Reads the seed from [`SEED_VAR`] when set.
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Semantic(format!("{SEED_VAR} must be an unsigned integer, got `{v}`"))),
        Err(_) => Ok(crate::quiverrep::DEFAULT_SEED),
    }
}

pub fn load(file: &Path, opts: SessionOptions) -> Result<Session> {
    let text = std::fs::read_to_string(file).map_err(|e| Error::InvalidInput(format!("{}: {e}", file.display())))?;
    Session::new(parse_input(&text)?, opts)
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> Result<Output> {
    let opts = SessionOptions { prime: cli.prime, multiplicity: cli.multiplicity_bound, seed: seed_from_env()? };
    match &cli.command {
        Command::Check { file } => {
            let rep = load(file, opts)?.check()?;
            Ok(Output { text: check_text(&rep, cli.verbose)?, json: to_json(&rep)?, exit_code: rep.exit_code })
        }
        Command::Localize { file } => {
            let rep = load(file, opts)?.localize()?;
            Ok(Output { text: localize_text(&rep, cli.verbose)?, json: to_json(&rep)?, exit_code: rep.exit_code })
        }
        Command::Hom { file, x, y } => dim_output(&load(file, opts)?.hom(x, y)?),
        Command::Ext { file, c, a } => dim_output(&load(file, opts)?.ext(c, a)?),
    }
}

fn dim_output(d: &DimReport) -> Result<Output> {
    let name = if d.kind == "hom" { "Hom" } else { "E" };
    let text = format!("dim {name}({}, {}) = {}\n", join(&d.first), join(&d.second), d.dim);
    Ok(Output { text, json: d.to_json()?, exit_code: 0 })
}

fn join(x: &[String]) -> String {
    if x.is_empty() {
        "0".into()
    } else {
        x.join(" + ")
    }
}

fn verdict_lines(out: &mut String, title: &str, vs: &[AxiomVerdict], verbose: bool) -> Result<()> {
    if vs.is_empty() {
        return Ok(());
    }
    writeln!(out, "{title}").ok();
    for v in vs {
        writeln!(out, "  {:<8} {}  ({} checked)", v.axiom, if v.pass { "pass" } else { "FAIL" }, v.checked).ok();
        if let Some(w) = &v.witness {
            writeln!(out, "           {}", w.detail).ok();
            if verbose {
                for l in to_json(w)?.lines() {
                    writeln!(out, "           {l}").ok();
                }
            }
        }
    }
    Ok(())
}

fn sequence_lines(out: &mut String, rep: &[crate::localization::SequenceRecord]) {
    if rep.is_empty() {
        return;
    }
    writeln!(out, "sequences").ok();
    for s in rep {
        let status = if s.distinguished {
            "distinguished".to_string()
        } else if s.n_exangle {
            "n-exangle, not distinguished".to_string()
        } else if let Some(f) = &s.failure {
            format!("not an n-exangle: {} side at X_{}, T = {}", f.side, f.position, f.test_object)
        } else if !s.is_complex {
            "not a complex".to_string()
        } else {
            "extension not attached".to_string()
        };
        writeln!(out, "  {}: {}  {}", s.name, s.terms.join(" → "), status).ok();
    }
}

pub fn check_text(rep: &CheckReport, verbose: bool) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "generators: {}", rep.generators.join(", ")).ok();
    verdict_lines(&mut out, "axioms", &rep.axioms, verbose)?;
    sequence_lines(&mut out, &rep.sequences);
    writeln!(out, "verdict: {} (exit {})", rep.verdict, rep.exit_code).ok();
    Ok(out)
}

pub fn localize_text(rep: &LocalizationReport, verbose: bool) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "generators: {}", rep.generators.join(", ")).ok();
    writeln!(out, "N: {}", if rep.nf.is_empty() { "0".to_string() } else { rep.nf.join(", ") }).ok();
    verdict_lines(&mut out, "base category", &rep.base_axioms, verbose)?;
    verdict_lines(&mut out, "multiplicative system", &rep.mr, verbose)?;
    if let Some(w) = &rep.weak_kc {
        verdict_lines(&mut out, "weak kernel-cokernel condition", std::slice::from_ref(w), verbose)?;
        if verbose {
            for f in rep.weak_kc_failures.iter().skip(1) {
                for l in to_json(f)?.lines() {
                    writeln!(out, "           {l}").ok();
                }
            }
        } else if rep.weak_kc_failures.len() > 1 {
            writeln!(out, "           ({} failures in total)", rep.weak_kc_failures.len()).ok();
        }
    }
    verdict_lines(&mut out, "localized category", &rep.localized_axioms, verbose)?;
    if let Some(e) = &rep.equivalence {
        writeln!(out, "equivalence with the quotient: {}", if e.pass { "pass" } else { "FAIL" }).ok();
    }
    sequence_lines(&mut out, &rep.sequences);
    for n in &rep.notes {
        writeln!(out, "note: {n}").ok();
    }
    writeln!(out, "verdict: {} (exit {})", rep.verdict, rep.exit_code).ok();
    Ok(out)
}

/// Parses arguments, runs, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(out) => {
            match cli.json.as_deref() {
                Some(p) if p == Path::new("-") => print!("{}", out.json),
                Some(p) => {
                    if let Err(e) = std::fs::write(p, &out.json) {
                        eprintln!("error: {}: {e}", p.display());
                        return 1;
                    }
                    print!("{}", out.text);
                }
                None => print!("{}", out.text),
            }
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
