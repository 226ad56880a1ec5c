//! The `gridfloer` command line. Every command writes a deterministic report
//! to `out`; exit status 0 means every check passed, 1 means a check failed
//! (the failing check is named), 2 means the input could not be used.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::alexander::{
    alexander_oracle, basepoint_factor, euler_characteristic, skein_factor, LaurentPoly,
};
use crate::complex::{
    build_complex, d_squared_check, sign_assignment, Coefficients, Flavor, RingSpec,
};
use crate::corpus::{bundled_corpus_dir, corpus_check, CorpusError};
use crate::grid::{GridDiagram, GridError, LinkStructure};
use crate::homology::{RankTable, Window};
use crate::invariants::{hat_table, minus_table, InvariantError};
use crate::skein::{skein_report, validate_template, SkeinError, SkeinTemplate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "gridfloer",
    version,
    about = "Knot Floer homology from grid diagrams"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also check the sign assignment and d^2 = 0 over the integers.
    #[arg(long, global = true)]
    pub signs: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a grid file and report whether it is a valid grid diagram.
    Validate { grid: PathBuf },
    /// Trace the link: components, crossings, writhe, Alexander polynomial.
    Trace { grid: PathBuf },
    /// Hat homology table.
    HfkHat { grid: PathBuf },
    /// Minus homology ranks on a window `m0:m1,s0:s1`.
    HfkMinus {
        grid: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        window: Window,
    },
    /// Euler characteristic of the tilde complex against the Alexander oracle.
    Euler { grid: PathBuf },
    /// Exhaustive checks on a skein template.
    SkeinValidate { template: PathBuf },
    /// Template checks plus the homological statements on a window.
    SkeinReport {
        template: PathBuf,
        #[arg(long, allow_hyphen_values = true, default_value = "-8:2,-4:4")]
        window: Window,
    },
    /// Check every entry of the corpus manifest.
    CorpusCheck {
        /// Corpus directory holding `manifest.txt`.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Grid { path: PathBuf, source: GridError },
    #[error("{path}: {source}")]
    Template { path: PathBuf, source: SkeinError },
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("cannot start {0} threads: {1}")]
    Threads(usize, rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Output(#[from] std::io::Error),
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(pass: bool) -> Outcome {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit status.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(Outcome::Pass) => 0,
        Ok(Outcome::Fail) => 1,
        Err(e @ (CliError::Grid { .. } | CliError::Template { .. })) if is_validation(&cli) => {
            let _ = writeln!(err, "invalid: {e}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// For the validating commands a rejected input is a failed check, not a
/// usage error.
fn is_validation(cli: &Cli) -> bool {
    matches!(
        cli.command,
        Command::Validate { .. } | Command::SkeinValidate { .. }
    )
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut buffer = Vec::new();
    let outcome = match cli.threads {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| CliError::Threads(k, e))?;
            pool.install(|| dispatch(cli, &mut buffer))
        }
        None => dispatch(cli, &mut buffer),
    };
    out.write_all(&buffer)?;
    outcome
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let tsv = cli.format == Format::Tsv;
    match &cli.command {
        Command::Validate { grid } => validate(&load_grid(grid)?, cli.signs, tsv, out),
        Command::Trace { grid } => trace(&load_grid(grid)?, tsv, out),
        Command::HfkHat { grid } => {
            let g = load_grid(grid)?;
            write_table(&hat_table(&g)?, tsv, out)?;
            Ok(Outcome::Pass)
        }
        Command::HfkMinus { grid, window } => {
            let g = load_grid(grid)?;
            write_table(&minus_table(&g, *window)?, tsv, out)?;
            Ok(Outcome::Pass)
        }
        Command::Euler { grid } => euler(&load_grid(grid)?, tsv, out),
        Command::SkeinValidate { template } => {
            let r = validate_template(&load_template(template)?)?;
            if tsv {
                write!(out, "{}", r.tsv())?;
            } else {
                write!(out, "{r}")?;
            }
            Ok(Outcome::from_pass(r.passed()))
        }
        Command::SkeinReport { template, window } => {
            let r = skein_report(&load_template(template)?, *window)?;
            if tsv {
                write!(out, "{}", r.tsv())?;
            } else {
                write!(out, "{r}")?;
            }
            Ok(Outcome::from_pass(r.passed()))
        }
        Command::CorpusCheck { corpus } => {
            let dir = corpus.clone().unwrap_or_else(bundled_corpus_dir);
            let r = corpus_check(&dir)?;
            if tsv {
                write!(out, "check\tbigrading\tlhs\trhs\tverdict\n{}", r.tsv())?;
            } else {
                write!(out, "{r}")?;
            }
            Ok(Outcome::from_pass(r.passed()))
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load_grid(path: &Path) -> Result<GridDiagram, CliError> {
    GridDiagram::parse(&read(path)?).map_err(|source| CliError::Grid {
        path: path.to_path_buf(),
        source,
    })
}

fn load_template(path: &Path) -> Result<SkeinTemplate, CliError> {
    SkeinTemplate::parse(&read(path)?).map_err(|source| CliError::Template {
        path: path.to_path_buf(),
        source,
    })
}

/// One `check<TAB>bigrading<TAB>lhs<TAB>rhs<TAB>verdict` row, or a text line.
fn row(
    out: &mut dyn Write,
    tsv: bool,
    check: &str,
    lhs: &str,
    rhs: &str,
    pass: bool,
) -> std::io::Result<()> {
    let verdict = if pass { "PASS" } else { "FAIL" };
    if tsv {
        writeln!(out, "{check}\t-\t{lhs}\t{rhs}\t{verdict}")
    } else {
        writeln!(out, "{verdict} {check}: {lhs} (expected {rhs})")
    }
}

fn validate(
    g: &GridDiagram,
    signs: bool,
    tsv: bool,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    if tsv {
        writeln!(out, "check\tbigrading\tlhs\trhs\tverdict")?;
    }
    let summary = format!("n={} components={}", g.size(), g.component_count());
    row(out, tsv, "grid", &summary, "valid", true)?;
    if !signs {
        return Ok(Outcome::Pass);
    }
    let mut pass = true;
    match sign_assignment(g).and_then(|s| s.check_axioms()) {
        Ok(c) => {
            let lhs = format!(
                "{} composite, {} vertical, {} horizontal",
                c.composite, c.vertical, c.horizontal
            );
            row(out, tsv, "signs.axioms", &lhs, "all hold", true)?;
        }
        Err(e) => {
            pass = false;
            row(out, tsv, "signs.axioms", &e.to_string(), "all hold", false)?;
        }
    }
    if pass {
        let ring = RingSpec::new(g.size()).with_coefficients(Coefficients::Integers);
        let c = build_complex(g, Flavor::Minus, &ring).map_err(InvariantError::from)?;
        let d2 = d_squared_check(&c);
        pass = d2.is_ok();
        let lhs = d2.err().map_or("0".into(), |w| w.to_string());
        row(out, tsv, "signs.d2-over-Z", &lhs, "0", pass)?;
    }
    Ok(Outcome::from_pass(pass))
}

fn trace(g: &GridDiagram, tsv: bool, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let l = LinkStructure::trace(g);
    let delta = alexander_oracle(&l);
    if tsv {
        writeln!(out, "components\t{}", l.ell)?;
        writeln!(out, "crossings\t{}", l.crossing_count())?;
        writeln!(out, "writhe\t{}", l.writhe())?;
        writeln!(out, "alexander\t{delta}")?;
        for c in &l.crossings {
            writeln!(out, "crossing\t{}\t{}\t{}", c.column, c.row, c.sign)?;
        }
    } else {
        writeln!(out, "components: {}", l.ell)?;
        writeln!(
            out,
            "crossings: {} (writhe {})",
            l.crossing_count(),
            l.writhe()
        )?;
        for c in &l.crossings {
            let sign = if c.sign > 0 { '+' } else { '-' };
            writeln!(out, "  {sign} at column {}, row {}", c.column, c.row)?;
        }
        writeln!(out, "alexander: {delta}")?;
    }
    Ok(Outcome::Pass)
}

/// `Delta * (t^(1/2) - t^(-1/2))^(l-1) * (1 - t^-1)^(n-l)`, the expected
/// Euler characteristic of the tilde complex up to units.
pub fn expected_euler(g: &GridDiagram, delta: &LaurentPoly) -> LaurentPoly {
    let ell = g.component_count();
    delta
        .mul(&skein_factor().pow(ell - 1))
        .mul(&basepoint_factor().pow(g.size() - ell))
}

fn euler(g: &GridDiagram, tsv: bool, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let chi = euler_characteristic(g);
    let delta = alexander_oracle(&LinkStructure::trace(g));
    let expected = expected_euler(g, &delta);
    let pass = chi.equivalent(&expected);
    if !tsv {
        writeln!(out, "euler: {chi}")?;
        writeln!(out, "alexander: {delta}")?;
    } else {
        writeln!(out, "check\tbigrading\tlhs\trhs\tverdict")?;
    }
    row(
        out,
        tsv,
        "euler.oracle",
        &chi.normalized().to_string(),
        &expected.normalized().to_string(),
        pass,
    )?;
    Ok(Outcome::from_pass(pass))
}

fn write_table(t: &RankTable, tsv: bool, out: &mut dyn Write) -> std::io::Result<()> {
    if tsv {
        writeln!(out, "m\ts\trank")?;
        for (m, s, r) in t.triples() {
            writeln!(out, "{m}\t{s}\t{r}")?;
        }
    } else {
        writeln!(out, "window {}", t.window)?;
        for (m, s, r) in t.triples() {
            writeln!(out, "({m},{s}) {r}")?;
        }
        writeln!(out, "total rank {}", t.total())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_cli(
            std::iter::once("gridfloer").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn euler_of_hopf_matches_link_formula() {
        let g = GridDiagram::parse("n=4; O=0,1,2,3; X=2,3,0,1").unwrap();
        let delta = alexander_oracle(&LinkStructure::trace(&g));
        assert!(euler_characteristic(&g).equivalent(&expected_euler(&g, &delta)));
    }

    #[test]
    fn window_with_leading_minus_parses() {
        let cli =
            Cli::try_parse_from(["gridfloer", "hfk-minus", "g", "--window", "-8:2,-4:4"]).unwrap();
        assert!(
            matches!(cli.command, Command::HfkMinus { window, .. } if window == Window::new((-8, 2), (-4, 4)))
        );
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["hfk-minus", "x.grid", "--window", "1:0"]).0, 2);
        let (code, _, err) = run_args(&["trace", "/nonexistent.grid"]);
        assert_eq!(code, 2);
        assert!(err.contains("cannot read"));
    }
}
