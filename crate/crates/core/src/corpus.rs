//! The bundled corpus: grid and template files plus a manifest of expected
//! properties, each tagged with where the expected value comes from.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::alexander::{alexander_oracle, LaurentPoly};
use crate::grid::{GridDiagram, LinkStructure};
use crate::invariants::hat_table;
use crate::skein::{validate_template, Instantiation, SkeinTemplate};

pub const MANIFEST: &str = "manifest.txt";

/// Sources an expected value may cite.
pub const SOURCES: [&str; 5] = ["table", "fox", "drawing", "fixture", "pair"];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Missing {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("manifest line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// What an entry points at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Grid(String),
    Template(String),
    BadGrid(String),
    BadTemplate(String),
}

impl Subject {
    fn file(&self) -> &str {
        match self {
            Subject::Grid(f)
            | Subject::Template(f)
            | Subject::BadGrid(f)
            | Subject::BadTemplate(f) => f,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub key: String,
    pub value: String,
    pub source: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub subject: Subject,
    pub expected: Vec<Expectation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub entries: Vec<CorpusEntry>,
}

const GRID_KEYS: [&str; 4] = ["components", "crossings", "alexander", "hat"];
const TEMPLATE_KEYS: [&str; 4] = [
    "same_component",
    "alexander_plus",
    "alexander_minus",
    "alexander_zero",
];

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, CorpusError> {
        let mut entries = Vec::new();
        let mut current: Option<(usize, String, Option<Subject>, Vec<Expectation>)> = None;
        let finish = |cur: Option<(usize, String, Option<Subject>, Vec<Expectation>)>,
                      entries: &mut Vec<CorpusEntry>|
         -> Result<(), CorpusError> {
            if let Some((line, name, subject, expected)) = cur {
                let subject = subject.ok_or_else(|| CorpusError::Syntax {
                    line,
                    message: format!("entry `{name}` names no file"),
                })?;
                entries.push(CorpusEntry {
                    name,
                    subject,
                    expected,
                });
            }
            Ok(())
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: String| CorpusError::Syntax { line, message };
            if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                finish(current.take(), &mut entries)?;
                if entries.iter().any(|e| e.name == name) {
                    return Err(syntax(format!("duplicate entry `{name}`")));
                }
                current = Some((line, name.to_string(), None, Vec::new()));
                continue;
            }
            let (_, name, subject, expected) = current
                .as_mut()
                .ok_or_else(|| syntax("key before the first [entry]".into()))?;
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| syntax(format!("expected `key=value`, found `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let file_subject = match key {
                "grid" => Some(Subject::Grid(value.into())),
                "template" => Some(Subject::Template(value.into())),
                "bad_grid" => Some(Subject::BadGrid(value.into())),
                "bad_template" => Some(Subject::BadTemplate(value.into())),
                _ => None,
            };
            if let Some(s) = file_subject {
                if subject.replace(s).is_some() {
                    return Err(syntax(format!("entry `{name}` names two files")));
                }
                continue;
            }
            let known = GRID_KEYS.contains(&key) || TEMPLATE_KEYS.contains(&key) || key == "error";
            if !known {
                return Err(syntax(format!("unknown key `{key}`")));
            }
            let (value, source) = value
                .rsplit_once('@')
                .ok_or_else(|| syntax(format!("`{key}` has no @source")))?;
            let source = source.trim();
            if !SOURCES.contains(&source) {
                return Err(syntax(format!("unknown source `@{source}`")));
            }
            expected.push(Expectation {
                key: key.into(),
                value: value.trim().into(),
                source: source.into(),
                line,
            });
        }
        finish(current, &mut entries)?;
        for e in &entries {
            let allowed: &[&str] = match e.subject {
                Subject::Grid(_) => &GRID_KEYS,
                Subject::Template(_) => &TEMPLATE_KEYS,
                Subject::BadGrid(_) | Subject::BadTemplate(_) => &["error"],
            };
            if let Some(x) = e
                .expected
                .iter()
                .find(|x| !allowed.contains(&x.key.as_str()))
            {
                return Err(CorpusError::Syntax {
                    line: x.line,
                    message: format!("`{}` does not apply to entry `{}`", x.key, e.name),
                });
            }
        }
        Ok(Manifest { entries })
    }

    pub fn entry(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Runs every expectation against the files in `dir`.
    pub fn check(&self, dir: &Path) -> Result<CorpusReport, CorpusError> {
        let texts: Vec<String> = self
            .entries
            .iter()
            .map(|e| read(&dir.join(e.subject.file())))
            .collect::<Result<_, _>>()?;
        let checks = self
            .entries
            .par_iter()
            .zip(texts.par_iter())
            .map(|(e, text)| self.check_entry(e, text, &texts))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        Ok(CorpusReport { checks })
    }

    fn check_entry(&self, e: &CorpusEntry, text: &str, texts: &[String]) -> Vec<CorpusCheck> {
        let mut out = Vec::new();
        let mut push = |property: &str, x: Option<&Expectation>, observed: String, pass: bool| {
            out.push(CorpusCheck {
                entry: e.name.clone(),
                property: property.into(),
                expected: x.map_or("valid".into(), |x| format!("{} @{}", x.value, x.source)),
                observed,
                pass,
            })
        };
        match &e.subject {
            Subject::Grid(_) => match GridDiagram::parse(text) {
                Err(err) => push("parse", None, err.to_string(), false),
                Ok(g) => {
                    let link = LinkStructure::trace(&g);
                    for x in &e.expected {
                        let (observed, pass) = match x.key.as_str() {
                            "components" => count_check(x, link.ell),
                            "crossings" => count_check(x, link.crossing_count()),
                            "alexander" => poly_check(x, &alexander_oracle(&link)),
                            _ => self.hat_check(x, &g, texts),
                        };
                        push(&x.key, Some(x), observed, pass);
                    }
                }
            },
            Subject::Template(_) => match SkeinTemplate::parse(text) {
                Err(err) => push("parse", None, err.to_string(), false),
                Ok(t) => {
                    match validate_template(&t) {
                        Ok(r) => {
                            let good = r.verdicts.iter().filter(|v| v.pass).count();
                            let failing: Vec<&str> = r
                                .verdicts
                                .iter()
                                .filter(|v| !v.pass)
                                .map(|v| v.check.as_str())
                                .collect();
                            let observed = if failing.is_empty() {
                                format!("{good} checks pass")
                            } else {
                                format!("failing: {}", failing.join(", "))
                            };
                            push("validation", None, observed, failing.is_empty());
                        }
                        Err(err) => push("validation", None, err.to_string(), false),
                    }
                    for x in &e.expected {
                        let (observed, pass) = match x.key.as_str() {
                            "same_component" => {
                                let got = t.same_component().to_string();
                                let pass = got == x.value;
                                (got, pass)
                            }
                            key => {
                                let inst = match key {
                                    "alexander_plus" => Instantiation::PlusOnGPrime,
                                    "alexander_minus" => Instantiation::MinusOnG,
                                    _ => Instantiation::ZeroOnG,
                                };
                                poly_check(
                                    x,
                                    &alexander_oracle(&LinkStructure::trace(t.grid(inst))),
                                )
                            }
                        };
                        push(&x.key, Some(x), observed, pass);
                    }
                }
            },
            Subject::BadGrid(_) | Subject::BadTemplate(_) => {
                let err = match &e.subject {
                    Subject::BadGrid(_) => GridDiagram::parse(text).err().map(|e| e.to_string()),
                    _ => SkeinTemplate::parse(text).err().map(|e| e.to_string()),
                };
                for x in &e.expected {
                    let (observed, pass) = match &err {
                        Some(msg) => (msg.clone(), msg.contains(&x.value)),
                        None => ("accepted".into(), false),
                    };
                    push("error", Some(x), observed, pass);
                }
            }
        }
        out
    }

    fn hat_check(&self, x: &Expectation, g: &GridDiagram, texts: &[String]) -> (String, bool) {
        let observed = match hat_table(g) {
            Ok(t) => t.triples(),
            Err(err) => return (err.to_string(), false),
        };
        let expected = if x.source == "pair" {
            let other = self
                .entries
                .iter()
                .position(|e| e.name == x.value && matches!(e.subject, Subject::Grid(_)));
            let Some(k) = other else {
                return (format!("no grid entry `{}`", x.value), false);
            };
            match GridDiagram::parse(&texts[k]).map(|g| hat_table(&g)) {
                Ok(Ok(t)) => t.triples(),
                _ => return (format!("entry `{}` has no hat table", x.value), false),
            }
        } else {
            match parse_hat(&x.value) {
                Some(t) => t,
                None => return (format!("unreadable table `{}`", x.value), false),
            }
        };
        (format_hat(&observed), observed == expected)
    }
}

fn read(path: &Path) -> Result<String, CorpusError> {
    fs::read_to_string(path).map_err(|source| CorpusError::Missing {
        path: path.to_path_buf(),
        source,
    })
}

fn count_check(x: &Expectation, got: usize) -> (String, bool) {
    (got.to_string(), x.value.parse() == Ok(got))
}

fn poly_check(x: &Expectation, got: &LaurentPoly) -> (String, bool) {
    let expected: Result<Vec<i64>, _> = x.value.split(',').map(|c| c.trim().parse()).collect();
    let observed = coefficient_list(got);
    match expected {
        Ok(c) => {
            let pass = LaurentPoly::from_coeffs(0, &c).equivalent(got);
            (observed, pass)
        }
        Err(_) => (format!("unreadable polynomial `{}`", x.value), false),
    }
}

/// Normalized integer-exponent coefficients, lowest power first.
pub fn coefficient_list(p: &LaurentPoly) -> String {
    let p = p.normalized();
    match p.max_exp() {
        None => "0".into(),
        Some(top) => (0..=top)
            .step_by(2)
            .map(|e| p.coeff(e).to_string())
            .collect::<Vec<_>>()
            .join(","),
    }
}

/// Reads `m,s:rank` items separated by whitespace.
pub fn parse_hat(text: &str) -> Option<Vec<(i64, i64, usize)>> {
    let mut out: Vec<(i64, i64, usize)> = text
        .split_whitespace()
        .map(|item| {
            let (b, r) = item.split_once(':')?;
            let (m, s) = b.split_once(',')?;
            Some((m.parse().ok()?, s.parse().ok()?, r.parse().ok()?))
        })
        .collect::<Option<_>>()?;
    out.sort_by_key(|&(m, s, _)| (s, m));
    Some(out)
}

pub fn format_hat(t: &[(i64, i64, usize)]) -> String {
    t.iter()
        .map(|(m, s, r)| format!("{m},{s}:{r}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusCheck {
    pub entry: String,
    pub property: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl CorpusCheck {
    /// A row of the shared report schema; corpus checks have no bigrading.
    pub fn tsv(&self) -> String {
        format!(
            "{}.{}\t-\t{}\t{}\t{}",
            self.entry,
            self.property,
            self.observed,
            self.expected,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusReport {
    pub checks: Vec<CorpusCheck>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failing_entries(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for c in self.checks.iter().filter(|c| !c.pass) {
            if !out.contains(&c.entry.as_str()) {
                out.push(&c.entry);
            }
        }
        out
    }

    pub fn tsv(&self) -> String {
        self.checks.iter().map(|c| c.tsv() + "\n").collect()
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            writeln!(
                f,
                "{mark} {}.{}: {} (expected {})",
                c.entry, c.property, c.observed, c.expected
            )?;
        }
        let failing = self.failing_entries();
        if failing.is_empty() {
            writeln!(f, "corpus: PASS ({} checks)", self.checks.len())
        } else {
            writeln!(f, "corpus: FAIL in {}", failing.join(", "))
        }
    }
}

/// The corpus shipped with the crate.
pub fn bundled_corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Reads `dir/manifest.txt` and checks every entry.
pub fn corpus_check(dir: &Path) -> Result<CorpusReport, CorpusError> {
    Manifest::parse(&read(&dir.join(MANIFEST))?)?.check(dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn manifest_text() -> String {
        read(&bundled_corpus_dir().join(MANIFEST)).unwrap()
    }

    #[test]
    fn bundled_corpus_passes() {
        let r = corpus_check(&bundled_corpus_dir()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r
            .checks
            .iter()
            .any(|c| c.entry == "trefoil-stabilized" && c.property == "hat"));
    }

    #[test]
    fn corrupted_alexander_names_the_entry() {
        let text = manifest_text();
        let start = text.find("[trefoil]").unwrap();
        let at = start + text[start..].find("alexander=1,-1,1").unwrap();
        let text = format!("{}alexander=1,-2,1{}", &text[..at], &text[at + 16..]);
        let r = Manifest::parse(&text)
            .unwrap()
            .check(&bundled_corpus_dir())
            .unwrap();
        assert_eq!(r.failing_entries(), vec!["trefoil"]);
        assert!(r.to_string().contains("FAIL in trefoil"));
    }

    #[test]
    fn values_need_a_source() {
        let err = Manifest::parse("[x]\ngrid=unknot.grid\ncomponents=1\n").unwrap_err();
        assert!(matches!(err, CorpusError::Syntax { line: 3, .. }), "{err}");
        let err = Manifest::parse("[x]\ngrid=unknot.grid\ncomponents=1 @guess\n").unwrap_err();
        assert!(err.to_string().contains("@guess"));
    }

    #[test]
    fn missing_file_is_an_error() {
        let m = Manifest::parse("[x]\ngrid=nowhere.grid\n").unwrap();
        assert!(matches!(
            m.check(&bundled_corpus_dir()),
            Err(CorpusError::Missing { .. })
        ));
    }

    #[test]
    fn hat_items_round_trip() {
        let t = parse_hat("1,0:1 0,-1:1").unwrap();
        assert_eq!(format_hat(&t), "0,-1:1 1,0:1");
        assert!(parse_hat("1;0:1").is_none());
    }

    #[test]
    fn coefficient_lists() {
        assert_eq!(coefficient_list(&LaurentPoly::zero()), "0");
        assert_eq!(
            coefficient_list(&LaurentPoly::from_coeffs(-1, &[1, -1, 1])),
            "1,-1,1"
        );
    }
}
