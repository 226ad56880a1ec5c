//! Free bigraded chain complexes over `F2[U_1, ..., U_k]` (or over the
//! integers with a sign assignment) and the grid complexes CFK- and CFK~.

mod signs;

pub use signs::{sign_assignment, AxiomCounts, SignAssignment, SignError};

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::grid::{
    cell_bit, factorial, for_each_empty_rectangle, perm_rank, perm_unrank, Bigrading, GridDiagram,
    GridError, StateIter, MAX_MASK_SIZE,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("ring has {got} variables, the grid needs {expected}")]
    RingMismatch { got: usize, expected: usize },
    #[error("variable U{var} does not exist (ring has {num_vars})")]
    VariableOutOfRange { var: usize, num_vars: usize },
    #[error("grids larger than {max}x{max} are not supported, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("complexes differ: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Signs(#[from] SignError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Gf2,
    Integers,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Zero(usize),
    Identify(usize, usize),
}

/// Polynomial ring with relations `U_i = 0` and `U_i = U_j`. Identified
/// variables form a union-find partition; zeroing any member zeroes its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    num_vars: usize,
    coefficients: Coefficients,
    parent: Vec<usize>,
    zero: Vec<bool>,
}

impl RingSpec {
    pub fn new(num_vars: usize) -> Self {
        RingSpec {
            num_vars,
            coefficients: Coefficients::Gf2,
            parent: (0..num_vars).collect(),
            zero: vec![false; num_vars],
        }
    }

    pub fn with_coefficients(mut self, coefficients: Coefficients) -> Self {
        self.coefficients = coefficients;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coefficients
    }

    pub fn with_relations(&self, relations: &[Relation]) -> Result<RingSpec, ComplexError> {
        let mut ring = self.clone();
        for &rel in relations {
            match rel {
                Relation::Zero(i) => {
                    ring.check(i)?;
                    let r = ring.find(i);
                    ring.zero[r] = true;
                }
                Relation::Identify(i, j) => {
                    ring.check(i)?;
                    ring.check(j)?;
                    let (ri, rj) = (ring.find(i), ring.find(j));
                    if ri != rj {
                        let (keep, drop) = (ri.min(rj), ri.max(rj));
                        ring.parent[drop] = keep;
                        ring.zero[keep] |= ring.zero[drop];
                    }
                }
            }
        }
        Ok(ring)
    }

    fn check(&self, var: usize) -> Result<(), ComplexError> {
        if var >= self.num_vars {
            return Err(ComplexError::VariableOutOfRange {
                var,
                num_vars: self.num_vars,
            });
        }
        Ok(())
    }

    pub fn find(&self, mut var: usize) -> usize {
        while self.parent[var] != var {
            var = self.parent[var];
        }
        var
    }

    pub fn is_zero(&self, var: usize) -> bool {
        self.zero[self.find(var)]
    }

    pub fn has_relations(&self) -> bool {
        (0..self.num_vars).any(|v| self.parent[v] != v || self.zero[v])
    }

    /// Index of each variable in the quotient ring, `None` when it is zero.
    /// Surviving classes are numbered by their smallest member.
    pub fn projection(&self) -> Vec<Option<usize>> {
        let mut index_of_root = HashMap::new();
        let mut out = Vec::with_capacity(self.num_vars);
        for v in 0..self.num_vars {
            let r = self.find(v);
            if self.zero[r] {
                out.push(None);
                continue;
            }
            let next = index_of_root.len();
            out.push(Some(*index_of_root.entry(r).or_insert(next)));
        }
        out
    }

    pub fn quotient_vars(&self) -> usize {
        self.projection()
            .iter()
            .flatten()
            .max()
            .map_or(0, |m| m + 1)
    }
}

/// Exponent vector of a monomial in the U-variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut m = Monomial::one(num_vars);
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    /// Multiplying by this monomial lowers `(m, s)` by `(2d, d)`.
    pub fn grading_shift(&self) -> (i64, i64) {
        let d = self.degree();
        (-2 * d, -d)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U^(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub target: usize,
    pub mono: Monomial,
    pub coeff: i64,
}

impl Term {
    pub fn new(target: usize, mono: Monomial) -> Self {
        Term {
            target,
            mono,
            coeff: 1,
        }
    }
}

/// Sorts by target then exponents and merges repeats; over F2 coefficients
/// are reduced mod 2.
pub fn normalize_terms(terms: &mut Vec<Term>, coefficients: Coefficients) {
    terms.sort_by(|a, b| (a.target, &a.mono).cmp(&(b.target, &b.mono)));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms.drain(..) {
        match out.last_mut() {
            Some(last) if last.target == t.target && last.mono == t.mono => last.coeff += t.coeff,
            _ => out.push(t),
        }
    }
    out.retain_mut(|t| {
        if coefficients == Coefficients::Gf2 {
            t.coeff = t.coeff.rem_euclid(2);
        }
        t.coeff != 0
    });
    *terms = out;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub grading: Bigrading,
}

/// A free complex with one basis element per generator and a sparse
/// differential `d(g) = sum coeff * mono * target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedComplex {
    ring: RingSpec,
    var_names: Vec<String>,
    gens: Vec<Generator>,
    diff: Vec<Vec<Term>>,
    provenance: String,
}

impl BigradedComplex {
    pub fn new(ring: RingSpec, gens: Vec<Generator>, provenance: impl Into<String>) -> Self {
        let var_names = (0..ring.num_vars()).map(|i| format!("U{i}")).collect();
        let diff = vec![Vec::new(); gens.len()];
        BigradedComplex {
            ring,
            var_names,
            gens,
            diff,
            provenance: provenance.into(),
        }
    }

    pub fn with_var_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.ring.num_vars());
        self.var_names = names;
        self
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn num_vars(&self) -> usize {
        self.ring.num_vars()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn coefficients(&self) -> Coefficients {
        self.ring.coefficients()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn grading(&self, g: usize) -> Bigrading {
        self.gens[g].grading
    }

    pub fn differential(&self, g: usize) -> &[Term] {
        &self.diff[g]
    }

    /// The whole differential, indexed by source generator.
    pub fn differential_rows(&self) -> &[Vec<Term>] {
        &self.diff
    }

    pub fn term_count(&self) -> usize {
        self.diff.iter().map(Vec::len).sum()
    }

    pub fn add_term(&mut self, source: usize, term: Term) {
        self.diff[source].push(term);
    }

    /// Replaces the differential of `source` (normalized on the way in).
    pub fn set_terms(&mut self, source: usize, mut terms: Vec<Term>) {
        normalize_terms(&mut terms, self.coefficients());
        self.diff[source] = terms;
    }

    pub fn normalize(&mut self) {
        let c = self.coefficients();
        self.diff
            .par_iter_mut()
            .for_each(|terms| normalize_terms(terms, c));
    }

    /// Removes one term; used to build deliberately broken complexes.
    pub fn remove_term(&mut self, source: usize, index: usize) -> Term {
        self.diff[source].remove(index)
    }

    /// The same complex with every grading moved by `(dm, ds)`.
    pub fn shifted(&self, dm: i64, ds: i64) -> BigradedComplex {
        let mut out = self.clone();
        for g in &mut out.gens {
            g.grading = g.grading.shifted(dm, ds);
        }
        out
    }

    /// Each term's bigrading drop, which must be `(1, 0)`.
    pub fn homogeneity_violation(&self) -> Option<(usize, Term)> {
        for (src, terms) in self.diff.iter().enumerate() {
            for t in terms {
                let (dm, ds) = t.mono.grading_shift();
                let landed = self.gens[t.target].grading.shifted(dm, ds);
                if landed != self.gens[src].grading.shifted(-1, 0) {
                    return Some((src, t.clone()));
                }
            }
        }
        None
    }

    /// Text dump: `gen <id> m=<m> s=<s>` lines then `d <src> -> <tgt> U^(..) sign=<+-1>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, g) in self.gens.iter().enumerate() {
            out.push_str(&format!("gen {i} m={} s={}\n", g.grading.m, g.grading.s));
        }
        for (i, terms) in self.diff.iter().enumerate() {
            for t in terms {
                let sign = if t.coeff < 0 { "-1" } else { "+1" };
                out.push_str(&format!("d {i} -> {} {} sign={sign}\n", t.target, t.mono));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Minus,
    Tilde,
}

/// One U-variable per O marking: `o_bits[k] = (cell bit, variable)`.
pub(crate) fn o_cell_bits(g: &GridDiagram, var_of_column: &[usize]) -> Vec<(u64, usize)> {
    let n = g.size();
    g.o_rows()
        .iter()
        .enumerate()
        .map(|(col, &row)| (cell_bit(n, col, row), var_of_column[col]))
        .collect()
}

pub(crate) fn x_mask(g: &GridDiagram) -> u64 {
    let n = g.size();
    g.x_rows()
        .iter()
        .enumerate()
        .fold(0, |acc, (col, &row)| acc | cell_bit(n, col, row))
}

pub(crate) fn monomial_of(cells: u64, o_bits: &[(u64, usize)], num_vars: usize) -> Monomial {
    let mut m = Monomial::one(num_vars);
    for &(bit, var) in o_bits {
        if cells & bit != 0 {
            m.0[var] += 1;
        }
    }
    m
}

pub(crate) fn check_mask_size(n: usize) -> Result<(), ComplexError> {
    if n > MAX_MASK_SIZE {
        return Err(ComplexError::TooLarge {
            n,
            max: MAX_MASK_SIZE,
        });
    }
    Ok(())
}

/// Generators of a grid complex: every state in lexicographic order, so a
/// state's index is its [`perm_rank`].
pub(crate) fn grid_generators(g: &GridDiagram) -> Vec<Generator> {
    let grader = g.grader();
    StateIter::new(g.size())
        .map(|s| Generator {
            grading: grader.grading(s.as_slice()),
            name: s.to_string(),
        })
        .collect()
}

/// CFK- (rectangles avoiding X, weighted by their O's) or CFK~ (rectangles
/// avoiding every marking). Relations in `ring` are applied afterwards.
pub fn build_complex(
    g: &GridDiagram,
    flavor: Flavor,
    ring: &RingSpec,
) -> Result<BigradedComplex, ComplexError> {
    let n = g.size();
    check_mask_size(n)?;
    if flavor == Flavor::Minus && ring.num_vars() != n {
        return Err(ComplexError::RingMismatch {
            got: ring.num_vars(),
            expected: n,
        });
    }
    let signs = match ring.coefficients() {
        Coefficients::Gf2 => None,
        Coefficients::Integers => Some(sign_assignment(g)?),
    };
    let num_vars = match flavor {
        Flavor::Minus => n,
        Flavor::Tilde => 0,
    };
    let identity: Vec<usize> = (0..n).collect();
    let o_bits = o_cell_bits(g, &identity);
    let o_mask = o_bits.iter().fold(0, |acc, &(b, _)| acc | b);
    let forbid = match flavor {
        Flavor::Minus => x_mask(g),
        Flavor::Tilde => x_mask(g) | o_mask,
    };
    let diff: Vec<Vec<Term>> = (0..factorial(n))
        .into_par_iter()
        .map(|idx| {
            let perm = perm_unrank(n, idx);
            let mut terms = Vec::new();
            for_each_empty_rectangle(&perm, |left, right, cells| {
                if cells & forbid != 0 {
                    return;
                }
                let mut to = perm.clone();
                to.swap(left, right);
                let coeff = signs
                    .as_ref()
                    .map_or(1, |s| s.sign(idx, left, right) as i64);
                terms.push(Term {
                    target: perm_rank(&to),
                    mono: monomial_of(cells, &o_bits, num_vars),
                    coeff,
                });
            });
            terms
        })
        .collect();
    let base_ring = RingSpec::new(num_vars).with_coefficients(ring.coefficients());
    let tag = match flavor {
        Flavor::Minus => "CFK-",
        Flavor::Tilde => "CFK~",
    };
    let mut c = BigradedComplex::new(base_ring, grid_generators(g), format!("{tag} n={n}"));
    c.diff = diff;
    c.normalize();
    if flavor == Flavor::Minus && ring.has_relations() {
        let rels = relations_of(ring);
        return specialize(&c, &rels);
    }
    Ok(c)
}

fn relations_of(ring: &RingSpec) -> Vec<Relation> {
    let mut rels = Vec::new();
    for v in 0..ring.num_vars() {
        let r = ring.find(v);
        if r != v {
            rels.push(Relation::Identify(r, v));
        }
        if ring.is_zero(v) {
            rels.push(Relation::Zero(v));
        }
    }
    rels
}

/// Quotient by `relations`: terms through a zeroed variable vanish and
/// identified exponents add up. Generators and gradings are untouched.
pub fn specialize(
    c: &BigradedComplex,
    relations: &[Relation],
) -> Result<BigradedComplex, ComplexError> {
    let ring = c.ring.with_relations(relations)?;
    let proj = ring.projection();
    let k = ring.quotient_vars();
    let mut names = vec![String::new(); k];
    for (v, p) in proj.iter().enumerate() {
        if let Some(p) = *p {
            if !names[p].is_empty() {
                names[p].push('=');
            }
            names[p].push_str(&c.var_names[v]);
        }
    }
    let mut out = BigradedComplex {
        ring: RingSpec::new(k).with_coefficients(c.coefficients()),
        var_names: names,
        gens: c.gens.clone(),
        diff: Vec::new(),
        provenance: format!("{} / {}", c.provenance, describe(relations, &c.var_names)),
    };
    out.diff = c
        .diff
        .par_iter()
        .map(|terms| project_terms(terms, &proj, k))
        .collect();
    out.normalize();
    Ok(out)
}

pub(crate) fn project_terms(terms: &[Term], proj: &[Option<usize>], k: usize) -> Vec<Term> {
    terms
        .iter()
        .filter_map(|t| {
            let mut m = Monomial::one(k);
            for (v, &e) in t.mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                m.0[proj[v]?] += e;
            }
            Some(Term {
                target: t.target,
                mono: m,
                coeff: t.coeff,
            })
        })
        .collect()
}

fn describe(relations: &[Relation], names: &[String]) -> String {
    relations
        .iter()
        .map(|r| match *r {
            Relation::Zero(i) => format!("{}=0", names[i]),
            Relation::Identify(i, j) => format!("{}={}", names[i], names[j]),
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// A nonzero coefficient of `d(d(source))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSquaredWitness {
    pub source: usize,
    pub source_name: String,
    pub target: usize,
    pub target_name: String,
    pub mono: Monomial,
    pub coeff: i64,
}

impl fmt::Display for DSquaredWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d^2({}) has coefficient {} on {} {}",
            self.source_name, self.coeff, self.mono, self.target_name
        )
    }
}

/// Applies `first` then `second` to each source.
pub fn compose_terms(
    first: &[Vec<Term>],
    second: &[Vec<Term>],
    coefficients: Coefficients,
) -> Vec<Vec<Term>> {
    first
        .par_iter()
        .map(|terms| {
            let mut out = Vec::new();
            for t in terms {
                for u in &second[t.target] {
                    out.push(Term {
                        target: u.target,
                        mono: t.mono.mul(&u.mono),
                        coeff: t.coeff * u.coeff,
                    });
                }
            }
            normalize_terms(&mut out, coefficients);
            out
        })
        .collect()
}

/// `Ok` iff the differential squares to zero over the complex's coefficients.
pub fn d_squared_check(c: &BigradedComplex) -> Result<(), DSquaredWitness> {
    let sq = compose_terms(&c.diff, &c.diff, c.coefficients());
    match sq.iter().enumerate().find(|(_, t)| !t.is_empty()) {
        None => Ok(()),
        Some((source, terms)) => {
            let t = &terms[0];
            Err(DSquaredWitness {
                source,
                source_name: c.gens[source].name.clone(),
                target: t.target,
                target_name: c.gens[t.target].name.clone(),
                mono: t.mono.clone(),
                coeff: t.coeff,
            })
        }
    }
}
