//! Toroidal grid diagrams, their generators and the rectangle counts that
//! drive every complex in this crate.
//!
//! Coordinates: column `i` and row `j` run over `0..n`. The cell `(i, j)` is
//! the square `[i, i+1] x [j, j+1]`; a marking in column `i` sits at the cell
//! center `(i + 1/2, sigma[i] + 1/2)`. A state's point in column `i` is the
//! lattice point `(i, perm[i])`.

mod link;
mod rect;
mod states;

pub use link::{Crossing, LinkStructure, Orientation, Segment, Strand};
pub(crate) use rect::{cell_bit, for_each_empty_rectangle};
pub use rect::{
    cyclic_contains, rectangles_between, rectangles_from, Rectangle, RectangleShape, MAX_MASK_SIZE,
};
pub(crate) use states::factorial;
pub use states::{enumerate_states, perm_rank, perm_unrank, StateFilter, StateIter};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}=` line")]
    MissingKey(&'static str),
    #[error("grid size must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("{which} markings have {got} entries, expected {expected}")]
    WrongLength {
        which: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("{which} markings are not a permutation of 0..{n}: row {row} appears {count} times")]
    NotPermutation {
        which: &'static str,
        n: usize,
        row: usize,
        count: usize,
    },
    #[error("O and X share the cell at column {column}, row {row}")]
    SharedCell { column: usize, row: usize },
    #[error("state has size {got}, grid has size {expected}")]
    SizeMismatch { got: usize, expected: usize },
    #[error("state is not a permutation: {0:?}")]
    BadState(Vec<usize>),
}

/// A grid diagram: `o[i]` and `x[i]` are the rows of the O and X markings in
/// column `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridDiagram {
    o: Vec<usize>,
    x: Vec<usize>,
}

impl GridDiagram {
    pub fn new(o: Vec<usize>, x: Vec<usize>) -> Result<Self, GridError> {
        let n = o.len();
        if n < 2 {
            return Err(GridError::TooSmall(n));
        }
        if x.len() != n {
            return Err(GridError::WrongLength {
                which: "X",
                got: x.len(),
                expected: n,
            });
        }
        check_permutation("O", &o)?;
        check_permutation("X", &x)?;
        if let Some(column) = (0..n).find(|&i| o[i] == x[i]) {
            return Err(GridError::SharedCell {
                column,
                row: o[column],
            });
        }
        Ok(GridDiagram { o, x })
    }

    /// Parses the text grid format (`n=`, `O=`, `X=` lines, `#` comments).
    /// Semicolons may stand in for newlines.
    pub fn parse(text: &str) -> Result<Self, GridError> {
        let entries = KeyValues::parse(text)?;
        entries.reject_unknown(&["n", "O", "X"])?;
        Self::from_key_values(&entries)
    }

    pub(crate) fn from_key_values(entries: &KeyValues) -> Result<Self, GridError> {
        let (n_line, n_text) = entries.get("n").ok_or(GridError::MissingKey("n"))?;
        let n: usize = n_text.trim().parse().map_err(|_| GridError::Syntax {
            line: n_line,
            message: format!("`{n_text}` is not a grid size"),
        })?;
        if n < 2 {
            return Err(GridError::TooSmall(n));
        }
        let (o_line, o_text) = entries.get("O").ok_or(GridError::MissingKey("O"))?;
        let (x_line, x_text) = entries.get("X").ok_or(GridError::MissingKey("X"))?;
        let o = parse_list(o_line, o_text)?;
        let x = parse_list(x_line, x_text)?;
        if o.len() != n {
            return Err(GridError::WrongLength {
                which: "O",
                got: o.len(),
                expected: n,
            });
        }
        GridDiagram::new(o, x)
    }

    pub fn size(&self) -> usize {
        self.o.len()
    }

    pub fn o_rows(&self) -> &[usize] {
        &self.o
    }

    pub fn x_rows(&self) -> &[usize] {
        &self.x
    }

    /// Number of link components: the orbits of `x^-1 . o`.
    pub fn component_count(&self) -> usize {
        let n = self.size();
        let x_inv = invert(&self.x);
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut col = start;
            while !seen[col] {
                seen[col] = true;
                col = x_inv[self.o[col]];
            }
        }
        count
    }

    /// Swaps two columns together with their markings.
    pub fn with_columns_swapped(&self, a: usize, b: usize) -> GridDiagram {
        let mut o = self.o.clone();
        let mut x = self.x.clone();
        o.swap(a, b);
        x.swap(a, b);
        GridDiagram { o, x }
    }

    pub fn grader(&self) -> Grader {
        Grader::new(self)
    }

    /// Absolute Maslov and Alexander gradings of a state.
    pub fn gradings(&self, state: &GridState) -> Result<Bigrading, GridError> {
        if state.len() != self.size() {
            return Err(GridError::SizeMismatch {
                got: state.len(),
                expected: self.size(),
            });
        }
        Ok(self.grader().grading(state.as_slice()))
    }

    pub fn to_text(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for GridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.size())?;
        writeln!(f, "O={}", join(&self.o))?;
        writeln!(f, "X={}", join(&self.x))
    }
}

impl FromStr for GridDiagram {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GridDiagram::parse(s)
    }
}

pub(crate) fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

fn check_permutation(which: &'static str, rows: &[usize]) -> Result<(), GridError> {
    let n = rows.len();
    let mut counts = vec![0usize; n];
    for &r in rows {
        if r >= n {
            return Err(GridError::NotPermutation {
                which,
                n,
                row: r,
                count: 1,
            });
        }
        counts[r] += 1;
    }
    if let Some(row) = (0..n).find(|&r| counts[r] != 1) {
        return Err(GridError::NotPermutation {
            which,
            n,
            row,
            count: counts[row],
        });
    }
    Ok(())
}

fn parse_list(line: usize, text: &str) -> Result<Vec<usize>, GridError> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|_| GridError::Syntax {
                line,
                message: format!("`{}` is not a row index", part.trim()),
            })
        })
        .collect()
}

/// `key=value` entries of the grid and template formats, with line numbers.
#[derive(Debug, Clone, Default)]
pub(crate) struct KeyValues {
    entries: Vec<(usize, String, String)>,
}

impl KeyValues {
    pub(crate) fn parse(text: &str) -> Result<Self, GridError> {
        let mut entries: Vec<(usize, String, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            for piece in content.split(';') {
                let piece = piece.trim();
                if piece.is_empty() {
                    continue;
                }
                let (key, value) = piece.split_once('=').ok_or_else(|| GridError::Syntax {
                    line,
                    message: format!("expected `key=value`, found `{piece}`"),
                })?;
                let key = key.trim().to_string();
                if entries.iter().any(|(_, k, _)| *k == key) {
                    return Err(GridError::Syntax {
                        line,
                        message: format!("duplicate key `{key}`"),
                    });
                }
                entries.push((line, key, value.trim().to_string()));
            }
        }
        Ok(KeyValues { entries })
    }

    pub(crate) fn get(&self, key: &str) -> Option<(usize, &str)> {
        self.entries
            .iter()
            .find(|(_, k, _)| k == key)
            .map(|(l, _, v)| (*l, v.as_str()))
    }

    pub(crate) fn reject_unknown(&self, known: &[&str]) -> Result<(), GridError> {
        match self
            .entries
            .iter()
            .find(|(_, k, _)| !known.contains(&k.as_str()))
        {
            Some((line, key, _)) => Err(GridError::Syntax {
                line: *line,
                message: format!("unknown key `{key}`"),
            }),
            None => Ok(()),
        }
    }
}

/// A generator: `perm[i]` is the row of the point on vertical circle `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridState(Vec<usize>);

impl GridState {
    pub fn new(perm: Vec<usize>) -> Result<Self, GridError> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(GridError::BadState(perm));
            }
            seen[p] = true;
        }
        Ok(GridState(perm))
    }

    pub(crate) fn from_vec_unchecked(perm: Vec<usize>) -> Self {
        GridState(perm)
    }

    pub fn identity(n: usize) -> Self {
        GridState((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Columns where the two states disagree.
    pub fn differing_columns(&self, other: &GridState) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.0[i] != other.0[i])
            .collect()
    }
}

impl fmt::Display for GridState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join(&self.0))
    }
}

/// Maslov grading `m` and Alexander grading `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bigrading {
    pub m: i64,
    pub s: i64,
}

impl Bigrading {
    pub const fn new(m: i64, s: i64) -> Self {
        Bigrading { m, s }
    }

    pub const fn n_grading(self) -> i64 {
        self.m - 2 * self.s
    }

    pub const fn shifted(self, dm: i64, ds: i64) -> Self {
        Bigrading {
            m: self.m + dm,
            s: self.s + ds,
        }
    }
}

impl fmt::Display for Bigrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.s)
    }
}

/// Closed-form gradings on one diagram, with the state-independent terms
/// precomputed.
///
/// Points are doubled so that lattice points and cell centers are integral:
/// `I(P, Q)` counts pairs with `p` strictly south-west of `q`, and
/// `M_S(x) = I(x,x) - I(x,S) - I(S,x) + I(S,S) + 1`.
#[derive(Debug, Clone)]
pub struct Grader {
    o_centers: Vec<(i64, i64)>,
    x_centers: Vec<(i64, i64)>,
    oo: i64,
    xx: i64,
    defect: i64,
}

impl Grader {
    fn new(g: &GridDiagram) -> Self {
        let centers = |rows: &[usize]| -> Vec<(i64, i64)> {
            rows.iter()
                .enumerate()
                .map(|(i, &r)| (2 * i as i64 + 1, 2 * r as i64 + 1))
                .collect()
        };
        let o_centers = centers(&g.o);
        let x_centers = centers(&g.x);
        let oo = southwest_pairs(&o_centers, &o_centers);
        let xx = southwest_pairs(&x_centers, &x_centers);
        let defect = (g.size() - g.component_count()) as i64;
        Grader {
            o_centers,
            x_centers,
            oo,
            xx,
            defect,
        }
    }

    pub fn maslov_o(&self, perm: &[usize]) -> i64 {
        let pts = state_points(perm);
        maslov(&pts, &self.o_centers, self.oo)
    }

    pub fn maslov_x(&self, perm: &[usize]) -> i64 {
        let pts = state_points(perm);
        maslov(&pts, &self.x_centers, self.xx)
    }

    pub fn grading(&self, perm: &[usize]) -> Bigrading {
        let pts = state_points(perm);
        let mo = maslov(&pts, &self.o_centers, self.oo);
        let mx = maslov(&pts, &self.x_centers, self.xx);
        let twice_a = mo - mx - self.defect;
        debug_assert!(twice_a % 2 == 0, "half-integral Alexander grading");
        Bigrading::new(mo, twice_a / 2)
    }
}

fn state_points(perm: &[usize]) -> Vec<(i64, i64)> {
    perm.iter()
        .enumerate()
        .map(|(i, &r)| (2 * i as i64, 2 * r as i64))
        .collect()
}

fn maslov(pts: &[(i64, i64)], marks: &[(i64, i64)], marks_self: i64) -> i64 {
    southwest_pairs(pts, pts) - southwest_pairs(pts, marks) - southwest_pairs(marks, pts)
        + marks_self
        + 1
}

fn southwest_pairs(p: &[(i64, i64)], q: &[(i64, i64)]) -> i64 {
    let mut count = 0;
    for a in p {
        for b in q {
            if a.0 < b.0 && a.1 < b.1 {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unknot() -> GridDiagram {
        GridDiagram::parse("n=2; O=1,0; X=0,1").unwrap()
    }

    #[test]
    fn parses_one_line_form() {
        let g = unknot();
        assert_eq!(g.size(), 2);
        assert_eq!(g.o_rows(), &[1, 0]);
        assert_eq!(g.x_rows(), &[0, 1]);
    }

    #[test]
    fn parses_comments_and_round_trips() {
        let text = "# trefoil\nn=5\nO=0,1,2,3,4\nX=2,3,4,0,1\n";
        let g = GridDiagram::parse(text).unwrap();
        assert_eq!(GridDiagram::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn rejects_shared_cell() {
        let err = GridDiagram::parse("n=2; O=0,1; X=0,1").unwrap_err();
        assert_eq!(err, GridError::SharedCell { column: 0, row: 0 });
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            GridDiagram::parse("n=3; O=0,0,1; X=1,2,0"),
            Err(GridError::NotPermutation { which: "O", .. })
        ));
        assert!(matches!(
            GridDiagram::parse("n=1; O=0; X=0"),
            Err(GridError::TooSmall(1))
        ));
        assert!(matches!(
            GridDiagram::parse("n=2; O=1,0"),
            Err(GridError::MissingKey("X"))
        ));
        assert!(matches!(
            GridDiagram::parse("n=2; O=1,0; X=0,1; Y=3"),
            Err(GridError::Syntax { .. })
        ));
        assert!(matches!(
            GridDiagram::parse("n=2; O=1,a; X=0,1"),
            Err(GridError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            GridDiagram::parse("n=3; O=1,0; X=0,1"),
            Err(GridError::WrongLength { which: "O", .. })
        ));
    }

    #[test]
    fn unknot_gradings() {
        let g = unknot();
        let a = g.gradings(&GridState::new(vec![0, 1]).unwrap()).unwrap();
        let b = g.gradings(&GridState::new(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(a, Bigrading::new(0, 0));
        assert_eq!(b, Bigrading::new(-1, -1));
        assert_eq!(b.n_grading(), 1);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let g = unknot();
        let err = g.gradings(&GridState::identity(3)).unwrap_err();
        assert_eq!(
            err,
            GridError::SizeMismatch {
                got: 3,
                expected: 2
            }
        );
    }

    #[test]
    fn component_counts() {
        assert_eq!(unknot().component_count(), 1);
        let hopf = GridDiagram::new(vec![0, 1, 2, 3], vec![2, 3, 0, 1]).unwrap();
        assert_eq!(hopf.component_count(), 2);
    }

    #[test]
    fn state_validation() {
        assert!(GridState::new(vec![0, 0]).is_err());
        assert!(GridState::new(vec![1, 2]).is_err());
        assert_eq!(
            GridState::new(vec![2, 0, 1])
                .unwrap()
                .differing_columns(&GridState::identity(3)),
            vec![0, 1, 2]
        );
    }
}
