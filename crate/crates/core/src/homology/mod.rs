//! Bigraded homology ranks over F2, chain maps, mapping cones and the
//! finite-module bookkeeping used by the skein sequences.
//!
//! A basis of a complex in bigrading `(m, s)` is the set of `U^a * g` with
//! `deg a = A(g) - s >= 0` and `N(g) = m - 2s`. That set is finite, and
//! differentials only connect `(m, s)` to `(m - 1, s)`, so each homology group
//! is an exact finite computation.

pub mod gf2;
mod normalization;

pub use normalization::{n_graded_ranks, normalization, shifted_torus, torus_ranks, Normalization};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{
    compose_terms, normalize_terms, BigradedComplex, Generator, Monomial, RingSpec, Term,
};
use crate::grid::Bigrading;
use gf2::{BitVec, Echelon};

/// Pieces with more basis elements than this are refused.
pub const MAX_PIECE: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("bad window `{0}`, expected m0:m1,s0:s1")]
    WindowSyntax(String),
    #[error("bigrading {0} has more than {MAX_PIECE} basis elements")]
    PieceTooLarge(Bigrading),
    #[error("term {source_gen} -> {target} does not have the declared grading shift")]
    Inhomogeneous { source_gen: String, target: String },
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("complexes live over different rings ({0} vs {1} variables)")]
    RingMismatch(usize, usize),
    #[error("output {0} needs input outside the table's window")]
    WindowUnderflow(Bigrading),
    #[error("tilde table is not divisible by (1 + q^-1 t^-1)^{power}: {detail}")]
    InexactDivision { power: usize, detail: String },
}

/// Inclusive rectangle of bigradings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub m_min: i64,
    pub m_max: i64,
    pub s_min: i64,
    pub s_max: i64,
}

impl Window {
    pub const fn new(m: (i64, i64), s: (i64, i64)) -> Self {
        Window {
            m_min: m.0,
            m_max: m.1,
            s_min: s.0,
            s_max: s.1,
        }
    }

    pub fn contains(&self, b: Bigrading) -> bool {
        (self.m_min..=self.m_max).contains(&b.m) && (self.s_min..=self.s_max).contains(&b.s)
    }

    pub fn points(&self) -> impl Iterator<Item = Bigrading> + '_ {
        (self.s_min..=self.s_max)
            .flat_map(move |s| (self.m_min..=self.m_max).map(move |m| Bigrading::new(m, s)))
    }

    pub fn shifted(&self, dm: i64, ds: i64) -> Window {
        Window::new(
            (self.m_min + dm, self.m_max + dm),
            (self.s_min + ds, self.s_max + ds),
        )
    }

    pub fn grown(&self, by: i64) -> Window {
        Window::new(
            (self.m_min - by, self.m_max + by),
            (self.s_min - by, self.s_max + by),
        )
    }

    /// Smallest window holding every generator grading.
    pub fn covering(c: &BigradedComplex) -> Window {
        let gr = c.generators().iter().map(|g| g.grading);
        let (mut m0, mut m1, mut s0, mut s1) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
        for b in gr {
            m0 = m0.min(b.m);
            m1 = m1.max(b.m);
            s0 = s0.min(b.s);
            s1 = s1.max(b.s);
        }
        if m0 > m1 {
            return Window::new((0, -1), (0, -1));
        }
        Window::new((m0, m1), (s0, s1))
    }
}

impl FromStr for Window {
    type Err = HomologyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || HomologyError::WindowSyntax(text.to_string());
        let (m, s) = text.split_once(',').ok_or_else(bad)?;
        let range = |part: &str| -> Result<(i64, i64), HomologyError> {
            let (a, b) = part.split_once(':').ok_or_else(bad)?;
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        };
        Ok(Window::new(range(m)?, range(s)?))
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{},{}:{}",
            self.m_min, self.m_max, self.s_min, self.s_max
        )
    }
}

/// Ranks on a window; bigradings with rank zero are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    pub window: Window,
    entries: BTreeMap<Bigrading, usize>,
}

impl RankTable {
    pub fn new(window: Window) -> Self {
        RankTable {
            window,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        window: Window,
        entries: impl IntoIterator<Item = ((i64, i64), usize)>,
    ) -> Self {
        let mut t = RankTable::new(window);
        for ((m, s), r) in entries {
            t.set(Bigrading::new(m, s), r);
        }
        t
    }

    pub fn get(&self, b: Bigrading) -> usize {
        self.entries.get(&b).copied().unwrap_or(0)
    }

    pub fn at(&self, m: i64, s: i64) -> usize {
        self.get(Bigrading::new(m, s))
    }

    /// Sets an entry; entries outside the window are dropped.
    pub fn set(&mut self, b: Bigrading, rank: usize) {
        if rank == 0 || !self.window.contains(b) {
            self.entries.remove(&b);
        } else {
            self.entries.insert(b, rank);
        }
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Bigrading, usize)> + '_ {
        self.entries.iter().map(|(&b, &r)| (b, r))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sorted `(m, s, rank)` triples.
    pub fn triples(&self) -> Vec<(i64, i64, usize)> {
        self.iter().map(|(b, r)| (b.m, b.s, r)).collect()
    }

    /// Moves every entry and the window by `(dm, ds)`.
    pub fn shifted(&self, dm: i64, ds: i64) -> RankTable {
        let mut t = RankTable::new(self.window.shifted(dm, ds));
        for (b, r) in self.iter() {
            t.set(b.shifted(dm, ds), r);
        }
        t
    }

    /// The same ranks seen through another window.
    pub fn restricted(&self, window: Window) -> RankTable {
        let mut t = RankTable::new(window);
        for (b, r) in self.iter() {
            t.set(b, r);
        }
        t
    }

    /// `sum_m (-1)^m rank(m, s)`.
    pub fn euler(&self, s: i64) -> i64 {
        self.iter()
            .filter(|(b, _)| b.s == s)
            .map(|(b, r)| {
                if b.m.rem_euclid(2) == 0 {
                    r as i64
                } else {
                    -(r as i64)
                }
            })
            .sum()
    }

    /// Bigradings in `window` where the two tables disagree.
    pub fn mismatches(&self, other: &RankTable, window: Window) -> Vec<(Bigrading, usize, usize)> {
        window
            .points()
            .filter_map(|b| {
                let (l, r) = (self.get(b), other.get(b));
                (l != r).then_some((b, l, r))
            })
            .collect()
    }
}

impl fmt::Display for RankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "window {}", self.window)?;
        for (b, r) in self.iter() {
            writeln!(f, "{b} {r}")?;
        }
        Ok(())
    }
}

/// Basis of one bigraded piece.
struct Piece {
    elems: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

/// Generators grouped by N-grading, plus cached monomial lists.
struct Layout<'a> {
    c: &'a BigradedComplex,
    by_n: HashMap<i64, Vec<usize>>,
}

impl<'a> Layout<'a> {
    fn new(c: &'a BigradedComplex) -> Self {
        let mut by_n: HashMap<i64, Vec<usize>> = HashMap::new();
        for (i, g) in c.generators().iter().enumerate() {
            by_n.entry(g.grading.n_grading()).or_default().push(i);
        }
        Layout { c, by_n }
    }

    fn piece(&self, b: Bigrading) -> Result<Piece, HomologyError> {
        let k = self.c.num_vars();
        let mut elems = Vec::new();
        if let Some(gens) = self.by_n.get(&(b.m - 2 * b.s)) {
            for &g in gens {
                let d = self.c.grading(g).s - b.s;
                if d < 0 || (k == 0 && d > 0) {
                    continue;
                }
                if elems.len() + count_monomials(k, d as usize) > MAX_PIECE {
                    return Err(HomologyError::PieceTooLarge(b));
                }
                for_each_monomial(k, d as usize, |m| elems.push((g, m)));
            }
        }
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(Piece { elems, index })
    }

    /// Image of each basis element of `src` under `terms`, in `dst` coordinates.
    fn images(
        &self,
        terms: &[Vec<Term>],
        src: &Piece,
        dst: &Piece,
        dst_names: &[Generator],
    ) -> Result<Vec<BitVec>, HomologyError> {
        src.elems
            .iter()
            .map(|(g, mono)| {
                let mut v = BitVec::zeros(dst.elems.len());
                for t in &terms[*g] {
                    if t.coeff.rem_euclid(2) == 0 {
                        continue;
                    }
                    let key = (t.target, mono.mul(&t.mono));
                    let i = *dst
                        .index
                        .get(&key)
                        .ok_or_else(|| HomologyError::Inhomogeneous {
                            source_gen: self.c.generators()[*g].name.clone(),
                            target: dst_names[t.target].name.clone(),
                        })?;
                    v.flip(i);
                }
                Ok(v)
            })
            .collect()
    }
}

fn count_monomials(k: usize, d: usize) -> usize {
    if k == 0 {
        return (d == 0) as usize;
    }
    // binomial(d + k - 1, k - 1), saturating
    let mut acc: u128 = 1;
    for i in 0..(k - 1) {
        acc = acc * (d + k - 1 - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return usize::MAX / 2;
        }
    }
    acc as usize
}

/// Calls `f` on every exponent vector of total degree `d` in `k` variables,
/// in lexicographic order.
pub fn for_each_monomial(k: usize, d: usize, mut f: impl FnMut(Monomial)) {
    fn rec(k: usize, left: usize, cur: &mut Vec<u16>, f: &mut dyn FnMut(Monomial)) {
        if cur.len() + 1 == k {
            cur.push(left as u16);
            f(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e as u16);
            rec(k, left - e, cur, f);
            cur.pop();
        }
    }
    if k == 0 {
        if d == 0 {
            f(Monomial(Vec::new()));
        }
        return;
    }
    rec(k, d, &mut Vec::with_capacity(k), &mut f);
}

/// Dimension of the piece at `b`.
pub fn piece_dimension(c: &BigradedComplex, b: Bigrading) -> Result<usize, HomologyError> {
    Ok(Layout::new(c).piece(b)?.elems.len())
}

/// Homology ranks of `c` on `window`.
pub fn bigraded_ranks(c: &BigradedComplex, window: Window) -> Result<RankTable, HomologyError> {
    let layout = Layout::new(c);
    // rank of d out of (m, s) for m in m_min..=m_max+1
    let keys: Vec<Bigrading> = (window.s_min..=window.s_max)
        .flat_map(|s| (window.m_min..=window.m_max + 1).map(move |m| Bigrading::new(m, s)))
        .collect();
    let computed: Vec<(Bigrading, usize, usize)> = keys
        .par_iter()
        .map(|&b| {
            let src = layout.piece(b)?;
            let dst = layout.piece(b.shifted(-1, 0))?;
            let rows = layout.images(c.differential_rows(), &src, &dst, c.generators())?;
            Ok((b, src.elems.len(), gf2::rank(dst.elems.len(), rows)))
        })
        .collect::<Result<_, HomologyError>>()?;
    let info: HashMap<Bigrading, (usize, usize)> =
        computed.into_iter().map(|(b, d, r)| (b, (d, r))).collect();
    let mut table = RankTable::new(window);
    for b in window.points() {
        let (dim, out) = info[&b];
        let (_, incoming) = info[&b.shifted(1, 0)];
        table.set(b, dim - out - incoming);
    }
    Ok(table)
}

/// A map of free modules given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    /// Every term lands at the source grading plus this shift.
    pub shift: (i64, i64),
    pub terms: Vec<Vec<Term>>,
}

impl ChainMap {
    pub fn new(shift: (i64, i64), terms: Vec<Vec<Term>>) -> Self {
        ChainMap { shift, terms }
    }

    pub fn identity(c: &BigradedComplex) -> Self {
        let one = Monomial::one(c.num_vars());
        ChainMap::new(
            (0, 0),
            (0..c.len())
                .map(|i| vec![Term::new(i, one.clone())])
                .collect(),
        )
    }

    pub fn zero(source: &BigradedComplex, shift: (i64, i64)) -> Self {
        ChainMap::new(shift, vec![Vec::new(); source.len()])
    }

    /// Multiplication by `sum_i U_i` over `vars`.
    pub fn multiplication(c: &BigradedComplex, vars: &[usize]) -> Self {
        let k = c.num_vars();
        let terms = (0..c.len())
            .map(|i| {
                let mut t: Vec<Term> = vars
                    .iter()
                    .map(|&v| Term::new(i, Monomial::var(k, v)))
                    .collect();
                normalize_terms(&mut t, c.coefficients());
                t
            })
            .collect();
        ChainMap::new((-2, -1), terms)
    }

    pub fn term_count(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }
}

/// First failure found by [`chain_map_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMapWitness {
    pub generator: String,
    pub reason: String,
}

impl fmt::Display for ChainMapWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.generator, self.reason)
    }
}

/// `Ok` iff every term has the declared shift and `d f = f d` (over F2 the
/// sign is immaterial).
pub fn chain_map_check(
    source: &BigradedComplex,
    target: &BigradedComplex,
    f: &ChainMap,
) -> Result<(), ChainMapWitness> {
    if source.num_vars() != target.num_vars() {
        return Err(ChainMapWitness {
            generator: "-".into(),
            reason: format!(
                "rings differ: {} vs {} variables",
                source.num_vars(),
                target.num_vars()
            ),
        });
    }
    for (i, terms) in f.terms.iter().enumerate() {
        for t in terms {
            let (dm, ds) = t.mono.grading_shift();
            let landed = target.grading(t.target).shifted(dm, ds);
            if landed != source.grading(i).shifted(f.shift.0, f.shift.1) {
                return Err(ChainMapWitness {
                    generator: source.generators()[i].name.clone(),
                    reason: format!(
                        "term to {} lands in {landed}, expected shift {:?}",
                        target.generators()[t.target].name,
                        f.shift
                    ),
                });
            }
        }
    }
    let coeffs = source.coefficients();
    let df = compose_terms(&f.terms, target.differential_rows(), coeffs);
    let fd = compose_terms(source.differential_rows(), &f.terms, coeffs);
    for (i, (a, b)) in df.iter().zip(&fd).enumerate() {
        let mut diff: Vec<Term> = a.clone();
        diff.extend(b.iter().map(|t| Term {
            coeff: -t.coeff,
            ..t.clone()
        }));
        normalize_terms(&mut diff, coeffs);
        if let Some(t) = diff.first() {
            return Err(ChainMapWitness {
                generator: source.generators()[i].name.clone(),
                reason: format!(
                    "df - fd has coefficient {} on {} {}",
                    t.coeff,
                    t.mono,
                    target.generators()[t.target].name
                ),
            });
        }
    }
    Ok(())
}

/// Cone of `f`: source generators at grading `+ shift + (1, 0)` followed by
/// target generators, with `D(x, y) = (-dx, f x + dy)`.
pub fn mapping_cone(
    source: &BigradedComplex,
    target: &BigradedComplex,
    f: &ChainMap,
) -> Result<BigradedComplex, HomologyError> {
    if source.num_vars() != target.num_vars() {
        return Err(HomologyError::RingMismatch(
            source.num_vars(),
            target.num_vars(),
        ));
    }
    chain_map_check(source, target, f).map_err(|w| HomologyError::NotChainMap(w.to_string()))?;
    let offset = source.len();
    let mut gens: Vec<Generator> = source
        .generators()
        .iter()
        .map(|g| Generator {
            name: format!("S:{}", g.name),
            grading: g.grading.shifted(f.shift.0 + 1, f.shift.1),
        })
        .collect();
    gens.extend(target.generators().iter().map(|g| Generator {
        name: format!("T:{}", g.name),
        grading: g.grading,
    }));
    let ring = RingSpec::new(source.num_vars()).with_coefficients(source.coefficients());
    let mut cone = BigradedComplex::new(ring, gens, format!("cone({})", source.provenance()))
        .with_var_names(source.var_names().to_vec());
    for i in 0..source.len() {
        let mut terms: Vec<Term> = source
            .differential(i)
            .iter()
            .map(|t| Term {
                coeff: -t.coeff,
                ..t.clone()
            })
            .collect();
        terms.extend(f.terms[i].iter().map(|t| Term {
            target: t.target + offset,
            ..t.clone()
        }));
        cone.set_terms(i, terms);
    }
    for j in 0..target.len() {
        let terms = target
            .differential(j)
            .iter()
            .map(|t| Term {
                target: t.target + offset,
                ..t.clone()
            })
            .collect();
        cone.set_terms(j + offset, terms);
    }
    Ok(cone)
}

/// Rank of the map induced by `f` on homology, indexed by source bigrading.
pub fn induced_rank_table(
    source: &BigradedComplex,
    target: &BigradedComplex,
    f: &ChainMap,
    window: Window,
) -> Result<RankTable, HomologyError> {
    if source.num_vars() != target.num_vars() {
        return Err(HomologyError::RingMismatch(
            source.num_vars(),
            target.num_vars(),
        ));
    }
    let ls = Layout::new(source);
    let lt = Layout::new(target);
    let ranks: Vec<(Bigrading, usize)> = window
        .points()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&b| {
            let tb = b.shifted(f.shift.0, f.shift.1);
            let src = ls.piece(b)?;
            let src_low = ls.piece(b.shifted(-1, 0))?;
            let tgt = lt.piece(tb)?;
            let tgt_high = lt.piece(tb.shifted(1, 0))?;
            let d_rows = ls.images(
                source.differential_rows(),
                &src,
                &src_low,
                source.generators(),
            )?;
            let cycles = gf2::kernel(src_low.elems.len(), d_rows);
            let f_rows = ls.images(&f.terms, &src, &tgt, target.generators())?;
            let boundaries = lt.images(
                target.differential_rows(),
                &tgt_high,
                &tgt,
                target.generators(),
            )?;
            let mut ech = Echelon::new(tgt.elems.len());
            for r in boundaries {
                ech.insert(r);
            }
            let base = ech.rank();
            for z in cycles {
                let mut img = BitVec::zeros(tgt.elems.len());
                for i in z.ones() {
                    img.xor_assign(&f_rows[i]);
                }
                ech.insert(img);
            }
            Ok((b, ech.rank() - base))
        })
        .collect::<Result<_, HomologyError>>()?;
    let mut table = RankTable::new(window);
    for (b, r) in ranks {
        table.set(b, r);
    }
    Ok(table)
}

/// Rank of `d` out of each bigrading of `window` (used for exactness checks).
pub fn differential_rank(c: &BigradedComplex, b: Bigrading) -> Result<usize, HomologyError> {
    let layout = Layout::new(c);
    let src = layout.piece(b)?;
    let dst = layout.piece(b.shifted(-1, 0))?;
    let rows = layout.images(c.differential_rows(), &src, &dst, c.generators())?;
    Ok(gf2::rank(dst.elems.len(), rows))
}

/// A finite bigraded module, as `(m, s, rank)` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModuleShape {
    pub entries: Vec<(i64, i64, usize)>,
}

impl GradedModuleShape {
    pub fn new(entries: Vec<(i64, i64, usize)>) -> Self {
        GradedModuleShape { entries }
    }

    pub fn unit() -> Self {
        GradedModuleShape::new(vec![(0, 0, 1)])
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.2).sum()
    }
}

/// `out(m, s) = sum over (m0, s0, r) of r * t(m - m0, s - s0)` on `out_window`.
pub fn tensor_shape(
    t: &RankTable,
    shape: &GradedModuleShape,
    out_window: Window,
) -> Result<RankTable, HomologyError> {
    let mut out = RankTable::new(out_window);
    for b in out_window.points() {
        let mut total = 0;
        for &(m0, s0, r) in &shape.entries {
            let from = b.shifted(-m0, -s0);
            if !t.window.contains(from) {
                return Err(HomologyError::WindowUnderflow(b));
            }
            total += r * t.get(from);
        }
        out.set(b, total);
    }
    Ok(out)
}

/// Divides the Poincare polynomial of a full tilde table by
/// `(1 + q^-1 t^-1)^(n - ell)`.
pub fn hat_from_tilde(t: &RankTable, n: usize, ell: usize) -> Result<RankTable, HomologyError> {
    let power = n.saturating_sub(ell);
    let mut cur: BTreeMap<Bigrading, i64> = t.iter().map(|(b, r)| (b, r as i64)).collect();
    for _ in 0..power {
        cur =
            divide_once(&cur).map_err(|detail| HomologyError::InexactDivision { power, detail })?;
    }
    let mut out = RankTable::new(t.window);
    for (b, r) in cur {
        out.set(b, r as usize);
    }
    Ok(out)
}

/// Solves `q + shift(q, -1, -1) = p` along each diagonal from the top down.
fn divide_once(p: &BTreeMap<Bigrading, i64>) -> Result<BTreeMap<Bigrading, i64>, String> {
    let mut diagonals: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
    for (b, &r) in p {
        diagonals.entry(b.m - b.s).or_default().push((b.m, r));
    }
    let mut q = BTreeMap::new();
    for (diag, mut pts) in diagonals {
        pts.sort_by_key(|p| std::cmp::Reverse(p.0));
        let top = pts[0].0;
        let bottom = pts.last().expect("nonempty diagonal").0;
        let coeff: HashMap<i64, i64> = pts.into_iter().collect();
        let mut prev = 0;
        for m in (bottom..=top).rev() {
            let here = coeff.get(&m).copied().unwrap_or(0) - prev;
            if here < 0 {
                return Err(format!("negative quotient at ({m},{})", m - diag));
            }
            if m == bottom {
                if here != 0 {
                    return Err(format!("remainder {here} at ({m},{})", m - diag));
                }
            } else if here != 0 {
                q.insert(Bigrading::new(m, m - diag), here);
            }
            prev = here;
        }
    }
    Ok(q)
}

/// `sum (-1)^m` over basis elements of `c` at Alexander grading `s` for all
/// `m` in the given range.
pub fn basis_euler(c: &BigradedComplex, s: i64, m_range: (i64, i64)) -> Result<i64, HomologyError> {
    let layout = Layout::new(c);
    let mut total = 0;
    for m in m_range.0..=m_range.1 {
        let d = layout.piece(Bigrading::new(m, s))?.elems.len() as i64;
        total += if m.rem_euclid(2) == 0 { d } else { -d };
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, Flavor};
    use crate::grid::GridDiagram;

    fn grid(text: &str) -> GridDiagram {
        GridDiagram::parse(text).unwrap()
    }

    #[test]
    fn window_parsing() {
        let w: Window = "-8:2,-4:4".parse().unwrap();
        assert_eq!(w, Window::new((-8, 2), (-4, 4)));
        assert_eq!(w.to_string(), "-8:2,-4:4");
        assert!("1:0,0:0".parse::<Window>().is_err());
        assert!("1:2".parse::<Window>().is_err());
    }

    #[test]
    fn monomial_counts() {
        let mut n = 0;
        for_each_monomial(3, 2, |_| n += 1);
        assert_eq!(n, 6);
        assert_eq!(count_monomials(3, 2), 6);
        assert_eq!(count_monomials(0, 0), 1);
    }

    #[test]
    fn unknot_tilde_and_tower() {
        let g = grid("n=2; O=1,0; X=0,1");
        let t = build_complex(&g, Flavor::Tilde, &RingSpec::new(0)).unwrap();
        let ranks = bigraded_ranks(&t, Window::new((-3, 1), (-2, 1))).unwrap();
        assert_eq!(ranks.triples(), vec![(-1, -1, 1), (0, 0, 1)]);
        let hat = hat_from_tilde(&ranks, 2, 1).unwrap();
        assert_eq!(hat.triples(), vec![(0, 0, 1)]);

        let m = build_complex(&g, Flavor::Minus, &RingSpec::new(2)).unwrap();
        let ranks = bigraded_ranks(&m, Window::new((-6, 0), (-3, 0))).unwrap();
        assert_eq!(
            ranks.triples(),
            vec![(-6, -3, 1), (-4, -2, 1), (-2, -1, 1), (0, 0, 1)]
        );
    }

    #[test]
    fn cone_of_identity_is_acyclic_and_zero_cone_splits() {
        let g = grid("n=4; O=0,1,2,3; X=2,3,0,1");
        let c = build_complex(&g, Flavor::Tilde, &RingSpec::new(0)).unwrap();
        let w = Window::covering(&c).grown(1);
        let id = ChainMap::identity(&c);
        assert!(chain_map_check(&c, &c, &id).is_ok());
        let cone = mapping_cone(&c, &c, &id).unwrap();
        assert!(bigraded_ranks(&cone, w).unwrap().is_empty());
        let induced = induced_rank_table(&c, &c, &id, w).unwrap();
        assert_eq!(induced, bigraded_ranks(&c, w).unwrap());

        let zero = ChainMap::zero(&c, (0, 0));
        let split = mapping_cone(&c, &c, &zero).unwrap();
        let h = bigraded_ranks(&c, w).unwrap();
        let hs = bigraded_ranks(&split, w).unwrap();
        for b in w.points() {
            assert_eq!(hs.get(b), h.get(b) + h.get(b.shifted(-1, 0)));
        }
        assert!(induced_rank_table(&c, &c, &zero, w).unwrap().is_empty());
    }

    #[test]
    fn corrupted_map_is_rejected() {
        let g = grid("n=5; O=0,1,2,3,4; X=2,3,4,0,1");
        let c = build_complex(&g, Flavor::Minus, &RingSpec::new(5)).unwrap();
        let u = ChainMap::multiplication(&c, &[2]);
        assert!(chain_map_check(&c, &c, &u).is_ok());
        let mut bad = ChainMap::identity(&c);
        let victim = (0..c.len())
            .find(|&i| !c.differential(i).is_empty())
            .unwrap();
        bad.terms[victim].clear();
        let w = chain_map_check(&c, &c, &bad).unwrap_err();
        assert!(!w.generator.is_empty());
        assert!(mapping_cone(&c, &c, &bad).is_err());
    }

    #[test]
    fn tensor_shapes() {
        let t = RankTable::from_entries(Window::new((-3, 3), (-3, 3)), [((0, 0), 1)]);
        let id = tensor_shape(
            &t,
            &GradedModuleShape::unit(),
            Window::new((-2, 2), (-2, 2)),
        )
        .unwrap();
        assert_eq!(id.triples(), vec![(0, 0, 1)]);
        let w = GradedModuleShape::new(vec![(0, 0, 1), (1, 1, 1)]);
        let out = tensor_shape(&t, &w, Window::new((-1, 2), (-1, 2))).unwrap();
        assert_eq!(out.triples(), vec![(0, 0, 1), (1, 1, 1)]);
        assert!(tensor_shape(&t, &w, Window::new((-3, 3), (-3, 3))).is_err());
    }

    #[test]
    fn division_failure_is_reported() {
        let t = RankTable::from_entries(Window::new((-3, 3), (-3, 3)), [((0, 0), 1)]);
        assert!(matches!(
            hat_from_tilde(&t, 2, 1),
            Err(HomologyError::InexactDivision { .. })
        ));
    }
}
