//! Marked-rectangle maps between the splittings `X`, `Y` (on `G`) and `X'`,
//! `Y'` (on `G'`), and the identities they satisfy.
//!
//! Every map here is a [`StateMap`]: one term list per state, indexed by
//! [`perm_rank`]. Both grids share their states, and the identification `I`
//! moving `x` to `x'` is the identity on permutations, so maps on either
//! grid compose directly. Coefficients are in F2.

use rayon::prelude::*;

use crate::complex::{
    build_complex, compose_terms, normalize_terms, BigradedComplex, Coefficients, Flavor, Monomial,
    RingSpec, Term,
};
use crate::grid::{
    cell_bit, factorial, for_each_empty_rectangle, perm_rank, perm_unrank, GridDiagram,
};
use crate::homology::ChainMap;

use super::template::{Instantiation, Side, SkeinTemplate, SpecialCell};
use super::SkeinError;

pub type StateMap = Vec<Vec<Term>>;

/// Which states a map may start or end at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    All,
    /// States through the distinguished point.
    X,
    /// States avoiding it.
    Y,
}

/// Rectangle filter: background X's are always forbidden and every term is
/// weighted by the O's the rectangle covers.
#[derive(Debug, Clone, Copy)]
pub struct MapSpec<'a> {
    pub side: Side,
    pub source: Part,
    pub target: Part,
    /// The rectangle must contain exactly one of these.
    pub exactly_one_of: &'a [SpecialCell],
    /// The rectangle must contain all of these.
    pub require: &'a [SpecialCell],
    pub forbid: &'a [SpecialCell],
}

use SpecialCell::{Aminus, Aplus, Azero, B1, B2};

impl SkeinTemplate {
    fn part_holds(&self, part: Part, perm: &[usize]) -> bool {
        match part {
            Part::All => true,
            Part::X => self.in_x(perm),
            Part::Y => !self.in_x(perm),
        }
    }

    fn cell_mask(&self, cells: &[SpecialCell], side: Side) -> Result<Vec<u64>, SkeinError> {
        cells
            .iter()
            .map(|&which| {
                self.cell(which, side)
                    .map(|p| cell_bit(self.size(), p.col, p.row))
                    .ok_or(SkeinError::UnknownCell { cell: which, side })
            })
            .collect()
    }

    /// Counts empty rectangles on `spec.side` passing the filter.
    pub fn marked_rectangle_map(&self, spec: &MapSpec) -> Result<StateMap, SkeinError> {
        let n = self.size();
        crate::complex::check_mask_size(n)?;
        let side = spec.side;
        let background = self
            .background()
            .iter()
            .fold(0u64, |acc, p| acc | cell_bit(n, p.col, p.row));
        let forbid = self
            .cell_mask(spec.forbid, side)?
            .into_iter()
            .fold(background, |acc, b| acc | b);
        let one_of = self.cell_mask(spec.exactly_one_of, side)?;
        let require = self.cell_mask(spec.require, side)?;
        let vars = self.var_of_column(side);
        let o_bits: Vec<(u64, usize)> = self
            .o_rows(side)
            .iter()
            .enumerate()
            .map(|(col, &row)| (cell_bit(n, col, row), vars[col]))
            .collect();
        let map = (0..factorial(n))
            .into_par_iter()
            .map(|idx| {
                let perm = perm_unrank(n, idx);
                let mut terms = Vec::new();
                if !self.part_holds(spec.source, &perm) {
                    return terms;
                }
                for_each_empty_rectangle(&perm, |left, right, cells| {
                    if cells & forbid != 0 {
                        return;
                    }
                    if !one_of.is_empty() && one_of.iter().filter(|&&b| cells & b != 0).count() != 1
                    {
                        return;
                    }
                    if require.iter().any(|&b| cells & b == 0) {
                        return;
                    }
                    let mut to = perm.clone();
                    to.swap(left, right);
                    if !self.part_holds(spec.target, &to) {
                        return;
                    }
                    let mut mono = Monomial::one(n);
                    for &(bit, var) in &o_bits {
                        if cells & bit != 0 {
                            mono.0[var] += 1;
                        }
                    }
                    terms.push(Term::new(perm_rank(&to), mono));
                });
                normalize_terms(&mut terms, Coefficients::Gf2);
                terms
            })
            .collect();
        Ok(map)
    }

    fn named(
        &self,
        side: Side,
        source: Part,
        target: Part,
        exactly_one_of: &[SpecialCell],
        require: &[SpecialCell],
        forbid: &[SpecialCell],
    ) -> StateMap {
        self.marked_rectangle_map(&MapSpec {
            side,
            source,
            target,
            exactly_one_of,
            require,
            forbid,
        })
        .expect("named maps only use cells present on their grid")
    }

    /// `D_{A-}: X -> Y` on `G`.
    pub fn d_aminus(&self) -> StateMap {
        self.named(Side::G, Part::X, Part::Y, &[Azero, Aminus], &[], &[B1, B2])
    }

    /// `D_B: Y -> X` on `G`, i.e. `I . D_B` landing in `X'`.
    pub fn d_b(&self) -> StateMap {
        self.named(Side::G, Part::Y, Part::X, &[B1, B2], &[], &[Azero, Aminus])
    }

    /// `D_B` on all of `Gen(G)`, without restricting source or target.
    pub fn d_b_everywhere(&self) -> StateMap {
        self.named(
            Side::G,
            Part::All,
            Part::All,
            &[B1, B2],
            &[],
            &[Azero, Aminus],
        )
    }

    /// `D'_B: X' -> Y'` on `G'`, i.e. `D'_B . I` starting from `X`.
    pub fn d_prime_b(&self) -> StateMap {
        self.named(
            Side::GPrime,
            Part::X,
            Part::Y,
            &[B1, B2],
            &[],
            &[Azero, Aplus],
        )
    }

    /// `D_{A+}: Y' -> X'` on `G'`.
    pub fn d_aplus(&self) -> StateMap {
        self.named(
            Side::GPrime,
            Part::Y,
            Part::X,
            &[Azero, Aplus],
            &[],
            &[B1, B2],
        )
    }

    /// Rectangles through `A_zero` avoiding `B1`, `B2`.
    pub fn ed_a0(&self) -> StateMap {
        self.named(Side::G, Part::All, Part::All, &[Azero], &[], &[B1, B2])
    }

    /// Rectangles through exactly one of `B1`, `B2`.
    pub fn ed_b(&self) -> StateMap {
        self.named(Side::G, Part::All, Part::All, &[B1, B2], &[], &[])
    }

    /// Rectangles through `A_zero` and exactly one of `B1`, `B2`.
    pub fn ed_a0b(&self) -> StateMap {
        self.named(Side::G, Part::All, Part::All, &[B1, B2], &[Azero], &[])
    }

    /// Rectangles avoiding every special marking of `side`; restricted to a
    /// splitting this is its internal differential.
    pub fn internal(&self, side: Side) -> StateMap {
        let forbid: &[SpecialCell] = match side {
            Side::G => &[Azero, Aminus, B1, B2],
            Side::GPrime => &[Azero, Aplus, B1, B2],
        };
        self.named(side, Part::All, Part::All, &[], &[], forbid)
    }

    /// Multiplication by the sum of `vars` on the states of `part`.
    pub fn scalar(&self, vars: &[usize], part: Part) -> StateMap {
        let n = self.size();
        (0..factorial(n))
            .map(|idx| {
                if !self.part_holds(part, &perm_unrank(n, idx)) {
                    return Vec::new();
                }
                let mut t: Vec<Term> = vars
                    .iter()
                    .map(|&v| Term::new(idx, Monomial::var(n, v)))
                    .collect();
                normalize_terms(&mut t, Coefficients::Gf2);
                t
            })
            .collect()
    }

    /// `CFK-` of an instantiation, with variables indexed by `G` column.
    pub fn instantiation_complex(
        &self,
        inst: Instantiation,
    ) -> Result<BigradedComplex, SkeinError> {
        let g = self.grid(inst);
        let c = build_complex(g, Flavor::Minus, &RingSpec::new(self.size()))?;
        Ok(relabel_vars(
            &c,
            &self.var_of_column(inst.side()),
            &format!("CFK-({inst})"),
        ))
    }
}

/// Sends variable `v` to `to[v]`.
pub(crate) fn relabel_vars(c: &BigradedComplex, to: &[usize], provenance: &str) -> BigradedComplex {
    let k = c.num_vars();
    let mut out = BigradedComplex::new(
        RingSpec::new(k).with_coefficients(c.coefficients()),
        c.generators().to_vec(),
        provenance,
    );
    for (i, terms) in c.differential_rows().iter().enumerate() {
        let mapped = terms
            .iter()
            .map(|t| {
                let mut m = Monomial::one(k);
                for (v, &e) in t.mono.0.iter().enumerate() {
                    m.0[to[v]] += e;
                }
                Term {
                    target: t.target,
                    mono: m,
                    coeff: t.coeff,
                }
            })
            .collect();
        out.set_terms(i, mapped);
    }
    out
}

/// `second . first`.
pub fn compose(first: &StateMap, second: &StateMap) -> StateMap {
    compose_terms(first, second, Coefficients::Gf2)
}

/// Sum over F2.
pub fn add(maps: &[&StateMap]) -> StateMap {
    let len = maps.first().map_or(0, |m| m.len());
    (0..len)
        .map(|i| {
            let mut t: Vec<Term> = maps.iter().flat_map(|m| m[i].iter().cloned()).collect();
            normalize_terms(&mut t, Coefficients::Gf2);
            t
        })
        .collect()
}

/// Restriction to sources and targets in the given parts.
pub fn restrict(t: &SkeinTemplate, map: &StateMap, source: Part, target: Part) -> StateMap {
    let n = t.size();
    map.iter()
        .enumerate()
        .map(|(i, terms)| {
            if !t.part_holds(source, &perm_unrank(n, i)) {
                return Vec::new();
            }
            terms
                .iter()
                .filter(|u| t.part_holds(target, &perm_unrank(n, u.target)))
                .cloned()
                .collect()
        })
        .collect()
}

/// A term present on one side of a claimed identity but not the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapWitness {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub mono: Monomial,
}

impl std::fmt::Display for MapWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] -> {} [{}]",
            crate::grid::join(&self.source),
            self.mono,
            crate::grid::join(&self.target)
        )
    }
}

/// `Ok` iff the two maps agree term by term over F2.
pub fn maps_agree(n: usize, lhs: &StateMap, rhs: &StateMap) -> Result<(), MapWitness> {
    let diff = add(&[lhs, rhs]);
    match diff.iter().enumerate().find(|(_, t)| !t.is_empty()) {
        None => Ok(()),
        Some((i, terms)) => Err(MapWitness {
            source: perm_unrank(n, i),
            target: perm_unrank(n, terms[0].target),
            mono: terms[0].mono.clone(),
        }),
    }
}

/// Wraps a state map as a chain map whose shift is read off its first term.
pub fn as_chain_map(source: &BigradedComplex, target: &BigradedComplex, map: StateMap) -> ChainMap {
    let shift = map
        .iter()
        .enumerate()
        .find_map(|(i, terms)| {
            terms.first().map(|t| {
                let (dm, ds) = t.mono.grading_shift();
                let to = target.grading(t.target).shifted(dm, ds);
                let from = source.grading(i);
                (to.m - from.m, to.s - from.s)
            })
        })
        .unwrap_or((0, 0));
    ChainMap::new(shift, map)
}

/// The subcomplex on one splitting, graded by `grading_of`.
pub fn splitting_complex(
    t: &SkeinTemplate,
    part: Part,
    differential: &StateMap,
    grading_of: &GridDiagram,
    label: &str,
) -> (BigradedComplex, Vec<usize>) {
    let n = t.size();
    let grader = grading_of.grader();
    let states: Vec<usize> = (0..factorial(n))
        .filter(|&i| t.part_holds(part, &perm_unrank(n, i)))
        .collect();
    let mut local = vec![usize::MAX; factorial(n)];
    for (k, &s) in states.iter().enumerate() {
        local[s] = k;
    }
    let gens = states
        .iter()
        .map(|&s| {
            let perm = perm_unrank(n, s);
            crate::complex::Generator {
                name: format!("[{}]", crate::grid::join(&perm)),
                grading: grader.grading(&perm),
            }
        })
        .collect();
    let mut c = BigradedComplex::new(RingSpec::new(n), gens, label);
    for (k, &s) in states.iter().enumerate() {
        let terms = differential[s]
            .iter()
            .filter(|u| local[u.target] != usize::MAX)
            .map(|u| Term {
                target: local[u.target],
                ..u.clone()
            })
            .collect();
        c.set_terms(k, terms);
    }
    (c, states)
}

/// Re-indexes a state map between two splittings.
pub fn localize(map: &StateMap, source_states: &[usize], target_states: &[usize]) -> StateMap {
    let mut local = std::collections::HashMap::new();
    for (k, &s) in target_states.iter().enumerate() {
        local.insert(s, k);
    }
    source_states
        .iter()
        .map(|&s| {
            map[s]
                .iter()
                .filter_map(|u| {
                    local.get(&u.target).map(|&k| Term {
                        target: k,
                        ..u.clone()
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein::tests::trefoil;

    #[test]
    fn named_maps_respect_splittings() {
        let t = trefoil();
        let n = t.size();
        for (i, terms) in t.d_aminus().iter().enumerate() {
            if !terms.is_empty() {
                assert!(t.in_x(&perm_unrank(n, i)));
            }
            for u in terms {
                assert!(!t.in_x(&perm_unrank(n, u.target)));
            }
        }
    }

    #[test]
    fn unknown_cell_is_rejected() {
        let t = trefoil();
        let err = t
            .marked_rectangle_map(&MapSpec {
                side: Side::G,
                source: Part::All,
                target: Part::All,
                exactly_one_of: &[Aplus],
                require: &[],
                forbid: &[],
            })
            .unwrap_err();
        assert!(matches!(
            err,
            SkeinError::UnknownCell {
                cell: Aplus,
                side: Side::G
            }
        ));
    }

    #[test]
    fn add_cancels_over_f2() {
        let t = trefoil();
        let m = t.d_aminus();
        assert!(add(&[&m, &m]).iter().all(Vec::is_empty));
        assert!(maps_agree(t.size(), &m, &m).is_ok());
    }
}
