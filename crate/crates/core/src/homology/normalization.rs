//! The complex counting X-free rectangles with every `U_i = 1`, graded by
//! `N = M - 2A` alone. A rectangle with `k` O's drops `M` by `1 - 2k` and
//! `A` by `-k`, so every term drops `N` by exactly one.

use std::collections::BTreeMap;

use crate::complex::{build_complex, ComplexError, Flavor, RingSpec};
use crate::grid::GridDiagram;

use super::gf2::{self, BitVec};

/// Homology ranks of the `U = 1` complex by `N`, zero ranks omitted.
pub fn n_graded_ranks(g: &GridDiagram) -> Result<BTreeMap<i64, usize>, ComplexError> {
    let c = build_complex(g, Flavor::Minus, &RingSpec::new(g.size()))?;
    let mut by_n: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, gen) in c.generators().iter().enumerate() {
        by_n.entry(gen.grading.n_grading()).or_default().push(i);
    }
    let position: Vec<usize> = {
        let mut pos = vec![0; c.len()];
        for gens in by_n.values() {
            for (k, &i) in gens.iter().enumerate() {
                pos[i] = k;
            }
        }
        pos
    };
    // rank of d leaving degree N
    let out_rank: BTreeMap<i64, usize> = by_n
        .iter()
        .map(|(&n, gens)| {
            let width = by_n.get(&(n - 1)).map_or(0, Vec::len);
            let rows = gens.iter().map(|&i| {
                let mut v = BitVec::zeros(width);
                for t in c.differential(i) {
                    if t.coeff.rem_euclid(2) == 1 {
                        v.flip(position[t.target]);
                    }
                }
                v
            });
            (n, gf2::rank(width, rows))
        })
        .collect();
    Ok(by_n
        .iter()
        .map(|(&n, gens)| {
            let incoming = out_rank.get(&(n + 1)).copied().unwrap_or(0);
            (n, gens.len() - out_rank[&n] - incoming)
        })
        .filter(|&(_, r)| r > 0)
        .collect())
}

/// Ranks of `H_*(T^k)`, degrees `0..=k`.
pub fn torus_ranks(k: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for _ in 0..k {
        let mut next = vec![1; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row
}

/// `H_N(C)` predicted by `H_N(C) = H_{N + offset}(T^{n-1})`.
pub fn shifted_torus(n: usize, offset: i64) -> BTreeMap<i64, usize> {
    torus_ranks(n - 1)
        .into_iter()
        .enumerate()
        .map(|(k, r)| (k as i64 - offset, r))
        .collect()
}

/// Observed ranks next to the two candidate normalizations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    pub observed: BTreeMap<i64, usize>,
    /// `H_N(C) = H_{N + 2l - n - 1}(T^{n-1})`.
    pub stated: BTreeMap<i64, usize>,
    /// `H_N(C) = H_{N + l - 1}(T^{n-1})`, what the standard gradings give.
    pub corrected: BTreeMap<i64, usize>,
}

impl Normalization {
    pub fn stated_holds(&self) -> bool {
        self.observed == self.stated
    }

    pub fn corrected_holds(&self) -> bool {
        self.observed == self.corrected
    }
}

pub fn normalization(g: &GridDiagram) -> Result<Normalization, ComplexError> {
    let n = g.size();
    let ell = g.component_count() as i64;
    Ok(Normalization {
        observed: n_graded_ranks(g)?,
        stated: shifted_torus(n, 2 * ell - n as i64 - 1),
        corrected: shifted_torus(n, ell - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_rows() {
        assert_eq!(torus_ranks(0), vec![1]);
        assert_eq!(torus_ranks(3), vec![1, 3, 3, 1]);
    }

    #[test]
    fn unknot_and_hopf() {
        let u = GridDiagram::parse("n=2; O=1,0; X=0,1").unwrap();
        let r = normalization(&u).unwrap();
        assert_eq!(r.observed, BTreeMap::from([(0, 1), (1, 1)]));
        assert!(r.corrected_holds());
        assert!(!r.stated_holds());

        let h = GridDiagram::parse("n=4; O=0,1,2,3; X=2,3,0,1").unwrap();
        let r = normalization(&h).unwrap();
        assert_eq!(r.observed.values().sum::<usize>(), 8);
        assert!(r.corrected_holds());
    }
}
