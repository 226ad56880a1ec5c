//! The pentagon map from `K0` on `G'` to `K0` on `G`.
//!
//! Draw both grids on one torus: the commuted circles `beta` (for `G`) and
//! `beta'` (for `G'`) both run along column line `c` and cross twice, once
//! at the point `a` in the middle of A_zero's row. Below `a` the region
//! between them belongs to one side, above it to the other, so a marking in
//! column `c-1` or `c` sits in a different column depending on which grid
//! it is read from. A pentagon from `x` (on `G'`) to `y` (on `G`) is a
//! rectangle with a corner on the commuted line whose side along that line
//! turns at `a`; which column a marking falls in is decided by whether it
//! lies below or above `a` within the pentagon's row band.

use rayon::prelude::*;

use crate::complex::{normalize_terms, Coefficients, Monomial, Term};
use crate::grid::{cyclic_contains, factorial, perm_rank, perm_unrank};

use super::maps::StateMap;
use super::template::{SkeinTemplate, SpecialCell};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mark {
    O(usize),
    Background,
    Special(SpecialCell),
}

/// A marking with its column on `G`, column on `G'`, row, and height inside
/// the row in quarters (1 = below `a`, 2 = level, 3 = above `a`).
#[derive(Debug, Clone, Copy)]
struct Placed {
    mark: Mark,
    g_col: usize,
    gp_col: usize,
    row: usize,
    quarter: usize,
}

fn placed_markings(t: &SkeinTemplate) -> Vec<Placed> {
    let n = t.size();
    let c = t.commuted();
    let a_row = t.a_point().row;
    let o = t.o_rows(crate::skein::Side::G);
    let quarter = |g_col: usize, gp_col: usize, row: usize| {
        if g_col == gp_col || row != a_row {
            2
        } else if g_col + 1 == c {
            3
        } else {
            1
        }
    };
    let mut out = Vec::new();
    for (col, &row) in o.iter().enumerate() {
        let gp = t.swap_col(col);
        out.push(Placed {
            mark: Mark::O(col),
            g_col: col,
            gp_col: gp,
            row,
            quarter: quarter(col, gp, row),
        });
    }
    for p in t.background() {
        out.push(Placed {
            mark: Mark::Background,
            g_col: p.col,
            gp_col: p.col,
            row: p.row,
            quarter: 2,
        });
    }
    for which in [SpecialCell::B1, SpecialCell::B2, SpecialCell::Azero] {
        let p = t.cell(which, crate::skein::Side::G).expect("G cells exist");
        let gp = t.swap_col(p.col);
        out.push(Placed {
            mark: Mark::Special(which),
            g_col: p.col,
            gp_col: gp,
            row: p.row,
            quarter: quarter(p.col, gp, p.row),
        });
    }
    debug_assert!(out.len() == 2 * n + 1);
    out
}

/// One pentagon: its target state and the markings it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pentagon {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    /// The other column whose point moves.
    pub partner: usize,
    /// Whether the pentagon extends rightwards from the commuted line.
    pub rightward: bool,
    pub o_columns: Vec<usize>,
    pub covers_x: bool,
}

/// Every empty pentagon through `a` starting at the `G'` state `x`.
pub fn pentagons_from(t: &SkeinTemplate, x: &[usize]) -> Vec<Pentagon> {
    let n = t.size();
    let c = t.commuted();
    let a_row = t.a_point().row;
    let marks = placed_markings(t);
    let mut out = Vec::new();
    for u in (0..n).filter(|&u| u != c) {
        let (h1, h2) = (x[c], x[u]);
        let mut y = x.to_vec();
        y.swap(c, u);
        for rightward in [true, false] {
            let (left, width, bottom, height) = if rightward {
                (c, (u + n - c) % n, h1, (h2 + n - h1) % n)
            } else {
                (u, (c + n - u) % n, h2, (h1 + n - h2) % n)
            };
            if !cyclic_contains(n, bottom, height, a_row) {
                continue;
            }
            let blocked = (1..width)
                .map(|k| (left + k) % n)
                .any(|k| height > 1 && cyclic_contains(n, (bottom + 1) % n, height - 1, x[k]));
            if blocked {
                continue;
            }
            let a_level = ((a_row + n - bottom) % n) * 4 + 2;
            let mut o_columns = Vec::new();
            let mut covers_x = false;
            for m in &marks {
                if !cyclic_contains(n, bottom, height, m.row) {
                    continue;
                }
                let level = ((m.row + n - bottom) % n) * 4 + m.quarter;
                let below = level < a_level;
                let col = match (rightward, below) {
                    (true, true) | (false, false) => m.gp_col,
                    _ => m.g_col,
                };
                if !cyclic_contains(n, left, width, col) {
                    continue;
                }
                match m.mark {
                    Mark::O(v) => o_columns.push(v),
                    Mark::Background | Mark::Special(SpecialCell::B1 | SpecialCell::B2) => {
                        covers_x = true
                    }
                    Mark::Special(_) => {}
                }
            }
            out.push(Pentagon {
                from: x.to_vec(),
                to: y.clone(),
                partner: u,
                rightward,
                o_columns,
                covers_x,
            });
        }
    }
    out
}

/// `Phi`, counting pentagons that avoid the `K0` X-markings, weighted by the
/// O's they cover.
pub fn pentagon_map(t: &SkeinTemplate) -> StateMap {
    let n = t.size();
    (0..factorial(n))
        .into_par_iter()
        .map(|idx| {
            let x = perm_unrank(n, idx);
            let mut terms: Vec<Term> = pentagons_from(t, &x)
                .into_iter()
                .filter(|p| !p.covers_x)
                .map(|p| {
                    let mut m = Monomial::one(n);
                    for v in p.o_columns {
                        m.0[v] += 1;
                    }
                    Term::new(perm_rank(&p.to), m)
                })
                .collect();
            normalize_terms(&mut terms, Coefficients::Gf2);
            terms
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein::tests::trefoil;

    #[test]
    fn pentagons_move_the_commuted_column() {
        let t = trefoil();
        let n = t.size();
        for idx in 0..factorial(n) {
            let x = perm_unrank(n, idx);
            for p in pentagons_from(&t, &x) {
                let moved: Vec<usize> = (0..n).filter(|&i| p.from[i] != p.to[i]).collect();
                assert_eq!(moved.len(), 2);
                assert!(moved.contains(&t.commuted()));
            }
        }
    }

    #[test]
    fn some_pentagons_survive() {
        let t = trefoil();
        assert!(pentagon_map(&t).iter().any(|v| !v.is_empty()));
    }
}
