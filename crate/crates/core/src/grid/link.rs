use std::fmt;

use super::{invert, GridDiagram};

/// How a grid is drawn as a planar link diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Column segments run from X to O, row segments from O to X, and
    /// column segments pass over row segments.
    VerticalOverXToO,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::VerticalOverXToO => f.write_str("vertical-over, X->O columns"),
        }
    }
}

/// One straight piece of the planar diagram, drawn through cell centers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Segment {
    /// In `column`, from the X row to the O row.
    Vertical {
        column: usize,
        from: usize,
        to: usize,
    },
    /// In `row`, from the O column to the X column.
    Horizontal { row: usize, from: usize, to: usize },
}

/// A Wirtinger arc: a maximal piece of the diagram between undercrossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strand {
    pub id: usize,
    pub component: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    /// Cell center `(column, row)` where the segments meet.
    pub column: usize,
    pub row: usize,
    pub sign: i8,
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkStructure {
    pub ell: usize,
    /// Component id of the O marking in each column.
    pub component_of_o: Vec<usize>,
    pub crossings: Vec<Crossing>,
    pub strands: Vec<Strand>,
    /// Segments of each component in traversal order.
    pub segments: Vec<Vec<Segment>>,
    pub orientation: Orientation,
}

impl LinkStructure {
    pub fn trace(g: &GridDiagram) -> LinkStructure {
        let n = g.size();
        let o = g.o_rows();
        let x = g.x_rows();
        let x_col_of_row = invert(x);
        let o_col_of_row = invert(o);

        // Column of the next O along the knot, starting from the O in `col`.
        let mut component_of_o = vec![usize::MAX; n];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if component_of_o[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cycle = Vec::new();
            let mut col = start;
            while component_of_o[col] == usize::MAX {
                component_of_o[col] = id;
                cycle.push(col);
                col = x_col_of_row[o[col]];
            }
            cycles.push(cycle);
        }

        let crosses = |column: usize, row: usize| -> bool {
            let (lo, hi) = minmax(o[column], x[column]);
            let (left, right) = minmax(o_col_of_row[row], x_col_of_row[row]);
            lo < row && row < hi && left < column && column < right
        };

        // Walk each component, cutting arcs at undercrossings. Crossing ids
        // are assigned in (row, column) order afterwards.
        let mut strands = Vec::new();
        let mut segments = Vec::new();
        let mut vertical_arc = vec![0usize; n];
        let mut unders: Vec<(usize, usize, usize, usize)> = Vec::new();
        for (comp, cycle) in cycles.iter().enumerate() {
            let first_arc = strands.len();
            strands.push(Strand {
                id: first_arc,
                component: comp,
            });
            let mut arc = first_arc;
            let mut segs = Vec::new();
            let mut comp_unders = Vec::new();
            for &col in cycle {
                let row = o[col];
                let to = x_col_of_row[row];
                segs.push(Segment::Horizontal { row, from: col, to });
                let path: Vec<usize> = if to > col {
                    (col + 1..to).collect()
                } else {
                    (to + 1..col).rev().collect()
                };
                for v in path {
                    if crosses(v, row) {
                        let next = strands.len();
                        strands.push(Strand {
                            id: next,
                            component: comp,
                        });
                        comp_unders.push((v, row, arc, next));
                        arc = next;
                    }
                }
                segs.push(Segment::Vertical {
                    column: to,
                    from: x[to],
                    to: o[to],
                });
                vertical_arc[to] = arc;
            }
            if arc != first_arc {
                // The last arc closes up with the first one.
                strands.pop();
                for u in comp_unders.iter_mut() {
                    if u.3 == arc {
                        u.3 = first_arc;
                    }
                }
                for &col in cycle {
                    let to = x_col_of_row[o[col]];
                    if vertical_arc[to] == arc {
                        vertical_arc[to] = first_arc;
                    }
                }
            }
            unders.extend(comp_unders);
            segments.push(segs);
        }

        unders.sort_by_key(|&(v, row, _, _)| (row, v));
        let crossings = unders
            .into_iter()
            .map(|(column, row, under_in, under_out)| {
                let over_dir = sign(o[column] as i64 - x[column] as i64);
                let under_dir = sign(x_col_of_row[row] as i64 - o_col_of_row[row] as i64);
                // Cross product of (0, over_dir) with (under_dir, 0).
                let s = -over_dir * under_dir;
                Crossing {
                    column,
                    row,
                    sign: s as i8,
                    over: vertical_arc[column],
                    under_in,
                    under_out,
                }
            })
            .collect();

        LinkStructure {
            ell: cycles.len(),
            component_of_o,
            crossings,
            strands,
            segments,
            orientation: Orientation::VerticalOverXToO,
        }
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }
}

fn minmax(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn sign(v: i64) -> i64 {
    v.signum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trace(text: &str) -> LinkStructure {
        LinkStructure::trace(&GridDiagram::parse(text).unwrap())
    }

    #[test]
    fn unknot_has_no_crossings() {
        let l = trace("n=2; O=1,0; X=0,1");
        assert_eq!(l.ell, 1);
        assert_eq!(l.crossing_count(), 0);
        assert_eq!(l.strands.len(), 1);
    }

    #[test]
    fn hopf_grid_has_two_equal_signed_crossings() {
        let l = trace("n=4; O=0,1,2,3; X=2,3,0,1");
        assert_eq!(l.ell, 2);
        assert_eq!(l.crossing_count(), 2);
        assert_eq!(l.writhe(), -2);
        assert_eq!(l.component_of_o, vec![0, 1, 0, 1]);
    }

    #[test]
    fn trefoil_grid_is_left_handed() {
        let l = trace("n=5; O=0,1,2,3,4; X=2,3,4,0,1");
        assert_eq!(l.ell, 1);
        assert_eq!(l.crossing_count(), 3);
        assert_eq!(l.writhe(), -3);
        // One Wirtinger arc per crossing.
        assert_eq!(l.strands.len(), 3);
        for c in &l.crossings {
            assert_ne!(c.under_in, c.under_out);
        }
    }

    #[test]
    fn segments_alternate_and_close_up() {
        let l = trace("n=5; O=0,1,2,3,4; X=2,3,4,0,1");
        let segs = &l.segments[0];
        assert_eq!(segs.len(), 10);
        for pair in segs.chunks(2) {
            match (pair[0], pair[1]) {
                (Segment::Horizontal { to, .. }, Segment::Vertical { column, .. }) => {
                    assert_eq!(to, column)
                }
                other => panic!("unexpected segment pair {other:?}"),
            }
        }
    }
}
