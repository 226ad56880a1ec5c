use super::{GridDiagram, GridError, GridState};

/// `value` lies in the cyclic interval `[start, start + len)` mod `n`.
#[inline]
pub fn cyclic_contains(n: usize, start: usize, len: usize, value: usize) -> bool {
    (value + n - start) % n < len
}

/// Position of a rectangle on the torus: columns `left .. left + width` and
/// rows `bottom .. bottom + height`, both taken mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RectangleShape {
    pub left: usize,
    pub width: usize,
    pub bottom: usize,
    pub height: usize,
}

impl RectangleShape {
    pub fn right(&self, n: usize) -> usize {
        (self.left + self.width) % n
    }

    pub fn top(&self, n: usize) -> usize {
        (self.bottom + self.height) % n
    }

    pub fn contains_cell(&self, n: usize, column: usize, row: usize) -> bool {
        cyclic_contains(n, self.left, self.width, column)
            && cyclic_contains(n, self.bottom, self.height, row)
    }

    /// Some state point lies strictly inside: columns after the left edge,
    /// rows above the bottom edge.
    pub fn has_interior_point(&self, n: usize, perm: &[usize]) -> bool {
        (1..self.width).any(|k| {
            let col = (self.left + k) % n;
            let r = perm[col];
            r != self.bottom && cyclic_contains(n, self.bottom, self.height, r)
        })
    }

    pub fn area(&self) -> usize {
        self.width * self.height
    }
}

/// A rectangle from `from` to `to`. Its lower-left and upper-right corners are
/// points of `from`; the other two corners are points of `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle {
    pub from: GridState,
    pub to: GridState,
    pub shape: RectangleShape,
    /// `o_mult[k]` is 1 when the O in column `k` lies inside.
    pub o_mult: Vec<u8>,
    pub x_mult: Vec<u8>,
    pub empty: bool,
}

impl Rectangle {
    /// Columns of the two corners where the states differ; the first is the
    /// left edge.
    pub fn corner_columns(&self, n: usize) -> (usize, usize) {
        (self.shape.left, self.shape.right(n))
    }

    pub fn o_count(&self) -> i64 {
        self.o_mult.iter().map(|&v| v as i64).sum()
    }

    pub fn x_count(&self) -> i64 {
        self.x_mult.iter().map(|&v| v as i64).sum()
    }
}

fn build(g: &GridDiagram, from: &GridState, left: usize, right: usize) -> Rectangle {
    let n = g.size();
    let perm = from.as_slice();
    let shape = RectangleShape {
        left,
        width: (right + n - left) % n,
        bottom: perm[left],
        height: (perm[right] + n - perm[left]) % n,
    };
    let mut to = perm.to_vec();
    to.swap(left, right);
    let mult = |rows: &[usize]| -> Vec<u8> {
        rows.iter()
            .enumerate()
            .map(|(k, &r)| shape.contains_cell(n, k, r) as u8)
            .collect()
    };
    Rectangle {
        from: from.clone(),
        to: GridState::from_vec_unchecked(to),
        o_mult: mult(g.o_rows()),
        x_mult: mult(g.x_rows()),
        empty: !shape.has_interior_point(n, perm),
        shape,
    }
}

/// Every rectangle starting at `from`, empty or not, ordered by left column
/// and then by width.
pub fn rectangles_from(g: &GridDiagram, from: &GridState) -> Result<Vec<Rectangle>, GridError> {
    check_size(g, from)?;
    let n = g.size();
    let mut out = Vec::with_capacity(n * (n - 1));
    for left in 0..n {
        for width in 1..n {
            out.push(build(g, from, left, (left + width) % n));
        }
    }
    Ok(out)
}

/// The two rectangles from `x` to `y` when the states differ in exactly two
/// columns, and nothing otherwise.
pub fn rectangles_between(
    g: &GridDiagram,
    x: &GridState,
    y: &GridState,
) -> Result<Vec<Rectangle>, GridError> {
    check_size(g, x)?;
    check_size(g, y)?;
    let diff = x.differing_columns(y);
    if diff.len() != 2 {
        return Ok(Vec::new());
    }
    let (i, j) = (diff[0], diff[1]);
    if x.as_slice()[i] != y.as_slice()[j] || x.as_slice()[j] != y.as_slice()[i] {
        return Ok(Vec::new());
    }
    Ok(vec![build(g, x, i, j), build(g, x, j, i)])
}

/// Largest grid whose cells fit in a `u64` mask.
pub const MAX_MASK_SIZE: usize = 8;

/// Bit of cell `(column, row)` in a cell mask.
#[inline]
pub(crate) fn cell_bit(n: usize, column: usize, row: usize) -> u64 {
    1u64 << (column * n + row)
}

/// Calls `f(left, right, cells)` for every empty rectangle out of `perm`,
/// in the same order as [`rectangles_from`]. Requires `n <= MAX_MASK_SIZE`.
pub(crate) fn for_each_empty_rectangle(perm: &[usize], mut f: impl FnMut(usize, usize, u64)) {
    let n = perm.len();
    debug_assert!(n <= MAX_MASK_SIZE);
    for left in 0..n {
        let bottom = perm[left];
        for width in 1..n {
            let right = (left + width) % n;
            let height = (perm[right] + n - bottom) % n;
            let blocked = (1..width).any(|k| {
                let r = perm[(left + k) % n];
                r != bottom && cyclic_contains(n, bottom, height, r)
            });
            if blocked {
                continue;
            }
            let mut rows = 0u64;
            for k in 0..height {
                rows |= 1 << ((bottom + k) % n);
            }
            let mut cells = 0u64;
            for k in 0..width {
                cells |= rows << (((left + k) % n) * n);
            }
            f(left, right, cells);
        }
    }
}

fn check_size(g: &GridDiagram, s: &GridState) -> Result<(), GridError> {
    if s.len() != g.size() {
        return Err(GridError::SizeMismatch {
            got: s.len(),
            expected: g.size(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(v: &[usize]) -> GridState {
        GridState::new(v.to_vec()).unwrap()
    }

    #[test]
    fn unknot_rectangles_are_single_marked_cells() {
        let g = GridDiagram::parse("n=2; O=1,0; X=0,1").unwrap();
        let rects = rectangles_between(&g, &state(&[0, 1]), &state(&[1, 0])).unwrap();
        assert_eq!(rects.len(), 2);
        for r in &rects {
            assert_eq!(r.shape.area(), 1);
            assert_eq!(r.o_count() + r.x_count(), 1);
            assert!(r.empty);
        }
    }

    #[test]
    fn equal_or_far_states_have_no_rectangles() {
        let g = GridDiagram::parse("n=4; O=0,1,2,3; X=2,3,0,1").unwrap();
        let x = state(&[0, 1, 2, 3]);
        assert!(rectangles_between(&g, &x, &x).unwrap().is_empty());
        let y = state(&[1, 2, 0, 3]);
        assert!(rectangles_between(&g, &x, &y).unwrap().is_empty());
    }

    #[test]
    fn four_rectangles_tile_the_torus() {
        let g = GridDiagram::parse("n=5; O=0,1,2,3,4; X=2,3,4,0,1").unwrap();
        let x = state(&[0, 2, 4, 1, 3]);
        let y = state(&[1, 2, 4, 0, 3]);
        let there = rectangles_between(&g, &x, &y).unwrap();
        let back = rectangles_between(&g, &y, &x).unwrap();
        assert_eq!(there.len(), 2);
        assert_eq!(back.len(), 2);
        let area: usize = there.iter().chain(&back).map(|r| r.shape.area()).sum();
        // Column bands [i,j), [j,i) times row bands [x_i,x_j), [x_j,x_i):
        // the four rectangles tile the torus exactly once.
        assert_eq!(area, 25);
        let o: i64 = there.iter().chain(&back).map(|r| r.o_count()).sum();
        let x_total: i64 = there.iter().chain(&back).map(|r| r.x_count()).sum();
        assert_eq!((o, x_total), (5, 5));
    }

    #[test]
    fn emptiness_flag() {
        let g = GridDiagram::parse("n=3; O=0,1,2; X=1,2,0").unwrap();
        let x = state(&[0, 1, 2]);
        let rects = rectangles_from(&g, &x).unwrap();
        assert_eq!(rects.len(), 6);
        // Columns 0..2 and rows 0..2 contain the point (1,1) in the interior.
        let big = rects
            .iter()
            .find(|r| r.shape.left == 0 && r.shape.width == 2)
            .unwrap();
        assert!(!big.empty);
        let thin = rects
            .iter()
            .find(|r| r.shape.left == 0 && r.shape.width == 1)
            .unwrap();
        assert!(thin.empty);
    }

    #[test]
    fn fast_enumeration_agrees_with_rectangle_structs() {
        let g = GridDiagram::parse("n=5; O=0,1,2,3,4; X=2,3,4,0,1").unwrap();
        for s in crate::grid::StateIter::new(5) {
            let slow: Vec<_> = rectangles_from(&g, &s)
                .unwrap()
                .into_iter()
                .filter(|r| r.empty)
                .collect();
            let mut fast = Vec::new();
            for_each_empty_rectangle(s.as_slice(), |l, r, cells| fast.push((l, r, cells)));
            assert_eq!(slow.len(), fast.len());
            for (r, &(l, right, cells)) in slow.iter().zip(&fast) {
                assert_eq!(r.corner_columns(5), (l, right));
                for col in 0..5 {
                    for row in 0..5 {
                        let inside = cells & cell_bit(5, col, row) != 0;
                        assert_eq!(inside, r.shape.contains_cell(5, col, row));
                    }
                }
            }
        }
    }
}
