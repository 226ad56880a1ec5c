//! Skein templates: two grids `G`, `G'` differing by a commutation of
//! columns `c-1` and `c`, together with the special markings that turn them
//! into diagrams of `K+`, `K-` and `K0`.

use std::fmt;

use crate::alexander::alexander_oracle;
use crate::grid::{invert, join, GridDiagram, KeyValues, LinkStructure};

use super::SkeinError;

/// A cell `(col, row)`, or a lattice point with the same coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

impl Cell {
    pub const fn new(col: usize, row: usize) -> Self {
        Cell { col, row }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.col, self.row)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialCell {
    Aminus,
    Azero,
    Aplus,
    B1,
    B2,
}

impl SpecialCell {
    pub const ALL: [SpecialCell; 5] = [
        SpecialCell::Aminus,
        SpecialCell::Azero,
        SpecialCell::Aplus,
        SpecialCell::B1,
        SpecialCell::B2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpecialCell::Aminus => "Aminus",
            SpecialCell::Azero => "Azero",
            SpecialCell::Aplus => "Aplus",
            SpecialCell::B1 => "B1",
            SpecialCell::B2 => "B2",
        }
    }
}

impl fmt::Display for SpecialCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which of the two grids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    G,
    GPrime,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::G => "G",
            Side::GPrime => "G'",
        })
    }
}

/// The four O-markings around the crossing, by their column in `G` (which is
/// also the index of their variable).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeLabels {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// The four diagrams a template presents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instantiation {
    MinusOnG,
    PlusOnGPrime,
    ZeroOnG,
    ZeroOnGPrime,
}

impl Instantiation {
    pub const ALL: [Instantiation; 4] = [
        Instantiation::MinusOnG,
        Instantiation::PlusOnGPrime,
        Instantiation::ZeroOnG,
        Instantiation::ZeroOnGPrime,
    ];

    pub fn side(self) -> Side {
        match self {
            Instantiation::MinusOnG | Instantiation::ZeroOnG => Side::G,
            _ => Side::GPrime,
        }
    }

    /// The special cells serving as X-markings.
    pub fn x_cells(self) -> [SpecialCell; 2] {
        match self {
            Instantiation::MinusOnG => [SpecialCell::Azero, SpecialCell::Aminus],
            Instantiation::PlusOnGPrime => [SpecialCell::Azero, SpecialCell::Aplus],
            _ => [SpecialCell::B1, SpecialCell::B2],
        }
    }
}

impl fmt::Display for Instantiation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Instantiation::MinusOnG => "K- on G",
            Instantiation::PlusOnGPrime => "K+ on G'",
            Instantiation::ZeroOnG => "K0 on G",
            Instantiation::ZeroOnGPrime => "K0 on G'",
        })
    }
}

/// Template data. Cells are in `G` coordinates except `Aplus`, which only
/// exists on `G'` and is given there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeinTemplate {
    name: String,
    n: usize,
    commuted: usize,
    o: Vec<usize>,
    x_minus: Vec<usize>,
    aminus: Cell,
    azero: Cell,
    aplus: Cell,
    b1: Cell,
    b2: Cell,
    x: Cell,
    xprime: Cell,
    a: Cell,
    edges: EdgeLabels,
    same_component: bool,
    grids: Vec<GridDiagram>,
}

const KEYS: [&str; 15] = [
    "n",
    "O",
    "X",
    "commuted",
    "Aminus",
    "Azero",
    "Aplus",
    "B1",
    "B2",
    "x",
    "xprime",
    "a",
    "edges",
    "same_component",
    "name",
];

impl SkeinTemplate {
    /// Parses and validates a template file. The grid lines give the O's of
    /// `G` and the X's of `K-` on `G`.
    pub fn parse(text: &str) -> Result<SkeinTemplate, SkeinError> {
        let kv = KeyValues::parse(text)?;
        kv.reject_unknown(&KEYS)?;
        let base = GridDiagram::from_key_values(&kv)?;
        let need = |key: &'static str| kv.get(key).ok_or(SkeinError::MissingKey(key));
        let cell = |key: &'static str| -> Result<Cell, SkeinError> {
            let (line, text) = need(key)?;
            parse_cell(line, key, text)
        };
        let (c_line, c_text) = need("commuted")?;
        let commuted = c_text.trim().parse().map_err(|_| SkeinError::Syntax {
            line: c_line,
            message: format!("`{c_text}` is not a column"),
        })?;
        let (e_line, e_text) = need("edges")?;
        let edges = parse_edges(e_line, e_text)?;
        let declared = match kv.get("same_component") {
            None => None,
            Some((line, v)) => Some(v.trim().parse::<bool>().map_err(|_| SkeinError::Syntax {
                line,
                message: format!("`{v}` is not true/false"),
            })?),
        };
        let name = kv.get("name").map_or("template", |(_, v)| v).to_string();
        let t = SkeinTemplate::assemble(
            name,
            base.o_rows().to_vec(),
            base.x_rows().to_vec(),
            commuted,
            [
                cell("Aminus")?,
                cell("Azero")?,
                cell("Aplus")?,
                cell("B1")?,
                cell("B2")?,
            ],
            [cell("x")?, cell("xprime")?, cell("a")?],
            edges,
        )?;
        if let Some(d) = declared {
            if d != t.same_component {
                return Err(SkeinError::Invariant {
                    check: "same_component",
                    detail: format!(
                        "file declares same_component={d}, the traced K+ gives {}",
                        t.same_component
                    ),
                });
            }
        }
        Ok(t)
    }

    fn assemble(
        name: String,
        o: Vec<usize>,
        x_minus: Vec<usize>,
        commuted: usize,
        cells: [Cell; 5],
        points: [Cell; 3],
        edges: EdgeLabels,
    ) -> Result<SkeinTemplate, SkeinError> {
        let n = o.len();
        let [aminus, azero, aplus, b1, b2] = cells;
        let [x, xprime, a] = points;
        if commuted == 0 || commuted >= n {
            return Err(SkeinError::Invariant {
                check: "commuted",
                detail: format!("commuted line {commuted} must lie in 1..{n}"),
            });
        }
        for (label, p) in [
            ("Aminus", aminus),
            ("Azero", azero),
            ("Aplus", aplus),
            ("B1", b1),
            ("B2", b2),
            ("x", x),
            ("xprime", xprime),
            ("a", a),
        ] {
            if p.col >= n || p.row >= n {
                return Err(SkeinError::Invariant {
                    check: "bounds",
                    detail: format!("{label}={p} lies outside the {n}x{n} grid"),
                });
            }
        }
        check_triangle(n, commuted, azero, x, xprime, a)?;
        let mut t = SkeinTemplate {
            name,
            n,
            commuted,
            o,
            x_minus,
            aminus,
            azero,
            aplus,
            b1,
            b2,
            x,
            xprime,
            a,
            edges,
            same_component: false,
            grids: Vec::new(),
        };
        t.grids = Instantiation::ALL
            .into_iter()
            .map(|inst| t.instantiate(inst))
            .collect::<Result<_, _>>()?;
        if t.instantiate_rows(Instantiation::MinusOnG)? != t.x_minus {
            return Err(SkeinError::Invariant {
                check: "K- on G",
                detail: format!(
                    "X line {} differs from the background plus Azero, Aminus",
                    join(&t.x_minus)
                ),
            });
        }
        check_distinct(&t)?;
        check_edges(&t)?;
        t.same_component = {
            let plus = LinkStructure::trace(t.grid(Instantiation::PlusOnGPrime));
            let col_a = t.swap_col(t.edges.a);
            let col_b = t.swap_col(t.edges.b);
            plus.component_of_o[col_a] == plus.component_of_o[col_b]
        };
        check_trace_triple(&t)?;
        Ok(t)
    }

    /// Same template with one special cell moved, skipping every check. The
    /// instantiated grids are left as they were. Only meant for exercising
    /// the identity validators on broken input.
    pub fn with_moved_cell(&self, which: SpecialCell, to: Cell) -> SkeinTemplate {
        let mut t = self.clone();
        match which {
            SpecialCell::Aminus => t.aminus = to,
            SpecialCell::Azero => t.azero = to,
            SpecialCell::Aplus => t.aplus = to,
            SpecialCell::B1 => t.b1 = to,
            SpecialCell::B2 => t.b2 = to,
        }
        t
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn commuted(&self) -> usize {
        self.commuted
    }

    pub fn edges(&self) -> EdgeLabels {
        self.edges
    }

    pub fn same_component(&self) -> bool {
        self.same_component
    }

    pub fn x_point(&self) -> Cell {
        self.x
    }

    pub fn xprime_point(&self) -> Cell {
        self.xprime
    }

    pub fn a_point(&self) -> Cell {
        self.a
    }

    /// Row of the distinguished point on the commuted line; a state lies in
    /// `X` exactly when `perm[commuted]` equals it.
    pub fn x_row(&self) -> usize {
        self.x.row
    }

    pub fn in_x(&self, perm: &[usize]) -> bool {
        perm[self.commuted] == self.x.row
    }

    /// Maps a `G` column to the `G'` column holding the same markings.
    pub fn swap_col(&self, col: usize) -> usize {
        let c = self.commuted;
        if col == c {
            c - 1
        } else if col == c - 1 {
            c
        } else {
            col
        }
    }

    /// O rows of the grid on `side`.
    pub fn o_rows(&self, side: Side) -> Vec<usize> {
        match side {
            Side::G => self.o.clone(),
            Side::GPrime => {
                let mut o = self.o.clone();
                o.swap(self.commuted - 1, self.commuted);
                o
            }
        }
    }

    /// Variable of the O in each column of `side`: the `G` column of that O.
    pub fn var_of_column(&self, side: Side) -> Vec<usize> {
        (0..self.n)
            .map(|col| match side {
                Side::G => col,
                Side::GPrime => self.swap_col(col),
            })
            .collect()
    }

    /// Position of a special cell on `side`, if it exists there.
    pub fn cell(&self, which: SpecialCell, side: Side) -> Option<Cell> {
        let on_g = match which {
            SpecialCell::Aminus => Some(self.aminus),
            SpecialCell::Azero => Some(self.azero),
            SpecialCell::B1 => Some(self.b1),
            SpecialCell::B2 => Some(self.b2),
            SpecialCell::Aplus => None,
        };
        match side {
            Side::G => on_g,
            Side::GPrime => match which {
                SpecialCell::Aplus => Some(self.aplus),
                SpecialCell::Aminus => None,
                _ => on_g.map(|p| Cell::new(self.swap_col(p.col), p.row)),
            },
        }
    }

    /// The background X-markings, shared by every instantiation.
    pub fn background(&self) -> Vec<Cell> {
        (0..self.n)
            .filter(|&col| col + 1 != self.commuted && col != self.commuted)
            .map(|col| Cell::new(col, self.x_minus[col]))
            .collect()
    }

    pub fn grid(&self, inst: Instantiation) -> &GridDiagram {
        &self.grids[inst as usize]
    }

    fn instantiate_rows(&self, inst: Instantiation) -> Result<Vec<usize>, SkeinError> {
        let side = inst.side();
        let mut rows = vec![None; self.n];
        let mut cells = self.background();
        for which in inst.x_cells() {
            cells.push(
                self.cell(which, side)
                    .expect("instantiation cells exist on its side"),
            );
        }
        for p in cells {
            if let Some(prev) = rows[p.col].replace(p.row) {
                return Err(SkeinError::Invariant {
                    check: "markings",
                    detail: format!(
                        "{inst}: column {} holds X-markings in rows {prev} and {}",
                        p.col, p.row
                    ),
                });
            }
        }
        let rows: Vec<usize> = rows
            .into_iter()
            .enumerate()
            .map(|(col, r)| {
                r.ok_or_else(|| SkeinError::Invariant {
                    check: "markings",
                    detail: format!("{inst}: column {col} has no X-marking"),
                })
            })
            .collect::<Result<_, _>>()?;
        let inv_count = {
            let mut seen = vec![0; self.n];
            for &r in &rows {
                seen[r] += 1;
            }
            seen
        };
        if let Some(row) = (0..self.n).find(|&r| inv_count[r] != 1) {
            return Err(SkeinError::Invariant {
                check: "markings",
                detail: format!("{inst}: row {row} holds {} X-markings", inv_count[row]),
            });
        }
        Ok(rows)
    }

    fn instantiate(&self, inst: Instantiation) -> Result<GridDiagram, SkeinError> {
        let rows = self.instantiate_rows(inst)?;
        GridDiagram::new(self.o_rows(inst.side()), rows).map_err(|e| SkeinError::Invariant {
            check: "markings",
            detail: format!("{inst}: {e}"),
        })
    }

    /// Template file text.
    pub fn to_text(&self) -> String {
        let e = self.edges;
        format!(
            "name={}\nn={}\nO={}\nX={}\ncommuted={}\nAminus={}\nAzero={}\nAplus={}\nB1={}\nB2={}\nx={}\nxprime={}\na={}\nedges=a:{},b:{},c:{},d:{}\nsame_component={}\n",
            self.name,
            self.n,
            join(&self.o),
            join(&self.x_minus),
            self.commuted,
            self.aminus,
            self.azero,
            self.aplus,
            self.b1,
            self.b2,
            self.x,
            self.xprime,
            self.a,
            e.a,
            e.b,
            e.c,
            e.d,
            self.same_component
        )
    }
}

fn parse_cell(line: usize, key: &str, text: &str) -> Result<Cell, SkeinError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || SkeinError::Syntax {
        line,
        message: format!("`{key}={text}` is not `col,row`"),
    };
    if parts.len() != 2 {
        return Err(bad());
    }
    let col = parts[0].parse().map_err(|_| bad())?;
    let row = parts[1].parse().map_err(|_| bad())?;
    Ok(Cell::new(col, row))
}

fn parse_edges(line: usize, text: &str) -> Result<EdgeLabels, SkeinError> {
    let mut vals = [None; 4];
    for part in text.split(',') {
        let bad = || SkeinError::Syntax {
            line,
            message: format!("`{}` is not `label:column`", part.trim()),
        };
        let (label, v) = part.trim().split_once(':').ok_or_else(bad)?;
        let slot = match label.trim() {
            "a" => 0,
            "b" => 1,
            "c" => 2,
            "d" => 3,
            _ => return Err(bad()),
        };
        vals[slot] = Some(v.trim().parse::<usize>().map_err(|_| bad())?);
    }
    let get = |k: usize, l: &str| {
        vals[k].ok_or_else(|| SkeinError::Syntax {
            line,
            message: format!("edge `{l}` missing"),
        })
    };
    Ok(EdgeLabels {
        a: get(0, "a")?,
        b: get(1, "b")?,
        c: get(2, "c")?,
        d: get(3, "d")?,
    })
}

/// The triangle cut out by the commuted circles and a horizontal circle has
/// vertices `x = x'` on the commuted line and `a` where the two commuted
/// circles cross, at mid-height of A_zero's row. It contains A_zero exactly
/// when A_zero borders the commuted line and `x` is the corner of that row
/// on A_zero's side.
fn check_triangle(
    n: usize,
    c: usize,
    azero: Cell,
    x: Cell,
    xprime: Cell,
    a: Cell,
) -> Result<(), SkeinError> {
    let fail = |detail: String| {
        Err(SkeinError::Invariant {
            check: "triangle",
            detail,
        })
    };
    if x.col != c || xprime.col != c || a.col != c {
        return fail(format!(
            "x={x}, xprime={xprime} and a={a} must all lie on the commuted line {c}"
        ));
    }
    if x.row != xprime.row {
        return fail(format!("x={x} and xprime={xprime} are different points"));
    }
    if azero.col + 1 != c && azero.col != c {
        return fail(format!(
            "Azero={azero} does not border the commuted line {c}, so it is outside the x, x', a triangle"
        ));
    }
    if a.row != azero.row {
        return fail(format!(
            "a={a} is not in Azero's row {}, so the triangle misses Azero",
            azero.row
        ));
    }
    let expected = if azero.col + 1 == c {
        (azero.row + 1) % n
    } else {
        azero.row
    };
    if x.row != expected {
        return fail(format!(
            "x={x} is not the corner of the triangle around Azero={azero} (expected row {expected})"
        ));
    }
    Ok(())
}

/// The K0 markings must differ from the A-markings on each grid.
fn check_distinct(t: &SkeinTemplate) -> Result<(), SkeinError> {
    for side in [Side::G, Side::GPrime] {
        for b in [SpecialCell::B1, SpecialCell::B2] {
            for a in [SpecialCell::Azero, SpecialCell::Aminus, SpecialCell::Aplus] {
                if let (Some(pb), Some(pa)) = (t.cell(b, side), t.cell(a, side)) {
                    if pa == pb {
                        return Err(SkeinError::Invariant {
                            check: "markings",
                            detail: format!("{b} and {a} share the cell {pa} on {side}"),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Vertical strands run from X to O, horizontal ones from O to X, so the
/// O's sharing a column with the crossing's X-markings sit on the outgoing
/// edges and those sharing a row sit on the incoming edges. `b` and `c` are
/// the ones adjacent to A_zero.
fn check_edges(t: &SkeinTemplate) -> Result<(), SkeinError> {
    let e = t.edges;
    let fail = |detail: String| {
        Err(SkeinError::Invariant {
            check: "edges",
            detail,
        })
    };
    if [e.a, e.b, e.c, e.d].iter().any(|&v| v >= t.n) {
        return fail(format!("edge labels {e:?} must be columns below {}", t.n));
    }
    let o_col_of_row = invert(&t.o);
    let k1 = t.azero.col;
    let k2 = t.aminus.col;
    let r1 = t.azero.row;
    let r2 = t.aminus.row;
    if e.b != k1 {
        return fail(format!("b={} is not the O in Azero's column {k1}", e.b));
    }
    if e.a != k2 {
        return fail(format!("a={} is not the O in Aminus's column {k2}", e.a));
    }
    if e.c != o_col_of_row[r1] {
        return fail(format!(
            "c={} is not the O in Azero's row {r1} (column {})",
            e.c, o_col_of_row[r1]
        ));
    }
    if e.d != o_col_of_row[r2] {
        return fail(format!(
            "d={} is not the O in Aminus's row {r2} (column {})",
            e.d, o_col_of_row[r2]
        ));
    }
    Ok(())
}

/// Crossing data of the four traced diagrams. The commutation moves
/// crossings around, so `K+` on `G'` and `K-` on `G` are compared through
/// their writhe (one crossing changes sign) and component count, while on
/// `G'` the `K0` diagram must be `K+` with exactly one positive crossing
/// deleted, position by position. Both grids must give the same `K0`, and
/// the component count changes as the crossing type dictates. Alexander
/// polynomials are compared separately.
fn check_trace_triple(t: &SkeinTemplate) -> Result<(), SkeinError> {
    let tr = |i: Instantiation| LinkStructure::trace(t.grid(i));
    let minus = tr(Instantiation::MinusOnG);
    let plus = tr(Instantiation::PlusOnGPrime);
    let zero = tr(Instantiation::ZeroOnG);
    let zero_p = tr(Instantiation::ZeroOnGPrime);
    let fail = |detail: String| {
        Err(SkeinError::Invariant {
            check: "trace",
            detail,
        })
    };
    if plus.writhe() - minus.writhe() != 2 || plus.ell != minus.ell {
        return fail(format!(
            "K+ (writhe {}, {} components) and K- (writhe {}, {} components) do not differ by one crossing change",
            plus.writhe(),
            plus.ell,
            minus.writhe(),
            minus.ell
        ));
    }
    let key = |l: &LinkStructure| -> Vec<(usize, usize, i8)> {
        l.crossings
            .iter()
            .map(|c| (c.column, c.row, c.sign))
            .collect()
    };
    let plus_set = key(&plus);
    let zero_set = key(&zero_p);
    let extra: Vec<_> = plus_set.iter().filter(|c| !zero_set.contains(c)).collect();
    let resolved =
        zero_set.iter().all(|c| plus_set.contains(c)) && extra.len() == 1 && extra[0].2 > 0;
    if !resolved {
        return fail(format!(
            "K0 on G' (crossings {zero_set:?}) is not K+ on G' (crossings {plus_set:?}) with one positive crossing resolved"
        ));
    }
    if zero.ell != zero_p.ell
        || zero.writhe() != zero_p.writhe()
        || alexander_oracle(&zero) != alexander_oracle(&zero_p)
    {
        return fail("the K0 diagrams on G and G' differ".into());
    }
    let expected = if t.same_component {
        plus.ell + 1
    } else {
        plus.ell - 1
    };
    if zero.ell != expected {
        return fail(format!(
            "K+ has {} components and its crossing strands are {}, but K0 has {}",
            plus.ell,
            if t.same_component {
                "on one component"
            } else {
                "on two components"
            },
            zero.ell
        ));
    }
    Ok(())
}
