//! The grid skein exact triangle: templates, marked-rectangle maps, the
//! pentagon map and the combined complex `E`.
//!
//! All maps here are over F2.

mod maps;
mod pentagon;
mod report;
mod template;

pub use maps::{
    add, as_chain_map, compose, localize, maps_agree, restrict, splitting_complex, MapSpec,
    MapWitness, Part, StateMap,
};
pub use pentagon::{pentagon_map, pentagons_from, Pentagon};
pub use report::{
    build_e, skein_report, summarize, validate_template, CombinedComplex, SkeinReport,
    ValidationReport, Verdict, V_MODULE, W_MODULE,
};
pub use template::{Cell, EdgeLabels, Instantiation, Side, SkeinTemplate, SpecialCell};

use thiserror::Error;

use crate::complex::ComplexError;
use crate::grid::GridError;
use crate::homology::HomologyError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkeinError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}=` line")]
    MissingKey(&'static str),
    #[error("template invariant `{check}` fails: {detail}")]
    Invariant { check: &'static str, detail: String },
    #[error("{cell} is not a marking of {side}")]
    UnknownCell { cell: SpecialCell, side: Side },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn trefoil() -> SkeinTemplate {
        SkeinTemplate::parse(include_str!("../../corpus/trefoil.skein")).unwrap()
    }

    pub(crate) fn hopf() -> SkeinTemplate {
        SkeinTemplate::parse(include_str!("../../corpus/hopf.skein")).unwrap()
    }

    #[test]
    fn corpus_templates_parse() {
        let t = trefoil();
        assert!(t.same_component());
        assert_eq!(t.x_row(), 1);
        let h = hopf();
        assert!(!h.same_component());
        let back = SkeinTemplate::parse(&t.to_text()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn bad_triangle_is_named() {
        let err =
            SkeinTemplate::parse(include_str!("../../corpus/bad_triangle.skein")).unwrap_err();
        assert!(
            matches!(
                err,
                SkeinError::Invariant {
                    check: "triangle",
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn wrong_edge_labels_are_named() {
        let text = include_str!("../../corpus/trefoil.skein").replace("b:1,c:0", "b:0,c:1");
        let err = SkeinTemplate::parse(&text).unwrap_err();
        assert!(
            matches!(err, SkeinError::Invariant { check: "edges", .. }),
            "{err}"
        );
    }

    #[test]
    fn trefoil_validates() {
        let r = validate_template(&trefoil()).unwrap();
        for v in &r.verdicts {
            assert!(v.pass, "{}", v.tsv());
        }
    }

    #[test]
    fn hopf_validates() {
        let r = validate_template(&hopf()).unwrap();
        for v in &r.verdicts {
            assert!(v.pass, "{}", v.tsv());
        }
    }

    #[test]
    fn moved_b1_breaks_the_scalar_identity() {
        let t = trefoil();
        let b1 = t.cell(SpecialCell::B1, Side::G).unwrap();
        let moved = t.with_moved_cell(SpecialCell::B1, Cell::new(b1.col, (b1.row + 1) % t.size()));
        let r = validate_template(&moved).unwrap();
        let v = r
            .verdicts
            .iter()
            .find(|v| v.check == "lemma.scalar-G")
            .unwrap();
        assert!(!v.pass);
        assert!(v.rhs.contains("witness"), "{}", v.rhs);
    }
}
