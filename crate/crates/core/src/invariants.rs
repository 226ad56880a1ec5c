//! Grid-level invariants: the hat table (from the tilde complex) and minus
//! ranks on a window.

use thiserror::Error;

use crate::complex::{build_complex, ComplexError, Flavor, RingSpec};
use crate::grid::GridDiagram;
use crate::homology::{bigraded_ranks, hat_from_tilde, HomologyError, RankTable, Window};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Homology of the tilde complex over every populated bigrading.
pub fn tilde_table(g: &GridDiagram) -> Result<RankTable, InvariantError> {
    let c = build_complex(g, Flavor::Tilde, &RingSpec::new(0))?;
    Ok(bigraded_ranks(&c, Window::covering(&c))?)
}

/// `HFK-hat`: the tilde table with one `(1 + q^-1 t^-1)` factor divided out
/// per extra O marking.
pub fn hat_table(g: &GridDiagram) -> Result<RankTable, InvariantError> {
    let tilde = tilde_table(g)?;
    Ok(hat_from_tilde(&tilde, g.size(), g.component_count())?)
}

/// `HFK-` of the grid complex over all `n` variables, on `window`.
pub fn minus_table(g: &GridDiagram, window: Window) -> Result<RankTable, InvariantError> {
    let c = build_complex(g, Flavor::Minus, &RingSpec::new(g.size()))?;
    Ok(bigraded_ranks(&c, window)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_hat_is_one_point() {
        let g = GridDiagram::parse("n=2; O=1,0; X=0,1").unwrap();
        assert_eq!(hat_table(&g).unwrap().triples(), vec![(0, 0, 1)]);
    }
}
