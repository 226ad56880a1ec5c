//! The graded Euler characteristic of the tilde complex against the Fox
//! calculus Alexander polynomial, times one `1 - t^-1` per extra O.

use gridfloer::alexander::{alexander_oracle, basepoint_factor, euler_characteristic};
use gridfloer::grid::{GridDiagram, LinkStructure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in [
        include_str!("../corpus/trefoil.grid"),
        include_str!("../corpus/figure_eight.grid"),
        include_str!("../corpus/trefoil_stabilized.grid"),
    ] {
        let g = GridDiagram::parse(text)?;
        let chi = euler_characteristic(&g);
        let delta = alexander_oracle(&LinkStructure::trace(&g));
        let expected = delta.mul(&basepoint_factor().pow(g.size() - 1));
        println!("n = {}: Delta = {delta}", g.size());
        println!("  chi      = {chi}");
        println!("  agrees up to units: {}", chi.equivalent(&expected));
    }
    Ok(())
}
