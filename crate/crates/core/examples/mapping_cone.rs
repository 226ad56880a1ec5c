//! Multiplication by U on the unknot's minus complex, and its cone: the
//! cone's homology is the hat group, as the long exact sequence predicts.

use gridfloer::complex::{build_complex, Flavor, RingSpec};
use gridfloer::grid::GridDiagram;
use gridfloer::homology::{bigraded_ranks, chain_map_check, mapping_cone, ChainMap, Window};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = GridDiagram::parse(include_str!("../corpus/unknot.grid"))?;
    let c = build_complex(&g, Flavor::Minus, &RingSpec::new(2))?;
    let u = ChainMap::multiplication(&c, &[0]);
    chain_map_check(&c, &c, &u).map_err(|w| w.to_string())?;
    let cone = mapping_cone(&c, &c, &u)?;
    let window = Window::new((-4, 2), (-2, 1));
    println!("H(C-):\n{}", bigraded_ranks(&c, window)?);
    println!("H(cone U):\n{}", bigraded_ranks(&cone, window)?);
    Ok(())
}
