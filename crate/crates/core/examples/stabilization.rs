//! The trefoil before and after a stabilization has the same hat table.

use gridfloer::grid::GridDiagram;
use gridfloer::invariants::hat_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let small = GridDiagram::parse(include_str!("../corpus/trefoil.grid"))?;
    let big = GridDiagram::parse(include_str!("../corpus/trefoil_stabilized.grid"))?;
    let (a, b) = (hat_table(&small)?, hat_table(&big)?);
    println!("5x5: {:?}", a.triples());
    println!("6x6: {:?}", b.triples());
    println!("identical: {}", a.triples() == b.triples());
    Ok(())
}
