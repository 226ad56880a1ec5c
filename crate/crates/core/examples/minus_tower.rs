//! The minus complex of the unknot: one tower of U-powers, each dropping
//! the bigrading by (2, 1).

use gridfloer::grid::GridDiagram;
use gridfloer::homology::Window;
use gridfloer::invariants::minus_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = GridDiagram::parse(include_str!("../corpus/unknot.grid"))?;
    let t = minus_table(&g, Window::new((-8, 1), (-4, 1)))?;
    print!("{t}");
    for k in 0..4 {
        assert_eq!(t.at(-2 * k, -k), 1);
    }
    Ok(())
}
