//! The complex of X-free rectangles with every U set to 1, graded by
//! N = M - 2A. Its homology is that of a torus of dimension n - 1.

use gridfloer::grid::GridDiagram;
use gridfloer::homology::normalization;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in [
        include_str!("../corpus/unknot.grid"),
        include_str!("../corpus/hopf.grid"),
        include_str!("../corpus/trefoil.grid"),
    ] {
        let g = GridDiagram::parse(text)?;
        let r = normalization(&g)?;
        println!("n = {}, components = {}", g.size(), g.component_count());
        println!("  observed        {:?}", r.observed);
        println!(
            "  H(N+2l-n-1)(T)  {:?}  matches: {}",
            r.stated,
            r.stated_holds()
        );
        println!(
            "  H(N+l-1)(T)     {:?}  matches: {}",
            r.corrected,
            r.corrected_holds()
        );
    }
    Ok(())
}
