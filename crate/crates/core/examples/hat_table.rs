//! Hat knot Floer homology of the bundled knots and links.

use gridfloer::grid::GridDiagram;
use gridfloer::invariants::hat_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus = [
        ("unknot", include_str!("../corpus/unknot.grid")),
        ("Hopf link", include_str!("../corpus/hopf.grid")),
        ("trefoil", include_str!("../corpus/trefoil.grid")),
        ("figure-eight", include_str!("../corpus/figure_eight.grid")),
    ];
    for (name, text) in corpus {
        let g = GridDiagram::parse(text)?;
        let t = hat_table(&g)?;
        let items: Vec<String> = t
            .triples()
            .iter()
            .map(|(m, s, r)| format!("({m},{s})^{r}"))
            .collect();
        println!("{name:>13}: {}", items.join(" "));
    }
    Ok(())
}
