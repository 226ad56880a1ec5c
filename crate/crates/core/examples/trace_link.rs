//! Reads a grid and traces the link it encodes.
//!
//! cargo run --example trace_link [path/to/file.grid]

use gridfloer::alexander::alexander_oracle;
use gridfloer::grid::{GridDiagram, LinkStructure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => include_str!("../corpus/trefoil.grid").to_string(),
    };
    let g = GridDiagram::parse(&text)?;
    let link = LinkStructure::trace(&g);
    println!("{}x{} grid, {} component(s)", g.size(), g.size(), link.ell);
    for c in &link.crossings {
        println!("crossing at ({}, {}) sign {:+}", c.column, c.row, c.sign);
    }
    println!("writhe {}", link.writhe());
    println!("Alexander polynomial {}", alexander_oracle(&link));
    Ok(())
}
