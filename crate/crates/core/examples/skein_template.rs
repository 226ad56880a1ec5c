//! Loads a skein template and runs the exhaustive map identities on it.
//!
//! cargo run --example skein_template [path/to/file.skein]

use gridfloer::skein::{validate_template, Instantiation, SkeinTemplate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => include_str!("../corpus/trefoil.skein").to_string(),
    };
    let t = SkeinTemplate::parse(&text)?;
    println!(
        "{} on {}x{}, commuted line {}",
        t.name(),
        t.size(),
        t.size(),
        t.commuted()
    );
    for inst in Instantiation::ALL {
        let g = t.grid(inst);
        println!("  {inst:?}: O={:?} X={:?}", g.o_rows(), g.x_rows());
    }
    print!("{}", validate_template(&t)?);
    Ok(())
}
