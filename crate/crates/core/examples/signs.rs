//! A sign assignment on 4x4 grids, and d^2 = 0 over the integers for the
//! Hopf link complex built with it.

use gridfloer::complex::{
    build_complex, d_squared_check, Coefficients, Flavor, RingSpec, SignAssignment,
};
use gridfloer::grid::GridDiagram;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let signs = SignAssignment::for_size(4)?;
    let counts = signs.check_axioms()?;
    println!(
        "{} rectangles; axioms checked on {} composite, {} vertical, {} horizontal domains",
        signs.rectangle_count(),
        counts.composite,
        counts.vertical,
        counts.horizontal
    );
    let g = GridDiagram::parse(include_str!("../corpus/hopf.grid"))?;
    let ring = RingSpec::new(4).with_coefficients(Coefficients::Integers);
    let c = build_complex(&g, Flavor::Minus, &ring)?;
    match d_squared_check(&c) {
        Ok(()) => println!("d^2 = 0 over Z on {} generators", c.len()),
        Err(w) => println!("d^2 != 0: {w}"),
    }
    Ok(())
}
