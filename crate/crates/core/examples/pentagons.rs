//! Pentagons through the point `a` out of a few states of `K0` on `G'`.

use gridfloer::grid::perm_unrank;
use gridfloer::skein::{pentagon_map, pentagons_from, SkeinTemplate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = SkeinTemplate::parse(include_str!("../corpus/trefoil.skein"))?;
    for idx in [0, 7, 42] {
        let x = perm_unrank(t.size(), idx);
        for p in pentagons_from(&t, &x) {
            let side = if p.rightward { "right" } else { "left" };
            let fate = if p.covers_x {
                "blocked by an X"
            } else {
                "counted"
            };
            println!(
                "{:?} -> {:?} ({side}, O columns {:?}): {fate}",
                p.from, p.to, p.o_columns
            );
        }
    }
    let phi = pentagon_map(&t);
    let terms: usize = phi.iter().map(Vec::len).sum();
    println!("Phi has {terms} terms over {} states", phi.len());
    Ok(())
}
