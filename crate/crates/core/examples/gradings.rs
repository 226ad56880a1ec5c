//! Maslov and Alexander gradings of a few states, and the grading drop
//! along every empty rectangle out of one of them.

use gridfloer::grid::{rectangles_from, GridDiagram, GridState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = GridDiagram::parse(include_str!("../corpus/trefoil.grid"))?;
    let x = GridState::new(vec![1, 2, 3, 4, 0])?;
    let gx = g.gradings(&x)?;
    println!("x = {x}: M = {}, A = {}", gx.m, gx.s);
    for r in rectangles_from(&g, &x)?.into_iter().filter(|r| r.empty) {
        let gy = g.gradings(&r.to)?;
        println!(
            "  -> {}  O {} X {}  drop ({}, {})",
            r.to,
            r.o_count(),
            r.x_count(),
            gx.m - gy.m,
            gx.s - gy.s
        );
        assert_eq!(gx.m - gy.m, 1 - 2 * r.o_count());
        assert_eq!(gx.s - gy.s, r.x_count() - r.o_count());
    }
    Ok(())
}
