//! The full report on both bundled templates: E against the cone of
//! U_b + U_c, the homotopy identity and both exact sequences.

use gridfloer::homology::Window;
use gridfloer::skein::{skein_report, SkeinTemplate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let window = Window::new((-8, 2), (-4, 4));
    for text in [
        include_str!("../corpus/trefoil.skein"),
        include_str!("../corpus/hopf.skein"),
    ] {
        let t = SkeinTemplate::parse(text)?;
        let r = skein_report(&t, window)?;
        println!("{r}");
    }
    Ok(())
}
