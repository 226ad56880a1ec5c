//! Checks the bundled corpus against its manifest.

use gridfloer::corpus::{bundled_corpus_dir, corpus_check};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let report = corpus_check(&bundled_corpus_dir())?;
    print!("{report}");
    Ok(())
}
