#![allow(dead_code)]

use gridfloer::grid::GridDiagram;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_GRIDS: [&str; 5] = [
    "unknot",
    "hopf",
    "trefoil",
    "figure_eight",
    "trefoil_stabilized",
];

pub fn corpus_path(file: &str) -> String {
    format!("{}/corpus/{file}", env!("CARGO_MANIFEST_DIR"))
}

pub fn corpus_grid(name: &str) -> GridDiagram {
    let text = std::fs::read_to_string(corpus_path(&format!("{name}.grid"))).unwrap();
    GridDiagram::parse(&text).unwrap()
}

pub fn corpus_grids() -> Vec<(&'static str, GridDiagram)> {
    CORPUS_GRIDS.iter().map(|&n| (n, corpus_grid(n))).collect()
}

/// A uniformly random valid grid of size `n`: two shuffles, redrawn until no
/// column has O and X in the same row.
pub fn random_grid(rng: &mut impl Rng, n: usize) -> GridDiagram {
    let mut o: Vec<usize> = (0..n).collect();
    let mut x: Vec<usize> = (0..n).collect();
    loop {
        o.shuffle(rng);
        x.shuffle(rng);
        if o.iter().zip(&x).all(|(a, b)| a != b) {
            return GridDiagram::new(o.clone(), x.clone()).unwrap();
        }
    }
}

/// `count` random grids with sizes drawn from `2..=max_n`, from a fixed seed.
pub fn random_grids(seed: u64, count: usize, max_n: usize) -> Vec<GridDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n);
            random_grid(&mut rng, n)
        })
        .collect()
}

/// Every valid grid of size `n`.
pub fn all_grids(n: usize) -> Vec<GridDiagram> {
    let perms = permutations(n);
    let mut out = Vec::new();
    for o in &perms {
        for x in &perms {
            if o.iter().zip(x).all(|(a, b)| a != b) {
                out.push(GridDiagram::new(o.clone(), x.clone()).unwrap());
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
