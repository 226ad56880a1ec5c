use super::{Bigrading, GridDiagram, GridState};

/// Predicate on the bigrading of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateFilter {
    Bigrading(Bigrading),
    /// `m - 2s`.
    N(i64),
    Alexander(i64),
    Maslov(i64),
}

impl StateFilter {
    pub fn accepts(&self, gr: Bigrading) -> bool {
        match *self {
            StateFilter::Bigrading(b) => gr == b,
            StateFilter::N(v) => gr.n_grading() == v,
            StateFilter::Alexander(s) => gr.s == s,
            StateFilter::Maslov(m) => gr.m == m,
        }
    }
}

/// Lexicographic iterator over all permutations of `0..n`.
#[derive(Debug, Clone)]
pub struct StateIter {
    current: Option<Vec<usize>>,
}

impl StateIter {
    pub fn new(n: usize) -> Self {
        StateIter {
            current: Some((0..n).collect()),
        }
    }
}

impl Iterator for StateIter {
    type Item = GridState;

    fn next(&mut self) -> Option<GridState> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        if next_permutation(&mut next) {
            self.current = Some(next);
        }
        Some(GridState::from_vec_unchecked(cur))
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All states of `g` in lexicographic order, optionally filtered by grading.
pub fn enumerate_states(g: &GridDiagram, filter: Option<StateFilter>) -> Vec<GridState> {
    let all = StateIter::new(g.size());
    match filter {
        None => all.collect(),
        Some(f) => {
            let grader = g.grader();
            all.filter(|s| f.accepts(grader.grading(s.as_slice())))
                .collect()
        }
    }
}

/// Position of `perm` in lexicographic order (its Lehmer code read in the
/// factorial base).
pub fn perm_rank(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    let mut used = 0u64;
    for (i, &p) in perm.iter().enumerate() {
        let smaller_unused = (0..p).filter(|&v| used & (1 << v) == 0).count();
        rank = rank * (n - i) + smaller_unused;
        used |= 1 << p;
    }
    rank
}

/// Inverse of [`perm_rank`].
pub fn perm_unrank(n: usize, mut rank: usize) -> Vec<usize> {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<usize> = (0..n).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(StateIter::new(2).count(), 2);
        assert_eq!(StateIter::new(5).count(), 120);
        assert_eq!(factorial(5), 120);
    }

    #[test]
    fn order_is_lexicographic_and_ranks_match() {
        let all: Vec<_> = StateIter::new(4).collect();
        for (k, s) in all.iter().enumerate() {
            assert_eq!(perm_rank(s.as_slice()), k);
            assert_eq!(perm_unrank(4, k), s.as_slice());
        }
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn n_filter_partitions_trefoil_states() {
        let g = GridDiagram::parse("n=5; O=0,1,2,3,4; X=2,3,4,0,1").unwrap();
        let grader = g.grader();
        let mut ns: Vec<i64> = StateIter::new(5)
            .map(|s| grader.grading(s.as_slice()).n_grading())
            .collect();
        ns.sort();
        ns.dedup();
        let total: usize = ns
            .iter()
            .map(|&v| enumerate_states(&g, Some(StateFilter::N(v))).len())
            .sum();
        assert_eq!(total, 120);
        for s in enumerate_states(&g, Some(StateFilter::N(-2))) {
            assert_eq!(grader.grading(s.as_slice()).n_grading(), -2);
        }
    }
}
