//! Bit-packed linear algebra over the two-element field.

/// Dense vector over F2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVec::zeros(len);
        v.flip(i);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.get(i) != value {
            self.flip(i);
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.first_one_from(0)
    }

    /// Lowest set bit at position `>= start`.
    pub fn first_one_from(&self, start: usize) -> Option<usize> {
        if start >= self.len {
            return None;
        }
        let mut w = start / 64;
        let mut word = self.words[w] & (!0u64 << (start % 64));
        loop {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        let mut next = self.first_one();
        std::iter::from_fn(move || {
            let cur = next?;
            next = self.first_one_from(cur + 1);
            Some(cur)
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Row space kept in echelon form: every stored row's lowest set bit is a
/// pivot that no other stored row has.
#[derive(Debug, Clone)]
pub struct Echelon {
    rows: Vec<BitVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// Reduces `v` until its lowest bit is not a pivot (or it is zero).
    pub fn reduce(&self, v: &mut BitVec) {
        let mut pos = 0;
        while let Some(p) = v.first_one_from(pos) {
            match self.pivot_row[p] {
                Some(r) => v.xor_assign(&self.rows[r]),
                None => return,
            }
            pos = p + 1;
        }
    }

    /// Adds `v` to the span. Returns the stored row when `v` was independent.
    pub fn insert(&mut self, mut v: BitVec) -> Option<BitVec> {
        self.reduce(&mut v);
        let p = v.first_one()?;
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(v.clone());
        Some(v)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }
}

/// Echelon form that remembers which input rows produced each stored row,
/// so dependent inputs yield kernel vectors.
#[derive(Debug, Clone)]
pub struct TrackedEchelon {
    inner: Echelon,
    combos: Vec<BitVec>,
    num_inputs: usize,
}

impl TrackedEchelon {
    pub fn new(ncols: usize, num_inputs: usize) -> Self {
        TrackedEchelon {
            inner: Echelon::new(ncols),
            combos: Vec::new(),
            num_inputs,
        }
    }

    pub fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Inserts input row `index`. Returns a kernel vector (a combination of
    /// inputs summing to zero) when the row is dependent.
    pub fn insert(&mut self, index: usize, mut v: BitVec) -> Option<BitVec> {
        let mut combo = BitVec::unit(self.num_inputs, index);
        let mut pos = 0;
        while let Some(p) = v.first_one_from(pos) {
            match self.inner.pivot_row[p] {
                Some(r) => {
                    v.xor_assign(&self.inner.rows[r]);
                    combo.xor_assign(&self.combos[r]);
                }
                None => {
                    self.inner.pivot_row[p] = Some(self.inner.rows.len());
                    self.inner.rows.push(v);
                    self.combos.push(combo);
                    return None;
                }
            }
            pos = p + 1;
        }
        Some(combo)
    }
}

/// Rank of the span of `rows`, each of length `ncols`.
pub fn rank(ncols: usize, rows: impl IntoIterator<Item = BitVec>) -> usize {
    let mut ech = Echelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Basis of the kernel of the map sending input `i` to `rows[i]`.
pub fn kernel(ncols: usize, rows: Vec<BitVec>) -> Vec<BitVec> {
    let n = rows.len();
    let mut ech = TrackedEchelon::new(ncols, n);
    rows.into_iter()
        .enumerate()
        .filter_map(|(i, r)| ech.insert(i, r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(bits: &[usize], len: usize) -> BitVec {
        let mut v = BitVec::zeros(len);
        for &b in bits {
            v.flip(b);
        }
        v
    }

    #[test]
    fn bit_ops() {
        let mut v = bv(&[3, 64, 130], 131);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 64, 130]);
        assert_eq!(v.first_one_from(4), Some(64));
        assert_eq!(v.first_one_from(131), None);
        v.set(3, false);
        assert_eq!(v.count_ones(), 2);
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![bv(&[0, 1], 3), bv(&[1, 2], 3), bv(&[0, 2], 3), bv(&[], 3)];
        assert_eq!(rank(3, rows.clone()), 2);
        let ker = kernel(3, rows);
        assert_eq!(ker.len(), 2);
        assert!(ker.contains(&bv(&[0, 1, 2], 4)));
        assert!(ker.contains(&bv(&[3], 4)));
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(70);
        e.insert(bv(&[5, 69], 70));
        e.insert(bv(&[5, 6], 70));
        assert!(e.contains(&bv(&[6, 69], 70)));
        assert!(!e.contains(&bv(&[6], 70)));
    }
}
