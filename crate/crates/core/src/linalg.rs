//! Linear algebra over F2 on `u32` bit patterns.

/// A basis of a subspace of `F2^n` kept in fully reduced row-echelon form.
///
/// Rows are sorted by leading bit, highest first, and each leading bit
/// occurs in exactly one row. The coordinate map [`XorBasis::coords`] reads
/// the leading-bit positions, so it is monotone: `u < v` iff
/// `coords(u) < coords(v)` for all `u`, `v` in the span.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct XorBasis {
    rows: Vec<u32>,
}

fn lead(v: u32) -> u32 {
    debug_assert!(v != 0);
    1 << (31 - v.leading_zeros())
}

impl XorBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<I: IntoIterator<Item = u32>>(vectors: I) -> Self {
        let mut basis = Self::new();
        for v in vectors {
            basis.insert(v);
        }
        basis
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn reduce(&self, mut v: u32) -> u32 {
        for &row in &self.rows {
            if v & lead(row) != 0 {
                v ^= row;
            }
        }
        v
    }

    pub fn contains(&self, v: u32) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v` to the spanning set. Returns `false` if it was already in the span.
    pub fn insert(&mut self, v: u32) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let pivot = lead(v);
        for row in &mut self.rows {
            if *row & pivot != 0 {
                *row ^= v;
            }
        }
        let at = self.rows.partition_point(|&r| lead(r) > pivot);
        self.rows.insert(at, v);
        true
    }

    /// Coordinates of `v` with respect to the basis, or `None` outside the span.
    pub fn coords(&self, v: u32) -> Option<u32> {
        let r = self.rows.len();
        let mut c = 0u32;
        let mut rest = v;
        for (i, &row) in self.rows.iter().enumerate() {
            if rest & lead(row) != 0 {
                rest ^= row;
                c |= 1 << (r - 1 - i);
            }
        }
        (rest == 0).then_some(c)
    }

    pub fn from_coords(&self, c: u32) -> u32 {
        let r = self.rows.len();
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| c & (1 << (r - 1 - i)) != 0)
            .fold(0, |acc, (_, &row)| acc ^ row)
    }

    /// All elements of the span, in increasing numeric order.
    pub fn span(&self) -> impl Iterator<Item = u32> + '_ {
        (0..1u32 << self.rows.len()).map(move |c| self.from_coords(c))
    }
}

pub fn rank<I: IntoIterator<Item = u32>>(vectors: I) -> usize {
    XorBasis::from_vectors(vectors).rank()
}

pub fn is_independent(vectors: &[u32]) -> bool {
    rank(vectors.iter().copied()) == vectors.len()
}
