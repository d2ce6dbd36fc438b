//! Block matrices `T_I`: the minimal basis of the algebra.
//!
//! For a nonempty proper subset `I` of the index set, `T_I` has entry 1
//! exactly at positions `(i, j)` with `i ∈ I`, `j ∉ I`, and 0 elsewhere.
//! Indices are zero-based in this API and rendered one-based in text.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{ExponentMatrix, NatMatrix};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    n: usize,
    indices: BTreeSet<usize>,
}

impl Block {
    /// Builds `T_I` for `I = indices`. Requires `1 ≤ |I| ≤ n − 1` and all
    /// indices in range.
    pub fn new(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&i) = indices.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if indices.is_empty() || indices.len() == n {
            return Err(Error::ImproperIndexSet { n });
        }
        Ok(Block { n, indices })
    }

    pub fn singleton(n: usize, i: usize) -> Result<Self> {
        Block::new(n, [i])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a block's index set is nonempty by construction
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    /// `T_{I^c}`, which is also the transpose of `T_I`.
    pub fn complement(&self) -> Block {
        let indices = (0..self.n).filter(|i| !self.contains(*i)).collect();
        Block {
            n: self.n,
            indices,
        }
    }

    /// The realized matrix.
    pub fn realize(&self) -> ExponentMatrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for &i in &self.indices {
            for j in 0..n {
                if !self.contains(j) {
                    entries[i * n + j] = 1;
                }
            }
        }
        ExponentMatrix::from_nat_unchecked(NatMatrix::from_flat_unchecked(n, entries))
    }

    /// All `2^n − 2` blocks, ordered by the bitmask of their index sets.
    pub fn all(n: usize) -> Vec<Block> {
        assert!((2..=24).contains(&n), "block enumeration is desk-scale only");
        (1..(1usize << n) - 1)
            .map(|mask| Block {
                n,
                indices: (0..n).filter(|i| mask >> i & 1 == 1).collect(),
            })
            .collect()
    }

    /// Recognizes a realized block, if the matrix is one.
    pub fn from_matrix(m: &NatMatrix) -> Option<Block> {
        let n = m.n();
        let indices: BTreeSet<usize> = (0..n).filter(|&i| m.row(i).iter().any(|&e| e != 0)).collect();
        if indices.is_empty() || indices.len() == n {
            return None;
        }
        let candidate = Block { n, indices };
        if candidate.realize().as_nat() == m {
            Some(candidate)
        } else {
            None
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{{")?;
        for (pos, i) in self.indices.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExponentMatrix;

    #[test]
    fn realizes_singleton() {
        let b = Block::new(3, [0]).unwrap();
        let m = ExponentMatrix::from_rows(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]]).unwrap();
        assert_eq!(b.realize(), m);
    }

    #[test]
    fn realizes_pair() {
        let b = Block::new(3, [0, 1]).unwrap();
        let m = b.realize();
        assert_eq!(m.get(0, 2), 1);
        assert_eq!(m.get(1, 2), 1);
        assert_eq!(m.entry_sum(), 2);
    }

    #[test]
    fn rejects_improper_sets() {
        assert_eq!(
            Block::new(3, std::iter::empty()),
            Err(Error::ImproperIndexSet { n: 3 })
        );
        assert_eq!(
            Block::new(3, [0, 1, 2]),
            Err(Error::ImproperIndexSet { n: 3 })
        );
        assert_eq!(Block::new(3, [3]), Err(Error::IndexOutOfRange { index: 3, n: 3 }));
    }

    #[test]
    fn transpose_is_complement() {
        for b in Block::all(4) {
            assert_eq!(b.realize().transpose(), b.complement().realize());
        }
    }

    #[test]
    fn entry_sum_is_size_times_cosize() {
        for b in Block::all(5) {
            let expected = (b.len() * (5 - b.len())) as u64;
            assert_eq!(b.realize().entry_sum(), expected);
        }
    }

    #[test]
    fn all_blocks_count() {
        assert_eq!(Block::all(3).len(), 6);
        assert_eq!(Block::all(4).len(), 14);
    }

    #[test]
    fn blocks_are_pairwise_incomparable() {
        let blocks = Block::all(4);
        for x in &blocks {
            for y in &blocks {
                if x != y {
                    assert!(!x.realize().leq(&y.realize()), "{x} <= {y}");
                }
            }
        }
    }

    #[test]
    fn recognizes_realized_blocks() {
        for b in Block::all(4) {
            assert_eq!(Block::from_matrix(b.realize().as_nat()), Some(b));
        }
        let u = ExponentMatrix::uniform(3).unwrap();
        assert_eq!(Block::from_matrix(u.as_nat()), None);
        assert_eq!(Block::from_matrix(&NatMatrix::zero(3)), None);
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(Block::new(4, [0, 2]).unwrap().to_string(), "T{1,3}");
    }
}
