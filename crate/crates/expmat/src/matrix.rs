//! Square matrices over the non-negative integers and the exponent-matrix
//! algebra.
//!
//! A [`NatMatrix`] is any square matrix over ℕ⁰ with zero diagonal. An
//! [`ExponentMatrix`] additionally satisfies the triangle condition
//! `a[i][j] + a[j][k] ≥ a[i][k]` for pairwise distinct `i, j, k`. The algebra
//! operations are `⊕` (componentwise maximum) and `⊙` (componentwise
//! addition); both preserve the triangle condition, so exponent matrices are
//! closed under them. The zero matrix is neutral for both.
//!
//! All values are immutable after construction and every operation is a pure
//! function.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Matrix entry. Conceptually an arbitrary non-negative integer; stored as
/// `u64` with checked arithmetic, so `⊙` panics on overflow instead of
/// wrapping.
pub type Entry = u64;

/// A failed triangle inequality `a[i][j] + a[j][k] ≥ a[i][k]`, with
/// zero-based indices. Displayed one-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `a[i][j] + a[j][k]`
    pub sum: Entry,
    /// `a[i][k]`
    pub bound: Entry,
}

impl fmt::Display for TriangleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "a[{i}][{j}] + a[{j}][{k}] = {sum} < {bound} = a[{i}][{k}]",
            i = self.i + 1,
            j = self.j + 1,
            k = self.k + 1,
            sum = self.sum,
            bound = self.bound,
        )
    }
}

/// Square matrix over ℕ⁰ with zero diagonal, in row-major storage.
///
/// The derived `Ord` is the canonical total order (dimension, then row-major
/// lexicographic on entries) used for sorting and deterministic output; the
/// algebra's partial order is [`NatMatrix::leq`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NatMatrix {
    n: usize,
    entries: Vec<Entry>,
}

impl NatMatrix {
    pub fn new(n: usize, entries: Vec<Entry>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionTooSmall { n, min: 1 });
        }
        if entries.len() != n * n {
            return Err(Error::WrongEntryCount {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        for i in 0..n {
            if entries[i * n + i] != 0 {
                return Err(Error::NonzeroDiagonal { row: i });
            }
        }
        Ok(NatMatrix { n, entries })
    }

    pub fn from_rows<R: AsRef<[Entry]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::RaggedRow {
                    row: i,
                    got: row.len(),
                    expected: n,
                });
            }
            entries.extend_from_slice(row);
        }
        NatMatrix::new(n, entries)
    }

    /// Caller must guarantee zero diagonal and `entries.len() == n * n`.
    pub(crate) fn from_flat_unchecked(n: usize, entries: Vec<Entry>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        debug_assert!((0..n).all(|i| entries[i * n + i] == 0));
        NatMatrix { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        NatMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Entry] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Sum of all entries, written `#(A)`.
    pub fn entry_sum(&self) -> u64 {
        self.entries
            .iter()
            .fold(0u64, |acc, &e| acc.checked_add(e).expect("entry sum overflow"))
    }

    pub fn transpose(&self) -> NatMatrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        NatMatrix { n, entries }
    }

    /// The natural partial order: `self ≤ other` entrywise. Equivalent to
    /// `self ⊕ other = other`.
    pub fn leq(&self, other: &NatMatrix) -> bool {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|(a, b)| a <= b)
    }

    /// First failing triangle inequality in lexicographic `(i, j, k)` scan
    /// order, if any.
    pub fn triangle_violation(&self) -> Option<TriangleViolation> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if j == i {
                    continue;
                }
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    let sum = self.get(i, j) + self.get(j, k);
                    let bound = self.get(i, k);
                    if sum < bound {
                        return Some(TriangleViolation { i, j, k, sum, bound });
                    }
                }
            }
        }
        None
    }

    /// Direct O(n³) membership test for the exponent-matrix algebra.
    pub fn is_exponent(&self) -> bool {
        self.triangle_violation().is_none()
    }
}

impl fmt::Display for NatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

/// A matrix of the algebra: zero diagonal plus the triangle condition.
///
/// Construction always validates; the arithmetic methods rely on closure of
/// the triangle condition under max and addition, so they never re-check.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentMatrix(NatMatrix);

impl ExponentMatrix {
    pub fn new(m: NatMatrix) -> Result<Self> {
        match m.triangle_violation() {
            Some(v) => Err(Error::NotExponent(v)),
            None => Ok(ExponentMatrix(m)),
        }
    }

    pub fn from_rows<R: AsRef<[Entry]>>(rows: &[R]) -> Result<Self> {
        ExponentMatrix::new(NatMatrix::from_rows(rows)?)
    }

    /// Caller must guarantee the triangle condition holds.
    pub(crate) fn from_nat_unchecked(m: NatMatrix) -> Self {
        debug_assert!(m.is_exponent());
        ExponentMatrix(m)
    }

    pub fn zero(n: usize) -> Self {
        ExponentMatrix(NatMatrix::zero(n))
    }

    /// The matrix `U` with zero diagonal and every off-diagonal entry 1.
    /// Equals the ⊙-sum of all singleton blocks, and of all their
    /// complements. Requires `n ≥ 2`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall { n, min: 2 });
        }
        let mut entries = vec![1; n * n];
        for i in 0..n {
            entries[i * n + i] = 0;
        }
        Ok(ExponentMatrix(NatMatrix::from_flat_unchecked(n, entries)))
    }

    pub fn as_nat(&self) -> &NatMatrix {
        &self.0
    }

    pub fn into_nat(self) -> NatMatrix {
        self.0
    }

    /// Tropical sum: componentwise maximum.
    pub fn oplus(&self, other: &ExponentMatrix) -> ExponentMatrix {
        assert_eq!(self.0.n, other.0.n, "dimension mismatch");
        let entries = self
            .0
            .entries
            .iter()
            .zip(&other.0.entries)
            .map(|(&a, &b)| a.max(b))
            .collect();
        ExponentMatrix(NatMatrix::from_flat_unchecked(self.0.n, entries))
    }

    /// Tropical product: componentwise addition. Panics on `u64` overflow.
    pub fn odot(&self, other: &ExponentMatrix) -> ExponentMatrix {
        assert_eq!(self.0.n, other.0.n, "dimension mismatch");
        let entries = self
            .0
            .entries
            .iter()
            .zip(&other.0.entries)
            .map(|(&a, &b)| a.checked_add(b).expect("entry overflow in ⊙"))
            .collect();
        ExponentMatrix(NatMatrix::from_flat_unchecked(self.0.n, entries))
    }

    /// `k`-fold tropical power; `k = 0` gives the zero matrix (the empty
    /// ⊙-product). Panics on `u64` overflow.
    pub fn odot_pow(&self, k: Entry) -> ExponentMatrix {
        let entries = self
            .0
            .entries
            .iter()
            .map(|&a| a.checked_mul(k).expect("entry overflow in ⊙-power"))
            .collect();
        ExponentMatrix(NatMatrix::from_flat_unchecked(self.0.n, entries))
    }

    pub fn leq(&self, other: &ExponentMatrix) -> bool {
        self.0.leq(&other.0)
    }

    pub fn transpose(&self) -> ExponentMatrix {
        // The triangle condition is symmetric under transposition.
        ExponentMatrix(self.0.transpose())
    }
}

impl Deref for ExponentMatrix {
    type Target = NatMatrix;

    fn deref(&self) -> &NatMatrix {
        &self.0
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn em(rows: &[&[Entry]]) -> ExponentMatrix {
        ExponentMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn rejects_nonzero_diagonal() {
        assert_eq!(
            NatMatrix::from_rows(&[vec![0, 1], vec![1, 1]]),
            Err(Error::NonzeroDiagonal { row: 1 })
        );
    }

    #[test]
    fn rejects_ragged_rows() {
        assert_eq!(
            NatMatrix::from_rows(&[vec![0, 1], vec![1]]),
            Err(Error::RaggedRow {
                row: 1,
                got: 1,
                expected: 2
            })
        );
    }

    #[test]
    fn triangle_check_on_reference_matrix() {
        let a = em(&[&[0, 2, 5, 5], &[4, 0, 3, 3], &[6, 2, 0, 2], &[4, 4, 2, 0]]);
        assert!(a.is_exponent());
    }

    #[test]
    fn any_two_by_two_zero_diagonal_is_exponent() {
        for a in 0..4u64 {
            for b in 0..4u64 {
                let m = NatMatrix::from_rows(&[vec![0, a], vec![b, 0]]).unwrap();
                assert!(m.is_exponent());
            }
        }
    }

    #[test]
    fn detects_triangle_violation() {
        let m = NatMatrix::from_rows(&[vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        let v = m.triangle_violation().unwrap();
        assert_eq!((v.i, v.j, v.k), (0, 1, 2));
        assert_eq!((v.sum, v.bound), (0, 1));
        assert!(ExponentMatrix::new(m).is_err());
    }

    #[test]
    fn oplus_is_componentwise_max() {
        let a = em(&[&[0, 3], &[1, 0]]);
        let b = em(&[&[0, 1], &[4, 0]]);
        assert_eq!(a.oplus(&b), em(&[&[0, 3], &[4, 0]]));
        // 0 is neutral
        assert_eq!(a.oplus(&ExponentMatrix::zero(2)), a);
        // idempotent
        assert_eq!(a.oplus(&a), a);
    }

    #[test]
    fn odot_is_componentwise_addition() {
        let a = em(&[&[0, 3], &[1, 0]]);
        assert_eq!(a.odot(&ExponentMatrix::zero(2)), a);
        assert_eq!(a.odot(&a), em(&[&[0, 6], &[2, 0]]));
    }

    #[test]
    fn odot_pow_conventions() {
        let a = em(&[&[0, 2], &[1, 0]]);
        assert_eq!(a.odot_pow(0), ExponentMatrix::zero(2));
        assert_eq!(a.odot_pow(1), a);
        assert_eq!(a.odot_pow(3), em(&[&[0, 6], &[3, 0]]));
    }

    #[test]
    #[should_panic(expected = "entry overflow")]
    fn odot_overflow_panics() {
        let a = em(&[&[0, u64::MAX], &[0, 0]]);
        let _ = a.odot(&a);
    }

    #[test]
    fn leq_matches_oplus_characterization() {
        let a = em(&[&[0, 1], &[2, 0]]);
        let b = em(&[&[0, 3], &[2, 0]]);
        assert!(a.leq(&b));
        assert!(!b.leq(&a));
        assert_eq!(a.oplus(&b), b);
        assert!(ExponentMatrix::zero(2).leq(&a));
    }

    #[test]
    fn uniform_matrix() {
        let u = ExponentMatrix::uniform(3).unwrap();
        assert_eq!(u, em(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
        assert_eq!(u.entry_sum(), 6);
        assert!(ExponentMatrix::uniform(1).is_err());
    }

    #[test]
    fn entry_sum_zero() {
        assert_eq!(ExponentMatrix::zero(3).entry_sum(), 0);
    }

    #[test]
    fn uniform_is_odot_sum_of_singleton_blocks_both_ways() {
        use crate::block::Block;
        for n in 2..=5 {
            let u = ExponentMatrix::uniform(n).unwrap();
            let mut rows = ExponentMatrix::zero(n);
            let mut cols = ExponentMatrix::zero(n);
            for i in 0..n {
                let single = Block::singleton(n, i).unwrap();
                rows = rows.odot(&single.realize());
                cols = cols.odot(&single.complement().realize());
            }
            assert_eq!(rows, u);
            assert_eq!(cols, u);
        }
    }

    #[test]
    fn display_is_row_text() {
        let a = em(&[&[0, 2], &[1, 0]]);
        assert_eq!(a.to_string(), "0 2\n1 0");
    }

    #[test]
    fn canonical_order_is_row_major_lex() {
        let a = em(&[&[0, 1], &[2, 0]]);
        let b = em(&[&[0, 2], &[0, 0]]);
        assert!(a < b);
    }
}
