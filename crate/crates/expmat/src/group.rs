//! The symmetry group 𝓢ₙ × C₂: simultaneous row/column relabeling combined
//! with optional transposition.
//!
//! The canonical form applies the transpose first and the permutation second;
//! the two commute, so the composition law is `flip` XOR and permutation
//! chaining. An element acts on any zero-diagonal matrix and preserves
//! membership in the exponent-matrix algebra, the partial order, and entry
//! sums.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matrix::{ExponentMatrix, NatMatrix};

/// Bijection of `{0, .., n-1}`, stored as the image vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::InvalidPermutation { n });
            }
            seen[img] = true;
        }
        if n == 0 {
            return Err(Error::InvalidPermutation { n });
        }
        Ok(Permutation { images })
    }

    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::IndexOutOfRange { index: a.max(b), n });
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    /// `self.then(next)` maps `i` to `next(self(i))`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(self.n(), next.n(), "dimension mismatch");
        Permutation {
            images: self.images.iter().map(|&i| next.apply(i)).collect(),
        }
    }

    /// All `n!` permutations in lexicographic order of their image vectors.
    pub fn all(n: usize) -> Vec<Permutation> {
        assert!((1..=10).contains(&n), "permutation enumeration is desk-scale only");
        (0..n)
            .permutations(n)
            .map(|images| Permutation { images })
            .collect()
    }
}

/// An element of 𝓢ₙ × C₂. `flip` requests transposition, applied before the
/// permutation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    perm: Permutation,
    flip: bool,
}

impl GroupElement {
    pub fn new(perm: Permutation, flip: bool) -> Self {
        GroupElement { perm, flip }
    }

    pub fn identity(n: usize) -> Self {
        GroupElement::new(Permutation::identity(n), false)
    }

    /// The pure-transpose element.
    pub fn transpose(n: usize) -> Self {
        GroupElement::new(Permutation::identity(n), true)
    }

    pub fn from_perm(perm: Permutation) -> Self {
        GroupElement::new(perm, false)
    }

    pub fn n(&self) -> usize {
        self.perm.n()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn flip(&self) -> bool {
        self.flip
    }

    /// Applies the element: transpose first when `flip` is set, then relabel
    /// so that the result at `(i, j)` is the source at `(σ(i), σ(j))`.
    pub fn act(&self, m: &NatMatrix) -> NatMatrix {
        assert_eq!(self.n(), m.n(), "dimension mismatch");
        let n = m.n();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            let si = self.perm.apply(i);
            for j in 0..n {
                let sj = self.perm.apply(j);
                entries[i * n + j] = if self.flip {
                    m.get(sj, si)
                } else {
                    m.get(si, sj)
                };
            }
        }
        NatMatrix::from_flat_unchecked(n, entries)
    }

    /// Same action; membership in the algebra is preserved.
    pub fn act_exponent(&self, m: &ExponentMatrix) -> ExponentMatrix {
        ExponentMatrix::from_nat_unchecked(self.act(m.as_nat()))
    }

    /// Composition satisfying `compose(g, h).act(m) == g.act(h.act(m))`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            perm: self.perm.then(&other.perm),
            flip: self.flip ^ other.flip,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            perm: self.perm.inverse(),
            flip: self.flip,
        }
    }

    /// All `2·n!` elements: permutations in lexicographic order, the plain
    /// element before the flipped one.
    pub fn all(n: usize) -> Vec<GroupElement> {
        Permutation::all(n)
            .into_iter()
            .flat_map(|p| {
                [
                    GroupElement::new(p.clone(), false),
                    GroupElement::new(p, true),
                ]
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::Block;

    fn block(n: usize, indices: &[usize]) -> ExponentMatrix {
        Block::new(n, indices.iter().copied()).unwrap().realize()
    }

    #[test]
    fn transpose_of_singleton_block_is_complement() {
        let g = GroupElement::transpose(3);
        assert_eq!(g.act_exponent(&block(3, &[0])), block(3, &[1, 2]));
    }

    #[test]
    fn swap_relabels_block() {
        let g = GroupElement::from_perm(Permutation::swap(3, 0, 1).unwrap());
        assert_eq!(g.act_exponent(&block(3, &[0])), block(3, &[1]));
    }

    #[test]
    fn identity_acts_trivially() {
        let a = ExponentMatrix::from_rows(&[&[0, 2, 5], &[4, 0, 3], &[6, 2, 0]]).unwrap();
        assert_eq!(GroupElement::identity(3).act_exponent(&a), a);
    }

    #[test]
    fn compose_matches_sequential_action() {
        let a = ExponentMatrix::from_rows(&[&[0, 2, 5], &[4, 0, 3], &[6, 2, 0]]).unwrap();
        for g in GroupElement::all(3) {
            for h in GroupElement::all(3) {
                let composed = g.compose(&h);
                assert_eq!(
                    composed.act_exponent(&a),
                    g.act_exponent(&h.act_exponent(&a))
                );
            }
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        for g in GroupElement::all(3) {
            assert_eq!(g.compose(&g.inverse()), GroupElement::identity(3));
            assert_eq!(g.inverse().compose(&g), GroupElement::identity(3));
        }
    }

    #[test]
    fn flip_squares_to_identity() {
        let t = GroupElement::transpose(4);
        assert_eq!(t.compose(&t), GroupElement::identity(4));
    }

    #[test]
    fn group_size() {
        assert_eq!(GroupElement::all(3).len(), 12);
        assert_eq!(GroupElement::all(4).len(), 48);
    }

    #[test]
    fn action_preserves_entry_sum_and_order() {
        let a = ExponentMatrix::from_rows(&[&[0, 2, 5], &[4, 0, 3], &[6, 2, 0]]).unwrap();
        let b = a.odot(&a);
        for g in GroupElement::all(3) {
            assert_eq!(g.act_exponent(&a).entry_sum(), a.entry_sum());
            assert_eq!(g.act_exponent(&a).leq(&g.act_exponent(&b)), a.leq(&b));
        }
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0, 2]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
    }
}
