//! Order-theoretic machinery: strict downsets, maximal elements, chain
//! height, bounded enumeration and the downset-uniqueness scan.
//!
//! A strict downset `A^⇓` collects every member of the algebra strictly below
//! `A`; it is finite because members are entrywise bounded by `A`, so it does
//! not depend on any enumeration bound. Chain height is taken over nonzero
//! elements, with `h(0) = 0`, so that `h(A) = 1` holds exactly on the blocks.

use std::collections::HashMap;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::block::Block;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matrix::{Entry, ExponentMatrix};
use crate::search::ExponentSearch;

/// Duplicate-free collection of exponent matrices of one dimension, kept in
/// canonical (row-major lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixSet {
    n: usize,
    members: Vec<ExponentMatrix>,
}

impl MatrixSet {
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        MatrixSet {
            n,
            members: Vec::new(),
        }
    }

    pub fn from_members(n: usize, mut members: Vec<ExponentMatrix>) -> Result<Self> {
        for m in &members {
            if m.n() != n {
                return Err(Error::DimensionMismatch(n, m.n()));
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(MatrixSet { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ExponentMatrix] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExponentMatrix> {
        self.members.iter()
    }

    pub fn contains(&self, m: &ExponentMatrix) -> bool {
        self.members.binary_search(m).is_ok()
    }

    /// ⊕ of all members; the empty set joins to the zero matrix.
    pub fn join(&self) -> ExponentMatrix {
        let mut acc = ExponentMatrix::zero(self.n);
        for m in &self.members {
            acc = acc.oplus(m);
        }
        acc
    }
}

impl<'a> IntoIterator for &'a MatrixSet {
    type Item = &'a ExponentMatrix;
    type IntoIter = std::slice::Iter<'a, ExponentMatrix>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// All members of the algebra with every entry at most `bound`, in canonical
/// order.
pub fn enumerate_exponent(n: usize, bound: Entry, budget: &Budget) -> Result<MatrixSet> {
    let search = ExponentSearch::new(n);
    let mut members = Vec::new();
    let _ = search.for_each(&search.uniform_caps(bound), budget, &mut |m| {
        members.push(ExponentMatrix::from_nat_unchecked(m.clone()));
        Ok(ControlFlow::Continue(()))
    })?;
    MatrixSet::from_members(n, members)
}

/// The strict downset `A^⇓`: every member strictly below `A`.
pub fn strict_downset(a: &ExponentMatrix, budget: &Budget) -> Result<MatrixSet> {
    let search = ExponentSearch::new(a.n());
    let caps = search.caps_from(a.as_nat());
    let mut members = Vec::new();
    let _ = search.for_each(&caps, budget, &mut |m| {
        if m != a.as_nat() {
            members.push(ExponentMatrix::from_nat_unchecked(m.clone()));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    MatrixSet::from_members(a.n(), members)
}

/// Members of `s` not strictly below any other member.
pub fn max_elements(s: &MatrixSet) -> MatrixSet {
    // Strict dominance increases the entry sum, so scanning in descending
    // sum order means every potential dominator of `m` is already in
    // `maxima` when `m` is visited.
    let mut order: Vec<&ExponentMatrix> = s.members().iter().collect();
    order.sort_by_key(|m| std::cmp::Reverse(m.entry_sum()));
    let mut maxima: Vec<&ExponentMatrix> = Vec::new();
    for m in order {
        if !maxima.iter().any(|mx| m.leq(mx)) {
            maxima.push(m);
        }
    }
    MatrixSet::from_members(s.n(), maxima.into_iter().cloned().collect())
        .expect("members share the set dimension")
}

/// Longest chain of nonzero members ending at `A`; `h(0) = 0`.
pub fn height(a: &ExponentMatrix, budget: &Budget) -> Result<u64> {
    if a.is_zero() {
        return Ok(0);
    }
    let down = strict_downset(a, budget)?;
    let mut order: Vec<&ExponentMatrix> = down
        .members()
        .iter()
        .filter(|m| !m.is_zero())
        .collect();
    order.sort_by_key(|m| m.entry_sum());
    // Longest-path DP over the downset order; predecessors always have a
    // strictly smaller entry sum, hence an earlier index.
    let mut heights = vec![1u64; order.len()];
    for i in 0..order.len() {
        for j in 0..i {
            if order[j].leq(order[i]) && order[j] != order[i] {
                heights[i] = heights[i].max(heights[j] + 1);
            }
        }
    }
    Ok(1 + heights.iter().copied().max().unwrap_or(0))
}

/// Scans the bounded universe for distinct matrices sharing a strict downset
/// where at least one is not a block. The downset-uniqueness theorem predicts
/// no such pair; any found are returned in canonical order.
pub fn downset_uniqueness_scan(
    n: usize,
    bound: Entry,
    budget: &Budget,
) -> Result<Vec<(ExponentMatrix, ExponentMatrix)>> {
    let universe = enumerate_exponent(n, bound, budget)?;
    let downsets: Vec<MatrixSet> = universe
        .members()
        .par_iter()
        .map(|a| strict_downset(a, budget))
        .collect::<Result<_>>()?;

    let mut buckets: HashMap<&MatrixSet, Vec<usize>> = HashMap::new();
    for (idx, d) in downsets.iter().enumerate() {
        buckets.entry(d).or_default().push(idx);
    }

    let mut violations = Vec::new();
    for bucket in buckets.values() {
        for (pos, &i) in bucket.iter().enumerate() {
            for &j in &bucket[pos + 1..] {
                let a = &universe.members()[i];
                let b = &universe.members()[j];
                let both_blocks =
                    Block::from_matrix(a.as_nat()).is_some() && Block::from_matrix(b.as_nat()).is_some();
                if !both_blocks {
                    violations.push((a.clone(), b.clone()));
                }
            }
        }
    }
    violations.sort_unstable();
    Ok(violations)
}

/// Recovers the matrix whose strict downset is `d`, when one exists among
/// non-blocks. Tries `⊕ Max(d)` first; otherwise scans the bounded universe.
/// Two candidates would contradict the uniqueness theorem and are reported as
/// an error.
pub fn reconstruct_from_downset(
    d: &MatrixSet,
    bound: Entry,
    budget: &Budget,
) -> Result<Option<ExponentMatrix>> {
    let candidate = max_elements(d).join();
    if strict_downset(&candidate, budget)? == *d {
        return Ok(Some(candidate));
    }
    let universe = enumerate_exponent(d.n(), bound, budget)?;
    let mut found: Option<ExponentMatrix> = None;
    for a in universe.members() {
        if Block::from_matrix(a.as_nat()).is_some() {
            continue;
        }
        if strict_downset(a, budget)? == *d {
            if let Some(first) = &found {
                return Err(Error::TheoremViolation(format!(
                    "two non-blocks share a strict downset:\n{first}\nand\n{a}"
                )));
            }
            found = Some(a.clone());
        }
    }
    Ok(found)
}

/// Entrywise conclusions of the downset-gap analysis, checked symmetrically
/// in both arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapConclusions {
    /// Wherever one matrix exceeds the other, it does so by exactly 1.
    pub excess_is_plus_one: bool,
    /// Excess entries sit at the global maximum of the larger matrix.
    pub excess_at_global_max: bool,
    /// The zero patterns coincide.
    pub zero_patterns_match: bool,
}

impl GapConclusions {
    pub fn all_hold(&self) -> bool {
        self.excess_is_plus_one && self.excess_at_global_max && self.zero_patterns_match
    }
}

/// Relaxed probe: evaluates the gap conclusions entrywise without checking
/// any downset hypothesis.
pub fn gap_conclusions(a: &ExponentMatrix, b: &ExponentMatrix) -> GapConclusions {
    assert_eq!(a.n(), b.n(), "dimension mismatch");
    let max_a = a.entries().iter().copied().max().unwrap_or(0);
    let max_b = b.entries().iter().copied().max().unwrap_or(0);
    let mut conclusions = GapConclusions {
        excess_is_plus_one: true,
        excess_at_global_max: true,
        zero_patterns_match: true,
    };
    for (&x, &y) in a.entries().iter().zip(b.entries()) {
        if x > y {
            conclusions.excess_is_plus_one &= x == y + 1;
            conclusions.excess_at_global_max &= x == max_a && y + 1 == max_a;
        } else if y > x {
            conclusions.excess_is_plus_one &= y == x + 1;
            conclusions.excess_at_global_max &= y == max_b && x + 1 == max_b;
        }
        conclusions.zero_patterns_match &= (x == 0) == (y == 0);
    }
    conclusions
}

/// Verifies the gap conclusions under the theorem's hypotheses: both
/// matrices are non-blocks with equal strict downsets and singleton maximal
/// sets. Hypothesis failures are errors, never `false`.
pub fn downset_gap_check(
    a: &ExponentMatrix,
    b: &ExponentMatrix,
    budget: &Budget,
) -> Result<bool> {
    if Block::from_matrix(a.as_nat()).is_some() || Block::from_matrix(b.as_nat()).is_some() {
        return Err(Error::HypothesisViolation("input is a block".into()));
    }
    let da = strict_downset(a, budget)?;
    let db = strict_downset(b, budget)?;
    if da != db {
        return Err(Error::HypothesisViolation(
            "strict downsets differ".into(),
        ));
    }
    if max_elements(&da).len() != 1 || max_elements(&db).len() != 1 {
        return Err(Error::HypothesisViolation(
            "maximal set is not a singleton".into(),
        ));
    }
    Ok(gap_conclusions(a, b).all_hold())
}
