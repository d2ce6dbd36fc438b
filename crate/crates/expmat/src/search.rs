//! Depth-first enumeration of exponent matrices with per-entry caps.
//!
//! Off-diagonal positions are assigned in row-major order with values
//! ascending, so matrices are visited in the canonical row-major
//! lexicographic order. A subtree is pruned as soon as a completed triangle
//! inequality fails; every value trial charges one budget node, so the
//! unpruned node count is bounded by the product of `cap + 1` over all
//! positions.

use std::ops::ControlFlow;

use crate::budget::Budget;
use crate::error::Result;
use crate::matrix::{Entry, NatMatrix};

/// One triangle inequality `entries[a] + entries[b] >= entries[rhs]`, stored
/// as flat indices.
#[derive(Debug, Clone, Copy)]
struct Check {
    a: usize,
    b: usize,
    rhs: usize,
}

pub(crate) struct ExponentSearch {
    n: usize,
    /// Off-diagonal flat positions in row-major order.
    positions: Vec<usize>,
    /// `checks[t]`: inequalities whose three positions are all assigned once
    /// position rank `t` is, with `t` the latest of the three.
    checks: Vec<Vec<Check>>,
}

impl ExponentSearch {
    pub fn new(n: usize) -> Self {
        let positions: Vec<usize> = (0..n * n).filter(|p| p / n != p % n).collect();
        let mut rank = vec![usize::MAX; n * n];
        for (t, &p) in positions.iter().enumerate() {
            rank[p] = t;
        }
        let mut checks = vec![Vec::new(); positions.len()];
        for x in 0..n {
            for y in 0..n {
                if y == x {
                    continue;
                }
                for z in 0..n {
                    if z == x || z == y {
                        continue;
                    }
                    let a = x * n + y;
                    let b = y * n + z;
                    let rhs = x * n + z;
                    let latest = rank[a].max(rank[b]).max(rank[rhs]);
                    checks[latest].push(Check { a, b, rhs });
                }
            }
        }
        ExponentSearch { n, positions, checks }
    }

    /// Per-position caps taken from a matrix, parallel to the position order.
    pub fn caps_from(&self, m: &NatMatrix) -> Vec<Entry> {
        self.positions.iter().map(|&p| m.entries()[p]).collect()
    }

    pub fn uniform_caps(&self, bound: Entry) -> Vec<Entry> {
        vec![bound; self.positions.len()]
    }

    /// Visits every zero-diagonal matrix satisfying the triangle condition
    /// with `entries[positions[t]] <= caps[t]`, in canonical order. The
    /// visitor may stop the search early with `ControlFlow::Break`.
    pub fn for_each(
        &self,
        caps: &[Entry],
        budget: &Budget,
        visit: &mut dyn FnMut(&NatMatrix) -> Result<ControlFlow<()>>,
    ) -> Result<ControlFlow<()>> {
        assert_eq!(caps.len(), self.positions.len());
        let mut entries = vec![0; self.n * self.n];
        self.dfs(0, caps, &mut entries, budget, visit)
    }

    fn dfs(
        &self,
        t: usize,
        caps: &[Entry],
        entries: &mut Vec<Entry>,
        budget: &Budget,
        visit: &mut dyn FnMut(&NatMatrix) -> Result<ControlFlow<()>>,
    ) -> Result<ControlFlow<()>> {
        if t == self.positions.len() {
            let m = NatMatrix::from_flat_unchecked(self.n, entries.clone());
            return visit(&m);
        }
        let pos = self.positions[t];
        for v in 0..=caps[t] {
            budget.charge()?;
            entries[pos] = v;
            let ok = self.checks[t]
                .iter()
                .all(|c| entries[c.a] + entries[c.b] >= entries[c.rhs]);
            if ok {
                if let ControlFlow::Break(()) = self.dfs(t + 1, caps, entries, budget, visit)? {
                    entries[pos] = 0;
                    return Ok(ControlFlow::Break(()));
                }
            }
        }
        entries[pos] = 0;
        Ok(ControlFlow::Continue(()))
    }
}
