//! Special families, the ⊙-irreducibility oracle, entry-sum extremality,
//! block-join analysis and the symmetry-group verification helpers.

use std::ops::ControlFlow;

use crate::block::Block;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{GroupElement, Permutation};
use crate::matrix::{Entry, ExponentMatrix, NatMatrix};
use crate::order::MatrixSet;
use crate::search::ExponentSearch;

/// The three two-index families. Each member is a join of two blocks with
/// entry sum `2n − 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `A_ij = T_{{i}} ⊕ T_{{j}ᶜ}`
    A,
    /// `L_ij = T_{{i,j}} ⊕ T_{{j}}`
    L,
    /// `C_ij = T_{{i,j}ᶜ} ⊕ T_{{i}ᶜ}`
    C,
}

/// Realizes a family matrix for distinct `i`, `j` (zero-based) at `n ≥ 3`.
pub fn family(kind: FamilyKind, i: usize, j: usize, n: usize) -> Result<ExponentMatrix> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    if i == j {
        return Err(Error::IndicesNotDistinct);
    }
    let m = match kind {
        FamilyKind::A => Block::singleton(n, i)?
            .realize()
            .oplus(&Block::singleton(n, j)?.complement().realize()),
        FamilyKind::L => Block::new(n, [i, j])?
            .realize()
            .oplus(&Block::singleton(n, j)?.realize()),
        FamilyKind::C => Block::new(n, [i, j])?
            .complement()
            .realize()
            .oplus(&Block::singleton(n, i)?.complement().realize()),
    };
    Ok(m)
}

/// Brute-force oracle: every factorization `A = B ⊙ C` with `B, C ≠ A`,
/// reported once per unordered pair with `B ≤ C` in canonical order. The
/// search walks all algebra members `B ≤ A` with triangle pruning and keeps
/// those whose complement `A − B` is again a member.
pub fn odot_factorizations(
    a: &ExponentMatrix,
    budget: &Budget,
) -> Result<Vec<(ExponentMatrix, ExponentMatrix)>> {
    let mut pairs = Vec::new();
    scan_factorizations(a, budget, &mut |b, c| {
        if b <= c {
            pairs.push((b.clone(), c.clone()));
        }
        ControlFlow::Continue(())
    })?;
    Ok(pairs)
}

/// True iff `A` admits no factorization `A = B ⊙ C` with `B, C ≠ A`.
pub fn is_odot_irreducible(a: &ExponentMatrix, budget: &Budget) -> Result<bool> {
    Ok(first_odot_factorization(a, budget)?.is_none())
}

/// The first factorization in search order, canonically oriented, if any.
pub fn first_odot_factorization(
    a: &ExponentMatrix,
    budget: &Budget,
) -> Result<Option<(ExponentMatrix, ExponentMatrix)>> {
    let mut witness = None;
    scan_factorizations(a, budget, &mut |b, c| {
        witness = Some(if b <= c {
            (b.clone(), c.clone())
        } else {
            (c.clone(), b.clone())
        });
        ControlFlow::Break(())
    })?;
    Ok(witness)
}

fn scan_factorizations(
    a: &ExponentMatrix,
    budget: &Budget,
    found: &mut dyn FnMut(&ExponentMatrix, &ExponentMatrix) -> ControlFlow<()>,
) -> Result<()> {
    let search = ExponentSearch::new(a.n());
    let caps = search.caps_from(a.as_nat());
    let _ = search.for_each(&caps, budget, &mut |b| {
        if b.is_zero() || b == a.as_nat() {
            return Ok(ControlFlow::Continue(()));
        }
        let diff: Vec<Entry> = a
            .entries()
            .iter()
            .zip(b.entries())
            .map(|(&x, &y)| x - y)
            .collect();
        let c = NatMatrix::from_flat_unchecked(a.n(), diff);
        if c.is_exponent() {
            let b = ExponentMatrix::from_nat_unchecked(b.clone());
            let c = ExponentMatrix::from_nat_unchecked(c);
            return Ok(found(&b, &c));
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(())
}

/// The nonzero members with entries at most `bound` of minimal entry sum.
/// With `bound ≥ n − 1` these are the blocks of singleton or co-singleton
/// index sets, each of sum `n − 1`. Streams over the search tree, keeping
/// only the current achievers.
pub fn min_entry_sum_elements(n: usize, bound: Entry, budget: &Budget) -> Result<MatrixSet> {
    let search = ExponentSearch::new(n);
    let mut best: Option<u64> = None;
    let mut members: Vec<ExponentMatrix> = Vec::new();
    let _ = search.for_each(&search.uniform_caps(bound), budget, &mut |m| {
        if !m.is_zero() {
            let sum = m.entry_sum();
            if best.is_none_or(|b| sum < b) {
                best = Some(sum);
                members.clear();
            }
            if best == Some(sum) {
                members.push(ExponentMatrix::from_nat_unchecked(m.clone()));
            }
        }
        Ok(ControlFlow::Continue(()))
    })?;
    MatrixSet::from_members(n, members)
}

/// Solutions of `T_J ≤ T_{I₁} ⊕ T_{I₂}` over all blocks `T_J`.
#[derive(Debug, Clone)]
pub struct JoinSolutions {
    i1: Block,
    i2: Block,
    all: Vec<Block>,
}

impl JoinSolutions {
    pub fn i1(&self) -> &Block {
        &self.i1
    }

    pub fn i2(&self) -> &Block {
        &self.i2
    }

    /// Every solution, in block enumeration order. Always contains `I₁` and
    /// `I₂` themselves.
    pub fn all(&self) -> &[Block] {
        &self.all
    }

    /// Solutions other than `I₁` and `I₂`.
    pub fn proper(&self) -> Vec<&Block> {
        self.all
            .iter()
            .filter(|b| **b != self.i1 && **b != self.i2)
            .collect()
    }
}

/// Exhaustive scan of all `2ⁿ − 2` blocks for solutions of
/// `T_J ≤ T_{I₁} ⊕ T_{I₂}`.
pub fn block_join_solutions(i1: &Block, i2: &Block) -> JoinSolutions {
    assert_eq!(i1.n(), i2.n(), "dimension mismatch");
    let join = i1.realize().oplus(&i2.realize());
    let all = Block::all(i1.n())
        .into_iter()
        .filter(|b| b.realize().leq(&join))
        .collect();
    JoinSolutions {
        i1: i1.clone(),
        i2: i2.clone(),
        all,
    }
}

/// True iff for every partner `I₂` the join inequality has at most one
/// proper solution; this characterizes `|I₁| ∈ {1, n−1}`.
pub fn has_at_most_one_proper_solution_everywhere(i1: &Block) -> bool {
    Block::all(i1.n())
        .iter()
        .all(|i2| block_join_solutions(i1, i2).proper().len() <= 1)
}

/// Checks the family ⊙-identity at row `i` and its transpose:
///
/// ```text
/// ⊙_{k≠i} A_ik ⊙ T_{{i}ᶜ} = T_{{i}}^{⊙(n−2)} ⊙ U
/// ⊙_{k≠i} A_ki ⊙ T_{{i}}  = T_{{i}ᶜ}^{⊙(n−2)} ⊙ U
/// ```
pub fn check_family_identity(i: usize, n: usize) -> Result<bool> {
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let uniform = ExponentMatrix::uniform(n)?;
    let single = Block::singleton(n, i)?;

    let mut rows = ExponentMatrix::zero(n);
    let mut cols = ExponentMatrix::zero(n);
    for k in 0..n {
        if k != i {
            rows = rows.odot(&family(FamilyKind::A, i, k, n)?);
            cols = cols.odot(&family(FamilyKind::A, k, i, n)?);
        }
    }
    rows = rows.odot(&single.complement().realize());
    cols = cols.odot(&single.realize());

    let rows_expected = single.realize().odot_pow((n - 2) as Entry).odot(&uniform);
    let cols_expected = single
        .complement()
        .realize()
        .odot_pow((n - 2) as Entry)
        .odot(&uniform);

    Ok(rows == rows_expected && cols == cols_expected)
}

/// The unique block below the join of singletons over `I` that drops below
/// no shorter join; dually over complements. Both condition sets single out
/// `T_I`; a scan finding anything else reports a theorem violation.
pub fn unique_block_from_join_conditions(i_set: &Block) -> Result<Block> {
    let n = i_set.n();
    let members: Vec<usize> = i_set.indices().iter().copied().collect();
    let complement: Vec<usize> = (0..n).filter(|i| !i_set.contains(*i)).collect();

    let singleton_join = |rows: &[usize]| -> Result<ExponentMatrix> {
        let mut acc = ExponentMatrix::zero(n);
        for &i in rows {
            acc = acc.oplus(&Block::singleton(n, i)?.realize());
        }
        Ok(acc)
    };
    let cosingleton_join = |rows: &[usize]| -> Result<ExponentMatrix> {
        let mut acc = ExponentMatrix::zero(n);
        for &i in rows {
            acc = acc.oplus(&Block::singleton(n, i)?.complement().realize());
        }
        Ok(acc)
    };

    let full_1 = singleton_join(&members)?;
    let omissions_1: Vec<ExponentMatrix> = members
        .iter()
        .map(|&j| {
            let rest: Vec<usize> = members.iter().copied().filter(|&k| k != j).collect();
            singleton_join(&rest)
        })
        .collect::<Result<_>>()?;

    let full_2 = cosingleton_join(&complement)?;
    let omissions_2: Vec<ExponentMatrix> = complement
        .iter()
        .map(|&j| {
            let rest: Vec<usize> = complement.iter().copied().filter(|&k| k != j).collect();
            cosingleton_join(&rest)
        })
        .collect::<Result<_>>()?;

    let solves = |full: &ExponentMatrix, omissions: &[ExponentMatrix], s: &Block| {
        let m = s.realize();
        m.leq(full) && omissions.iter().all(|o| !m.leq(o))
    };

    let blocks = Block::all(n);
    let sols_1: Vec<&Block> = blocks
        .iter()
        .filter(|s| solves(&full_1, &omissions_1, s))
        .collect();
    let sols_2: Vec<&Block> = blocks
        .iter()
        .filter(|s| solves(&full_2, &omissions_2, s))
        .collect();

    match (&sols_1[..], &sols_2[..]) {
        ([a], [b]) if a == b => Ok((*a).clone()),
        _ => Err(Error::TheoremViolation(format!(
            "join conditions for {i_set} have {} and {} solutions",
            sols_1.len(),
            sols_2.len()
        ))),
    }
}

/// Checks that `g` respects ⊕, ⊙, the order, the zero matrix, the uniform
/// matrix and entry sums on every pair from `samples`.
pub fn verify_action_automorphism(g: &GroupElement, samples: &[ExponentMatrix]) -> bool {
    assert!(!samples.is_empty(), "samples must be nonempty");
    let n = samples[0].n();
    assert!(samples.iter().all(|a| a.n() == n), "dimension mismatch");
    assert_eq!(g.n(), n, "dimension mismatch");

    if g.act(&NatMatrix::zero(n)) != NatMatrix::zero(n) {
        return false;
    }
    if n >= 2 {
        let u = ExponentMatrix::uniform(n).expect("n >= 2");
        if g.act_exponent(&u) != u {
            return false;
        }
    }
    for a in samples {
        if g.act_exponent(a).entry_sum() != a.entry_sum() {
            return false;
        }
    }
    for a in samples {
        let ga = g.act_exponent(a);
        for b in samples {
            let gb = g.act_exponent(b);
            if g.act_exponent(&a.oplus(b)) != ga.oplus(&gb) {
                return false;
            }
            if g.act_exponent(&a.odot(b)) != ga.odot(&gb) {
                return false;
            }
            if a.leq(b) != ga.leq(&gb) {
                return false;
            }
        }
    }
    true
}

/// The orbit of `A` under the full group, one budget node per element.
pub fn orbit(a: &ExponentMatrix, budget: &Budget) -> Result<MatrixSet> {
    let mut members = Vec::new();
    for g in GroupElement::all(a.n()) {
        budget.charge()?;
        members.push(g.act_exponent(a));
    }
    MatrixSet::from_members(a.n(), members)
}

/// The ⊙-sum of `σ·A` over all `n!` permutations (counted with multiplicity,
/// not over distinct orbit members). Equals `U^{⊙((n−2)!·#(A))}`.
pub fn symmetric_odot_sum(a: &ExponentMatrix, budget: &Budget) -> Result<ExponentMatrix> {
    let mut acc = ExponentMatrix::zero(a.n());
    for p in Permutation::all(a.n()) {
        budget.charge()?;
        acc = acc.odot(&GroupElement::from_perm(p).act_exponent(a));
    }
    Ok(acc)
}

pub(crate) fn factorial(k: usize) -> u64 {
    (1..=k as u64).try_fold(1u64, u64::checked_mul).expect("factorial overflow")
}
