//! Runnable verification suites: seeded, budgeted re-checks of the library's
//! structural guarantees, grouped the way the CLI exposes them.

use std::ops::ControlFlow;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::block::Block;
use crate::budget::Budget;
use crate::decompose::{
    column_decomposition, find_block_below, is_pure_oplus_of_blocks, membership_by_decomposition,
    row_decomposition, term_of_row,
};
use crate::error::Result;
use crate::group::{GroupElement, Permutation};
use crate::matrix::{Entry, ExponentMatrix, NatMatrix};
use crate::order::{
    downset_gap_check, enumerate_exponent, height, max_elements, reconstruct_from_downset,
    strict_downset, MatrixSet,
};
use crate::structure::{
    block_join_solutions, check_family_identity, factorial, family,
    has_at_most_one_proper_solution_everywhere, is_odot_irreducible, min_entry_sum_elements,
    symmetric_odot_sum, FamilyKind,
};

/// Seed used by the CLI when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Structure,
    Automorphism,
    Downset,
    Decompose,
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub n: usize,
    pub bound: Entry,
    pub seed: u64,
    /// Sample count for the randomized checks.
    pub samples: usize,
}

impl SuiteParams {
    pub fn new(n: usize, bound: Entry) -> Self {
        SuiteParams {
            n,
            bound,
            seed: DEFAULT_SEED,
            samples: 200,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Counterexample (verbatim) on failure, a short summary otherwise.
    pub details: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Uniformly random block at dimension `n`.
pub fn random_block<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Block {
    let mask = rng.random_range(1..(1usize << n) - 1);
    Block::new(n, (0..n).filter(|i| mask >> i & 1 == 1)).expect("mask is proper")
}

/// Random algebra member built as an ⊕/⊙ combination of random blocks; all
/// entries stay at most 6.
pub fn random_exponent<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ExponentMatrix {
    let terms = rng.random_range(1..=n);
    let mut acc = ExponentMatrix::zero(n);
    for _ in 0..terms {
        let factors = rng.random_range(1..=3);
        let mut term = ExponentMatrix::zero(n);
        for _ in 0..factors {
            let power = rng.random_range(1..=2u64);
            term = term.odot(&random_block(rng, n).realize().odot_pow(power));
        }
        acc = acc.oplus(&term);
    }
    acc
}

/// Random zero-diagonal matrix with entries at most `bound`; membership in
/// the algebra is not guaranteed.
pub fn random_zero_diag<R: Rng + ?Sized>(rng: &mut R, n: usize, bound: Entry) -> NatMatrix {
    let mut entries = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                entries[i * n + j] = rng.random_range(0..=bound);
            }
        }
    }
    NatMatrix::from_flat_unchecked(n, entries)
}

/// Runs the selected suite and collects one outcome per check.
pub fn run_suite(suite: Suite, params: &SuiteParams, budget: &Budget) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    match suite {
        Suite::All => {
            checks.extend(decompose_suite(params, budget)?);
            checks.extend(structure_suite(params, budget)?);
            checks.extend(automorphism_suite(params, budget)?);
            checks.extend(downset_suite(params, budget)?);
        }
        Suite::Decompose => checks.extend(decompose_suite(params, budget)?),
        Suite::Structure => checks.extend(structure_suite(params, budget)?),
        Suite::Automorphism => checks.extend(automorphism_suite(params, budget)?),
        Suite::Downset => checks.extend(downset_suite(params, budget)?),
    }
    Ok(SuiteReport { checks })
}

fn outcome(name: &'static str, failure: Option<String>, summary: String) -> CheckOutcome {
    match failure {
        Some(details) => CheckOutcome {
            name,
            passed: false,
            details,
        },
        None => CheckOutcome {
            name,
            passed: true,
            details: summary,
        },
    }
}

/// Odometer over every zero-diagonal matrix with entries at most `bound`.
fn for_each_zero_diag(n: usize, bound: Entry, f: &mut dyn FnMut(&NatMatrix) -> ControlFlow<()>) {
    let positions: Vec<usize> = (0..n * n).filter(|p| p / n != p % n).collect();
    let mut flat = vec![0u64; n * n];
    loop {
        let m = NatMatrix::from_flat_unchecked(n, flat.clone());
        if let ControlFlow::Break(()) = f(&m) {
            return;
        }
        let mut t = positions.len();
        loop {
            if t == 0 {
                return;
            }
            t -= 1;
            if flat[positions[t]] < bound {
                flat[positions[t]] += 1;
                for &p in &positions[t + 1..] {
                    flat[p] = 0;
                }
                break;
            }
            flat[positions[t]] = 0;
        }
    }
}

fn decompose_suite(params: &SuiteParams, budget: &Budget) -> Result<Vec<CheckOutcome>> {
    let n = params.n;
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut failure = None;
    for _ in 0..params.samples {
        let a = random_exponent(&mut rng, n);
        let e = row_decomposition(&a);
        if e.evaluate() != a || e.terms().len() > n {
            failure = Some(format!("row decomposition failed for\n{a}"));
            break;
        }
    }
    checks.push(outcome(
        "decompose/round-trip-rows",
        failure,
        format!("{} random matrices", params.samples),
    ));

    let mut failure = None;
    for _ in 0..params.samples {
        let a = random_exponent(&mut rng, n);
        let e = column_decomposition(&a);
        if e.evaluate() != a || e.terms().len() > n {
            failure = Some(format!("column decomposition failed for\n{a}"));
            break;
        }
    }
    checks.push(outcome(
        "decompose/round-trip-columns",
        failure,
        format!("{} random matrices", params.samples),
    ));

    let offdiag = n * (n - 1);
    let candidates = ((params.bound + 1) as f64).powi(offdiag as i32);
    let exhaustive = candidates <= 200_000.0;
    let mut failure = None;
    let summary;
    if exhaustive {
        let mut count = 0usize;
        for_each_zero_diag(n, params.bound, &mut |m| {
            count += 1;
            if membership_by_decomposition(m) != m.is_exponent() {
                failure = Some(format!("membership tests disagree on\n{m}"));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        summary = format!("{count} candidates, exhaustive");
    } else {
        for _ in 0..500 {
            let m = random_zero_diag(&mut rng, n, params.bound);
            if membership_by_decomposition(&m) != m.is_exponent() {
                failure = Some(format!("membership tests disagree on\n{m}"));
                break;
            }
        }
        summary = "500 random candidates".to_string();
    }
    checks.push(outcome("decompose/membership-equivalence", failure, summary));

    let mut failure = None;
    let summary;
    if n <= 4 {
        let universe = enumerate_exponent(n, 1, budget)?;
        for a in universe.members() {
            if !zero_one_decomposes_without_odot(a) {
                failure = Some(format!("zero-one matrix needs ⊙:\n{a}"));
                break;
            }
        }
        summary = format!("{} zero-one members, exhaustive", universe.len());
    } else {
        let mut count = 0;
        for _ in 0..params.samples {
            let mut a = ExponentMatrix::zero(n);
            for _ in 0..rng.random_range(1..=n) {
                a = a.oplus(&random_block(&mut rng, n).realize());
            }
            count += 1;
            if !zero_one_decomposes_without_odot(&a) {
                failure = Some(format!("zero-one matrix needs ⊙:\n{a}"));
                break;
            }
        }
        summary = format!("{count} random zero-one members");
    }
    checks.push(outcome("decompose/zero-one-pure-oplus", failure, summary));

    let mut failure = None;
    for _ in 0..100 {
        let a = random_exponent(&mut rng, n);
        for p in 0..n {
            if a.row(p).iter().all(|&e| e == 0) {
                continue;
            }
            let t = term_of_row(a.as_nat(), p).expect("nonzero row").realize();
            if !t.leq(&a) || t.row(p) != a.row(p) {
                failure = Some(format!("row term violates dominance at row {}:\n{a}", p + 1));
                break;
            }
        }
        if failure.is_some() {
            break;
        }
    }
    checks.push(outcome(
        "decompose/term-dominance",
        failure,
        "100 random matrices".to_string(),
    ));

    let mut failure = None;
    for _ in 0..100 {
        let a = random_exponent(&mut rng, n);
        let cols = column_decomposition(&a);
        let rows_t = row_decomposition(&a.transpose());
        let dual = cols.terms().len() == rows_t.terms().len()
            && cols.terms().iter().zip(rows_t.terms()).all(|(ct, rt)| {
                ct.factors().len() == rt.factors().len()
                    && ct.factors().iter().zip(rt.factors()).all(|(cf, rf)| {
                        cf.block() == &rf.block().complement() && cf.power() == rf.power()
                    })
            });
        if !dual {
            failure = Some(format!("column duality fails for\n{a}"));
            break;
        }
    }
    checks.push(outcome(
        "decompose/column-duality",
        failure,
        "100 random matrices".to_string(),
    ));

    let mut failure = None;
    let blocks = Block::all(n);
    'outer: for x in &blocks {
        for y in &blocks {
            if x != y && x.realize().leq(&y.realize()) {
                failure = Some(format!("comparable blocks {x} <= {y}"));
                break 'outer;
            }
        }
    }
    if failure.is_none() {
        for _ in 0..100 {
            let a = random_exponent(&mut rng, n);
            if a.is_zero() {
                continue;
            }
            let b = find_block_below(&a).expect("nonzero");
            if !b.realize().leq(&a) {
                failure = Some(format!("block {b} not below\n{a}"));
                break;
            }
        }
    }
    checks.push(outcome(
        "decompose/block-minimality",
        failure,
        format!("{} blocks, 100 random matrices", blocks.len()),
    ));

    Ok(checks)
}

fn zero_one_decomposes_without_odot(a: &ExponentMatrix) -> bool {
    if !is_pure_oplus_of_blocks(a) {
        return false;
    }
    row_decomposition(a)
        .terms()
        .iter()
        .all(|t| t.factors().len() == 1 && t.factors()[0].power() == 1)
}

fn structure_suite(params: &SuiteParams, budget: &Budget) -> Result<Vec<CheckOutcome>> {
    let n = params.n;
    let mut checks = Vec::new();
    let blocks = Block::all(n);

    let mut failure = None;
    'join: for i1 in &blocks {
        for i2 in &blocks {
            let sols = block_join_solutions(i1, i2);
            let inter: std::collections::BTreeSet<usize> =
                i1.indices().intersection(i2.indices()).copied().collect();
            let union: std::collections::BTreeSet<usize> =
                i1.indices().union(i2.indices()).copied().collect();
            for j in sols.proper() {
                if *j.indices() != inter && *j.indices() != union {
                    failure = Some(format!("stray proper solution {j} for ({i1}, {i2})"));
                    break 'join;
                }
            }
            for set in [&inter, &union] {
                if !set.is_empty() && set.len() < n {
                    let b = Block::new(n, set.iter().copied()).expect("proper");
                    if !sols.all().contains(&b) {
                        failure = Some(format!("{b} fails to solve ({i1}, {i2})"));
                        break 'join;
                    }
                }
            }
        }
    }
    checks.push(outcome(
        "structure/join-solutions-lemma",
        failure,
        format!("{} ordered pairs", blocks.len() * blocks.len()),
    ));

    let mut failure = None;
    for b in &blocks {
        let expected = b.len() == 1 || b.len() == n - 1;
        if has_at_most_one_proper_solution_everywhere(b) != expected {
            failure = Some(format!("uniqueness characterization fails at {b}"));
            break;
        }
    }
    checks.push(outcome(
        "structure/join-uniqueness-characterization",
        failure,
        format!("{} index sets", blocks.len()),
    ));

    if n >= 3 {
        let mut failure = None;
        'fam: for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for kind in [FamilyKind::A, FamilyKind::L, FamilyKind::C] {
                    let m = family(kind, i, j, n)?;
                    if !is_odot_irreducible(&m, budget)? {
                        failure = Some(format!("reducible family matrix {kind:?}:\n{m}"));
                        break 'fam;
                    }
                }
            }
        }
        checks.push(outcome(
            "structure/families-irreducible",
            failure,
            format!("{} matrices", 3 * n * (n - 1)),
        ));
    }

    let mut failure = None;
    for b in &blocks {
        if !is_odot_irreducible(&b.realize(), budget)? {
            failure = Some(format!("reducible block {b}"));
            break;
        }
    }
    checks.push(outcome(
        "structure/blocks-irreducible",
        failure,
        format!("{} blocks", blocks.len()),
    ));

    let mut failure = None;
    let uniform = ExponentMatrix::uniform(n)?;
    if is_odot_irreducible(&uniform, budget)? {
        failure = Some("uniform matrix reported irreducible".to_string());
    } else {
        for b in &blocks {
            if is_odot_irreducible(&b.realize().odot_pow(2), budget)? {
                failure = Some(format!("{b}^2 reported irreducible"));
                break;
            }
        }
    }
    checks.push(outcome(
        "structure/reducible-witnesses",
        failure,
        format!("uniform and {} squared blocks", blocks.len()),
    ));

    let minimal = min_entry_sum_elements(n, (n - 1) as Entry, budget)?;
    let expected: Vec<ExponentMatrix> = blocks
        .iter()
        .filter(|b| b.len() == 1 || b.len() == n - 1)
        .map(Block::realize)
        .collect();
    let expected = MatrixSet::from_members(n, expected)?;
    let sum_ok = minimal
        .members()
        .iter()
        .all(|m| m.entry_sum() == (n - 1) as u64);
    let failure = if minimal == expected && sum_ok {
        None
    } else {
        Some(format!(
            "minimal elements differ: got {} members, expected {}",
            minimal.len(),
            expected.len()
        ))
    };
    checks.push(outcome(
        "structure/min-entry-sum",
        failure,
        format!("{} extremal members of sum {}", expected.len(), n - 1),
    ));

    let mut failure = None;
    for b in &blocks {
        if !orbit_sum_matches(&b.realize(), budget)? {
            failure = Some(format!("orbit sum identity fails at {b}"));
            break;
        }
    }
    let mut count = blocks.len();
    if failure.is_none() && n == 3 {
        let universe = enumerate_exponent(3, params.bound.min(2), budget)?;
        for a in universe.members() {
            if a.is_zero() || !is_odot_irreducible(a, budget)? {
                continue;
            }
            count += 1;
            if !orbit_sum_matches(a, budget)? {
                failure = Some(format!("orbit sum identity fails at\n{a}"));
                break;
            }
        }
    }
    checks.push(outcome(
        "structure/orbit-sum",
        failure,
        format!("{count} irreducible matrices"),
    ));

    let mut failure = None;
    for b in &blocks {
        match crate::structure::unique_block_from_join_conditions(b) {
            Ok(s) if s == *b => {}
            Ok(s) => {
                failure = Some(format!("conditions for {b} solved by {s}"));
                break;
            }
            Err(e) => {
                failure = Some(format!("conditions for {b}: {e}"));
                break;
            }
        }
    }
    checks.push(outcome(
        "structure/unique-block-conditions",
        failure,
        format!("{} index sets", blocks.len()),
    ));

    Ok(checks)
}

fn orbit_sum_matches(a: &ExponentMatrix, budget: &Budget) -> Result<bool> {
    let n = a.n();
    let sum = symmetric_odot_sum(a, budget)?;
    let expected = ExponentMatrix::uniform(n)?.odot_pow(factorial(n - 2) * a.entry_sum());
    Ok(sum == expected)
}

fn automorphism_suite(params: &SuiteParams, budget: &Budget) -> Result<Vec<CheckOutcome>> {
    let n = params.n;
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let elements = GroupElement::all(n);

    let samples: Vec<ExponentMatrix> = (0..params.samples)
        .map(|_| random_exponent(&mut rng, n))
        .collect();
    let mut failure = None;
    for g in &elements {
        if !crate::structure::verify_action_automorphism(g, &samples) {
            failure = Some(format!(
                "element (perm {:?}, flip {}) is not an automorphism on the samples",
                g.perm().images(),
                g.flip()
            ));
            break;
        }
    }
    checks.push(outcome(
        "automorphism/all-elements",
        failure,
        format!("{} elements x {} samples", elements.len(), samples.len()),
    ));

    if n >= 3 {
        let mut failure = None;
        for i in 0..n {
            if !check_family_identity(i, n)? {
                failure = Some(format!("family identity fails at row {}", i + 1));
                break;
            }
        }
        checks.push(outcome(
            "automorphism/family-identity",
            failure,
            format!("{n} rows, both orientations"),
        ));
    }

    let uniform = ExponentMatrix::uniform(n)?;
    let mut failure = None;
    for g in &elements {
        if g.act_exponent(&uniform) != uniform {
            failure = Some(format!(
                "uniform matrix moved by (perm {:?}, flip {})",
                g.perm().images(),
                g.flip()
            ));
            break;
        }
    }
    checks.push(outcome(
        "automorphism/uniform-fixed",
        failure,
        format!("{} elements", elements.len()),
    ));

    let mut failure = None;
    'sum: for g in &elements {
        for a in samples.iter().take(50) {
            if g.act_exponent(a).entry_sum() != a.entry_sum() {
                failure = Some(format!("entry sum changes under the action on\n{a}"));
                break 'sum;
            }
        }
    }
    checks.push(outcome(
        "automorphism/entry-sum-invariant",
        failure,
        format!("{} elements x 50 samples", elements.len()),
    ));

    let failure = if n >= 3 {
        let blocks = Block::all(n);
        let mut fingerprints: Vec<Vec<ExponentMatrix>> = elements
            .iter()
            .map(|g| blocks.iter().map(|b| g.act_exponent(&b.realize())).collect())
            .collect();
        let total = fingerprints.len();
        fingerprints.sort_unstable();
        fingerprints.dedup();
        if fingerprints.len() == total {
            None
        } else {
            Some("distinct elements act identically on the blocks".to_string())
        }
    } else {
        // At n = 2 the swap and the transpose coincide on the whole algebra.
        let swap = GroupElement::from_perm(Permutation::swap(2, 0, 1).expect("valid"));
        let flip = GroupElement::transpose(2);
        let universe = enumerate_exponent(2, 3, budget)?;
        let mut failure = None;
        for a in universe.members() {
            if swap.act_exponent(a) != flip.act_exponent(a) {
                failure = Some(format!("swap and transpose differ on\n{a}"));
                break;
            }
        }
        failure
    };
    checks.push(outcome(
        "automorphism/faithfulness",
        failure,
        if n >= 3 {
            format!("{} elements, pairwise distinct on blocks", elements.len())
        } else {
            "swap equals transpose on the bounded universe".to_string()
        },
    ));

    let flip = GroupElement::transpose(n);
    let singles: Vec<ExponentMatrix> = (0..n)
        .map(|i| Block::singleton(n, i).expect("valid").realize())
        .collect();
    let cosingles: Vec<ExponentMatrix> = (0..n)
        .map(|i| Block::singleton(n, i).expect("valid").complement().realize())
        .collect();
    let image = MatrixSet::from_members(n, singles.iter().map(|a| flip.act_exponent(a)).collect())?;
    let expected = MatrixSet::from_members(n, cosingles)?;
    let failure = if image == expected {
        None
    } else {
        Some("transpose does not swap the two block families".to_string())
    };
    checks.push(outcome(
        "automorphism/flip-swaps-block-families",
        failure,
        format!("{n} singleton blocks"),
    ));

    Ok(checks)
}

fn downset_suite(params: &SuiteParams, budget: &Budget) -> Result<Vec<CheckOutcome>> {
    let n = params.n;
    let bound = params.bound;
    let mut checks = Vec::new();

    let universe = enumerate_exponent(n, bound, budget)?;
    let violations = crate::order::downset_uniqueness_scan(n, bound, budget)?;
    let failure = violations.first().map(|(a, b)| {
        format!("matrices share a strict downset:\n{a}\nand\n{b}")
    });
    checks.push(outcome(
        "downset/uniqueness-scan",
        failure,
        format!("universe {}, 0 violating pairs", universe.len()),
    ));

    let mut failure = None;
    for a in universe.members() {
        let h = height(a, budget)?;
        let is_block = Block::from_matrix(a.as_nat()).is_some();
        let expected_one = is_block;
        if (h == 1) != expected_one || (a.is_zero() && h != 0) {
            failure = Some(format!("height {h} disagrees with block status for\n{a}"));
            break;
        }
    }
    checks.push(outcome(
        "downset/height-characterizes-blocks",
        failure,
        format!("{} members", universe.len()),
    ));

    let mut failure = None;
    for a in universe.members() {
        let d = strict_downset(a, budget)?;
        let maxima = max_elements(&d);
        let join = maxima.join();
        if !(join == *a || (maxima.len() == 1 && maxima.contains(&join))) {
            failure = Some(format!("join-of-maxima dichotomy fails for\n{a}"));
            break;
        }
    }
    checks.push(outcome(
        "downset/join-max-dichotomy",
        failure,
        format!("{} members", universe.len()),
    ));

    let members: Vec<&ExponentMatrix> = universe
        .members()
        .iter()
        .step_by((universe.len() / 10).max(1))
        .take(10)
        .collect();
    let elements = GroupElement::all(n);
    let step = (elements.len() / 12).max(1);
    let sampled_elements: Vec<&GroupElement> = elements.iter().step_by(step).take(12).collect();
    let mut failure = None;
    'equiv: for a in &members {
        let d = strict_downset(a, budget)?;
        let h = height(a, budget)?;
        for g in &sampled_elements {
            let image = g.act_exponent(a);
            let image_down = strict_downset(&image, budget)?;
            let mapped =
                MatrixSet::from_members(n, d.members().iter().map(|b| g.act_exponent(b)).collect())?;
            if image_down != mapped || height(&image, budget)? != h {
                failure = Some(format!("action breaks the downset order at\n{a}"));
                break 'equiv;
            }
        }
    }
    checks.push(outcome(
        "downset/action-equivariance",
        failure,
        format!("{} members x {} elements", members.len(), sampled_elements.len()),
    ));

    let nonblocks: Vec<&ExponentMatrix> = universe
        .members()
        .iter()
        .filter(|a| !a.is_zero() && Block::from_matrix(a.as_nat()).is_none())
        .collect();
    let mut failure = None;
    let mut count = 0;
    for a in &nonblocks {
        if count == 5 {
            break;
        }
        // The gap lemma assumes a singleton maximal set.
        if max_elements(&strict_downset(a, budget)?).len() != 1 {
            continue;
        }
        count += 1;
        if !downset_gap_check(a, a, budget)? {
            failure = Some(format!("gap check rejects identical matrices:\n{a}"));
            break;
        }
    }
    checks.push(outcome(
        "downset/gap-identity",
        failure,
        format!("{count} members"),
    ));

    let mut failure = None;
    let mut tested = 0;
    let mut fast = None;
    let mut slow = None;
    for a in &nonblocks {
        let d = strict_downset(a, budget)?;
        let maxima = max_elements(&d);
        if fast.is_none() && maxima.join() == **a {
            fast = Some((*a, d));
        } else if slow.is_none() && maxima.len() == 1 {
            slow = Some((*a, d));
        }
        if fast.is_some() && slow.is_some() {
            break;
        }
    }
    for (a, d) in [fast, slow].into_iter().flatten() {
        tested += 1;
        if reconstruct_from_downset(&d, bound, budget)? != Some(a.clone()) {
            failure = Some(format!("reconstruction fails for\n{a}"));
            break;
        }
    }
    checks.push(outcome(
        "downset/reconstruct",
        failure,
        format!("{tested} members"),
    ));

    Ok(checks)
}
