//! Property tests for the algebra laws, the group action, the decomposition
//! round-trip and the enumeration oracle.

mod common;

use proptest::prelude::*;

use expmat::decompose::{column_decomposition, membership_by_decomposition, row_decomposition};
use expmat::order::{enumerate_exponent, strict_downset, MatrixSet};
use expmat::text::parse_expression;
use expmat::{Block, ExponentMatrix, GroupElement, NatMatrix, Permutation};

fn build(n: usize, terms: &[Vec<(usize, u64)>]) -> ExponentMatrix {
    let mut acc = ExponentMatrix::zero(n);
    for term in terms {
        let mut product = ExponentMatrix::zero(n);
        for &(mask, power) in term {
            let block = Block::new(n, (0..n).filter(|i| mask >> i & 1 == 1)).unwrap();
            product = product.odot(&block.realize().odot_pow(power));
        }
        acc = acc.oplus(&product);
    }
    acc
}

fn arb_exponent(n: usize) -> impl Strategy<Value = ExponentMatrix> {
    let factor = (1usize..(1 << n) - 1, 1u64..=2);
    let term = prop::collection::vec(factor, 1..=3);
    prop::collection::vec(term, 1..=n).prop_map(move |terms| build(n, &terms))
}

fn arb_triple() -> impl Strategy<Value = (ExponentMatrix, ExponentMatrix, ExponentMatrix)> {
    (2usize..=5).prop_flat_map(|n| (arb_exponent(n), arb_exponent(n), arb_exponent(n)))
}

fn arb_with_element() -> impl Strategy<Value = (ExponentMatrix, ExponentMatrix, GroupElement)> {
    (2usize..=5).prop_flat_map(|n| {
        let elements = GroupElement::all(n);
        (
            arb_exponent(n),
            arb_exponent(n),
            prop::sample::select(elements),
        )
    })
}

fn arb_zero_diag() -> impl Strategy<Value = NatMatrix> {
    (2usize..=5).prop_flat_map(|n| {
        prop::collection::vec(0u64..=4, n * n).prop_map(move |mut entries| {
            for i in 0..n {
                entries[i * n + i] = 0;
            }
            NatMatrix::new(n, entries).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn semiring_laws((a, b, c) in arb_triple()) {
        let zero = ExponentMatrix::zero(a.n());
        // closure
        prop_assert!(a.oplus(&b).as_nat().is_exponent());
        prop_assert!(a.odot(&b).as_nat().is_exponent());
        // associativity and commutativity
        prop_assert_eq!(a.oplus(&b).oplus(&c), a.oplus(&b.oplus(&c)));
        prop_assert_eq!(a.odot(&b).odot(&c), a.odot(&b.odot(&c)));
        prop_assert_eq!(a.oplus(&b), b.oplus(&a));
        prop_assert_eq!(a.odot(&b), b.odot(&a));
        // idempotency of ⊕, distributivity, shared neutral element
        prop_assert_eq!(a.oplus(&a), a.clone());
        prop_assert_eq!(a.odot(&b.oplus(&c)), a.odot(&b).oplus(&a.odot(&c)));
        prop_assert_eq!(a.oplus(&zero), a.clone());
        prop_assert_eq!(a.odot(&zero), a.clone());
    }

    #[test]
    fn order_is_induced_by_oplus((a, b, c) in arb_triple()) {
        prop_assert_eq!(a.leq(&b), a.oplus(&b) == b);
        prop_assert!(a.leq(&a));
        let join = a.oplus(&b);
        prop_assert!(a.leq(&join));
        if a.leq(&b) && b.leq(&a) {
            prop_assert_eq!(a.clone(), b.clone());
        }
        let bigger = join.oplus(&c);
        prop_assert!(a.leq(&bigger));
    }

    #[test]
    fn action_respects_the_algebra((a, b, g) in arb_with_element()) {
        let ga = g.act_exponent(&a);
        let gb = g.act_exponent(&b);
        prop_assert_eq!(g.act_exponent(&a.oplus(&b)), ga.oplus(&gb));
        prop_assert_eq!(g.act_exponent(&a.odot(&b)), ga.odot(&gb));
        prop_assert_eq!(a.leq(&b), ga.leq(&gb));
        prop_assert_eq!(ga.entry_sum(), a.entry_sum());
        prop_assert_eq!(
            g.act(&NatMatrix::zero(a.n())),
            NatMatrix::zero(a.n())
        );
    }

    #[test]
    fn composition_acts_sequentially(
        (a, _, g) in arb_with_element(),
        pick in any::<prop::sample::Index>(),
    ) {
        let elements = GroupElement::all(a.n());
        let h = &elements[pick.index(elements.len())];
        prop_assert_eq!(
            g.compose(h).act_exponent(&a),
            g.act_exponent(&h.act_exponent(&a))
        );
        prop_assert_eq!(g.compose(&g.inverse()), GroupElement::identity(a.n()));
    }

    #[test]
    fn decomposition_round_trips((a, _, _) in arb_triple()) {
        let rows = row_decomposition(&a);
        prop_assert_eq!(rows.evaluate(), a.clone());
        prop_assert!(rows.terms().len() <= a.n());
        let cols = column_decomposition(&a);
        prop_assert_eq!(cols.evaluate(), a.clone());
        prop_assert!(cols.terms().len() <= a.n());
    }

    #[test]
    fn printed_decomposition_parses_back((a, _, _) in arb_triple()) {
        let e = row_decomposition(&a);
        let reparsed = parse_expression(&e.to_string(), a.n()).unwrap();
        prop_assert_eq!(reparsed, e);
    }

    #[test]
    fn membership_matches_direct_check(m in arb_zero_diag()) {
        prop_assert_eq!(membership_by_decomposition(&m), m.is_exponent());
    }

    #[test]
    fn downset_is_action_equivariant(seed in 0usize..6, pick in any::<prop::sample::Index>()) {
        // Keep entries tiny so downsets stay cheap.
        let n = 3;
        let blocks = Block::all(n);
        let a = blocks[seed].realize().oplus(&blocks[(seed + 2) % 6].realize());
        let elements = GroupElement::all(n);
        let g = &elements[pick.index(elements.len())];
        let budget = common::big_budget();
        let down = strict_downset(&a, &budget).unwrap();
        let mapped = MatrixSet::from_members(
            n,
            down.members().iter().map(|b| g.act_exponent(b)).collect(),
        )
        .unwrap();
        prop_assert_eq!(strict_downset(&g.act_exponent(&a), &budget).unwrap(), mapped);
    }
}

#[test]
fn enumeration_agrees_with_unpruned_filter() {
    for (n, bound) in [(2, 3), (3, 1), (3, 2)] {
        let mut oracle = Vec::new();
        common::for_each_zero_diag(n, bound, &mut |m| {
            if m.is_exponent() {
                oracle.push(ExponentMatrix::new(m.clone()).unwrap());
            }
        });
        let oracle = MatrixSet::from_members(n, oracle).unwrap();
        let enumerated = enumerate_exponent(n, bound, &common::big_budget()).unwrap();
        assert_eq!(enumerated, oracle, "n={n} bound={bound}");
    }
}

#[test]
fn two_by_two_universe_is_square_in_the_bound() {
    for bound in 0u64..=4 {
        let count = enumerate_exponent(2, bound, &common::big_budget())
            .unwrap()
            .len() as u64;
        assert_eq!(count, (bound + 1) * (bound + 1));
    }
}

#[test]
fn transpose_duality_of_decompositions() {
    let a = common::reference_4x4();
    let cols = column_decomposition(&a);
    let rows_t = row_decomposition(&a.transpose());
    for (ct, rt) in cols.terms().iter().zip(rows_t.terms()) {
        for (cf, rf) in ct.factors().iter().zip(rt.factors()) {
            assert_eq!(cf.block(), &rf.block().complement());
            assert_eq!(cf.power(), rf.power());
        }
    }
}

#[test]
fn faithfulness_boundary() {
    // Distinct elements act distinctly on the blocks once n is at least 3.
    for n in 3..=4 {
        let blocks = Block::all(n);
        let mut images: Vec<Vec<ExponentMatrix>> = GroupElement::all(n)
            .iter()
            .map(|g| blocks.iter().map(|b| g.act_exponent(&b.realize())).collect())
            .collect();
        let total = images.len();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), total, "action not faithful at n={n}");
    }
    // At n = 2 the swap coincides with the transpose everywhere.
    let swap = GroupElement::from_perm(Permutation::swap(2, 0, 1).unwrap());
    let flip = GroupElement::transpose(2);
    for a in enumerate_exponent(2, 3, &common::big_budget()).unwrap().members() {
        assert_eq!(swap.act_exponent(a), flip.act_exponent(a));
    }
}
