//! Constructive decomposition of a matrix over the block basis.
//!
//! For a nonzero row `p`, the distinct row values `c₁ < … < c_m` (with
//! `c₁ = 0`) induce level sets `J_c = {j : a[p][j] = c}`, cumulative sets
//! `I_t = J_{c₁} ∪ … ∪ J_{c_t}` and gaps `k_t = c_{t+1} − c_t`. The row term
//!
//! ```text
//! T(p) = T_{I₁}^{⊙k₁} ⊙ … ⊙ T_{I_{m−1}}^{⊙k_{m−1}}
//! ```
//!
//! satisfies `T(p) ≤ A` with equality on row `p`, so ⊕-summing the terms of
//! all nonzero rows recovers `A`. The column decomposition is the same
//! construction on the transpose, with every index set complemented.
//!
//! The row term reads only row `p`, never the triangle condition, which is
//! what makes [`membership_by_decomposition`] a genuine membership test for
//! arbitrary zero-diagonal matrices.

use std::collections::BTreeSet;

use crate::block::Block;
use crate::error::{Error, Result};
use crate::expr::{Factor, Term, TropicalExpression};
use crate::matrix::{Entry, ExponentMatrix, NatMatrix};

/// Per-row analysis record: distinct values, level sets, cumulative sets and
/// gaps, all for one row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowProfile {
    row: usize,
    values: Vec<Entry>,
    levels: Vec<BTreeSet<usize>>,
    cumulative: Vec<BTreeSet<usize>>,
    gaps: Vec<Entry>,
}

impl RowProfile {
    pub fn row(&self) -> usize {
        self.row
    }

    /// The distinct row values `c₁ < … < c_m`; always starts at 0.
    pub fn values(&self) -> &[Entry] {
        &self.values
    }

    /// Level sets parallel to [`RowProfile::values`]; they partition the
    /// index set.
    pub fn level_sets(&self) -> &[BTreeSet<usize>] {
        &self.levels
    }

    pub fn level(&self, value: Entry) -> Option<&BTreeSet<usize>> {
        let idx = self.values.iter().position(|&v| v == value)?;
        Some(&self.levels[idx])
    }

    /// The strictly increasing chain `I₁ ⊂ … ⊂ I_{m−1}`.
    pub fn cumulative_sets(&self) -> &[BTreeSet<usize>] {
        &self.cumulative
    }

    /// The gaps `k_t = c_{t+1} − c_t`, each at least 1.
    pub fn gaps(&self) -> &[Entry] {
        &self.gaps
    }
}

/// Computes the profile of row `row`. Errors on a zero row.
pub fn row_profile(m: &NatMatrix, row: usize) -> Result<RowProfile> {
    assert!(row < m.n(), "row index out of range");
    let r = m.row(row);
    if r.iter().all(|&e| e == 0) {
        return Err(Error::ZeroRow { row });
    }

    let mut values: Vec<Entry> = r.to_vec();
    values.sort_unstable();
    values.dedup();

    let levels: Vec<BTreeSet<usize>> = values
        .iter()
        .map(|&c| (0..m.n()).filter(|&j| r[j] == c).collect())
        .collect();

    let mut cumulative = Vec::with_capacity(values.len() - 1);
    let mut acc = BTreeSet::new();
    for level in &levels[..levels.len() - 1] {
        acc.extend(level.iter().copied());
        cumulative.push(acc.clone());
    }

    let gaps = values.windows(2).map(|w| w[1] - w[0]).collect();

    Ok(RowProfile {
        row,
        values,
        levels,
        cumulative,
        gaps,
    })
}

/// Builds the row term `T(row)`. Errors on a zero row.
pub fn term_of_row(m: &NatMatrix, row: usize) -> Result<Term> {
    let profile = row_profile(m, row)?;
    let factors: Result<Vec<Factor>> = profile
        .cumulative_sets()
        .iter()
        .zip(profile.gaps())
        .map(|(set, &gap)| Factor::new(Block::new(m.n(), set.iter().copied())?, gap))
        .collect();
    Term::new(factors?)
}

/// `A` as the ⊕-sum of the row terms of its nonzero rows, in ascending row
/// order. The zero matrix yields the empty expression.
pub fn row_decomposition(a: &ExponentMatrix) -> TropicalExpression {
    let terms: Vec<Term> = (0..a.n())
        .filter(|&p| a.row(p).iter().any(|&e| e != 0))
        .map(|p| term_of_row(a.as_nat(), p).expect("nonzero row"))
        .collect();
    TropicalExpression::new(a.n(), terms).expect("terms share the matrix dimension")
}

/// `A` as the ⊕-sum of the column terms `S(p) = T(p)ᵗ` of its nonzero
/// columns: the row decomposition of `Aᵗ` with every index set complemented.
pub fn column_decomposition(a: &ExponentMatrix) -> TropicalExpression {
    let transposed = row_decomposition(&a.transpose());
    let terms: Vec<Term> = transposed
        .terms()
        .iter()
        .map(|t| {
            let factors: Vec<Factor> = t
                .factors()
                .iter()
                .map(|f| {
                    Factor::new(f.block().complement(), f.power())
                        .expect("power is positive")
                })
                .collect();
            Term::new(factors).expect("term is nonempty")
        })
        .collect();
    TropicalExpression::new(a.n(), terms).expect("terms share the matrix dimension")
}

/// Membership test via the row terms: a zero-diagonal matrix belongs to the
/// algebra iff `T(p) ≤ M` for every nonzero row `p`. Agrees with
/// [`NatMatrix::is_exponent`] on every input.
pub fn membership_by_decomposition(m: &NatMatrix) -> bool {
    (0..m.n())
        .filter(|&p| m.row(p).iter().any(|&e| e != 0))
        .all(|p| {
            let term = term_of_row(m, p).expect("nonzero row");
            term.realize().as_nat().leq(m)
        })
}

/// For nonzero `A`, the block `T_C` with `C` the zero set of the
/// lowest-index nonzero row; always satisfies `T_C ≤ A`.
pub fn find_block_below(a: &ExponentMatrix) -> Result<Block> {
    let row = (0..a.n())
        .find(|&i| a.row(i).iter().any(|&e| e != 0))
        .ok_or(Error::ZeroMatrix)?;
    let zeros = (0..a.n()).filter(|&j| a.get(row, j) == 0);
    // The zero set contains `row` (zero diagonal) and misses the nonzero
    // column, so it is proper.
    Block::new(a.n(), zeros)
}

/// True iff every entry is 0 or 1; such matrices decompose without ⊙ (every
/// row term is a single block to power 1).
pub fn is_pure_oplus_of_blocks(a: &ExponentMatrix) -> bool {
    let pure = a.entries().iter().all(|&e| e <= 1);
    if pure {
        debug_assert!(row_decomposition(a)
            .terms()
            .iter()
            .all(|t| t.factors().len() == 1 && t.factors()[0].power() == 1));
    }
    pure
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_expression;

    fn reference_4x4() -> ExponentMatrix {
        ExponentMatrix::from_rows(&[
            &[0, 2, 5, 5],
            &[4, 0, 3, 3],
            &[6, 2, 0, 2],
            &[4, 4, 2, 0],
        ])
        .unwrap()
    }

    #[test]
    fn profile_of_nine_dim_row() {
        let mut rows = vec![vec![0u64; 9]; 9];
        rows[0] = vec![0, 5, 0, 0, 1, 3, 3, 3, 5];
        let m = NatMatrix::from_rows(&rows).unwrap();
        let p = row_profile(&m, 0).unwrap();
        assert_eq!(p.values(), &[0, 1, 3, 5]);
        assert_eq!(p.level(0).unwrap(), &BTreeSet::from([0, 2, 3]));
        assert_eq!(p.level(1).unwrap(), &BTreeSet::from([4]));
        assert_eq!(p.level(3).unwrap(), &BTreeSet::from([5, 6, 7]));
        assert_eq!(p.level(5).unwrap(), &BTreeSet::from([1, 8]));
        assert_eq!(
            p.cumulative_sets(),
            &[
                BTreeSet::from([0, 2, 3]),
                BTreeSet::from([0, 2, 3, 4]),
                BTreeSet::from([0, 2, 3, 4, 5, 6, 7]),
            ]
        );
        assert_eq!(p.gaps(), &[1, 2, 2]);
        // The level sets partition the index set and the first one holds p.
        assert!(p.level(0).unwrap().contains(&0));
        let total: usize = p.level_sets().iter().map(BTreeSet::len).sum();
        assert_eq!(total, 9);
    }

    #[test]
    fn term_of_nine_dim_row() {
        let mut rows = vec![vec![0u64; 9]; 9];
        rows[0] = vec![0, 5, 0, 0, 1, 3, 3, 3, 5];
        let m = NatMatrix::from_rows(&rows).unwrap();
        let term = term_of_row(&m, 0).unwrap();
        let expected = parse_expression("T{1,3,4} * T{1,3,4,5}^2 * T{1,3,4,5,6,7,8}^2", 9).unwrap();
        assert_eq!(term, expected.terms()[0]);
        assert_eq!(term.realize().row(0), m.row(0));
    }

    #[test]
    fn profile_of_reference_row_two() {
        let a = reference_4x4();
        let p = row_profile(a.as_nat(), 1).unwrap();
        assert_eq!(p.values(), &[0, 3, 4]);
        assert_eq!(
            p.cumulative_sets(),
            &[BTreeSet::from([1]), BTreeSet::from([1, 2, 3])]
        );
        assert_eq!(p.gaps(), &[3, 1]);
    }

    #[test]
    fn zero_row_is_an_error() {
        let m = NatMatrix::zero(3);
        assert_eq!(row_profile(&m, 1), Err(Error::ZeroRow { row: 1 }));
        assert_eq!(term_of_row(&m, 1), Err(Error::ZeroRow { row: 1 }));
    }

    #[test]
    fn single_value_row_gives_single_factor() {
        let m = NatMatrix::from_rows(&[vec![0, 3, 3], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        let term = term_of_row(&m, 0).unwrap();
        assert_eq!(term.factors().len(), 1);
        assert_eq!(term.factors()[0].block(), &Block::new(3, [0]).unwrap());
        assert_eq!(term.factors()[0].power(), 3);
    }

    #[test]
    fn row_decomposition_of_reference_matrix() {
        let a = reference_4x4();
        let expected = parse_expression(
            "T{1}^2 * T{1,2}^3 + T{2}^3 * T{2,3,4} + T{3}^2 * T{2,3,4}^4 + T{4}^2 * T{3,4}^2",
            4,
        )
        .unwrap();
        let got = row_decomposition(&a);
        assert_eq!(got, expected);
        assert_eq!(got.evaluate(), a);
        assert!(got.terms().len() <= 4);
    }

    #[test]
    fn column_decomposition_of_reference_matrix() {
        let a = reference_4x4();
        let expected = parse_expression(
            "T{2,3,4}^4 * T{3}^2 + T{1,3,4}^2 * T{4}^2 + T{1,2,4}^2 * T{1,2} * T{1}^2 \
             + T{1,2,3}^2 * T{1,2} * T{1}^2",
            4,
        )
        .unwrap();
        let got = column_decomposition(&a);
        assert_eq!(got, expected);
        assert_eq!(got.evaluate(), a);
    }

    #[test]
    fn zero_matrix_decomposes_to_empty_expression() {
        let z = ExponentMatrix::zero(3);
        assert!(row_decomposition(&z).is_empty());
        assert!(column_decomposition(&z).is_empty());
        assert_eq!(row_decomposition(&z).evaluate(), z);
    }

    #[test]
    fn uniform_decomposes_to_singleton_blocks() {
        let u = ExponentMatrix::uniform(3).unwrap();
        let expected = parse_expression("T{1} + T{2} + T{3}", 3).unwrap();
        assert_eq!(row_decomposition(&u), expected);
    }

    #[test]
    fn membership_agrees_with_direct_check() {
        assert!(membership_by_decomposition(reference_4x4().as_nat()));
        let bad =
            NatMatrix::from_rows(&[vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        assert!(!membership_by_decomposition(&bad));
        assert!(!bad.is_exponent());
    }

    #[test]
    fn block_below_reference_matrix() {
        let a = reference_4x4();
        let b = find_block_below(&a).unwrap();
        assert_eq!(b, Block::new(4, [0]).unwrap());
        assert!(b.realize().leq(&a));
    }

    #[test]
    fn block_below_uniform_and_zero() {
        let u = ExponentMatrix::uniform(3).unwrap();
        assert_eq!(find_block_below(&u).unwrap(), Block::new(3, [0]).unwrap());
        assert_eq!(
            find_block_below(&ExponentMatrix::zero(3)),
            Err(Error::ZeroMatrix)
        );
    }

    #[test]
    fn pure_oplus_detection() {
        assert!(is_pure_oplus_of_blocks(&ExponentMatrix::uniform(3).unwrap()));
        assert!(is_pure_oplus_of_blocks(&Block::new(4, [1]).unwrap().realize()));
        assert!(!is_pure_oplus_of_blocks(&reference_4x4()));
    }

    #[test]
    fn column_terms_complement_row_terms_of_transpose() {
        let a = reference_4x4();
        let cols = column_decomposition(&a);
        let rows_t = row_decomposition(&a.transpose());
        assert_eq!(cols.terms().len(), rows_t.terms().len());
        for (ct, rt) in cols.terms().iter().zip(rows_t.terms()) {
            for (cf, rf) in ct.factors().iter().zip(rt.factors()) {
                assert_eq!(cf.block(), &rf.block().complement());
                assert_eq!(cf.power(), rf.power());
            }
        }
    }
}
