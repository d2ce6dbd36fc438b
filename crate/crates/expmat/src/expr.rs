//! ⊕-of-⊙ expressions over blocks.
//!
//! An expression is a sum of terms; a term is a product of powered blocks.
//! The text form uses `+` for ⊕, `*` for ⊙ and `^` for the ⊙-power, with
//! one-based indices: `T{1}^2 * T{1,2}^3 + T{2}^3 * T{2,3,4}`. The empty
//! expression evaluates to the zero matrix and prints as `0`.

use std::fmt;

use crate::block::Block;
use crate::error::{Error, Result};
use crate::matrix::{Entry, ExponentMatrix};

/// A block raised to a positive ⊙-power.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factor {
    block: Block,
    power: Entry,
}

impl Factor {
    pub fn new(block: Block, power: Entry) -> Result<Self> {
        if power == 0 {
            return Err(Error::ZeroPower);
        }
        Ok(Factor { block, power })
    }

    pub fn block(&self) -> &Block {
        &self.block
    }

    pub fn power(&self) -> Entry {
        self.power
    }

    pub fn realize(&self) -> ExponentMatrix {
        self.block.realize().odot_pow(self.power)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.block)?;
        if self.power > 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

/// A nonempty ⊙-product of factors over a common dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    factors: Vec<Factor>,
}

impl Term {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        assert!(!factors.is_empty(), "a term needs at least one factor");
        let n = factors[0].block().n();
        for f in &factors {
            if f.block().n() != n {
                return Err(Error::DimensionMismatch(n, f.block().n()));
            }
        }
        Ok(Term { factors })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn n(&self) -> usize {
        self.factors[0].block().n()
    }

    /// Total ⊙-power of the term, i.e. the number of block factors counted
    /// with multiplicity.
    pub fn weight(&self) -> Entry {
        self.factors.iter().map(Factor::power).sum()
    }

    pub fn realize(&self) -> ExponentMatrix {
        let mut acc = ExponentMatrix::zero(self.n());
        for f in &self.factors {
            acc = acc.odot(&f.realize());
        }
        acc
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, factor) in self.factors.iter().enumerate() {
            if pos > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// An ⊕-sum of terms; the normal form produced by the decompositions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropicalExpression {
    n: usize,
    terms: Vec<Term>,
}

impl TropicalExpression {
    pub fn new(n: usize, terms: Vec<Term>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionTooSmall { n, min: 1 });
        }
        for t in &terms {
            if t.n() != n {
                return Err(Error::DimensionMismatch(n, t.n()));
            }
        }
        Ok(TropicalExpression { n, terms })
    }

    /// The empty ⊕-sum, which evaluates to the zero matrix.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        TropicalExpression { n, terms: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self) -> ExponentMatrix {
        let mut acc = ExponentMatrix::zero(self.n);
        for t in &self.terms {
            acc = acc.oplus(&t.realize());
        }
        acc
    }

    /// Structural equality is derived `==`; this compares evaluations
    /// instead.
    pub fn semantically_equal(&self, other: &TropicalExpression) -> bool {
        self.n == other.n && self.evaluate() == other.evaluate()
    }
}

impl fmt::Display for TropicalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, term) in self.terms.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}
