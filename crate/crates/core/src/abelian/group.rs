use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::snf::smith_diagonal;
use super::{AbelianError, IntMatrix};

/// A finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`
/// in invariant-factor form: every `d_i >= 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    free_rank: usize,
    invariant_factors: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigInt>) -> Result<Self, AbelianError> {
        if let Some(bad) = invariant_factors.iter().find(|d| **d < BigInt::from(2)) {
            return Err(AbelianError::InvalidFactor(bad.clone()));
        }
        if let Some(w) = invariant_factors
            .windows(2)
            .find(|w| !w[1].is_multiple_of(&w[0]))
        {
            return Err(AbelianError::BrokenChain(w[0].clone(), w[1].clone()));
        }
        Ok(Self {
            free_rank,
            invariant_factors,
        })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/n`; `n = 1` gives the trivial group and `n = 0` gives `Z`.
    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            n => Self {
                free_rank: 0,
                invariant_factors: vec![BigInt::from(n)],
            },
        }
    }

    /// Normalizes an arbitrary direct sum `Z^free_rank + Z/n_1 + ... + Z/n_k`.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let diag = IntMatrix::diagonal(orders);
        let mut g = group_from_presentation(&diag, orders.len()).expect("square presentation");
        g.free_rank += free_rank;
        g
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Direct sum, renormalized.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .cloned()
            .collect();
        Self::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }

    /// True when `n` annihilates the group.
    pub fn is_annihilated_by(&self, n: &BigInt) -> bool {
        self.free_rank == 0 && self.invariant_factors.iter().all(|d| n.is_multiple_of(d))
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".to_string()),
            r => parts.push(format!("ℤ^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("ℤ/{d}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// `Z^generators` modulo the row span of `relations`.
pub fn group_from_presentation(
    relations: &IntMatrix,
    generators: usize,
) -> Result<FgAbGroup, AbelianError> {
    if relations.cols() != generators {
        return Err(AbelianError::GeneratorMismatch {
            generators,
            cols: relations.cols(),
        });
    }
    let diag = smith_diagonal(relations);
    let rank = diag.len();
    let factors = diag
        .into_iter()
        .map(|d| d.abs())
        .filter(|d| !d.is_one())
        .collect();
    FgAbGroup::new(generators - rank, factors)
}
