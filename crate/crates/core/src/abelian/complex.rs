use num_traits::One;

use super::snf::smith_diagonal;
use super::{AbelianError, FgAbGroup, IntMatrix};

/// Cochain complex of free abelian groups `Z^dims[0] -> Z^dims[1] -> ...`.
///
/// `boundaries[p]` is a `dims[p + 1] x dims[p]` matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    dims: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl CochainComplex {
    /// Checks shapes only; see [`CochainComplex::validate`] for `d∘d = 0`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<IntMatrix>) -> Result<Self, AbelianError> {
        if dims.is_empty() {
            if !boundaries.is_empty() {
                return Err(AbelianError::BoundaryCount {
                    degrees: 0,
                    boundaries: boundaries.len(),
                });
            }
        } else if boundaries.len() != dims.len() - 1 {
            return Err(AbelianError::BoundaryCount {
                degrees: dims.len(),
                boundaries: boundaries.len(),
            });
        }
        for (p, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[p + 1] || b.cols() != dims[p] {
                return Err(AbelianError::BoundaryShape {
                    degree: p,
                    expected: (dims[p + 1], dims[p]),
                    found: (b.rows(), b.cols()),
                });
            }
        }
        Ok(Self { dims, boundaries })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    /// Index of the top degree, or `None` for the empty complex.
    pub fn top_degree(&self) -> Option<usize> {
        self.dims.len().checked_sub(1)
    }

    /// Checks that `boundaries[p + 1] * boundaries[p] = 0` at degree `p`.
    pub fn check_composition_at(&self, p: usize) -> Result<(), AbelianError> {
        if p + 1 >= self.boundaries.len() {
            return Ok(());
        }
        let comp = self.boundaries[p + 1].mul(&self.boundaries[p])?;
        if comp.is_zero() {
            Ok(())
        } else {
            Err(AbelianError::MalformedComplex { degree: p })
        }
    }

    pub fn validate(&self) -> Result<(), AbelianError> {
        (0..self.boundaries.len()).try_for_each(|p| self.check_composition_at(p))
    }

    /// Applies `g_p ↦ P_p g_p` in every degree: each boundary becomes
    /// `P_{p+1} B_p P_p^{-1}`. Callers supply the pairs `(P_p, P_p^{-1})`.
    pub fn change_basis(&self, bases: &[(IntMatrix, IntMatrix)]) -> Result<Self, AbelianError> {
        if bases.len() != self.dims.len() {
            return Err(AbelianError::BoundaryCount {
                degrees: self.dims.len(),
                boundaries: bases.len(),
            });
        }
        let boundaries = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(p, b)| bases[p + 1].0.mul(b)?.mul(&bases[p].1))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.dims.clone(), boundaries)
    }
}

/// `ker(boundaries[q]) / im(boundaries[q - 1])`, with the off-end maps zero.
///
/// The kernel of an integer matrix is a saturated sublattice, so the torsion
/// of the quotient is exactly the non-unit Smith diagonal of the incoming
/// boundary, and the free rank is `dim ker - rank(incoming)`.
pub fn complex_cohomology(c: &CochainComplex, q: usize) -> Result<FgAbGroup, AbelianError> {
    let top = c.top_degree().ok_or(AbelianError::DegreeOutOfRange {
        degree: q,
        top: None,
    })?;
    if q > top {
        return Err(AbelianError::DegreeOutOfRange {
            degree: q,
            top: Some(top),
        });
    }
    if q > 0 {
        c.check_composition_at(q - 1)?;
    }
    let outgoing_rank = c
        .boundaries
        .get(q)
        .map(|b| smith_diagonal(b).len())
        .unwrap_or(0);
    let incoming = match q.checked_sub(1) {
        Some(p) => smith_diagonal(&c.boundaries[p]),
        None => Vec::new(),
    };
    let kernel_dim = c.dims[q] - outgoing_rank;
    let torsion = incoming.iter().filter(|d| !d.is_one()).cloned().collect();
    FgAbGroup::new(kernel_dim - incoming.len(), torsion)
}
