//! Weil-étale cohomology of the compactified spectrum of a number ring, as
//! finitely generated abelian groups, and the check that its Euler
//! characteristic against the `ψ`-complex equals `±ζ*_F(0)`.
//!
//! With `r = r1 + r2 - 1`, `h` the class number and `w = |μ(F)|`:
//!
//! | q | `H^q(Ȳ, φ_!Z)` | `H^q(Ȳ, Z)` |
//! |---|----------------|-------------|
//! | 0 | 0              | Z           |
//! | 1 | Z^r            | 0           |
//! | 2 | Z^r ⊕ Cl(F)    | Z^r ⊕ Cl(F) |
//! | 3 | Z/w            | Z/w         |
//!
//! and `H^q = 0` for `q > 3` is taken as a standing assumption. Cup product
//! with `ψ` (log of the idèle norm) sends the place basis of `H^1 ⊗ R` to
//! `f_v(u) = log |u|_v` in the dual unit basis of `H^2 ⊗ R`.

mod report;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_rational::BigRational;
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::exact_determinant::{
    check_exact, euler_characteristic_parts, DeterminantError, GradedGroupComplex, DEFAULT_TOL,
};
use crate::number_field::{field_invariants, Field, QuadraticFieldInvariants};
use crate::zeta::{zeta_star_at_zero, ZetaStarValue};

pub use report::{CohomologyRecord, GroupRecord, ReportRecord, UnitRecord, ZetaRecord};

/// Relative tolerance for `|χ| = h·R/w`.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Fixed facts carried alongside every profile.
pub const PROFILE_METADATA: [&str; 2] = [
    "H^2(W_F, Z) = (C_F^1)^D, the Pontryagin dual of the norm-one idele class group: \
     not finitely generated, not computed",
    "H^q(Ȳ, φ_!Z) = 0 for q > 3 is assumed",
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeilError {
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("the ψ-complex of {field} is not exact")]
    PsiNotExact { field: String },
    #[error(transparent)]
    Determinant(#[from] DeterminantError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyProfile {
    /// `H^0..H^3` with compact support (`φ_!Z`).
    pub compact: [FgAbGroup; 4],
    /// `H^0..H^3` of the constant sheaf `Z`.
    pub open: [FgAbGroup; 4],
    pub metadata: &'static [&'static str],
}

fn h2(inv: &QuadraticFieldInvariants) -> FgAbGroup {
    let torsion = inv
        .class_group
        .clone()
        .unwrap_or_else(|| FgAbGroup::cyclic(inv.h));
    FgAbGroup::free(inv.unit_rank()).direct_sum(&torsion)
}

pub fn compact_support_profile(inv: &QuadraticFieldInvariants) -> [FgAbGroup; 4] {
    [
        FgAbGroup::trivial(),
        FgAbGroup::free(inv.unit_rank()),
        h2(inv),
        FgAbGroup::cyclic(inv.w),
    ]
}

pub fn open_profile(inv: &QuadraticFieldInvariants) -> [FgAbGroup; 4] {
    [
        FgAbGroup::free(1),
        FgAbGroup::trivial(),
        h2(inv),
        FgAbGroup::cyclic(inv.w),
    ]
}

pub fn cohomology_profile(inv: &QuadraticFieldInvariants) -> CohomologyProfile {
    CohomologyProfile {
        compact: compact_support_profile(inv),
        open: open_profile(inv),
        metadata: &PROFILE_METADATA,
    }
}

/// An archimedean place of a field of degree at most two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    /// The real embedding `√d ↦ +√d` (or the only one, for `Q`).
    RealPositive,
    /// The real embedding `√d ↦ -√d`.
    RealConjugate,
    Complex,
}

pub fn archimedean_places(inv: &QuadraticFieldInvariants) -> Vec<Place> {
    match (inv.r1, inv.r2) {
        (1, 0) => vec![Place::RealPositive],
        (2, 0) => vec![Place::RealPositive, Place::RealConjugate],
        _ => vec![Place::Complex],
    }
}

/// `log |ε|_v` for the fundamental unit. The conjugate place uses
/// `|ε ε'| = 1` instead of the cancelling difference `x - y√d`.
fn unit_log(inv: &QuadraticFieldInvariants, place: Place) -> f64 {
    match place {
        Place::RealPositive => inv.regulator,
        Place::RealConjugate => -inv.regulator,
        Place::Complex => unreachable!("imaginary fields have no fundamental unit"),
    }
}

/// How the regulator matrix enters the `ψ`-complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeterminantConvention {
    /// `H^1 ⊗ R -> H^2 ⊗ R` is the matrix `(log |u_j|_v)` itself, so the
    /// graded determinant is `±R^{-1}`.
    Literal,
    /// The inverse matrix is used instead.
    Inverted,
}

impl DeterminantConvention {
    pub fn label(self) -> &'static str {
        match self {
            Self::Literal => "literal: psi matrix (log|u_j|_v), determinant R^-1",
            Self::Inverted => "inverted: psi matrix inverse, determinant R",
        }
    }
}

/// The matrix `(log |u_j|_v)` with the last archimedean place dropped;
/// rows index units, columns index places.
pub fn regulator_matrix(inv: &QuadraticFieldInvariants) -> DMatrix<f64> {
    let r = inv.unit_rank();
    let places = archimedean_places(inv);
    DMatrix::from_fn(r, r, |_unit, place| unit_log(inv, places[place]))
}

pub fn psi_complex(inv: &QuadraticFieldInvariants) -> GradedGroupComplex {
    psi_complex_with(inv, DeterminantConvention::Literal)
}

pub fn psi_complex_with(
    inv: &QuadraticFieldInvariants,
    convention: DeterminantConvention,
) -> GradedGroupComplex {
    let r = inv.unit_rank();
    let m = regulator_matrix(inv);
    let middle = match convention {
        DeterminantConvention::Literal => m,
        DeterminantConvention::Inverted => m.try_inverse().unwrap_or_else(|| DMatrix::zeros(r, r)),
    };
    let maps = vec![DMatrix::zeros(r, 0), middle, DMatrix::zeros(0, r)];
    GradedGroupComplex::new(compact_support_profile(inv).to_vec(), maps)
        .expect("ψ-complex shapes follow the free ranks")
}

/// `Σ_q (-1)^q q · dim(H^q ⊗ R)`, the vanishing order the complex predicts.
pub fn predicted_vanishing_order(complex: &GradedGroupComplex) -> i64 {
    complex
        .realified()
        .dims()
        .iter()
        .enumerate()
        .map(|(q, &d)| {
            let sign = if q % 2 == 0 { 1 } else { -1 };
            sign * q as i64 * d as i64
        })
        .sum()
}

/// Picks the convention under which `χ` reproduces `|ζ*(0)|` for `Q(√5)`,
/// the smallest field with a nontrivial regulator.
pub fn resolve_convention() -> DeterminantConvention {
    static RESOLVED: OnceLock<DeterminantConvention> = OnceLock::new();
    *RESOLVED.get_or_init(|| {
        let field = Field::quadratic(5).expect("5 is fundamental");
        let inv = field_invariants(field);
        let target = zeta_star_at_zero(field).leading.abs();
        let error = |c| {
            euler_characteristic_parts(&psi_complex_with(&inv, c))
                .map(|e| (e.value.abs() / target - 1.0).abs())
                .unwrap_or(f64::INFINITY)
        };
        if error(DeterminantConvention::Literal) <= error(DeterminantConvention::Inverted) {
            DeterminantConvention::Literal
        } else {
            DeterminantConvention::Inverted
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub invariants: QuadraticFieldInvariants,
    pub profile: CohomologyProfile,
    pub psi_dims: Vec<usize>,
    pub chi: f64,
    /// Exact `χ` when the realified complex vanishes.
    pub chi_exact: Option<BigRational>,
    pub zeta_star: ZetaStarValue,
    /// `|χ| / |ζ*(0)|`
    pub ratio: f64,
    /// `| |χ| / (h·R/w) - 1 |`
    pub identity_error: f64,
    pub predicted_order: i64,
    pub convention: DeterminantConvention,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn field(&self) -> Field {
        self.invariants.field
    }

    pub fn relative_error(&self) -> f64 {
        (self.ratio - 1.0).abs()
    }

    pub fn order_matches(&self) -> bool {
        self.predicted_order == self.zeta_star.order as i64
    }
}

pub fn verify_field(field: Field, tol: f64) -> Result<VerificationReport, WeilError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(WeilError::InvalidTolerance(tol));
    }
    let start = Instant::now();
    let invariants = field_invariants(field);
    let profile = cohomology_profile(&invariants);
    let convention = resolve_convention();
    let complex = psi_complex_with(&invariants, convention);
    if !check_exact(complex.realified(), DEFAULT_TOL) {
        return Err(WeilError::PsiNotExact {
            field: field.to_string(),
        });
    }
    let parts = euler_characteristic_parts(&complex)?;
    let chi = parts.value;
    let chi_exact = parts.exact(&complex);
    let zeta_star = zeta_star_at_zero(field);
    let ratio = chi.abs() / zeta_star.leading.abs();
    let identity_error = (chi.abs() / invariants.class_number_quotient() - 1.0).abs();
    let predicted_order = predicted_vanishing_order(&complex);

    let passes = (ratio - 1.0).abs() <= tol
        && predicted_order == zeta_star.order as i64
        && identity_error <= IDENTITY_TOL;
    Ok(VerificationReport {
        psi_dims: complex.realified().dims().to_vec(),
        invariants,
        profile,
        chi,
        chi_exact,
        zeta_star,
        ratio,
        identity_error,
        predicted_order,
        convention,
        tolerance: tol,
        verdict: if passes { Verdict::Pass } else { Verdict::Fail },
        elapsed: start.elapsed(),
    })
}
