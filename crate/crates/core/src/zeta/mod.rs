//! The analytic side: the leading coefficient of the Dedekind zeta function
//! at `s = 0` via `ζ_F = ζ · L(·, χ_d)`, evaluated from Dirichlet
//! L-function values alone. Nothing here reads `h`, `R` or `w`.

mod log_gamma;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::exact_determinant::rational_to_f64;
use crate::number_field::{Field, KroneckerCharacter, NumberFieldError};

pub use log_gamma::ln_gamma;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("character of discriminant {discriminant} is {found}, expected {expected}")]
    WrongParity {
        discriminant: i64,
        expected: &'static str,
        found: &'static str,
    },
    #[error(transparent)]
    Field(#[from] NumberFieldError),
}

/// `ζ(0)`.
pub fn riemann_zeta_at_zero() -> BigRational {
    BigRational::new((-1).into(), 2.into())
}

/// Order of vanishing at `s = 0` and the leading Taylor coefficient there.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaStarValue {
    pub order: u32,
    pub leading: f64,
    /// Exact leading coefficient when it is rational (order zero).
    pub exact: Option<BigRational>,
}

fn parity(chi: &KroneckerCharacter) -> &'static str {
    if chi.is_trivial() {
        "trivial"
    } else if chi.is_odd() {
        "odd"
    } else {
        "even"
    }
}

/// `L(0, χ) = -(1/q) Σ_{a=1}^{q-1} χ(a) a` for odd `χ`.
pub fn l_at_zero(chi: &KroneckerCharacter) -> Result<BigRational, ZetaError> {
    if !chi.is_odd() {
        return Err(ZetaError::WrongParity {
            discriminant: chi.discriminant(),
            expected: "odd",
            found: parity(chi),
        });
    }
    let q = chi.modulus() as i64;
    let sum: i64 = (1..q).map(|a| chi.value(a) as i64 * a).sum();
    Ok(BigRational::new(BigInt::from(-sum), BigInt::from(q)))
}

/// `L'(0, χ) = Σ_{a=1}^{q-1} χ(a) log Γ(a/q)` for even nontrivial `χ`.
pub fn l_prime_at_zero(chi: &KroneckerCharacter) -> Result<f64, ZetaError> {
    if chi.is_odd() || chi.is_trivial() {
        return Err(ZetaError::WrongParity {
            discriminant: chi.discriminant(),
            expected: "even nontrivial",
            found: parity(chi),
        });
    }
    let q = chi.modulus();
    // Neumaier summation: the terms cancel down to a value far below their size.
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    for a in 1..q {
        let c = chi.value(a as i64);
        if c == 0 {
            continue;
        }
        let term = c as f64 * ln_gamma(a as f64 / q as f64);
        let t = sum + term;
        compensation += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
    }
    Ok(sum + compensation)
}

pub fn zeta_star_at_zero(field: Field) -> ZetaStarValue {
    let zeta0 = riemann_zeta_at_zero();
    let chi = KroneckerCharacter::new(field.character_discriminant());
    if chi.is_trivial() {
        return exact_value(zeta0);
    }
    if chi.is_odd() {
        let l0 = l_at_zero(&chi).expect("odd character");
        return exact_value(zeta0 * l0);
    }
    let lp = l_prime_at_zero(&chi).expect("even character");
    let half = rational_to_f64(&zeta0).expect("finite constant");
    ZetaStarValue {
        order: 1,
        leading: half * lp,
        exact: None,
    }
}

/// As [`zeta_star_at_zero`], validating a raw discriminant first.
pub fn zeta_star_for_discriminant(d: i64) -> Result<ZetaStarValue, ZetaError> {
    Ok(zeta_star_at_zero(Field::quadratic(d)?))
}

fn exact_value(q: BigRational) -> ZetaStarValue {
    debug_assert!(!q.is_zero());
    ZetaStarValue {
        order: 0,
        leading: rational_to_f64(&q).expect("small rational"),
        exact: Some(q),
    }
}
