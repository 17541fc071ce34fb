//! Classical invariants of `Q` and of quadratic fields, computed without
//! any reference to zeta values: signature, roots of unity, class number
//! from reduced binary forms, and the fundamental unit from continued
//! fractions.

mod forms;
mod kronecker;
mod units;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::FgAbGroup;

pub use forms::{
    class_group_structure, compose, count_cycles, count_cycles_union_find,
    count_definite_by_b_sweep, principal_form, reduced_definite_forms, reduced_indefinite_forms,
    Form,
};
pub use kronecker::{kronecker_symbol, KroneckerCharacter};
pub use units::{continued_fraction_unit, FundamentalUnit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberFieldError {
    #[error("{value} is not a fundamental discriminant: {reason}")]
    NotFundamental { value: i64, reason: String },
    #[error("cannot parse field `{0}`: expected `Q` or an integer discriminant")]
    Parse(String),
}

/// A validated fundamental discriminant of a quadratic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self, NotFundamentalReason> {
        fundamental_check(d).map(|()| Self(d))
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 > 0
    }
}

impl TryFrom<i64> for Discriminant {
    type Error = NumberFieldError;

    fn try_from(d: i64) -> Result<Self, Self::Error> {
        Discriminant::new(d).map_err(|r| NumberFieldError::NotFundamental {
            value: d,
            reason: r.to_string(),
        })
    }
}

impl From<Discriminant> for i64 {
    fn from(d: Discriminant) -> i64 {
        d.0
    }
}

/// Why an integer fails to be a fundamental discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotFundamentalReason {
    Degenerate,
    BadResidue,
    SquareFactor(i64),
    BadCofactorResidue,
    SquareCofactor(i64),
}

impl fmt::Display for NotFundamentalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Degenerate => write!(f, "0 and 1 are not quadratic discriminants"),
            Self::BadResidue => write!(f, "d ≡ 2 or 3 mod 4"),
            Self::SquareFactor(p) => write!(f, "d ≡ 1 mod 4 but divisible by {p}²"),
            Self::BadCofactorResidue => write!(f, "d = 4m with m ≡ 0 or 1 mod 4"),
            Self::SquareCofactor(p) => write!(f, "d = 4m with m divisible by {p}²"),
        }
    }
}

fn square_factor(n: i64) -> Option<i64> {
    let n = n.unsigned_abs();
    (2..)
        .take_while(|p| p * p <= n)
        .find(|p| n.is_multiple_of(p * p))
        .map(|p| p as i64)
}

fn fundamental_check(d: i64) -> Result<(), NotFundamentalReason> {
    if d == 0 || d == 1 {
        return Err(NotFundamentalReason::Degenerate);
    }
    match d.rem_euclid(4) {
        1 => match square_factor(d) {
            Some(p) => Err(NotFundamentalReason::SquareFactor(p)),
            None => Ok(()),
        },
        0 => {
            let m = d / 4;
            if !matches!(m.rem_euclid(4), 2 | 3) {
                return Err(NotFundamentalReason::BadCofactorResidue);
            }
            match square_factor(m) {
                Some(p) => Err(NotFundamentalReason::SquareCofactor(p)),
                None => Ok(()),
            }
        }
        _ => Err(NotFundamentalReason::BadResidue),
    }
}

pub fn is_fundamental(d: i64) -> bool {
    fundamental_check(d).is_ok()
}

/// `Q` itself or a quadratic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Quadratic(Discriminant),
}

impl Field {
    pub fn quadratic(d: i64) -> Result<Self, NumberFieldError> {
        Discriminant::try_from(d).map(Field::Quadratic)
    }

    /// Discriminant of the attached Kronecker character (`1` for `Q`).
    pub fn character_discriminant(self) -> i64 {
        match self {
            Field::Rational => 1,
            Field::Quadratic(d) => d.value(),
        }
    }

    pub fn degree(self) -> u32 {
        match self {
            Field::Rational => 1,
            Field::Quadratic(_) => 2,
        }
    }

    /// Report order: `Q` first, then by `|d|`, negative before positive.
    pub fn sort_key(self) -> (u64, i64) {
        match self {
            Field::Rational => (0, 0),
            Field::Quadratic(d) => (d.value().unsigned_abs(), d.value()),
        }
    }

    /// `Q` followed by every fundamental discriminant with `|d| <= bound`.
    pub fn corpus(bound: u64) -> Vec<Field> {
        let bound = bound as i64;
        let mut out = vec![Field::Rational];
        for n in 3..=bound {
            for d in [-n, n] {
                if let Ok(d) = Discriminant::new(d) {
                    out.push(Field::Quadratic(d));
                }
            }
        }
        out
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Quadratic(d) => write!(f, "{}", d.value()),
        }
    }
}

impl FromStr for Field {
    type Err = NumberFieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let d: i64 = s
            .parse()
            .map_err(|_| NumberFieldError::Parse(s.to_string()))?;
        Field::quadratic(d)
    }
}

/// The invariants consumed by the Euler characteristic.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticFieldInvariants {
    pub field: Field,
    pub r1: u32,
    pub r2: u32,
    /// Order of the group of roots of unity.
    pub w: u64,
    pub h: u64,
    /// Number of cycles of reduced indefinite forms (real fields only).
    pub narrow_h: Option<u64>,
    pub fundamental_unit: Option<FundamentalUnit>,
    /// `log ε`; `1` when the unit rank is zero.
    pub regulator: f64,
    /// Class group structure when composition of forms provides it.
    pub class_group: Option<FgAbGroup>,
}

impl QuadraticFieldInvariants {
    pub fn unit_rank(&self) -> usize {
        (self.r1 + self.r2 - 1) as usize
    }

    pub fn unit_norm(&self) -> Option<i8> {
        self.fundamental_unit.as_ref().map(|u| u.norm)
    }

    /// `h·R/w`.
    pub fn class_number_quotient(&self) -> f64 {
        self.h as f64 * self.regulator / self.w as f64
    }
}

pub fn enumerate_reduced_forms(d: Discriminant) -> u64 {
    let d = d.value();
    if d < 0 {
        reduced_definite_forms(d).len() as u64
    } else {
        count_cycles(d)
    }
}

pub fn field_invariants(field: Field) -> QuadraticFieldInvariants {
    let d = match field {
        Field::Rational => {
            return QuadraticFieldInvariants {
                field,
                r1: 1,
                r2: 0,
                w: 2,
                h: 1,
                narrow_h: None,
                fundamental_unit: None,
                regulator: 1.0,
                class_group: Some(FgAbGroup::trivial()),
            }
        }
        Field::Quadratic(d) => d,
    };
    if d.is_real() {
        let narrow = enumerate_reduced_forms(d);
        let (unit, regulator, norm) = continued_fraction_unit(d.value());
        let h = if norm == 1 { narrow / 2 } else { narrow };
        QuadraticFieldInvariants {
            field,
            r1: 2,
            r2: 0,
            w: 2,
            h,
            narrow_h: Some(narrow),
            fundamental_unit: Some(unit),
            regulator,
            class_group: None,
        }
    } else {
        let w = match d.value() {
            -3 => 6,
            -4 => 4,
            _ => 2,
        };
        QuadraticFieldInvariants {
            field,
            r1: 0,
            r2: 1,
            w,
            h: enumerate_reduced_forms(d),
            narrow_h: None,
            fundamental_unit: None,
            regulator: 1.0,
            class_group: Some(class_group_structure(d.value())),
        }
    }
}
