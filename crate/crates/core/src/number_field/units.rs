use std::f64::consts::LN_2;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A unit `(x + y√d) / 2` of a real quadratic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub x: BigInt,
    pub y: BigInt,
    pub norm: i8,
}

impl FundamentalUnit {
    /// `(x² - d y²) / 4`, exact.
    pub fn norm_exact(&self, d: i64) -> BigInt {
        (&self.x * &self.x - BigInt::from(d) * &self.y * &self.y) / 4
    }

    /// `log((x + y√d) / 2)` for a unit greater than one.
    pub fn log(&self, d: i64) -> f64 {
        let bits = self.x.bits().max(self.y.bits());
        let shift = bits.saturating_sub(62);
        let scale = |v: &BigInt| (v >> shift).to_f64().expect("62-bit value");
        let mantissa = scale(&self.x) + scale(&self.y) * (d as f64).sqrt();
        mantissa.ln() + (shift as f64 - 1.0) * LN_2
    }
}

/// Fundamental unit, regulator and unit norm of the real quadratic field of
/// fundamental discriminant `d > 0`.
///
/// Expands `ω = (1 + √d)/2` (d ≡ 1 mod 4) or `ω = √(d/4)` (d ≡ 0 mod 4) as a
/// continued fraction. A unit `η = p - qω'` with `|N(η)| = 1` satisfies
/// `|p/q - ω| < 1/(2q²)`, so the first convergent with unit norm gives the
/// fundamental unit.
pub fn continued_fraction_unit(d: i64) -> (FundamentalUnit, f64, i8) {
    assert!(d > 4, "needs a real quadratic discriminant");
    let one_mod_four = d % 4 == 1;
    // ξ = (P + √D)/Q with Q | D - P²
    let (big_d, mut p, mut q) = if one_mod_four {
        (d, 1i64, 2i64)
    } else {
        (d / 4, 0, 1)
    };
    let s = big_d.sqrt();

    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (p + s).div_euclid(q);
        let h_next = BigInt::from(a) * &h + &h_prev;
        let k_next = BigInt::from(a) * &k + &k_prev;
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);

        let unit = if one_mod_four {
            // p - qω' = (2p - q + q√d) / 2
            FundamentalUnit {
                x: BigInt::from(2) * &h - &k,
                y: k.clone(),
                norm: 0,
            }
        } else {
            // p + q√m = (2p + q√d) / 2
            FundamentalUnit {
                x: BigInt::from(2) * &h,
                y: k.clone(),
                norm: 0,
            }
        };
        let n = unit.norm_exact(d);
        if n.abs().is_one() && unit.x.is_positive() {
            let norm = if n.is_positive() { 1 } else { -1 };
            let unit = FundamentalUnit { norm, ..unit };
            let regulator = unit.log(d);
            return (unit, regulator, norm);
        }

        p = a * q - p;
        q = (big_d - p * p) / q;
    }
}
