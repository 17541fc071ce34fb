use std::f64::consts::PI;

/// Below this argument the recurrence `Γ(x+1) = xΓ(x)` shifts upward first.
const STIRLING_START: f64 = 15.0;

/// `B_{2k} / (2k (2k - 1))` for k = 1..=8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn stirling(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut power = inv;
    for c in STIRLING_COEFFS {
        series += c * power;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series
}

/// `log Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma needs a positive argument, got {x}");
    if x >= STIRLING_START {
        return stirling(x);
    }
    let shift = (STIRLING_START - x).ceil();
    let mut product = 1.0;
    let mut k = 0.0;
    while k < shift {
        product *= x + k;
        k += 1.0;
    }
    stirling(x + shift) - product.ln()
}
