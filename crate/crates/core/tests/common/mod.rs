//! Oracles and generators shared by the integration tests. Nothing here
//! calls into the library routines it is used to check.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::Rng;
use weil_euler::abelian::IntMatrix;
use weil_euler::exact_determinant::{BasedRealComplex, BasisChoice};
use weil_euler::group_cohomology::FiniteGroup;

// ---------------------------------------------------------------- integers

/// A random unimodular matrix and its inverse, from elementary operations.
pub fn unimodular(n: usize, steps: usize, rng: &mut StdRng) -> (IntMatrix, IntMatrix) {
    let mut p: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    let mut q = p.clone();
    if n == 0 {
        return (to_int(&p, 0), to_int(&q, 0));
    }
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        match rng.random_range(0..3) {
            // row_i += c row_j on P; col_j -= c col_i on P^{-1}
            0 if i != j => {
                let c = rng.random_range(-2i64..=2);
                for k in 0..n {
                    p[i][k] += c * p[j][k];
                }
                for row in q.iter_mut() {
                    row[j] -= c * row[i];
                }
            }
            1 => {
                p.swap(i, j);
                for row in q.iter_mut() {
                    row.swap(i, j);
                }
            }
            _ => {
                for k in 0..n {
                    p[i][k] = -p[i][k];
                }
                for row in q.iter_mut() {
                    row[i] = -row[i];
                }
            }
        }
    }
    (to_int(&p, n), to_int(&q, n))
}

pub fn to_int(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_rows(cols, rows).unwrap()
}

pub fn to_real(m: &IntMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        i64::try_from(m.get(i, j)).expect("small entries") as f64
    })
}

pub fn int_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| i64::try_from(m.get(i, j)).unwrap())
                .collect()
        })
        .collect()
}

/// Each factor exceeds 1 and divides the next.
pub fn is_chain(factors: &[BigInt]) -> bool {
    factors.iter().all(|d| *d > BigInt::from(1))
        && factors
            .windows(2)
            .all(|w| (&w[1] % &w[0]) == BigInt::from(0))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

// ---------------------------------------------------------------- groups

/// `|G / [G, G]|` by closing the set of commutators under multiplication.
pub fn abelianization_order(g: &FiniteGroup) -> usize {
    let n = g.order();
    let mut inside = vec![false; n];
    inside[g.identity()] = true;
    let mut members = vec![g.identity()];
    for a in 0..n {
        for b in 0..n {
            let c = g.mul(g.mul(a, b), g.mul(g.inverse(a), g.inverse(b)));
            if !inside[c] {
                inside[c] = true;
                members.push(c);
            }
        }
    }
    let mut i = 0;
    while i < members.len() {
        for j in 0..members.len() {
            let c = g.mul(members[i], members[j]);
            if !inside[c] {
                inside[c] = true;
                members.push(c);
            }
        }
        i += 1;
    }
    n / members.len()
}

// ---------------------------------------------------------------- real complexes

/// Random matrix with entries in `[-1, 1]` pushed towards the identity, with
/// random column signs so both orientations occur.
pub fn random_invertible(n: usize, rng: &mut StdRng) -> DMatrix<f64> {
    let mut m = DMatrix::from_fn(n, n, |i, j| {
        rng.random_range(-1.0..1.0) + if i == j { 2.5 } else { 0.0 }
    });
    for j in 0..n {
        if rng.random_bool(0.5) {
            m.column_mut(j).neg_mut();
        }
    }
    m
}

/// An exact complex whose `k`-th map has rank `ranks[k]`, with generic bases.
pub fn random_exact_complex(ranks: &[usize], rng: &mut StdRng) -> BasedRealComplex {
    random_exact_complex_with_det(ranks, rng).0
}

fn det(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        1.0
    } else {
        m.clone().lu().determinant()
    }
}

/// As [`random_exact_complex`], also returning `|δ|` known from the
/// construction: in adapted coordinates the `k`-th map is an invertible block
/// `A_k`, giving `Π |det A_k|^{(-1)^k}`, and moving to the basis `Q_k` of
/// `V_k` contributes `|det Q_k|^{-(-1)^k}`.
pub fn random_exact_complex_with_det(ranks: &[usize], rng: &mut StdRng) -> (BasedRealComplex, f64) {
    let m = ranks.len();
    let before = |k: usize| if k == 0 { 0 } else { ranks[k - 1] };
    let dims: Vec<usize> = (0..=m)
        .map(|k| before(k) + ranks.get(k).copied().unwrap_or(0))
        .collect();
    let bases: Vec<DMatrix<f64>> = dims.iter().map(|&n| random_invertible(n, rng)).collect();
    let mut expected = 1.0f64;
    for (k, q) in bases.iter().enumerate() {
        let d = det(q).abs();
        expected *= if k % 2 == 0 { 1.0 / d } else { d };
    }
    let maps = (0..m)
        .map(|k| {
            let r = ranks[k];
            let mut adapted = DMatrix::zeros(dims[k + 1], dims[k]);
            let block = random_invertible(r, rng);
            let d = det(&block).abs();
            expected *= if k % 2 == 0 { d } else { 1.0 / d };
            adapted.view_mut((0, before(k)), (r, r)).copy_from(&block);
            let inv = bases[k].clone().try_inverse().unwrap();
            &bases[k + 1] * adapted * inv
        })
        .collect();
    (BasedRealComplex::new(dims, maps).unwrap(), expected)
}

/// Random but legitimate internal choices: an invertible recombination of
/// the image basis and arbitrary image-valued shifts of the lifts.
pub struct RandomChoice<'a> {
    pub rng: &'a mut StdRng,
}

impl BasisChoice for RandomChoice<'_> {
    fn image_basis(&mut self, canonical: &DMatrix<f64>) -> DMatrix<f64> {
        let k = canonical.ncols();
        canonical * random_invertible(k, self.rng)
    }

    fn lift_shift(&mut self, r: usize, s: usize) -> DMatrix<f64> {
        DMatrix::from_fn(r, s, |_, _| self.rng.random_range(-3.0..3.0))
    }
}

pub fn relative_error(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

// ---------------------------------------------------------------- zeta

/// `B_{2k}` for k = 1..=8.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

const EM_TERMS: usize = 40;

/// Hurwitz zeta `ζ(s, a)` for real `s != 1`, `a > 0`, by Euler-Maclaurin
/// summation after `EM_TERMS` direct terms.
pub fn hurwitz(s: f64, a: f64) -> f64 {
    let x = EM_TERMS as f64 + a;
    let mut sum: f64 = (0..EM_TERMS).map(|n| (n as f64 + a).powf(-s)).sum();
    sum += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // B_{2k}/(2k)! * s(s+1)...(s+2k-2) * x^{-s-2k+1}
    let mut rising = s;
    let mut factorial = 2.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = k + 1;
        sum += b / factorial * rising * x.powf(-s - 2.0 * k as f64 + 1.0);
        rising *= (s + 2.0 * k as f64 - 1.0) * (s + 2.0 * k as f64);
        factorial *= (2.0 * k as f64 + 1.0) * (2.0 * k as f64 + 2.0);
    }
    sum
}

/// `∂_s ζ(s, a)` at `s = 0`, differentiating the Euler-Maclaurin expansion
/// term by term.
pub fn hurwitz_derivative_at_zero(a: f64) -> f64 {
    let x = EM_TERMS as f64 + a;
    let mut sum: f64 = -(0..EM_TERMS).map(|n| (n as f64 + a).ln()).sum::<f64>();
    sum += x * x.ln() - x - 0.5 * x.ln();
    // d/ds of s(s+1)...(s+2k-2) at 0 is (2k-2)!
    for (k, b) in BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        sum += b / (2.0 * k * (2.0 * k - 1.0)) * x.powf(1.0 - 2.0 * k);
    }
    sum
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// `(d / n)` for `n >= 1` by factoring `n`: Euler's criterion at odd primes
/// and the mod-8 rule at 2.
pub fn kronecker_oracle(d: i64, n: u64) -> i64 {
    let mut n = n;
    let mut value = 1i64;
    let mut p = 2u64;
    while n > 1 {
        if p * p > n {
            p = n;
        }
        while n.is_multiple_of(p) {
            n /= p;
            value *= if p == 2 {
                match d.rem_euclid(8) {
                    1 | 7 => 1,
                    3 | 5 => -1,
                    _ => 0,
                }
            } else {
                let r = pow_mod(d.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
                if r == 0 {
                    0
                } else if r == 1 {
                    1
                } else {
                    -1
                }
            };
        }
        p += 1;
    }
    value
}

/// `L(0, χ_d)` and `L'(0, χ_d)` from `L(s, χ) = q^{-s} Σ χ(a) ζ(s, a/q)`.
pub fn l_values_by_hurwitz(d: i64) -> (f64, f64) {
    let q = d.unsigned_abs();
    let mut l0 = 0.0;
    let mut l0_prime = 0.0;
    for a in 1..q {
        let c = kronecker_oracle(d, a) as f64;
        if c == 0.0 {
            continue;
        }
        let x = a as f64 / q as f64;
        let z = hurwitz(0.0, x);
        l0 += c * z;
        l0_prime += c * (hurwitz_derivative_at_zero(x) - (q as f64).ln() * z);
    }
    (l0, l0_prime)
}

/// `L'(0, χ_d) = -1/2 Σ χ(a) log sin(π a / d)` for `d > 0`, from pairing
/// `a` with `d - a` in the log-gamma sum.
pub fn l_prime_by_sines(d: i64) -> f64 {
    assert!(d > 0);
    let q = d as u64;
    -0.5 * (1..q)
        .map(|a| {
            kronecker_oracle(d, a) as f64 * (std::f64::consts::PI * a as f64 / q as f64).sin().ln()
        })
        .sum::<f64>()
}

/// Squarefree-part test used to rebuild the fundamental discriminant list.
pub fn is_fundamental_oracle(d: i64) -> bool {
    let squarefree = |m: i64| {
        let m = m.abs();
        (2..).take_while(|p| p * p <= m).all(|p| m % (p * p) != 0)
    };
    if d == 1 || d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

/// Number of distinct prime divisors.
pub fn omega(n: u64) -> usize {
    let mut n = n;
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            count += 1;
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    count + (n > 1) as usize
}
