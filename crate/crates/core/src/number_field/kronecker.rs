/// The Kronecker symbol `(a / n)`.
pub fn kronecker_symbol(a: i64, n: u64) -> i8 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let a = a as i128;
    let twos = n.trailing_zeros();
    if twos > 0 && a % 2 == 0 {
        return 0;
    }
    let mut result: i8 = 1;
    if twos % 2 == 1 {
        // (a/2) for odd a depends on a mod 8
        if matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    let odd = (n >> twos) as i128;
    result * jacobi(a.rem_euclid(odd), odd)
}

/// Jacobi symbol `(a / n)` for odd `n > 0` and `0 <= a < n`.
fn jacobi(mut a: i128, mut n: i128) -> i8 {
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// The real character `χ_d(a) = (d / a)` modulo `|d|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerCharacter {
    discriminant: i64,
    values: Vec<i8>,
}

impl KroneckerCharacter {
    /// The trivial character for `d = 1`, otherwise the table `χ_d(0..|d|)`.
    pub fn new(discriminant: i64) -> Self {
        let q = discriminant.unsigned_abs();
        let values = (0..q).map(|a| kronecker_symbol(discriminant, a)).collect();
        Self {
            discriminant,
            values,
        }
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn modulus(&self) -> u64 {
        self.discriminant.unsigned_abs()
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn value(&self, a: i64) -> i8 {
        self.values[a.rem_euclid(self.modulus() as i64) as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus() == 1
    }

    /// `χ(-1) = -1`.
    pub fn is_odd(&self) -> bool {
        !self.is_trivial() && self.value(-1) == -1
    }

    pub fn is_even(&self) -> bool {
        !self.is_odd()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(kronecker_symbol(-4, 2), 0);
        assert_eq!(kronecker_symbol(5, 4), 1);
        assert_eq!(kronecker_symbol(-4, 3), -1);
    }

    #[test]
    fn small_values() {
        assert_eq!(kronecker_symbol(5, 2), -1);
        assert_eq!(kronecker_symbol(8, 3), -1);
        assert_eq!(kronecker_symbol(8, 7), 1);
        assert_eq!(kronecker_symbol(-3, 2), -1);
        assert_eq!(kronecker_symbol(-7, 2), 1);
        assert_eq!(kronecker_symbol(1, 0), 1);
        assert_eq!(kronecker_symbol(5, 0), 0);
        assert_eq!(kronecker_symbol(12, 1), 1);
    }

    fn pow_mod(mut b: i64, mut e: i64, m: i64) -> i64 {
        let mut r = 1;
        b = b.rem_euclid(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        r
    }

    #[test]
    fn euler_criterion() {
        let primes = (3..100i64).filter(|&p| (2..p).all(|k| p % k != 0));
        for p in primes {
            for d in [-3i64, -4, -7, -8, -23, 5, 8, 12, 13, 21, 24, 28, -84, 209] {
                if d % p == 0 {
                    continue;
                }
                let e = pow_mod(d, (p - 1) / 2, p);
                let expected = if e == 1 { 1 } else { -1 };
                assert_eq!(kronecker_symbol(d, p as u64), expected, "({d}/{p})");
            }
        }
    }

    #[test]
    fn character_parity_and_support() {
        for d in [-3i64, -4, -8, -23, 5, 8, 12, 13, -84] {
            let chi = KroneckerCharacter::new(d);
            assert_eq!(chi.is_odd(), d < 0);
            let q = chi.modulus() as i64;
            for a in 0..q {
                let g = num_integer::gcd(a, q);
                assert_eq!(chi.value(a) == 0, g > 1, "d={d} a={a}");
            }
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(chi.value(a * b), chi.value(a) * chi.value(b));
                }
            }
        }
        assert!(KroneckerCharacter::new(1).is_trivial());
    }
}
