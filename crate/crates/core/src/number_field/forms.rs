//! Binary quadratic forms `(a, b, c) = ax² + bxy + cy²` of discriminant
//! `b² - 4ac`: reduced-form class numbers, cycles of reduced indefinite
//! forms, and composition of positive definite forms.

use std::collections::HashMap;

use num_integer::{Integer, Roots};

use crate::abelian::{group_from_presentation, FgAbGroup, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `|b| <= a <= c`, with `b >= 0` if `|b| = a` or `a = c`.
    pub fn is_reduced_definite(&self) -> bool {
        let Form { a, b, c } = *self;
        a > 0 && b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    /// Reduction of a positive definite form.
    pub fn reduce_definite(self) -> Self {
        let mut f = self.normalize();
        while f.a > f.c {
            f = Form::new(f.c, -f.b, f.a).normalize();
        }
        if f.a == f.c && f.b < 0 {
            f.b = -f.b;
        }
        f
    }

    /// Moves `b` into `(-a, a]` by `x -> x + ry`.
    fn normalize(self) -> Self {
        let Form { a, b, c } = self;
        let r = Integer::div_floor(&(a - b), &(2 * a));
        Form::new(a, b + 2 * r * a, a * r * r + b * r + c)
    }

    pub fn inverse(self) -> Self {
        Form::new(self.a, -self.b, self.c).reduce_definite()
    }

    /// `0 < b < √d` and `√d - b < 2|a| < √d + b`, for `d > 0` non-square.
    pub fn is_reduced_indefinite(&self) -> bool {
        let d = self.discriminant();
        let Form { a, b, .. } = *self;
        if d <= 0 || a == 0 || b <= 0 || b * b >= d {
            return false;
        }
        let two_a = 2 * a.abs();
        let lower = (two_a + b) * (two_a + b) > d;
        let upper = two_a - b <= 0 || (two_a - b) * (two_a - b) < d;
        lower && upper
    }

    /// The cycle step `(a, b, c) -> (c, b*, (b*² - d) / 4c)` with `b* ≡ -b mod 2|c|`
    /// and `√d - 2|c| < b* < √d`. This is a proper equivalence.
    pub fn rho(&self) -> Self {
        let d = self.discriminant();
        let s = d.sqrt();
        let m = 2 * self.c.abs();
        let b = -self.b + m * Integer::div_floor(&(s + self.b), &m);
        Form::new(self.c, b, (b * b - d) / (4 * self.c))
    }
}

/// All reduced positive definite forms of discriminant `d < 0`, swept by `a`.
pub fn reduced_definite_forms(d: i64) -> Vec<Form> {
    assert!(d < 0);
    let mut out = Vec::new();
    let a_max = (-d / 3).sqrt();
    for a in 1..=a_max {
        for b in (-a + 1)..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = Form::new(a, b, num / (4 * a));
            if f.is_reduced_definite() {
                out.push(f);
            }
        }
    }
    out
}

/// Recount of reduced definite forms, swept by `b` over the factorizations
/// `ac = (b² - d) / 4`.
pub fn count_definite_by_b_sweep(d: i64) -> u64 {
    assert!(d < 0);
    let mut count = 0;
    let b_max = (-d / 3).sqrt();
    let mut b = d.rem_euclid(2);
    while b <= b_max {
        let n = (b * b - d) / 4;
        let mut a = b.max(1);
        while a * a <= n {
            if n % a == 0 {
                let c = n / a;
                // b and -b are both reduced unless b = 0, b = a or a = c
                count += if b == 0 || b == a || a == c { 1 } else { 2 };
            }
            a += 1;
        }
        b += 2;
    }
    count
}

/// All reduced indefinite forms of discriminant `d > 0`, swept by `b` then `a`.
pub fn reduced_indefinite_forms(d: i64) -> Vec<Form> {
    assert!(d > 0);
    let s = d.sqrt();
    let mut out = Vec::new();
    for b in 1..=s {
        if (b * b - d) % 4 != 0 {
            continue;
        }
        let ac = (b * b - d) / 4;
        for abs_a in 1..=ac.abs() {
            if ac % abs_a != 0 {
                continue;
            }
            for a in [abs_a, -abs_a] {
                let f = Form::new(a, b, ac / a);
                if f.is_reduced_indefinite() {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Number of `rho`-cycles of reduced indefinite forms, which is the narrow class number.
pub fn count_cycles(d: i64) -> u64 {
    let forms = reduced_indefinite_forms(d);
    let mut seen = std::collections::HashSet::new();
    let mut cycles = 0;
    for &f in &forms {
        if !seen.insert(f) {
            continue;
        }
        cycles += 1;
        let mut g = f.rho();
        while g != f {
            debug_assert!(g.is_reduced_indefinite());
            seen.insert(g);
            g = g.rho();
        }
    }
    cycles
}

/// Recount of the cycles with a different sweep (`a` outermost) and a
/// union-find over single `rho` steps.
pub fn count_cycles_union_find(d: i64) -> u64 {
    let s = d.sqrt();
    let mut forms = Vec::new();
    for abs_a in 1..=s {
        for a in [-abs_a, abs_a] {
            for b in (1..=s).rev() {
                let num = b * b - d;
                if num % (4 * a) != 0 {
                    continue;
                }
                let f = Form::new(a, b, num / (4 * a));
                if f.is_reduced_indefinite() {
                    forms.push(f);
                }
            }
        }
    }
    let index: HashMap<Form, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut parent: Vec<usize> = (0..forms.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, f) in forms.iter().enumerate() {
        let j = index[&f.rho()];
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
        }
    }
    (0..forms.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count() as u64
}

/// Composition of primitive positive definite forms of equal discriminant,
/// followed by reduction.
pub fn compose(f1: Form, f2: Form) -> Form {
    let d = f1.discriminant();
    debug_assert_eq!(d, f2.discriminant());
    let (f1, f2) = if f1.a > f2.a { (f2, f1) } else { (f1, f2) };
    let s = (f1.b + f2.b) / 2;
    let n = f2.b - s;
    let (y1, dd) = if f2.a % f1.a == 0 {
        (0, f1.a)
    } else {
        let e = f2.a.extended_gcd(&f1.a);
        (e.x, e.gcd)
    };
    let (x2, y2, d1) = if s % dd == 0 {
        (0, -1, dd)
    } else {
        let e = s.extended_gcd(&dd);
        (e.x, -e.y, e.gcd)
    };
    let v1 = f1.a / d1;
    let v2 = f2.a / d1;
    let r = (y1 as i128 * y2 as i128 * n as i128 - x2 as i128 * f2.c as i128).rem_euclid(v1 as i128)
        as i64;
    let b3 = f2.b + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (b3 * b3 - d) / (4 * a3);
    Form::new(a3, b3, c3).reduce_definite()
}

pub fn principal_form(d: i64) -> Form {
    let b = d.rem_euclid(2);
    Form::new(1, b, (b * b - d) / 4)
}

/// Class group of discriminant `d < 0` from the regular presentation
/// `[f] + [g] = [f∘g]` over all reduced forms.
pub fn class_group_structure(d: i64) -> FgAbGroup {
    let forms = reduced_definite_forms(d);
    let index: HashMap<Form, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let h = forms.len();
    let mut relations = Vec::with_capacity(h * h);
    for (i, &f) in forms.iter().enumerate() {
        for (j, &g) in forms.iter().enumerate().skip(i) {
            let k = index[&compose(f, g)];
            let mut row = vec![0i64; h];
            row[i] += 1;
            row[j] += 1;
            row[k] -= 1;
            relations.push(row);
        }
    }
    let m = IntMatrix::from_rows(h, &relations).expect("rows have h entries");
    group_from_presentation(&m, h).expect("presentation has h generators")
}
