//! Smith normal form by deterministic unimodular elimination.
//!
//! Pivot rule: the nonzero entry of smallest absolute value in the active
//! submatrix, ties broken by row-major position. Elimination first runs on
//! checked `i64` arithmetic and restarts on `BigInt` the moment any entry
//! (including the transforms) would overflow, so results are always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntMatrix;

/// `U * M * V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Nonzero diagonal entries of `D`, in order.
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !Zero::is_zero(x))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.nonzero_diagonal().len()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (d, u, v) = eliminate(m, true);
    let (u, v) = (
        u.expect("transforms requested"),
        v.expect("transforms requested"),
    );
    SnfResult {
        u: from_work(m.rows(), m.rows(), u),
        d: from_work(m.rows(), m.cols(), d),
        v: from_work(m.cols(), m.cols(), v),
    }
}

/// Nonzero Smith diagonal without computing transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let (d, _, _) = eliminate(m, false);
    let cols = m.cols();
    (0..m.rows().min(cols))
        .map(|i| d[i * cols + i].clone())
        .take_while(|x| !Zero::is_zero(x))
        .collect()
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_diagonal(m).len()
}

type Work = Vec<BigInt>;

fn from_work(rows: usize, cols: usize, entries: Work) -> IntMatrix {
    IntMatrix::new(rows, cols, entries).expect("shape preserved by elimination")
}

fn eliminate(m: &IntMatrix, transforms: bool) -> (Work, Option<Work>, Option<Work>) {
    let small: Option<Vec<i64>> = m.entries().iter().map(ToPrimitive::to_i64).collect();
    if let Some(small) = small {
        if let Some(out) = Elimination::<i64>::run(m.rows(), m.cols(), small, transforms) {
            let widen = |v: Vec<i64>| v.into_iter().map(BigInt::from).collect::<Vec<_>>();
            return (widen(out.a), out.u.map(widen), out.v.map(widen));
        }
    }
    let out = Elimination::<BigInt>::run(m.rows(), m.cols(), m.entries().to_vec(), transforms)
        .expect("big integer elimination cannot overflow");
    (out.a, out.u, out.v)
}

trait Entry: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn is_negative(&self) -> bool;
    fn divides(&self, other: &Self) -> bool;
    /// Truncated quotient `self / d`.
    fn quot(&self, d: &Self) -> Option<Self>;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn add(&self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
}

impl Entry for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn divides(&self, other: &Self) -> bool {
        other.checked_rem(*self).is_some_and(|r| r == 0)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        self.checked_add(*b)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn divides(&self, other: &Self) -> bool {
        other.is_multiple_of(self)
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn add(&self, b: &Self) -> Option<Self> {
        Some(self + b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
}

struct Elimination<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    u: Option<Vec<T>>,
    v: Option<Vec<T>>,
}

fn identity<T: Entry>(n: usize) -> Vec<T> {
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = T::one();
    }
    m
}

impl<T: Entry> Elimination<T> {
    fn run(rows: usize, cols: usize, a: Vec<T>, transforms: bool) -> Option<Self> {
        let mut e = Self {
            rows,
            cols,
            a,
            u: transforms.then(|| identity(rows)),
            v: transforms.then(|| identity(cols)),
        };
        for t in 0..rows.min(cols) {
            if !e.diagonalize_step(t)? {
                break;
            }
        }
        e.debug_check_chain();
        Some(e)
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.at(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !x.abs_lt(self.at(bi, bj)) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Returns `Some(false)` when the active submatrix is zero.
    fn diagonalize_step(&mut self, t: usize) -> Option<bool> {
        loop {
            let Some((pi, pj)) = self.pivot(t) else {
                return Some(false);
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..self.rows {
                if self.at(i, t).is_zero() {
                    continue;
                }
                let q = self.at(i, t).quot(self.at(t, t))?;
                self.row_sub(i, t, &q)?;
                clean &= self.at(i, t).is_zero();
            }
            for j in t + 1..self.cols {
                if self.at(t, j).is_zero() {
                    continue;
                }
                let q = self.at(t, j).quot(self.at(t, t))?;
                self.col_sub(j, t, &q)?;
                clean &= self.at(t, j).is_zero();
            }
            if !clean {
                continue;
            }

            let p = self.at(t, t).clone();
            let offender =
                (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !p.divides(self.at(i, j))));
            match offender {
                Some(i) => self.row_add(t, i)?,
                None => {
                    if p.is_negative() {
                        self.row_neg(t)?;
                    }
                    return Some(true);
                }
            }
        }
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            self.a.swap(r1 * c + j, r2 * c + j);
        }
        if let Some(u) = self.u.as_mut() {
            let n = self.rows;
            for j in 0..n {
                u.swap(r1 * n + j, r2 * n + j);
            }
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 == c2 {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            self.a.swap(i * c + c1, i * c + c2);
        }
        if let Some(v) = self.v.as_mut() {
            for i in 0..c {
                v.swap(i * c + c1, i * c + c2);
            }
        }
    }

    /// row[target] -= q * row[source]
    fn row_sub(&mut self, target: usize, source: usize, q: &T) -> Option<()> {
        let c = self.cols;
        for j in 0..c {
            let s = &self.a[source * c + j];
            if s.is_zero() {
                continue;
            }
            self.a[target * c + j] = self.a[target * c + j].sub_mul(q, s)?;
        }
        if let Some(u) = self.u.as_mut() {
            let n = self.rows;
            for j in 0..n {
                let s = &u[source * n + j];
                if !s.is_zero() {
                    u[target * n + j] = u[target * n + j].sub_mul(q, s)?;
                }
            }
        }
        Some(())
    }

    /// col[target] -= q * col[source]
    fn col_sub(&mut self, target: usize, source: usize, q: &T) -> Option<()> {
        let c = self.cols;
        for i in 0..self.rows {
            let s = &self.a[i * c + source];
            if s.is_zero() {
                continue;
            }
            self.a[i * c + target] = self.a[i * c + target].sub_mul(q, s)?;
        }
        if let Some(v) = self.v.as_mut() {
            for i in 0..c {
                let s = &v[i * c + source];
                if !s.is_zero() {
                    v[i * c + target] = v[i * c + target].sub_mul(q, s)?;
                }
            }
        }
        Some(())
    }

    /// row[target] += row[source]
    fn row_add(&mut self, target: usize, source: usize) -> Option<()> {
        let c = self.cols;
        for j in 0..c {
            self.a[target * c + j] = self.a[target * c + j].add(&self.a[source * c + j])?;
        }
        if let Some(u) = self.u.as_mut() {
            let n = self.rows;
            for j in 0..n {
                u[target * n + j] = u[target * n + j].add(&u[source * n + j])?;
            }
        }
        Some(())
    }

    fn row_neg(&mut self, r: usize) -> Option<()> {
        let c = self.cols;
        for j in 0..c {
            self.a[r * c + j] = self.a[r * c + j].neg()?;
        }
        if let Some(u) = self.u.as_mut() {
            let n = self.rows;
            for j in 0..n {
                u[r * n + j] = u[r * n + j].neg()?;
            }
        }
        Some(())
    }

    fn debug_check_chain(&self) {
        let k = self.rows.min(self.cols);
        debug_assert!((1..k).all(|i| {
            let prev = self.at(i - 1, i - 1);
            let cur = self.at(i, i);
            cur.is_zero() || (!prev.is_zero() && prev.divides(cur))
        }));
    }
}
