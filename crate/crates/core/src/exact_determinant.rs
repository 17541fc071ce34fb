//! Determinants of based exact complexes of real vector spaces and the
//! Euler characteristic of a complex of finitely generated abelian groups.
//!
//! A complex `0 -> V_0 -> V_1 -> ... -> V_m -> 0` carries the standard
//! ordered basis in each degree; maps are matrices acting on column vectors.
//!
//! * `m = 1`: the determinant of the square matrix `T_0`.
//! * `m = 2`: with `d_i = T_0(a_i)` followed by lifts `d_{r+j}` of the basis of
//!   `V_2` through `T_1`, the determinant is the coordinate of
//!   `d_1 ∧ ... ∧ d_{r+s}` against the basis wedge of `V_1`.
//! * `m >= 3`: split at `I = im T_{m-2} ⊂ V_{m-1}` with any basis `C`:
//!   `δ = δ(V_0..V_{m-2}, I) · δ(I, V_{m-1}, V_m)^{(-1)^m}`.
//!
//! Replacing the basis of `V_k` by `B_k M` multiplies `δ` by `det(M)^{(-1)^k}`,
//! which is what makes the split independent of `C`.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::abelian::FgAbGroup;

/// Relative singular-value threshold used for rank decisions.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeterminantError {
    #[error("complex with {spaces} spaces cannot carry {maps} maps")]
    MapCount { spaces: usize, maps: usize },
    #[error("map {index} should be {expected:?}, found {found:?}")]
    MapShape {
        index: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("complex is not exact")]
    NotExact,
    #[error("torsion order does not fit a finite real value")]
    TorsionOverflow,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasedRealComplex {
    dims: Vec<usize>,
    maps: Vec<DMatrix<f64>>,
}

impl BasedRealComplex {
    pub fn new(dims: Vec<usize>, maps: Vec<DMatrix<f64>>) -> Result<Self, DeterminantError> {
        let expected_maps = dims.len().saturating_sub(1);
        if maps.len() != expected_maps {
            return Err(DeterminantError::MapCount {
                spaces: dims.len(),
                maps: maps.len(),
            });
        }
        for (i, t) in maps.iter().enumerate() {
            if t.nrows() != dims[i + 1] || t.ncols() != dims[i] {
                return Err(DeterminantError::MapShape {
                    index: i,
                    expected: (dims[i + 1], dims[i]),
                    found: (t.nrows(), t.ncols()),
                });
            }
        }
        Ok(Self { dims, maps })
    }

    pub fn empty() -> Self {
        Self {
            dims: Vec::new(),
            maps: Vec::new(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[DMatrix<f64>] {
        &self.maps
    }

    /// Replaces the basis `B_k` of `V_k` by `B_k M` (columns of `M` are the new
    /// basis vectors in old coordinates).
    pub fn change_basis(&self, k: usize, m: &DMatrix<f64>) -> Option<Self> {
        let inv = m.clone().try_inverse()?;
        let mut maps = self.maps.clone();
        if k > 0 {
            maps[k - 1] = &inv * &maps[k - 1];
        }
        if k < maps.len() {
            maps[k] = &maps[k] * m;
        }
        Some(Self {
            dims: self.dims.clone(),
            maps,
        })
    }
}

/// Internal choices the determinant must not depend on.
pub trait BasisChoice {
    /// A basis (as columns) for the span of the orthonormal columns `canonical`.
    fn image_basis(&mut self, canonical: &DMatrix<f64>) -> DMatrix<f64> {
        canonical.clone()
    }

    /// Coefficients `(r x s)` of image vectors added to the minimum-norm lifts.
    fn lift_shift(&mut self, r: usize, s: usize) -> DMatrix<f64> {
        DMatrix::zeros(r, s)
    }
}

/// Orthonormal image bases and minimum-norm lifts.
pub struct Canonical;

impl BasisChoice for Canonical {}

/// Thin SVD `t = U diag(s) V^T` with `s` sorted in nonincreasing order.
// nalgebra 0.35 occasionally returns a factorization that does not reproduce
// matrices with zero blocks, so the decomposition goes through faer.
struct ThinSvd {
    u: DMatrix<f64>,
    s: Vec<f64>,
    v: DMatrix<f64>,
}

fn thin_svd(t: &DMatrix<f64>) -> ThinSvd {
    let (m, n) = t.shape();
    let k = m.min(n);
    if k == 0 {
        return ThinSvd {
            u: DMatrix::zeros(m, 0),
            s: Vec::new(),
            v: DMatrix::zeros(n, 0),
        };
    }
    let a = faer::Mat::<f64>::from_fn(m, n, |i, j| t[(i, j)]);
    let svd = a.thin_svd().expect("svd of a finite matrix");
    let (u, v, s) = (svd.U(), svd.V(), svd.S().column_vector());
    ThinSvd {
        u: DMatrix::from_fn(m, k, |i, j| u[(i, j)]),
        s: (0..k).map(|i| s[i]).collect(),
        v: DMatrix::from_fn(n, k, |i, j| v[(i, j)]),
    }
}

fn singular_values(t: &DMatrix<f64>) -> DVector<f64> {
    if t.is_empty() {
        return DVector::zeros(0);
    }
    let a = faer::Mat::<f64>::from_fn(t.nrows(), t.ncols(), |i, j| t[(i, j)]);
    DVector::from_vec(a.singular_values().expect("svd of a finite matrix"))
}

/// Numerical rank with threshold `tol * σ_max`.
pub fn numerical_rank(t: &DMatrix<f64>, tol: f64) -> usize {
    let sv = singular_values(t);
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

fn composition_vanishes(after: &DMatrix<f64>, before: &DMatrix<f64>, tol: f64) -> bool {
    let comp = after * before;
    let scale = after.norm() * before.norm();
    comp.norm() <= tol * scale.max(f64::MIN_POSITIVE)
}

pub fn check_exact(c: &BasedRealComplex, tol: f64) -> bool {
    if c.maps.iter().any(|t| t.iter().any(|x| !x.is_finite())) {
        return false;
    }
    let ranks: Vec<usize> = c.maps.iter().map(|t| numerical_rank(t, tol)).collect();
    let exact_at = |i: usize| {
        let incoming = if i > 0 { ranks[i - 1] } else { 0 };
        let outgoing = ranks.get(i).copied().unwrap_or(0);
        incoming + outgoing == c.dims[i]
    };
    (0..c.dims.len()).all(exact_at)
        && c.maps
            .windows(2)
            .all(|w| composition_vanishes(&w[1], &w[0], tol))
}

pub fn determinant_exact(c: &BasedRealComplex) -> Result<f64, DeterminantError> {
    determinant_exact_with(c, &mut Canonical)
}

pub fn determinant_exact_with(
    c: &BasedRealComplex,
    choice: &mut dyn BasisChoice,
) -> Result<f64, DeterminantError> {
    if !check_exact(c, DEFAULT_TOL) {
        return Err(DeterminantError::NotExact);
    }
    Ok(recurse(&c.dims, &c.maps, choice))
}

fn square_det(t: &DMatrix<f64>) -> f64 {
    if t.nrows() == 0 {
        1.0
    } else {
        t.clone().lu().determinant()
    }
}

/// `0 -> V_0 -> V_1 -> V_2 -> 0` with `dim V_1 = dim V_0 + dim V_2`.
fn short_determinant(
    into: &DMatrix<f64>,
    out_of: &DMatrix<f64>,
    choice: &mut dyn BasisChoice,
) -> f64 {
    let (r, s) = (into.ncols(), out_of.nrows());
    let n = into.nrows();
    debug_assert_eq!(n, r + s);
    let mut d = DMatrix::zeros(n, n);
    d.columns_mut(0, r).copy_from(into);
    if s > 0 {
        let lifts = pseudo_inverse(out_of);
        let shifted = lifts + into * choice.lift_shift(r, s);
        d.columns_mut(r, s).copy_from(&shifted);
    }
    square_det(&d)
}

fn pseudo_inverse(t: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = thin_svd(t);
    let cut = DEFAULT_TOL * svd.s.first().copied().unwrap_or(0.0);
    let rank = svd.s.iter().filter(|&&x| x > cut).count();
    let mut pinv = DMatrix::zeros(t.ncols(), t.nrows());
    for i in 0..rank {
        pinv += svd.v.column(i) * svd.u.column(i).transpose() / svd.s[i];
    }
    pinv
}

/// Orthonormal basis for the column space of `t`.
fn image_basis(t: &DMatrix<f64>) -> DMatrix<f64> {
    let rank = numerical_rank(t, DEFAULT_TOL);
    thin_svd(t).u.columns(0, rank).into_owned()
}

fn recurse(dims: &[usize], maps: &[DMatrix<f64>], choice: &mut dyn BasisChoice) -> f64 {
    match maps.len() {
        // exactness forces a lone space to be zero-dimensional
        0 => 1.0,
        1 => square_det(&maps[0]),
        2 => short_determinant(&maps[0], &maps[1], choice),
        m => {
            let feeding = &maps[m - 2];
            let basis = choice.image_basis(&image_basis(feeding));
            let k = basis.ncols();
            // coordinates of T_{m-2} with respect to the chosen basis of I
            let coords = pseudo_inverse(&basis) * feeding;
            let mut head_dims = dims[..m - 1].to_vec();
            head_dims.push(k);
            let mut head_maps = maps[..m - 2].to_vec();
            head_maps.push(coords);
            let head = recurse(&head_dims, &head_maps, choice);
            let tail = short_determinant(&basis, &maps[m - 1], choice);
            if m % 2 == 0 {
                head * tail
            } else {
                head / tail
            }
        }
    }
}

/// A complex of finitely generated abelian groups together with real maps
/// between their realifications `A_i ⊗ R`, each carrying the basis coming
/// from a basis of `A_i / torsion`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedGroupComplex {
    groups: Vec<FgAbGroup>,
    realified: BasedRealComplex,
}

impl GradedGroupComplex {
    pub fn new(
        groups: Vec<FgAbGroup>,
        realified_maps: Vec<DMatrix<f64>>,
    ) -> Result<Self, DeterminantError> {
        let dims = groups.iter().map(FgAbGroup::free_rank).collect();
        let realified = BasedRealComplex::new(dims, realified_maps)?;
        Ok(Self { groups, realified })
    }

    pub fn groups(&self) -> &[FgAbGroup] {
        &self.groups
    }

    pub fn realified(&self) -> &BasedRealComplex {
        &self.realified
    }

    /// `Π |(A_i)_tor|^{(-1)^i}` as an exact rational.
    pub fn torsion_product(&self) -> BigRational {
        self.groups
            .iter()
            .enumerate()
            .fold(BigRational::one(), |acc, (i, g)| {
                let t = BigRational::from_integer(g.torsion_order());
                if i % 2 == 0 {
                    acc * t
                } else {
                    acc / t
                }
            })
    }
}

/// The pieces of an Euler characteristic: `value = torsion_product / determinant`.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerCharacteristic {
    pub torsion_product: BigRational,
    pub determinant: f64,
    pub value: f64,
}

impl EulerCharacteristic {
    /// Exact value when the realified complex is zero in every degree.
    pub fn exact(&self, complex: &GradedGroupComplex) -> Option<BigRational> {
        complex
            .realified
            .dims
            .iter()
            .all(|&d| d == 0)
            .then(|| self.torsion_product.clone())
    }
}

pub fn euler_characteristic_parts(
    g: &GradedGroupComplex,
) -> Result<EulerCharacteristic, DeterminantError> {
    let determinant = determinant_exact(&g.realified)?;
    let torsion_product = g.torsion_product();
    let torsion = rational_to_f64(&torsion_product).ok_or(DeterminantError::TorsionOverflow)?;
    Ok(EulerCharacteristic {
        torsion_product,
        determinant,
        value: torsion / determinant,
    })
}

/// Defined up to sign: only `|χ|` is independent of the integral bases.
pub fn euler_characteristic(g: &GradedGroupComplex) -> Result<f64, DeterminantError> {
    euler_characteristic_parts(g).map(|e| e.value)
}

pub(crate) fn rational_to_f64(q: &BigRational) -> Option<f64> {
    let v = q.numer().to_f64()? / q.denom().to_f64()?;
    v.is_finite().then_some(v)
}

/// `n / d` as an exact rational; convenience for callers building expected values.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
