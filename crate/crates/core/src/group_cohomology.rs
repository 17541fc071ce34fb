//! Cohomology of finite groups with coefficients in a free `G`-module `Z^rank`.
//!
//! Two cochain models are built: the homogeneous complex of equivariant maps
//! `G^{p+1} -> A` and the inhomogeneous (bar) complex of all maps `G^p -> A`.
//! Both have free rank `|G|^p * rank` in degree `p`; equivariant maps are
//! determined by their values on tuples `(e, g_1, ..., g_p)`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::abelian::{complex_cohomology, AbelianError, CochainComplex, FgAbGroup, IntMatrix};

/// Default cap on the free rank of any single cochain group.
pub const DEFAULT_ROW_BUDGET: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("invalid module action: {0}")]
    InvalidAction(String),
    #[error("p_max must be at least 1")]
    DegreeTooSmall,
    #[error("degree {degree} needs {needed} cochain coordinates, budget is {budget}")]
    BudgetExceeded {
        degree: usize,
        needed: usize,
        budget: usize,
    },
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// Finite group given by its multiplication table on element indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates associativity, identity and inverses by enumeration.
    pub fn new(order: usize, table: Vec<usize>, identity: usize) -> Result<Self, CohomologyError> {
        let bad = |msg: String| Err(CohomologyError::InvalidGroup(msg));
        if order == 0 {
            return bad("empty group".into());
        }
        if table.len() != order * order {
            return bad(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            ));
        }
        if let Some(&x) = table.iter().find(|&&x| x >= order) {
            return bad(format!("entry {x} out of range"));
        }
        if identity >= order {
            return bad(format!("identity {identity} out of range"));
        }
        let mul = |a: usize, b: usize| table[a * order + b];
        for a in 0..order {
            if mul(identity, a) != a || mul(a, identity) != a {
                return bad(format!("{identity} is not a two-sided identity for {a}"));
            }
        }
        let mut inverses = vec![0; order];
        for a in 0..order {
            match (0..order).find(|&b| mul(a, b) == identity && mul(b, a) == identity) {
                Some(b) => inverses[a] = b,
                None => return bad(format!("element {a} has no inverse")),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return bad(format!("not associative at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(Self {
            order,
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::new(n, table, 0).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` has index `a * |H| + b`.
    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let n = g.order * h.order;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = g.mul(x / h.order, y / h.order);
                let b = h.mul(x % h.order, y % h.order);
                table[x * n + y] = a * h.order + b;
            }
        }
        Self::new(n, table, g.identity * h.order + h.identity).expect("product of groups")
    }

    /// The symmetric group on three letters, elements as permutations in
    /// lexicographic order, composed as functions (`(ab)(i) = a(b(i))`).
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("permutation");
        let mut table = vec![0; 36];
        for (i, a) in perms.iter().enumerate() {
            for (j, b) in perms.iter().enumerate() {
                table[i * 6 + j] = index([a[b[0]], a[b[1]], a[b[2]]]);
            }
        }
        Self::new(6, table, 0).expect("S3 is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// A `G`-module structure on `Z^rank`: one integer matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModuleAction {
    rank: usize,
    action: Vec<IntMatrix>,
}

impl GModuleAction {
    pub fn new(
        group: &FiniteGroup,
        rank: usize,
        action: Vec<IntMatrix>,
    ) -> Result<Self, CohomologyError> {
        let bad = |msg: String| Err(CohomologyError::InvalidAction(msg));
        if action.len() != group.order() {
            return bad(format!(
                "{} matrices for a group of order {}",
                action.len(),
                group.order()
            ));
        }
        for (g, m) in action.iter().enumerate() {
            if m.rows() != rank || m.cols() != rank {
                return bad(format!("matrix for element {g} is not {rank}x{rank}"));
            }
            let det = m.determinant()?;
            if det != BigInt::from(1) && det != BigInt::from(-1) {
                return bad(format!("matrix for element {g} has determinant {det}"));
            }
        }
        if action[group.identity()] != IntMatrix::identity(rank) {
            return bad("identity does not act trivially".into());
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if action[group.mul(g, h)] != action[g].mul(&action[h])? {
                    return bad(format!("action({g}*{h}) != action({g})*action({h})"));
                }
            }
        }
        Ok(Self { rank, action })
    }

    pub fn trivial(group: &FiniteGroup, rank: usize) -> Self {
        Self {
            rank,
            action: vec![IntMatrix::identity(rank); group.order()],
        }
    }

    /// `Z` with a group element acting by the sign of a homomorphism `G -> {±1}`.
    pub fn sign(group: &FiniteGroup, sign: &[i64]) -> Result<Self, CohomologyError> {
        let action = sign
            .iter()
            .map(|&s| IntMatrix::from_rows(1, &[vec![s]]))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(group, 1, action)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }
}

/// Mixed-radix encoding of tuples in `G^len`, first coordinate most significant.
fn encode(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * order + x)
}

fn decode(mut index: usize, len: usize, order: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
    out
}

fn cochain_dims(
    group: &FiniteGroup,
    module: &GModuleAction,
    p_max: usize,
    budget: usize,
) -> Result<Vec<usize>, CohomologyError> {
    if p_max < 1 {
        return Err(CohomologyError::DegreeTooSmall);
    }
    (0..=p_max)
        .map(|p| {
            let needed = (group.order() as u128).pow(p as u32) * module.rank() as u128;
            match usize::try_from(needed) {
                Ok(n) if n <= budget => Ok(n),
                _ => Err(CohomologyError::BudgetExceeded {
                    degree: p,
                    needed: usize::try_from(needed).unwrap_or(usize::MAX),
                    budget,
                }),
            }
        })
        .collect()
}

/// Adds `sign * action(g)` into the block of `out` at (row tuple, column tuple).
fn add_block(
    out: &mut [i64],
    cols: usize,
    rank: usize,
    row_tuple: usize,
    col_tuple: usize,
    sign: i64,
    g: Option<&IntMatrix>,
) {
    for k in 0..rank {
        for j in 0..rank {
            let coeff = match g {
                Some(m) => sign * i64::try_from(m.get(k, j)).expect("unimodular action entry"),
                None if j == k => sign,
                None => 0,
            };
            if coeff != 0 {
                out[(row_tuple * rank + k) * cols + col_tuple * rank + j] += coeff;
            }
        }
    }
}

fn finish(rows: usize, cols: usize, entries: Vec<i64>) -> IntMatrix {
    IntMatrix::new(rows, cols, entries.into_iter().map(BigInt::from).collect())
        .expect("block assembly keeps shape")
}

/// Homogeneous cochains `Map_G(G^{p+1}, A)` with
/// `(δf)(g_0..g_{p+1}) = Σ_i (-1)^i f(g_0..ĝ_i..g_{p+1})`.
pub fn build_homogeneous_complex(
    group: &FiniteGroup,
    module: &GModuleAction,
    p_max: usize,
) -> Result<CochainComplex, CohomologyError> {
    build_homogeneous_complex_with_budget(group, module, p_max, DEFAULT_ROW_BUDGET)
}

pub fn build_homogeneous_complex_with_budget(
    group: &FiniteGroup,
    module: &GModuleAction,
    p_max: usize,
    budget: usize,
) -> Result<CochainComplex, CohomologyError> {
    let dims = cochain_dims(group, module, p_max, budget)?;
    let n = group.order();
    let e = group.identity();
    let rank = module.rank();
    let mut boundaries = Vec::with_capacity(p_max);
    for p in 0..p_max {
        let (rows, cols) = (dims[p + 1], dims[p]);
        let mut out = vec![0i64; rows * cols];
        // Basis of degree p+1: tuples (e, g_1..g_{p+1}); stored as the p+1 tail.
        for row_tuple in 0..n.pow(p as u32 + 1) {
            let tail = decode(row_tuple, p + 1, n);
            let mut full = Vec::with_capacity(p + 2);
            full.push(e);
            full.extend_from_slice(&tail);
            for i in 0..=p + 1 {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let face: Vec<usize> = full
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .map(|(_, &x)| x)
                    .collect();
                // f(x_0, x_1..) = x_0 · f(e, x_0^{-1} x_1, ..)
                let lead = face[0];
                let inv = group.inverse(lead);
                let normalized: Vec<usize> = face[1..].iter().map(|&x| group.mul(inv, x)).collect();
                let col_tuple = encode(&normalized, n);
                let g = (lead != e).then(|| module.matrix(lead));
                add_block(&mut out, cols, rank, row_tuple, col_tuple, sign, g);
            }
        }
        boundaries.push(finish(rows, cols, out));
    }
    Ok(CochainComplex::new(dims, boundaries)?)
}

/// Inhomogeneous cochains `Map(G^p, A)` with
/// `(δf)(g_1..g_{p+1}) = g_1 f(g_2..) + Σ_{i=1}^{p} (-1)^i f(..g_i g_{i+1}..) + (-1)^{p+1} f(g_1..g_p)`.
pub fn build_inhomogeneous_complex(
    group: &FiniteGroup,
    module: &GModuleAction,
    p_max: usize,
) -> Result<CochainComplex, CohomologyError> {
    build_inhomogeneous_complex_with_budget(group, module, p_max, DEFAULT_ROW_BUDGET)
}

pub fn build_inhomogeneous_complex_with_budget(
    group: &FiniteGroup,
    module: &GModuleAction,
    p_max: usize,
    budget: usize,
) -> Result<CochainComplex, CohomologyError> {
    let dims = cochain_dims(group, module, p_max, budget)?;
    let n = group.order();
    let rank = module.rank();
    let mut boundaries = Vec::with_capacity(p_max);
    for p in 0..p_max {
        let (rows, cols) = (dims[p + 1], dims[p]);
        let mut out = vec![0i64; rows * cols];
        for row_tuple in 0..n.pow(p as u32 + 1) {
            let g = decode(row_tuple, p + 1, n);
            let head = encode(&g[1..], n);
            add_block(
                &mut out,
                cols,
                rank,
                row_tuple,
                head,
                1,
                Some(module.matrix(g[0])),
            );
            for i in 1..=p {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let mut merged = Vec::with_capacity(p);
                merged.extend_from_slice(&g[..i - 1]);
                merged.push(group.mul(g[i - 1], g[i]));
                merged.extend_from_slice(&g[i + 1..]);
                add_block(
                    &mut out,
                    cols,
                    rank,
                    row_tuple,
                    encode(&merged, n),
                    sign,
                    None,
                );
            }
            let sign = if (p + 1) % 2 == 0 { 1 } else { -1 };
            add_block(
                &mut out,
                cols,
                rank,
                row_tuple,
                encode(&g[..p], n),
                sign,
                None,
            );
        }
        boundaries.push(finish(rows, cols, out));
    }
    Ok(CochainComplex::new(dims, boundaries)?)
}

/// `H^q(G, A)` from the homogeneous complex.
pub fn group_cohomology_q(
    group: &FiniteGroup,
    module: &GModuleAction,
    q: usize,
) -> Result<FgAbGroup, CohomologyError> {
    let complex = build_homogeneous_complex(group, module, (q + 1).max(1))?;
    Ok(complex_cohomology(&complex, q)?)
}

/// `H^q(G, A)` from the inhomogeneous complex.
pub fn group_cohomology_q_inhomogeneous(
    group: &FiniteGroup,
    module: &GModuleAction,
    q: usize,
) -> Result<FgAbGroup, CohomologyError> {
    let complex = build_inhomogeneous_complex(group, module, (q + 1).max(1))?;
    Ok(complex_cohomology(&complex, q)?)
}

/// True if every entry of every boundary composition vanishes.
pub fn is_complex(c: &CochainComplex) -> bool {
    c.boundaries().windows(2).all(|w| {
        w[1].mul(&w[0])
            .map(|m| m.entries().iter().all(Zero::is_zero))
            .unwrap_or(false)
    })
}
