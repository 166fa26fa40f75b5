//! Wedderburn types of the semisimple algebras built in [`crate::algebras`].
//!
//! Everything countable is exact: the algebra dimension, the center and its
//! dimension. Only the splitting of the center into primitive central
//! idempotents is numerical, and its outcome must reproduce the exact
//! counts before it is reported.

use std::fmt;

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebras::{corner, is_commutative, AlgebraBasis, AlgebraError};
use crate::linalg::IntMat;

pub const DEFAULT_SEED: u64 = 0x7e57_a15e;
const SEED_ATTEMPTS: u64 = 3;
const CLUSTER_GAP: f64 = 1e-6;
const INTEGER_TOL: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected {expected} eigenvalue clusters, found {found} after {attempts} seeds")]
    ClusterCount {
        expected: usize,
        found: usize,
        attempts: u64,
    },
    #[error("block dimension {value} is not close to a perfect square")]
    NonInteger { value: f64 },
    #[error("decomposition violates {0}")]
    Invariant(String),
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("matrix is not in the algebra")]
    NotInAlgebra,
}

/// Blocks `(n_i, m_i)`: a simple component `M_{n_i}` whose simple module
/// occurs `m_i` times in the standard module. Sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedderburnType {
    pub blocks: Vec<(usize, usize)>,
}

impl WedderburnType {
    pub fn new(mut blocks: Vec<(usize, usize)>) -> Self {
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        WedderburnType { blocks }
    }

    /// Block sizes alone, descending.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.0).collect()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.0 * b.0).sum()
    }

    pub fn degree(&self) -> usize {
        self.blocks.iter().map(|b| b.0 * b.1).sum()
    }

    /// Parses renderings like `M3+M2+C` or `M3+2*M2`; multiplicities are not
    /// part of the rendering and must be supplied separately if needed.
    pub fn sizes_from_str(s: &str) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        for part in s.split('+') {
            let (count, body) = match part.split_once('*') {
                Some((c, b)) => (c.trim().parse().ok()?, b.trim()),
                None => (1, part.trim()),
            };
            let size = if body == "C" {
                1
            } else {
                body.strip_prefix('M')?.parse().ok()?
            };
            out.extend(std::iter::repeat_n(size, count));
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        Some(out)
    }
}

impl fmt::Display for WedderburnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&(n, _)| {
                if n == 1 {
                    "C".to_string()
                } else {
                    format!("M{n}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl Serialize for WedderburnType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            r#type: String,
            blocks: &'a [(usize, usize)],
        }
        Repr {
            r#type: self.to_string(),
            blocks: &self.blocks,
        }
        .serialize(s)
    }
}

/// A Wedderburn type together with the numerical central idempotents, one
/// per block in the same order.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub ty: WedderburnType,
    pub center_dim: usize,
    pub idempotents: Vec<DMatrix<Complex<f64>>>,
    pub seed: u64,
}

fn to_f64_scaled(m: &IntMat) -> DMatrix<f64> {
    let f = m.to_f64();
    let scale = f.amax();
    if scale > 0.0 {
        f / scale
    } else {
        f
    }
}

/// `sum_j Q_j Q_j^T` over an orthonormal basis `Q_j` of the algebra, viewed
/// as vectors of length `n^2`. For a central idempotent `e`, `tr(e P)` is
/// the trace of `B -> e B` on the algebra, i.e. the dimension of `e A`.
fn span_gram(alg: &AlgebraBasis) -> DMatrix<f64> {
    let n = alg.n;
    let d = alg.dim();
    let mut cols = DMatrix::<f64>::zeros(n * n, d);
    for (j, b) in alg.elements().iter().enumerate() {
        let f = to_f64_scaled(b);
        for r in 0..n {
            for c in 0..n {
                cols[(r * n + c, j)] = f[(r, c)];
            }
        }
    }
    let q = cols.qr().q();
    let mut wide = DMatrix::<f64>::zeros(n, n * d);
    for j in 0..d {
        for r in 0..n {
            for c in 0..n {
                wide[(r, j * n + c)] = q[(r * n + c, j)];
            }
        }
    }
    &wide * wide.transpose()
}

fn cluster(values: &[(f64, usize)]) -> Vec<Vec<usize>> {
    let lo = values.first().map_or(0.0, |v| v.0);
    let hi = values.last().map_or(0.0, |v| v.0);
    let gap = CLUSTER_GAP * (hi - lo);
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for &(v, i) in values {
        if out.is_empty() || v - prev > gap {
            out.push(Vec::new());
        }
        out.last_mut().expect("pushed").push(i);
        prev = v;
    }
    out
}

/// Decomposes with the default seed.
pub fn wedderburn_decompose(alg: &AlgebraBasis) -> Result<Decomposition, StructureError> {
    wedderburn_decompose_seeded(alg, DEFAULT_SEED)
}

/// Wedderburn type of a transpose-closed algebra.
///
/// A random real combination `Z` of the exact center basis is turned into
/// the Hermitian matrix `(Z + Z^T)/2 + i (Z - Z^T)/2`, which acts on the
/// image of each primitive central idempotent by a single real scalar. Its
/// eigenvalue clusters give the idempotents: the cluster size is
/// `n_i m_i`, and `n_i^2` is the dimension of the block, read off as a
/// trace. Clustering retries with the next seeds when it does not produce
/// exactly as many clusters as the center has dimensions.
pub fn wedderburn_decompose_seeded(
    alg: &AlgebraBasis,
    seed: u64,
) -> Result<Decomposition, StructureError> {
    let n = alg.n;
    let center: Vec<DMatrix<f64>> = alg.center()?.iter().map(to_f64_scaled).collect();
    let s = center.len();
    let gram = span_gram(alg);

    let mut found = 0;
    for attempt in 0..SEED_ATTEMPTS {
        let used = seed.wrapping_add(attempt);
        let mut rng = ChaCha8Rng::seed_from_u64(used);
        let mut z = DMatrix::<f64>::zeros(n, n);
        for c in &center {
            let k: i64 = rng.gen_range(1..=1_000_000) * if rng.gen_bool(0.5) { 1 } else { -1 };
            z += c * (k as f64 / 1e6);
        }
        let zt = z.transpose();
        let h = DMatrix::<Complex<f64>>::from_fn(n, n, |i, j| {
            Complex::new(
                (z[(i, j)] + zt[(i, j)]) / 2.0,
                (z[(i, j)] - zt[(i, j)]) / 2.0,
            )
        });
        let eig = SymmetricEigen::new(h);
        let mut values: Vec<(f64, usize)> = eig
            .eigenvalues
            .iter()
            .copied()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        values.sort_by(|a, b| a.0.total_cmp(&b.0));
        let clusters = cluster(&values);
        found = clusters.len();
        if found != s {
            continue;
        }
        let mut blocks = Vec::with_capacity(s);
        for members in &clusters {
            let v = eig.eigenvectors.select_columns(members);
            let e = &v * v.adjoint();
            let sq = (0..n)
                .map(|i| (0..n).map(|k| (e[(i, k)] * gram[(k, i)]).re).sum::<f64>())
                .sum::<f64>();
            let rounded = sq.round();
            let size = (rounded.max(0.0).sqrt().round()) as usize;
            if (sq - rounded).abs() > INTEGER_TOL || size == 0 || size * size != rounded as usize {
                return Err(StructureError::NonInteger { value: sq });
            }
            let rank = members.len();
            if rank % size != 0 {
                return Err(StructureError::Invariant(format!(
                    "block of size {size} with module rank {rank}"
                )));
            }
            blocks.push(((size, rank / size), e));
        }
        blocks.sort_by_key(|b| std::cmp::Reverse(b.0));
        let ty = WedderburnType::new(blocks.iter().map(|b| b.0).collect());
        if ty.dim() != alg.dim() {
            return Err(StructureError::Invariant(format!(
                "sum of squared block sizes {} != dim {}",
                ty.dim(),
                alg.dim()
            )));
        }
        if ty.degree() != n {
            return Err(StructureError::Invariant(format!(
                "module degree {} != {n}",
                ty.degree()
            )));
        }
        return Ok(Decomposition {
            ty,
            center_dim: s,
            idempotents: blocks.into_iter().map(|b| b.1).collect(),
            seed: used,
        });
    }
    Err(StructureError::ClusterCount {
        expected: s,
        found,
        attempts: SEED_ATTEMPTS,
    })
}

/// Blocks on which the idempotent `e` has a nonzero component; a single
/// block exactly when `e` is primitive.
pub fn block_of_idempotent(
    alg: &AlgebraBasis,
    dec: &Decomposition,
    e: &IntMat,
) -> Result<Vec<usize>, StructureError> {
    if e.mul(e) != *e {
        return Err(StructureError::NotIdempotent);
    }
    if !alg.contains(e)? {
        return Err(StructureError::NotInAlgebra);
    }
    let ef = e.to_f64().map(|x| Complex::new(x, 0.0));
    Ok(dec
        .idempotents
        .iter()
        .enumerate()
        .filter(|(_, c)| (*c * &ef).norm() > 0.5)
        .map(|(i, _)| i)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Thinness {
    Thin,
    Unknown,
}

/// Sufficient test for thinness: every compression `E_{X_i} A E_{X_i}` to
/// a distance cell is commutative. A failure proves nothing, hence
/// [`Thinness::Unknown`] rather than a negative answer.
pub fn is_thin(alg: &AlgebraBasis) -> Result<Thinness, StructureError> {
    for cell in &alg.cells {
        if !is_commutative(&corner(alg, cell)?) {
            return Ok(Thinness::Unknown);
        }
    }
    Ok(Thinness::Thin)
}
