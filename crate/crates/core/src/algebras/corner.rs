use serde::Serialize;

use super::{AlgebraBasis, AlgebraError, BuildOptions, Rooted};
use crate::graphs::Graph;
use crate::linalg::{Int, IntMat, RowEchelon, SpanBasis};
use crate::structure::{block_of_idempotent, wedderburn_decompose, WedderburnType};

/// Basis of the compression `E_Y A E_Y`.
pub fn corner(alg: &AlgebraBasis, set: &[usize]) -> Result<SpanBasis, AlgebraError> {
    let n = alg.n;
    let mut mask = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(AlgebraError::VertexOutOfRange { vertex: v, n });
        }
        mask[v] = true;
    }
    let mut span = SpanBasis::new(n);
    for b in alg.elements() {
        span.insert(&b.compress(&mask))?;
    }
    Ok(span)
}

pub fn is_commutative(span: &SpanBasis) -> bool {
    let mats = span.row_matrices();
    mats.iter()
        .enumerate()
        .all(|(i, a)| mats[i + 1..].iter().all(|b| a.commutator(b).is_zero()))
}

/// Dimension of the row space `E_{x0} A`: the rank of the `x0` rows of the
/// basis elements.
pub fn principal_row_dim(alg: &AlgebraBasis, x0: usize) -> Result<usize, AlgebraError> {
    let n = alg.n;
    if x0 >= n {
        return Err(AlgebraError::VertexOutOfRange { vertex: x0, n });
    }
    let mut rows = RowEchelon::new(n);
    for b in alg.elements() {
        let row: Vec<Int> = (0..n).map(|j| b.get(x0, j).clone()).collect();
        rows.insert(&row)?;
    }
    Ok(rows.rank())
}

fn delete_vertex(m: &IntMat, x: usize) -> IntMat {
    let n = m.size();
    let keep: Vec<usize> = (0..n).filter(|&v| v != x).collect();
    let mut data = Vec::with_capacity((n - 1) * (n - 1));
    for &i in &keep {
        for &j in &keep {
            data.push(m.get(i, j).clone());
        }
    }
    IntMat::from_vec(n - 1, data)
}

#[derive(Clone, Debug, Serialize)]
pub struct PendantReport {
    pub level: usize,
    pub pendant: usize,
    pub neighbor: usize,
    /// The compression to the other vertices equals the algebra of the
    /// graph with the pendant vertex deleted, rooted at its neighbour.
    pub spans_equal: bool,
    pub full: WedderburnType,
    pub reduced: WedderburnType,
    /// `full` is `reduced` with the block of the neighbour's idempotent
    /// grown by one.
    pub types_consistent: bool,
}

impl PendantReport {
    pub fn holds(&self) -> bool {
        self.spans_equal && self.types_consistent
    }
}

/// Compares the algebra of `g` rooted at the pendant vertex `x0` with the
/// algebra of `g - x0` rooted at the neighbour of `x0`.
pub fn pendant_reduction_check(
    g: &Graph,
    x0: usize,
    level: usize,
    opts: &BuildOptions,
) -> Result<PendantReport, AlgebraError> {
    if !(2..=3).contains(&level) {
        return Err(AlgebraError::InvalidLevel(level));
    }
    let n = g.order();
    if x0 >= n {
        return Err(AlgebraError::VertexOutOfRange { vertex: x0, n });
    }
    if g.degree(x0) != 1 {
        return Err(AlgebraError::NotPendant(x0));
    }
    let x1 = g.neighbors(x0).next().expect("degree one");
    let full = Rooted::new(g, x0, opts)?.build(level)?;
    let reduced_graph = g.remove_vertex(x0);
    let x1r = if x1 > x0 { x1 - 1 } else { x1 };
    let reduced_opts = BuildOptions {
        search: opts.search,
        stabilizer: None,
    };
    let reduced = Rooted::new(&reduced_graph, x1r, &reduced_opts)?.build(level)?;

    let others: Vec<usize> = (0..n).filter(|&v| v != x0).collect();
    let corner_span = corner(&full, &others)?;
    let shrunk: Vec<IntMat> = corner_span
        .row_matrices()
        .iter()
        .map(|m| delete_vertex(m, x0))
        .collect();
    let shrunk_span = SpanBasis::from_matrices(n - 1, &shrunk)?;
    let spans_equal = shrunk_span.same_span(reduced.span());

    let full_type =
        wedderburn_decompose(&full).map_err(|e| AlgebraError::Decompose(e.to_string()))?;
    let reduced_dec =
        wedderburn_decompose(&reduced).map_err(|e| AlgebraError::Decompose(e.to_string()))?;
    let e1 = super::idempotent_for_set(n - 1, &[x1r])?;
    let blocks = block_of_idempotent(&reduced, &reduced_dec, &e1)
        .map_err(|e| AlgebraError::Decompose(e.to_string()))?;
    let types_consistent = match blocks.as_slice() {
        [b] => {
            let mut expected = reduced_dec.ty.blocks.clone();
            let (size, mult) = expected[*b];
            expected[*b] = (size + 1, mult);
            mult == 1 && WedderburnType::new(expected) == full_type.ty
        }
        _ => false,
    };
    Ok(PendantReport {
        level,
        pendant: x0,
        neighbor: x1,
        spans_equal,
        full: full_type.ty,
        reduced: reduced_dec.ty,
        types_consistent,
    })
}
