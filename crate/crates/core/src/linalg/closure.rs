use std::collections::VecDeque;

use super::echelon::{RowEchelon, SpanBasis};
use super::int::{make_primitive, Int};
use super::intmat::IntMat;
use super::LinalgError;

/// A matrix algebra given by an exact span together with an explicit basis of
/// integer matrices spanning it.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    pub span: SpanBasis,
    /// Linearly independent integer matrices spanning `span`.
    pub elements: Vec<IntMat>,
}

impl MatrixAlgebra {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn side(&self) -> usize {
        self.span.side()
    }
}

fn check_sizes(n: usize, mats: &[IntMat]) -> Result<(), LinalgError> {
    for m in mats {
        if m.size() != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                found: m.size(),
            });
        }
    }
    Ok(())
}

/// Smallest unital algebra containing `generators`.
///
/// The span is seeded with `I` and the generators; every newly inserted
/// element goes on a FIFO worklist and is left-multiplied by each generator.
/// Every word in the generators is reached from `I` this way, so the loop
/// stops exactly at the generated algebra.
pub fn algebra_closure(n: usize, generators: &[IntMat]) -> Result<MatrixAlgebra, LinalgError> {
    check_sizes(n, generators)?;
    let mut span = SpanBasis::new(n);
    let mut elements = Vec::new();
    let mut work = VecDeque::new();
    for m in std::iter::once(IntMat::identity(n)).chain(generators.iter().cloned()) {
        if let Some(r) = span.insert_remainder(&m)? {
            elements.push(r.clone());
            work.push_back(r);
        }
    }
    let cap = n * n;
    while let Some(x) = work.pop_front() {
        if span.dim() == cap {
            break;
        }
        for g in generators {
            let y = g.mul(&x);
            if let Some(r) = span.insert_remainder(&y)? {
                elements.push(r.clone());
                work.push_back(r);
            }
        }
    }
    Ok(MatrixAlgebra { span, elements })
}

/// Checks that every product of two basis elements stays in the span.
pub fn is_multiplicatively_closed(alg: &MatrixAlgebra) -> Result<bool, LinalgError> {
    for a in &alg.elements {
        for b in &alg.elements {
            if !alg.span.contains(&a.mul(b))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Center of a multiplicatively closed algebra, computed from a generating
/// set: `Z` is central iff it commutes with every generator.
///
/// Each commutator `[B_j, g]` lies in the algebra, so it vanishes iff its
/// coordinates vanish, and a coordinate of an algebra element is read off at
/// the pivot column of the corresponding echelon row. The linear system
/// therefore only needs commutator entries at the pivot positions.
pub fn center_with_generators(
    alg: &MatrixAlgebra,
    generators: &[IntMat],
) -> Result<Vec<IntMat>, LinalgError> {
    let n = alg.side();
    check_sizes(n, generators)?;
    let d = alg.elements.len();
    let pivots = alg.span.echelon().pivots().to_vec();
    let mut eqs = RowEchelon::new(d);
    for g in generators {
        let entries: Vec<Vec<Int>> = alg
            .elements
            .iter()
            .map(|b| {
                let c = b.commutator(g);
                pivots.iter().map(|&p| c.as_slice()[p].clone()).collect()
            })
            .collect();
        for (i, _) in pivots.iter().enumerate() {
            let row: Vec<Int> = entries.iter().map(|e| e[i].clone()).collect();
            if row.iter().any(|x| !x.is_zero()) {
                eqs.insert(&row)?;
            }
        }
        if eqs.rank() == d {
            break;
        }
    }
    let mut out = Vec::new();
    for coeffs in eqs.kernel() {
        let mut z = vec![Int::ZERO; n * n];
        for (c, b) in coeffs.iter().zip(&alg.elements) {
            if c.is_zero() {
                continue;
            }
            for (zi, bi) in z.iter_mut().zip(b.as_slice()) {
                if !bi.is_zero() {
                    zi.add_mul(c, bi);
                }
            }
        }
        make_primitive(&mut z);
        out.push(IntMat::from_vec(n, z));
    }
    Ok(out)
}

/// Center of the algebra spanned by `span`.
///
/// The span must be closed under multiplication; a product falling outside
/// it is reported as [`LinalgError::NotClosed`].
pub fn center_basis(span: &SpanBasis) -> Result<SpanBasis, LinalgError> {
    let alg = MatrixAlgebra {
        span: span.clone(),
        elements: span.row_matrices(),
    };
    if !is_multiplicatively_closed(&alg)? {
        return Err(LinalgError::NotClosed);
    }
    let center = center_with_generators(&alg, &alg.elements)?;
    SpanBasis::from_matrices(span.side(), &center)
}
