//! Generators for the path, star, cycle, Paley and Δₙ families.
//!
//! The families are traditionally labelled `1..n`; vertex `i` here is label
//! `i + 1`.

use serde::Serialize;

use super::field::GaloisField;
use super::{Graph, GraphError};

fn need(n: usize, min: usize, what: &str) -> Result<(), GraphError> {
    if n < min {
        return Err(GraphError::InvalidParameter(format!(
            "{what} needs at least {min} vertices, got {n}"
        )));
    }
    Ok(())
}

pub fn gen_path(n: usize) -> Result<Graph, GraphError> {
    need(n, 2, "path")?;
    Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1)))
}

/// `K_{1,n-1}` with centre 0.
pub fn gen_star(n: usize) -> Result<Graph, GraphError> {
    need(n, 2, "star")?;
    Graph::from_edges(n, (1..n).map(|i| (0, i)))
}

pub fn gen_cycle(n: usize) -> Result<Graph, GraphError> {
    need(n, 3, "cycle")?;
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The kite on labels 1..5 (edges 12, 23, 34 and 5 joined to 1..4) with the
/// tail 5-6-...-n attached.
pub fn gen_delta(n: usize) -> Result<Graph, GraphError> {
    need(n, 5, "delta")?;
    let kite = [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)];
    Graph::from_edges(n, kite.into_iter().chain((4..n - 1).map(|i| (i, i + 1))))
}

#[derive(Clone, Debug, Serialize)]
pub struct PaleyConstruction {
    pub p: u32,
    pub a: u32,
    /// Low coefficients of the monic modulus, constant term first.
    pub modulus_poly: Vec<u32>,
    /// Primitive element, as a field code.
    pub xi: u32,
    /// The nonzero squares, as field codes in increasing order.
    pub squares: Vec<u32>,
    /// Field element sitting at each vertex.
    pub elements: Vec<u32>,
    #[serde(skip)]
    pub field: GaloisField,
}

impl PaleyConstruction {
    /// Vertex holding the field element `x`.
    pub fn vertex_of(&self, x: u32) -> usize {
        self.elements
            .iter()
            .position(|&e| e == x)
            .expect("every field element labels a vertex")
    }
}

/// Paley graph on `GF(p^a)`, `p^a = 1 (mod 4)`.
///
/// Vertices are ordered `0, 1, xi^2, xi^4, ..., xi^(q-3), xi, xi^3, ..., xi^(q-2)`:
/// zero, then the squares, then the non-squares, each by exponent.
pub fn gen_paley(p: u32, a: u32) -> Result<(Graph, PaleyConstruction), GraphError> {
    let field = GaloisField::new(p, a)?;
    let q = field.order();
    if q % 4 != 1 {
        return Err(GraphError::InvalidParameter(format!(
            "Paley graph needs q = 1 (mod 4), got q = {q}"
        )));
    }
    let half = (q as u64 - 1) / 2;
    let mut elements = vec![0u32];
    elements.extend((0..half).map(|i| field.primitive_power(2 * i)));
    elements.extend((0..half).map(|i| field.primitive_power(2 * i + 1)));

    let mut g = Graph::empty(q as usize);
    for u in 0..q as usize {
        for v in u + 1..q as usize {
            if field.is_nonzero_square(field.sub(elements[u], elements[v])) {
                g.add_edge(u, v)?;
            }
        }
    }
    let mut squares: Vec<u32> = (1..q).filter(|&x| field.is_nonzero_square(x)).collect();
    squares.sort_unstable();
    let construction = PaleyConstruction {
        p,
        a,
        modulus_poly: field.modulus().to_vec(),
        xi: field.primitive_element(),
        squares,
        elements,
        field,
    };
    Ok((g, construction))
}
