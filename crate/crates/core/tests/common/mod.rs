#![allow(dead_code)]

use itertools::Itertools;
use terw::graphs::Graph;

/// All connected graphs on `n` vertices, one per line, as graph6.
pub fn corpus(n: usize) -> String {
    let path = format!(
        "{}/tests/data/connected_n{n}.g6",
        env!("CARGO_MANIFEST_DIR")
    );
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn preserves(a: &Graph, b: &Graph, phi: &[usize]) -> bool {
    let n = a.order();
    (0..n).all(|u| (u + 1..n).all(|v| a.has_edge(u, v) == b.has_edge(phi[u], phi[v])))
}

pub fn brute_force_automorphism_count(g: &Graph) -> usize {
    let n = g.order();
    (0..n)
        .permutations(n)
        .filter(|p| preserves(g, g, p))
        .count()
}

/// A map `phi` with `u ~ v` in `a` iff `phi[u] ~ phi[v]` in `b`.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return None;
    }
    (0..n).permutations(n).find(|p| preserves(a, b, p))
}
