use std::collections::VecDeque;

use serde::Serialize;

use super::{Graph, GraphError};

/// Cells `X_0 = {base}, X_1, ..., X_D` of vertices grouped by distance from
/// the base vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistancePartition {
    pub base: usize,
    pub cells: Vec<Vec<usize>>,
}

impl DistancePartition {
    /// Eccentricity of the base vertex.
    pub fn diameter(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Distance of every vertex from the base.
    pub fn levels(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (k, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                out[v] = k;
            }
        }
        out
    }
}

fn bfs(g: &Graph, base: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.order()];
    let mut queue = VecDeque::new();
    dist[base] = 0;
    queue.push_back(base);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

pub fn bfs_distance_partition(g: &Graph, base: usize) -> Result<DistancePartition, GraphError> {
    if base >= g.order() {
        return Err(GraphError::VertexOutOfRange {
            vertex: base,
            n: g.order(),
        });
    }
    let dist = bfs(g, base);
    if dist.contains(&usize::MAX) {
        return Err(GraphError::Disconnected);
    }
    let depth = dist.iter().copied().max().unwrap_or(0);
    let mut cells = vec![Vec::new(); depth + 1];
    for (v, &d) in dist.iter().enumerate() {
        cells[d].push(v);
    }
    Ok(DistancePartition { base, cells })
}

/// All-pairs distances, `usize::MAX` for unreachable pairs.
pub fn distance_matrix(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.order()).map(|v| bfs(g, v)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    pub fn feasible(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.n - self.k - 1) * self.mu
    }
}

/// Parameters of a primitive strongly regular graph, if `g` is one.
///
/// Primitive means both the graph and its complement are connected, which
/// rules out complete graphs and disjoint unions of cliques.
pub fn is_strongly_regular(g: &Graph) -> Option<SrgParams> {
    let n = g.order();
    if n < 3 || !g.is_connected() || !g.complement().is_connected() {
        return None;
    }
    let k = g.degree(0);
    if g.degrees().iter().any(|&d| d != k) {
        return None;
    }
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for v in u + 1..n {
            let c = g.common_neighbors(u, v);
            let slot = if g.has_edge(u, v) {
                &mut lambda
            } else {
                &mut mu
            };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return None,
                _ => {}
            }
        }
    }
    Some(SrgParams {
        n,
        k,
        lambda: lambda?,
        mu: mu?,
    })
}

/// Intersection numbers `p[i][j][k]`: for any `x, y` at distance `k`, the
/// number of `z` with `d(x, z) = i` and `d(z, y) = j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionNumbers {
    pub diameter: usize,
    pub p: Vec<Vec<Vec<usize>>>,
}

impl IntersectionNumbers {
    pub fn get(&self, i: usize, j: usize, k: usize) -> usize {
        self.p[i][j][k]
    }
}

pub fn is_distance_regular(g: &Graph) -> Option<IntersectionNumbers> {
    let n = g.order();
    if n == 0 || !g.is_connected() {
        return None;
    }
    let dist = distance_matrix(g);
    let d = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut table: Vec<Vec<Vec<Option<usize>>>> = vec![vec![vec![None; d + 1]; d + 1]; d + 1];
    let mut counts = vec![vec![0usize; d + 1]; d + 1];
    for x in 0..n {
        for y in 0..n {
            let k = dist[x][y];
            for row in counts.iter_mut() {
                row.fill(0);
            }
            for z in 0..n {
                counts[dist[x][z]][dist[z][y]] += 1;
            }
            for i in 0..=d {
                for j in 0..=d {
                    let slot = &mut table[i][j][k];
                    match *slot {
                        None => *slot = Some(counts[i][j]),
                        Some(c) if c != counts[i][j] => return None,
                        _ => {}
                    }
                }
            }
        }
    }
    let p = table
        .into_iter()
        .map(|a| {
            a.into_iter()
                .map(|b| b.into_iter().map(|c| c.unwrap_or(0)).collect())
                .collect()
        })
        .collect();
    Some(IntersectionNumbers { diameter: d, p })
}
