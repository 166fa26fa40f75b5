//! Automorphism search by individualization and equitable refinement.
//!
//! The first leaf of the search tree fixes a reference labelling. Walking
//! back up that first path, each level tries to reach the other vertices of
//! its target cell with an automorphism; vertices already in the orbit of
//! the first-path vertex under the generators found so far are skipped. A
//! subtree is abandoned as soon as its cell sizes or refinement trace differ
//! from the first path at the same depth.

use std::time::Instant;

use super::{GroupError, GroupOrigin, Perm, PermGroup, UnionFind};
use crate::graphs::Graph;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub max_vertices: usize,
    pub node_budget: u64,
    pub deadline: Option<Instant>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_vertices: 64,
            node_budget: 10_000_000,
            deadline: None,
        }
    }
}

type Cells = Vec<Vec<usize>>;

#[derive(Clone, PartialEq, Eq)]
struct Invariant {
    sizes: Vec<usize>,
    trace: u64,
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    words: usize,
    rows: Vec<u64>,
    opts: SearchOptions,
    nodes: u64,
}

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x100_0000_01b3).rotate_left(17)
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, opts: SearchOptions) -> Self {
        let n = g.order();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        for u in 0..n {
            for v in g.neighbors(u) {
                rows[u * words + v / 64] |= 1 << (v % 64);
            }
        }
        Search {
            g,
            n,
            words,
            rows,
            opts,
            nodes: 0,
        }
    }

    fn tick(&mut self) -> Result<(), GroupError> {
        self.nodes += 1;
        if self.nodes > self.opts.node_budget {
            return Err(GroupError::BudgetExceeded {
                budget: self.opts.node_budget,
            });
        }
        if self.nodes.is_multiple_of(256) {
            if let Some(d) = self.opts.deadline {
                if Instant::now() > d {
                    return Err(GroupError::DeadlineExceeded);
                }
            }
        }
        Ok(())
    }

    fn mask(&self, cell: &[usize]) -> Vec<u64> {
        let mut m = vec![0u64; self.words];
        for &v in cell {
            m[v / 64] |= 1 << (v % 64);
        }
        m
    }

    fn count(&self, v: usize, mask: &[u64]) -> u32 {
        self.rows[v * self.words..(v + 1) * self.words]
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    /// Splits cells by neighbour counts into each cell until equitable.
    /// Subcells replace the split cell in place, ordered by count.
    fn refine(&self, cells: &mut Cells) -> Invariant {
        let mut trace = 0xcbf2_9ce4_8422_2325u64;
        'restart: loop {
            for s in 0..cells.len() {
                let mask = self.mask(&cells[s]);
                for i in 0..cells.len() {
                    if cells[i].len() == 1 {
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> = cells[i]
                        .iter()
                        .map(|&v| (self.count(v, &mask), v))
                        .collect();
                    if keyed.iter().all(|&(c, _)| c == keyed[0].0) {
                        continue;
                    }
                    keyed.sort_unstable();
                    let mut parts: Cells = Vec::new();
                    let mut last = None;
                    for (c, v) in keyed {
                        if last != Some(c) {
                            trace = mix(trace, ((s as u64) << 40) ^ ((i as u64) << 20) ^ c as u64);
                            parts.push(Vec::new());
                            last = Some(c);
                        }
                        parts.last_mut().expect("just pushed").push(v);
                        trace = mix(trace, 1);
                    }
                    cells.splice(i..=i, parts);
                    continue 'restart;
                }
            }
            break;
        }
        Invariant {
            sizes: cells.iter().map(Vec::len).collect(),
            trace,
        }
    }

    fn target(cells: &Cells) -> Option<usize> {
        let max = cells.iter().map(Vec::len).max()?;
        if max <= 1 {
            return None;
        }
        cells.iter().position(|c| c.len() == max)
    }

    fn individualize(cells: &Cells, t: usize, v: usize) -> Cells {
        let mut out = Vec::with_capacity(cells.len() + 1);
        out.extend_from_slice(&cells[..t]);
        out.push(vec![v]);
        out.push(cells[t].iter().copied().filter(|&x| x != v).collect());
        out.extend_from_slice(&cells[t + 1..]);
        out
    }

    fn leaf_order(cells: &Cells) -> Vec<usize> {
        cells.iter().map(|c| c[0]).collect()
    }

    /// Looks below `cells` (at `depth`) for a leaf whose labelling, matched
    /// position by position against the first leaf, is an automorphism.
    fn find_automorphism(
        &mut self,
        cells: Cells,
        depth: usize,
        path: &[(Cells, Invariant)],
        first_leaf: &[usize],
    ) -> Result<Option<Perm>, GroupError> {
        let Some(t) = Self::target(&cells) else {
            let leaf = Self::leaf_order(&cells);
            let mut images = vec![0; self.n];
            for (a, b) in first_leaf.iter().zip(&leaf) {
                images[*a] = *b;
            }
            let p = Perm { images };
            return Ok(p.is_automorphism_of(self.g).then_some(p));
        };
        for &w in &cells[t].clone() {
            self.tick()?;
            let mut child = Self::individualize(&cells, t, w);
            let inv = self.refine(&mut child);
            if path.get(depth + 1).map(|p| &p.1) != Some(&inv) {
                continue;
            }
            if let Some(p) = self.find_automorphism(child, depth + 1, path, first_leaf)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }

    fn run(&mut self, mut root: Cells) -> Result<Vec<Perm>, GroupError> {
        self.tick()?;
        let inv = self.refine(&mut root);
        // first path: always take the smallest vertex of the target cell
        let mut path: Vec<(Cells, Invariant)> = vec![(root, inv)];
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        loop {
            let cells = &path.last().expect("root").0;
            let Some(t) = Self::target(cells) else { break };
            let v = *cells[t].iter().min().expect("nonempty");
            let mut child = Self::individualize(cells, t, v);
            self.tick()?;
            let inv = self.refine(&mut child);
            chosen.push((t, v));
            path.push((child, inv));
        }
        let first_leaf = Self::leaf_order(&path.last().expect("leaf").0);

        let mut gens: Vec<Perm> = Vec::new();
        for depth in (0..chosen.len()).rev() {
            let (t, v) = chosen[depth];
            let cell = path[depth].0[t].clone();
            let mut orbits = UnionFind::new(self.n);
            for p in &gens {
                for x in 0..self.n {
                    orbits.union(x, p.apply(x));
                }
            }
            for &w in &cell {
                if w == v || orbits.find(w) == orbits.find(v) {
                    continue;
                }
                self.tick()?;
                let mut child = Self::individualize(&path[depth].0, t, w);
                let inv = self.refine(&mut child);
                if inv != path[depth + 1].1 {
                    continue;
                }
                if let Some(p) = self.find_automorphism(child, depth + 1, &path, &first_leaf)? {
                    for x in 0..self.n {
                        orbits.union(x, p.apply(x));
                    }
                    gens.push(p);
                }
            }
        }
        Ok(gens)
    }
}

fn check_size(g: &Graph, opts: &SearchOptions) -> Result<(), GroupError> {
    if g.order() > opts.max_vertices {
        return Err(GroupError::TooLarge {
            n: g.order(),
            max: opts.max_vertices,
        });
    }
    Ok(())
}

/// Generators of the full automorphism group.
pub fn automorphism_group(g: &Graph, opts: SearchOptions) -> Result<PermGroup, GroupError> {
    check_size(g, &opts)?;
    if g.order() == 0 {
        return Ok(PermGroup::trivial(0));
    }
    let gens = Search::new(g, opts).run(vec![(0..g.order()).collect()])?;
    PermGroup::new(g, gens, GroupOrigin::ComputedBySearch, None)
}

/// Generators of the stabilizer of `base`, searched from the partition
/// `{base} | rest` rather than filtered out of the full group.
pub fn stabilizer(g: &Graph, base: usize, opts: SearchOptions) -> Result<PermGroup, GroupError> {
    check_size(g, &opts)?;
    let n = g.order();
    if base >= n {
        return Err(GroupError::VertexOutOfRange { vertex: base, n });
    }
    let rest: Vec<usize> = (0..n).filter(|&v| v != base).collect();
    let root = if rest.is_empty() {
        vec![vec![base]]
    } else {
        vec![vec![base], rest]
    };
    let gens = Search::new(g, opts).run(root)?;
    PermGroup::new(g, gens, GroupOrigin::ComputedBySearch, Some(base))
}
