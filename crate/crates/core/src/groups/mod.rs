//! Permutation groups acting on graph vertices: automorphism groups, point
//! stabilizers, orbits on vertices and orbitals on ordered pairs.

mod order;
mod search;

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::graphs::{gen_paley, Graph, PaleyConstruction};
use crate::linalg::IntMat;

pub use order::group_order;
pub use search::{automorphism_group, stabilizer, SearchOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("graph has {n} vertices, search bound is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("search node budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("search deadline passed")]
    DeadlineExceeded,
    #[error("generator {index} is not an automorphism")]
    NotAutomorphism { index: usize },
    #[error("not a permutation of 0..{n}")]
    BadPermutation { n: usize },
    #[error("vertex {vertex} out of range for {n} points")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// A permutation of `0..n`; `images[v]` is the image of `v`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n).collect(),
        }
    }

    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::BadPermutation { n });
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                if x >= n {
                    return Err(GroupError::VertexOutOfRange { vertex: x, n });
                }
                images[x] = c[(i + 1) % c.len()];
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &x)| i != x)
    }

    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        let n = g.order();
        self.degree() == n
            && (0..n).all(|u| {
                (u + 1..n).all(|v| g.has_edge(u, v) == g.has_edge(self.images[u], self.images[v]))
            })
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupOrigin {
    ComputedBySearch,
    AnalyticFamily,
}

/// A permutation group on `0..n` given by generators, each checked to be an
/// automorphism of the graph it was built for.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    gens: Vec<Perm>,
    origin: GroupOrigin,
    /// Point fixed by every generator, when the group was built as a
    /// stabilizer.
    base: Option<usize>,
}

impl PermGroup {
    pub fn new(
        g: &Graph,
        gens: Vec<Perm>,
        origin: GroupOrigin,
        base: Option<usize>,
    ) -> Result<Self, GroupError> {
        let n = g.order();
        if let Some(b) = base {
            if b >= n {
                return Err(GroupError::VertexOutOfRange { vertex: b, n });
            }
        }
        for (index, p) in gens.iter().enumerate() {
            if !p.is_automorphism_of(g) || base.is_some_and(|b| p.apply(b) != b) {
                return Err(GroupError::NotAutomorphism { index });
            }
        }
        Ok(PermGroup {
            n,
            gens,
            origin,
            base,
        })
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup {
            n,
            gens: Vec::new(),
            origin: GroupOrigin::ComputedBySearch,
            base: None,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn origin(&self) -> GroupOrigin {
        self.origin
    }

    pub fn base(&self) -> Option<usize> {
        self.base
    }

    pub fn order(&self) -> BigUint {
        group_order(self.n, &self.gens)
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(Perm::is_identity)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Classes ordered by smallest member, members ascending.
    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut index = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(x);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub cells: Vec<Vec<usize>>,
}

/// Orbits of the group on points: the base orbit first for stabilizers, then
/// by smallest member.
pub fn vertex_orbits(group: &PermGroup) -> OrbitPartition {
    let mut uf = UnionFind::new(group.n);
    for p in &group.gens {
        for v in 0..group.n {
            uf.union(v, p.apply(v));
        }
    }
    let mut cells = uf.classes();
    if let Some(b) = group.base {
        let i = cells
            .iter()
            .position(|c| c.contains(&b))
            .expect("base is a point");
        let first = cells.remove(i);
        cells.insert(0, first);
    }
    OrbitPartition { cells }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitalPartition {
    pub n: usize,
    /// Pair orbits ordered by smallest pair, each a sorted list of `(x, y)`.
    pub cells: Vec<Vec<(usize, usize)>>,
}

impl OrbitalPartition {
    pub fn rank(&self) -> usize {
        self.cells.len()
    }
}

pub fn orbitals(group: &PermGroup) -> OrbitalPartition {
    let n = group.n;
    let mut uf = UnionFind::new(n * n);
    for p in &group.gens {
        for x in 0..n {
            let px = p.apply(x);
            for y in 0..n {
                uf.union(x * n + y, px * n + p.apply(y));
            }
        }
    }
    let cells = uf
        .classes()
        .into_iter()
        .map(|c| c.into_iter().map(|k| (k / n, k % n)).collect())
        .collect();
    OrbitalPartition { n, cells }
}

/// The 0/1 matrices of the orbitals; they sum to the all-ones matrix.
pub fn orbital_matrices(orbitals: &OrbitalPartition) -> Vec<IntMat> {
    let n = orbitals.n;
    orbitals
        .cells
        .iter()
        .map(|cell| {
            let mut m = IntMat::zeros(n);
            for &(x, y) in cell {
                m.set(x, y, 1.into());
            }
            m
        })
        .collect()
}

fn paley_maps(pc: &PaleyConstruction) -> (Perm, Option<Perm>) {
    let f = &pc.field;
    let xi2 = f.primitive_power(2);
    let map = |h: &dyn Fn(u32) -> u32| -> Perm {
        Perm::new(pc.elements.iter().map(|&x| pc.vertex_of(h(x))).collect())
            .expect("field maps are bijective")
    };
    let sigma = map(&|x| f.mul(x, xi2));
    let tau = (pc.a > 1).then(|| map(&|x| f.pow(x, pc.p as u64)));
    (sigma, tau)
}

/// Stabilizer of the vertex holding `0` in the Paley graph, generated by
/// `sigma: x -> x xi^2` and the Frobenius map `tau: x -> x^p`.
///
/// `tau` is the identity over a prime field and is then omitted.
pub fn paley_stabilizer_generators(pc: &PaleyConstruction) -> PermGroup {
    let (graph, _) = gen_paley(pc.p, pc.a).expect("construction parameters are valid");
    let (sigma, tau) = paley_maps(pc);
    let gens = std::iter::once(sigma).chain(tau).collect();
    PermGroup::new(
        &graph,
        gens,
        GroupOrigin::AnalyticFamily,
        Some(pc.vertex_of(0)),
    )
    .expect("field maps are automorphisms")
}

/// Stabilizer of an arbitrary vertex, conjugated from the stabilizer of `0`
/// by the translation taking `0` to the field element at `base`.
pub fn paley_stabilizer_at(pc: &PaleyConstruction, base: usize) -> Result<PermGroup, GroupError> {
    let n = pc.elements.len();
    if base >= n {
        return Err(GroupError::VertexOutOfRange { vertex: base, n });
    }
    let (graph, _) = gen_paley(pc.p, pc.a).expect("construction parameters are valid");
    let f = &pc.field;
    let shift = pc.elements[base];
    let h = Perm::new(
        pc.elements
            .iter()
            .map(|&x| pc.vertex_of(f.add(x, shift)))
            .collect(),
    )
    .expect("translations are bijective");
    let hinv = h.inverse();
    let (sigma, tau) = paley_maps(pc);
    let gens = std::iter::once(sigma)
        .chain(tau)
        .map(|g| hinv.then(&g).then(&h))
        .collect();
    PermGroup::new(&graph, gens, GroupOrigin::AnalyticFamily, Some(base))
}

/// Full automorphism group of the Paley graph: the stabilizer generators
/// together with the translations by a basis of the field over `GF(p)`.
pub fn paley_automorphism_generators(pc: &PaleyConstruction) -> PermGroup {
    let (graph, _) = gen_paley(pc.p, pc.a).expect("construction parameters are valid");
    let (sigma, tau) = paley_maps(pc);
    let f = &pc.field;
    let translations = (0..pc.a).map(|i| {
        let step = (pc.p as u64).pow(i) as u32;
        Perm::new(
            pc.elements
                .iter()
                .map(|&x| pc.vertex_of(f.add(x, step)))
                .collect(),
        )
        .expect("translations are bijective")
    });
    let gens = translations
        .chain(std::iter::once(sigma))
        .chain(tau)
        .collect();
    PermGroup::new(&graph, gens, GroupOrigin::AnalyticFamily, None)
        .expect("affine maps are automorphisms")
}
