//! The nested algebras of a rooted graph:
//!
//! * level 0: generated by the adjacency matrix `A`;
//! * level 1: generated by `A` and the base idempotent `E_{x0}`;
//! * level 2: `A` and the idempotents of the distance cells around `x0`;
//! * level 3: `A` and the idempotents of the orbits of the stabilizer of `x0`;
//! * level 4: the span of the orbital matrices of that stabilizer.

mod corner;

use serde::Serialize;
use thiserror::Error;

use crate::graphs::{bfs_distance_partition, DistancePartition, Graph, GraphError};
use crate::groups::{
    orbital_matrices, orbitals, stabilizer, vertex_orbits, GroupError, OrbitalPartition, PermGroup,
    SearchOptions,
};
use crate::linalg::{
    algebra_closure, center_with_generators, Int, IntMat, LinalgError, MatrixAlgebra, RowEchelon,
    SpanBasis,
};

pub use corner::{
    corner, is_commutative, pendant_reduction_check, principal_row_dim, PendantReport,
};

pub const LEVELS: usize = 5;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("level must be 0..=4, got {0}")]
    InvalidLevel(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("orbital span is not closed under multiplication")]
    NotClosed,
    #[error("orbital partition is not closed under transposition")]
    NotTransposeClosed,
    #[error("level {0} is not contained in level {1}")]
    ChainViolation(usize, usize),
    #[error("vertex {0} is not pendant")]
    NotPendant(usize),
    #[error("stabilizer fixes vertex {found}, expected {expected}")]
    WrongStabilizer { expected: usize, found: usize },
    #[error("decomposition failed: {0}")]
    Decompose(String),
}

/// Diagonal 0/1 matrix supported on `set`.
pub fn idempotent_for_set(n: usize, set: &[usize]) -> Result<IntMat, AlgebraError> {
    let mut m = IntMat::zeros(n);
    for &v in set {
        if v >= n {
            return Err(AlgebraError::VertexOutOfRange { vertex: v, n });
        }
        m.set(v, v, Int::ONE);
    }
    Ok(m)
}

/// One algebra of the chain with an explicit exact basis.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    pub level: usize,
    pub base: usize,
    pub n: usize,
    pub alg: MatrixAlgebra,
    /// Generating matrices: for level 4 the orbital matrices.
    pub generators: Vec<IntMat>,
    pub generator_labels: Vec<String>,
    /// The vertex partition behind the idempotent generators (distance cells
    /// for level 2, stabilizer orbits for level 3).
    pub cells: Vec<Vec<usize>>,
    pub orbitals: Option<OrbitalPartition>,
    /// For level 4, `structure[k][i][j]` is the coefficient of orbital `k`
    /// in the product of orbitals `i` and `j`.
    structure: Option<Vec<Vec<Vec<u32>>>>,
}

impl AlgebraBasis {
    /// Wraps an algebra generated by `generators`, with no partition data.
    pub fn from_generators(
        level: usize,
        base: usize,
        generators: Vec<IntMat>,
        alg: MatrixAlgebra,
    ) -> Self {
        AlgebraBasis {
            level,
            base,
            n: alg.side(),
            generator_labels: (0..generators.len()).map(|i| format!("G{i}")).collect(),
            generators,
            alg,
            cells: Vec::new(),
            orbitals: None,
            structure: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn span(&self) -> &SpanBasis {
        &self.alg.span
    }

    pub fn elements(&self) -> &[IntMat] {
        &self.alg.elements
    }

    /// Exact basis of the center, as integer matrices.
    pub fn center(&self) -> Result<Vec<IntMat>, AlgebraError> {
        match &self.structure {
            Some(c) => Ok(orbital_center(c, &self.alg.elements)),
            None => Ok(center_with_generators(&self.alg, &self.generators)?),
        }
    }

    pub fn contains(&self, m: &IntMat) -> Result<bool, AlgebraError> {
        Ok(self.alg.span.contains(m)?)
    }
}

/// Center of the orbital algebra from its structure constants:
/// `sum z_i A_i` is central iff `sum_i z_i (c^k_ij - c^k_ji) = 0` for all `j, k`.
fn orbital_center(c: &[Vec<Vec<u32>>], elements: &[IntMat]) -> Vec<IntMat> {
    let r = c.len();
    let mut eqs = RowEchelon::new(r);
    for ck in c {
        for j in 0..r {
            let row: Vec<Int> = (0..r)
                .map(|i| Int::from(ck[i][j] as i64 - ck[j][i] as i64))
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                eqs.insert(&row).expect("length r");
            }
        }
    }
    let n = elements.first().map_or(0, IntMat::size);
    eqs.kernel()
        .into_iter()
        .map(|z| {
            let mut m = IntMat::zeros(n);
            for (zi, a) in z.iter().zip(elements) {
                if !zi.is_zero() {
                    m = m.add(&a.scale(zi));
                }
            }
            m
        })
        .collect()
}

/// Checks that products of orbital matrices are constant on every orbital
/// and returns the structure constants.
///
/// Entry `(x, y)` of `A_i A_j` counts the `z` with `(x, z)` in orbital `i`
/// and `(z, y)` in orbital `j`; the span is closed iff that count depends
/// only on the orbital of `(x, y)`.
fn orbital_structure(orb: &OrbitalPartition) -> Result<Vec<Vec<Vec<u32>>>, AlgebraError> {
    let n = orb.n;
    let r = orb.rank();
    let mut cell = vec![0usize; n * n];
    for (k, c) in orb.cells.iter().enumerate() {
        for &(x, y) in c {
            cell[x * n + y] = k;
        }
    }
    let signature = |x: usize, y: usize| -> Vec<(usize, usize)> {
        let mut s: Vec<(usize, usize)> =
            (0..n).map(|z| (cell[x * n + z], cell[z * n + y])).collect();
        s.sort_unstable();
        s
    };
    let reps: Vec<Vec<(usize, usize)>> = orb
        .cells
        .iter()
        .map(|c| signature(c[0].0, c[0].1))
        .collect();
    for x in 0..n {
        for y in 0..n {
            if signature(x, y) != reps[cell[x * n + y]] {
                return Err(AlgebraError::NotClosed);
            }
        }
    }
    let mut out = vec![vec![vec![0u32; r]; r]; r];
    for (k, s) in reps.iter().enumerate() {
        for &(i, j) in s {
            out[k][i][j] += 1;
        }
    }
    Ok(out)
}

fn check_transpose_closed(orb: &OrbitalPartition) -> Result<(), AlgebraError> {
    let n = orb.n;
    let mut cell = vec![0usize; n * n];
    for (k, c) in orb.cells.iter().enumerate() {
        for &(x, y) in c {
            cell[x * n + y] = k;
        }
    }
    for c in &orb.cells {
        let (x, y) = c[0];
        let t = cell[y * n + x];
        if orb.cells[t].len() != c.len() || c.iter().any(|&(a, b)| cell[b * n + a] != t) {
            return Err(AlgebraError::NotTransposeClosed);
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    pub search: SearchOptions,
    /// A precomputed stabilizer of the base vertex (for instance from an
    /// analytic family); searched for when absent.
    pub stabilizer: Option<PermGroup>,
}

/// A graph with a base vertex and the data shared by the five levels.
pub struct Rooted<'a> {
    pub graph: &'a Graph,
    pub base: usize,
    pub partition: DistancePartition,
    stabilizer: Option<PermGroup>,
    search: SearchOptions,
}

impl<'a> Rooted<'a> {
    pub fn new(graph: &'a Graph, base: usize, opts: &BuildOptions) -> Result<Self, AlgebraError> {
        let partition = bfs_distance_partition(graph, base)?;
        if let Some(s) = &opts.stabilizer {
            match s.base() {
                Some(b) if b == base => {}
                found => {
                    return Err(AlgebraError::WrongStabilizer {
                        expected: base,
                        found: found.unwrap_or(usize::MAX),
                    })
                }
            }
        }
        Ok(Rooted {
            graph,
            base,
            partition,
            stabilizer: opts.stabilizer.clone(),
            search: opts.search,
        })
    }

    pub fn stabilizer(&mut self) -> Result<&PermGroup, AlgebraError> {
        if self.stabilizer.is_none() {
            self.stabilizer = Some(stabilizer(self.graph, self.base, self.search)?);
        }
        Ok(self.stabilizer.as_ref().expect("just set"))
    }

    fn closure(
        &self,
        level: usize,
        generators: Vec<IntMat>,
        generator_labels: Vec<String>,
        cells: Vec<Vec<usize>>,
    ) -> Result<AlgebraBasis, AlgebraError> {
        let n = self.graph.order();
        let alg = algebra_closure(n, &generators)?;
        Ok(AlgebraBasis {
            level,
            base: self.base,
            n,
            alg,
            generators,
            generator_labels,
            cells,
            orbitals: None,
            structure: None,
        })
    }

    fn with_cells(
        &self,
        level: usize,
        prefix: &str,
        cells: Vec<Vec<usize>>,
    ) -> Result<AlgebraBasis, AlgebraError> {
        let n = self.graph.order();
        let mut gens = vec![self.graph.adjacency_matrix()];
        let mut labels = vec!["A".to_string()];
        for (i, c) in cells.iter().enumerate() {
            gens.push(idempotent_for_set(n, c)?);
            labels.push(format!("E_{prefix}{i}"));
        }
        self.closure(level, gens, labels, cells)
    }

    pub fn build(&mut self, level: usize) -> Result<AlgebraBasis, AlgebraError> {
        let n = self.graph.order();
        match level {
            0 => self.closure(
                0,
                vec![self.graph.adjacency_matrix()],
                vec!["A".into()],
                Vec::new(),
            ),
            1 => self.closure(
                1,
                vec![
                    self.graph.adjacency_matrix(),
                    idempotent_for_set(n, &[self.base])?,
                ],
                vec!["A".into(), "E_x0".into()],
                vec![vec![self.base]],
            ),
            2 => self.with_cells(2, "X", self.partition.cells.clone()),
            3 => {
                let cells = vertex_orbits(self.stabilizer()?).cells;
                self.with_cells(3, "Y", cells)
            }
            4 => {
                let orb = orbitals(self.stabilizer()?);
                check_transpose_closed(&orb)?;
                let structure = orbital_structure(&orb)?;
                let mats = orbital_matrices(&orb);
                let span = SpanBasis::from_matrices(n, &mats)?;
                debug_assert_eq!(span.dim(), orb.rank());
                let labels = (0..mats.len()).map(|i| format!("A_O{i}")).collect();
                Ok(AlgebraBasis {
                    level: 4,
                    base: self.base,
                    n,
                    alg: MatrixAlgebra {
                        span,
                        elements: mats.clone(),
                    },
                    generators: mats,
                    generator_labels: labels,
                    cells: Vec::new(),
                    orbitals: Some(orb),
                    structure: Some(structure),
                })
            }
            other => Err(AlgebraError::InvalidLevel(other)),
        }
    }
}

/// Builds one level for the graph rooted at `base`.
pub fn build_t(
    level: usize,
    g: &Graph,
    base: usize,
    opts: &BuildOptions,
) -> Result<AlgebraBasis, AlgebraError> {
    if level >= LEVELS {
        return Err(AlgebraError::InvalidLevel(level));
    }
    Rooted::new(g, base, opts)?.build(level)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub dims: [usize; LEVELS],
    /// `equal[l]` is true when levels `l` and `l + 1` coincide.
    pub equal: [bool; LEVELS - 1],
    /// For each strict step, a generator of the larger algebra outside the
    /// smaller one, given by its label.
    pub witnesses: [Option<String>; LEVELS - 1],
}

/// Dimensions of the five levels, equality flags and, for every strict
/// step, a witness generator.
pub fn inclusion_chain_report(
    g: &Graph,
    base: usize,
    opts: &BuildOptions,
) -> Result<(ChainReport, Vec<AlgebraBasis>), AlgebraError> {
    let mut rooted = Rooted::new(g, base, opts)?;
    let algs: Vec<AlgebraBasis> = (0..LEVELS)
        .map(|l| rooted.build(l))
        .collect::<Result<_, _>>()?;
    let report = chain_report(&algs)?;
    Ok((report, algs))
}

/// Compares consecutive levels of an already built chain.
pub fn chain_report(algs: &[AlgebraBasis]) -> Result<ChainReport, AlgebraError> {
    let mut dims = [0; LEVELS];
    for (d, a) in dims.iter_mut().zip(algs) {
        *d = a.dim();
    }
    let mut equal = [false; LEVELS - 1];
    let mut witnesses: [Option<String>; LEVELS - 1] = Default::default();
    for l in 0..LEVELS - 1 {
        let (small, large) = (&algs[l], &algs[l + 1]);
        equal[l] = small.dim() == large.dim();
        if equal[l] {
            continue;
        }
        for gen in &small.generators {
            if !large.contains(gen)? {
                return Err(AlgebraError::ChainViolation(l, l + 1));
            }
        }
        for (gen, label) in large.generators.iter().zip(&large.generator_labels) {
            if !small.contains(gen)? {
                witnesses[l] = Some(label.clone());
                break;
            }
        }
    }
    Ok(ChainReport {
        dims,
        equal,
        witnesses,
    })
}
