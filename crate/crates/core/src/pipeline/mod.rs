//! Batch classification: one record per base-vertex orbit of a graph, the
//! ordered parallel corpus scan, and report rendering.

mod report;
mod scan;

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::algebras::{AlgebraBasis, AlgebraError, BuildOptions, Rooted, LEVELS};
use crate::graphs::{
    gen_cycle, gen_delta, gen_paley, gen_path, gen_star, write_graph6, Graph, Graph6Error,
    GraphError, PaleyConstruction,
};
use crate::groups::{automorphism_group, vertex_orbits, GroupError, PermGroup, SearchOptions};
use crate::structure::{wedderburn_decompose, WedderburnType};

pub use report::{emit_report, Format, ReportWriter};
pub use scan::{resolve_jobs, scan_corpus, scan_text, Filter, ScanOptions, ScanSummary};

pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(60);

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0}")]
    InvalidArgument(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    StabilizerBudgetExceeded,
    TimeBudgetExceeded,
    DecomposeFailed,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::StabilizerBudgetExceeded => "stabilizer-budget-exceeded",
            Status::TimeBudgetExceeded => "time-budget-exceeded",
            Status::DecomposeFailed => "decompose-failed",
            Status::Error => "error",
        }
    }

    pub fn is_budget(self) -> bool {
        matches!(
            self,
            Status::StabilizerBudgetExceeded | Status::TimeBudgetExceeded
        )
    }
}

/// Classification of one base vertex, standing for its whole orbit under
/// the automorphism group. Levels that were not computed are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub graph6: String,
    pub n: usize,
    pub base_vertex: usize,
    /// Vertices the record stands for: the automorphism orbit of the base
    /// when deduplicating, otherwise 1.
    pub orbit_size: usize,
    pub dims: [Option<usize>; LEVELS],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub types: Option<[Option<WedderburnType>; LEVELS]>,
    /// `flags[l]`: levels `l` and `l + 1` coincide.
    pub flags: [Option<bool>; LEVELS - 1],
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl ScanRecord {
    fn new(graph6: &str, n: usize, base_vertex: usize, orbit_size: usize) -> Self {
        ScanRecord {
            graph6: graph6.to_string(),
            n,
            base_vertex,
            orbit_size,
            dims: [None; LEVELS],
            types: None,
            flags: [None; LEVELS - 1],
            status: Status::Ok,
            message: None,
        }
    }

    fn fail(&mut self, status: Status, message: impl ToString) {
        self.status = status;
        self.message = Some(message.to_string());
    }

    fn fail_with(&mut self, e: &AlgebraError) {
        let status = match e {
            AlgebraError::Group(g) => group_status(g),
            _ => Status::Error,
        };
        self.fail(status, e);
    }

    /// Checks the record invariants: computed dims are nondecreasing and
    /// flags agree with them.
    pub fn check(&self) -> Result<(), String> {
        let known: Vec<usize> = self.dims.iter().flatten().copied().collect();
        if known.windows(2).any(|w| w[0] > w[1]) {
            return Err(format!("dims {:?} decrease", self.dims));
        }
        for (l, f) in self.flags.iter().enumerate() {
            if let (Some(f), Some(a), Some(b)) = (f, self.dims[l], self.dims[l + 1]) {
                if *f != (a == b) {
                    return Err(format!("flag {l} disagrees with dims {a}, {b}"));
                }
            }
        }
        if let Some(types) = &self.types {
            for (t, d) in types.iter().zip(&self.dims) {
                if let (Some(t), Some(d)) = (t, d) {
                    if t.dim() != *d || t.degree() != self.n {
                        return Err(format!("type {t} does not match dim {d}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether levels `l` and `l + 1` were both computed and differ.
    pub fn differs_at(&self, l: usize) -> bool {
        self.flags[l] == Some(false)
    }
}

fn group_status(e: &GroupError) -> Status {
    match e {
        GroupError::BudgetExceeded { .. } | GroupError::TooLarge { .. } => {
            Status::StabilizerBudgetExceeded
        }
        GroupError::DeadlineExceeded => Status::TimeBudgetExceeded,
        _ => Status::Error,
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// One record per automorphism orbit of base vertices instead of one per
    /// vertex.
    pub dedup: bool,
    pub decompose: bool,
    pub levels: RangeInclusive<usize>,
    pub search: SearchOptions,
    pub time_budget: Duration,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            dedup: true,
            decompose: false,
            levels: 0..=LEVELS - 1,
            search: SearchOptions::default(),
            time_budget: DEFAULT_TIME_BUDGET,
        }
    }
}

impl ClassifyOptions {
    fn validate(&self) -> Result<(), PipelineError> {
        if self.levels.is_empty() || *self.levels.end() >= LEVELS {
            return Err(PipelineError::InvalidArgument(format!(
                "levels must lie in 0..={}",
                LEVELS - 1
            )));
        }
        Ok(())
    }
}

/// Computes the requested levels for one base vertex. Failures are recorded
/// in the status, never returned.
pub fn classify_base(
    g: &Graph,
    base: usize,
    orbit_size: usize,
    stabilizer: Option<PermGroup>,
    opts: &ClassifyOptions,
    deadline: Instant,
) -> ScanRecord {
    let mut rec = ScanRecord::new(&write_graph6(g), g.order(), base, orbit_size);
    let build = BuildOptions {
        search: SearchOptions {
            deadline: Some(deadline),
            ..opts.search
        },
        stabilizer,
    };
    let mut rooted = match Rooted::new(g, base, &build) {
        Ok(r) => r,
        Err(e) => {
            rec.fail_with(&e);
            return rec;
        }
    };
    let mut algs: Vec<Option<AlgebraBasis>> = vec![None; LEVELS];
    for l in opts.levels.clone() {
        if Instant::now() > deadline {
            rec.fail(
                Status::TimeBudgetExceeded,
                format!("time budget exhausted before level {l}"),
            );
            break;
        }
        match rooted.build(l) {
            Ok(a) => {
                rec.dims[l] = Some(a.dim());
                algs[l] = Some(a);
            }
            Err(e) => {
                rec.fail_with(&e);
                break;
            }
        }
    }
    for l in 0..LEVELS - 1 {
        let (Some(small), Some(large)) = (&algs[l], &algs[l + 1]) else {
            continue;
        };
        let nested = small
            .generators
            .iter()
            .try_fold(true, |ok, m| large.contains(m).map(|c| ok && c));
        match nested {
            Ok(true) => rec.flags[l] = Some(small.dim() == large.dim()),
            Ok(false) => {
                rec.fail(Status::Error, AlgebraError::ChainViolation(l, l + 1));
                return rec;
            }
            Err(e) => {
                rec.fail_with(&e);
                return rec;
            }
        }
    }
    if opts.decompose && rec.status == Status::Ok {
        let mut types: [Option<WedderburnType>; LEVELS] = Default::default();
        for (l, a) in algs.iter().enumerate() {
            let Some(a) = a else { continue };
            match wedderburn_decompose(a) {
                Ok(d) => types[l] = Some(d.ty),
                Err(e) => {
                    rec.fail(Status::DecomposeFailed, format!("level {l}: {e}"));
                    break;
                }
            }
        }
        rec.types = Some(types);
    }
    rec
}

/// Records for a connected graph, ordered by base vertex. With `dedup`, one
/// record per automorphism orbit, represented by its smallest vertex.
pub fn classify_graph(g: &Graph, opts: &ClassifyOptions) -> Result<Vec<ScanRecord>, PipelineError> {
    opts.validate()?;
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let deadline = Instant::now() + opts.time_budget;
    let n = g.order();
    let orbits: Vec<Vec<usize>> = if opts.dedup {
        let search = SearchOptions {
            deadline: Some(deadline),
            ..opts.search
        };
        match automorphism_group(g, search) {
            Ok(aut) => vertex_orbits(&aut).cells,
            Err(e) => {
                let mut rec = ScanRecord::new(&write_graph6(g), n, 0, 0);
                rec.fail(group_status(&e), format!("automorphism group: {e}"));
                return Ok(vec![rec]);
            }
        }
    } else {
        (0..n).map(|v| vec![v]).collect()
    };
    let mut reps: Vec<(usize, usize)> = orbits
        .iter()
        .map(|c| (*c.iter().min().expect("orbits are nonempty"), c.len()))
        .collect();
    reps.sort_unstable();
    Ok(reps
        .into_iter()
        .map(|(base, size)| classify_base(g, base, size, None, opts, deadline))
        .collect())
}

/// A member of one of the named families, with its Paley construction when
/// there is one.
pub fn generate_family(
    family: &str,
    params: &[u32],
) -> Result<(Graph, Option<PaleyConstruction>), PipelineError> {
    let one = |name: &str| -> Result<usize, PipelineError> {
        match params {
            [n] => Ok(*n as usize),
            _ => Err(PipelineError::InvalidArgument(format!(
                "{name} takes exactly one parameter n"
            ))),
        }
    };
    let g = match family {
        "path" => gen_path(one(family)?)?,
        "star" => gen_star(one(family)?)?,
        "cycle" => gen_cycle(one(family)?)?,
        "delta" => gen_delta(one(family)?)?,
        "paley" => {
            let (p, a) = match params {
                [p] => (*p, 1),
                [p, a] => (*p, *a),
                _ => {
                    return Err(PipelineError::InvalidArgument(
                        "paley takes p and an optional exponent a".into(),
                    ))
                }
            };
            let (g, pc) = gen_paley(p, a)?;
            return Ok((g, Some(pc)));
        }
        other => {
            return Err(PipelineError::InvalidArgument(format!(
                "unknown family {other}; expected path, star, cycle, paley or delta"
            )))
        }
    };
    Ok((g, None))
}
