use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;

use super::{classify_graph, ClassifyOptions, PipelineError, ScanRecord};
use crate::graphs::read_graph6_lines;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Filter {
    #[default]
    All,
    T1NeT2,
    T2NeT3,
    T3NeT4,
}

impl Filter {
    /// Failed records always pass so that nothing is dropped silently.
    pub fn keeps(self, r: &ScanRecord) -> bool {
        let level = match self {
            Filter::All => return true,
            Filter::T1NeT2 => 1,
            Filter::T2NeT3 => 2,
            Filter::T3NeT4 => 3,
        };
        r.status != super::Status::Ok || r.differs_at(level)
    }
}

impl FromStr for Filter {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Filter::All),
            "t1-ne-t2" => Ok(Filter::T1NeT2),
            "t2-ne-t3" => Ok(Filter::T2NeT3),
            "t3-ne-t4" => Ok(Filter::T3NeT4),
            other => Err(PipelineError::InvalidArgument(format!(
                "unknown filter {other}"
            ))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ScanOptions {
    pub filter: Filter,
    pub jobs: usize,
    pub classify: ClassifyOptions,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub graphs: usize,
    pub skipped_disconnected: usize,
    pub records: usize,
    pub emitted: usize,
    pub budget_exceeded: usize,
    pub failed: usize,
}

/// Worker count: the explicit value, else `TERW_JOBS`, else the number of
/// logical CPUs.
pub fn resolve_jobs(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var("TERW_JOBS").ok()?.trim().parse().ok())
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
        .max(1)
}

pub fn scan_corpus(
    path: &Path,
    opts: &ScanOptions,
    sink: impl FnMut(ScanRecord) -> std::io::Result<()>,
) -> Result<ScanSummary, PipelineError> {
    let text = std::fs::read_to_string(path)?;
    scan_text(&text, opts, sink)
}

enum Outcome {
    Skipped,
    Records(Vec<ScanRecord>),
}

/// Classifies every graph of a graph6 corpus and passes the records that
/// survive the filter to `sink`, in input order and then by base vertex,
/// whatever the number of workers.
pub fn scan_text(
    text: &str,
    opts: &ScanOptions,
    mut sink: impl FnMut(ScanRecord) -> std::io::Result<()>,
) -> Result<ScanSummary, PipelineError> {
    opts.classify.validate()?;
    let graphs = read_graph6_lines(text)?;
    let mut summary = ScanSummary {
        graphs: graphs.len(),
        ..Default::default()
    };
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let jobs = opts.jobs.max(1).min(graphs.len().max(1));

    std::thread::scope(|scope| -> Result<(), PipelineError> {
        let (tx, rx) = mpsc::channel::<(usize, Outcome)>();
        for _ in 0..jobs {
            let tx = tx.clone();
            let (graphs, next, stop) = (&graphs, &next, &stop);
            scope.spawn(move || loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(g) = graphs.get(i) else { break };
                let out = match classify_graph(g, &opts.classify) {
                    Ok(r) => Outcome::Records(r),
                    Err(_) => Outcome::Skipped,
                };
                if tx.send((i, out)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut expected = 0;
        for (i, out) in rx {
            pending.insert(i, out);
            while let Some(out) = pending.remove(&expected) {
                expected += 1;
                match out {
                    Outcome::Skipped => summary.skipped_disconnected += 1,
                    Outcome::Records(records) => {
                        for r in records {
                            summary.records += 1;
                            if r.status.is_budget() {
                                summary.budget_exceeded += 1;
                            } else if r.status != super::Status::Ok {
                                summary.failed += 1;
                            }
                            if opts.filter.keeps(&r) {
                                summary.emitted += 1;
                                if let Err(e) = sink(r) {
                                    stop.store(true, Ordering::Relaxed);
                                    return Err(e.into());
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })?;
    Ok(summary)
}
