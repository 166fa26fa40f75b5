use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use terw::algebras::build_t;
use terw::graphs::{parse_graph6, read_graph6_lines, write_graph6, Graph};
use terw::groups::{paley_stabilizer_at, SearchOptions};
use terw::pipeline::{
    classify_base, classify_graph, generate_family, resolve_jobs, scan_corpus, ClassifyOptions,
    Filter, Format, PipelineError, ReportWriter, ScanOptions, ScanRecord, Status,
};
use terw::structure::wedderburn_decompose_seeded;

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_FAILED: u8 = 4;

/// Nested Terwilliger, orbit and centralizer algebras of rooted graphs.
///
/// Vertices are numbered from 0.
#[derive(Parser)]
#[command(name = "terw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions (and optionally types) of the algebras of a graph.
    Compute {
        /// A graph6 string, or @FILE for every graph in a file.
        #[arg(long)]
        graph: String,
        /// A vertex, or `all`.
        #[arg(long, default_value = "all")]
        base: String,
        #[command(flatten)]
        common: Common,
    },
    /// Prints a family member as graph6, or its record at a base vertex.
    Generate {
        #[arg(value_parser = ["path", "star", "cycle", "paley", "delta"])]
        family: String,
        /// `n` for path, star, cycle and delta; `p [a]` for paley.
        #[arg(required = true)]
        params: Vec<u32>,
        #[arg(long)]
        base: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Classifies every connected graph of a graph6 file.
    Scan {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        /// Worker threads; defaults to TERW_JOBS, then the CPU count.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// One record per vertex instead of per automorphism orbit.
        #[arg(long)]
        no_dedup: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Wedderburn type of one algebra, as JSON.
    Decompose {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        base: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=4))]
        level: u8,
        #[arg(long, default_value_t = terw::structure::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 10_000_000)]
        node_budget: u64,
    },
}

#[derive(Args)]
struct Common {
    /// A level or a range such as 0-4.
    #[arg(long, default_value = "0-4", value_parser = parse_levels)]
    levels: (usize, usize),
    #[arg(long)]
    decompose: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Jsonl)]
    format: FormatArg,
    /// Search nodes allowed per automorphism or stabilizer search.
    #[arg(long, default_value_t = 10_000_000)]
    node_budget: u64,
    /// Seconds allowed per graph.
    #[arg(long, default_value_t = 60.0)]
    time_budget: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    T1NeT2,
    T2NeT3,
    T3NeT4,
}

fn parse_levels(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s.split_once('-').unwrap_or((s, s));
    let lo: usize = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad level range {s}"))?;
    let hi: usize = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad level range {s}"))?;
    if lo > hi || hi > 4 {
        return Err(format!("level range {s} must lie in 0-4"));
    }
    Ok((lo, hi))
}

impl Common {
    fn format(&self) -> Format {
        match self.format {
            FormatArg::Jsonl => Format::Jsonl,
            FormatArg::Csv => Format::Csv,
            FormatArg::Table => Format::Table,
        }
    }

    fn classify(&self, dedup: bool) -> Result<ClassifyOptions, Failure> {
        if !(self.time_budget.is_finite() && self.time_budget >= 0.0) {
            return Err(Failure::input(
                "time budget must be a nonnegative number of seconds",
            ));
        }
        Ok(ClassifyOptions {
            dedup,
            decompose: self.decompose,
            levels: self.levels.0..=self.levels.1,
            search: SearchOptions {
                node_budget: self.node_budget,
                ..Default::default()
            },
            time_budget: Duration::from_secs_f64(self.time_budget),
        })
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = match &e {
            PipelineError::Group(_) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(e)
    }
}

fn read_graphs(arg: &str) -> Result<Vec<Graph>, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("{path}: {e}")))?;
            let graphs = read_graph6_lines(&text).map_err(Failure::input)?;
            if graphs.is_empty() {
                return Err(Failure::input(format!("{path}: no graphs")));
            }
            Ok(graphs)
        }
        None => Ok(vec![
            parse_graph6(arg.trim().as_bytes()).map_err(Failure::input)?
        ]),
    }
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), Failure> {
    if v >= g.order() {
        return Err(Failure::input(format!(
            "vertex {v} out of range for a graph on {} vertices",
            g.order()
        )));
    }
    Ok(())
}

fn output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Exit code for a finished batch: budgets first, then other failures.
fn batch_code(records: &[ScanRecord]) -> u8 {
    if records.iter().any(|r| r.status.is_budget()) {
        EXIT_BUDGET
    } else if records.iter().any(|r| r.status != Status::Ok) {
        EXIT_FAILED
    } else {
        0
    }
}

fn write_records(records: &[ScanRecord], format: Format) -> Result<u8, Failure> {
    let mut w = ReportWriter::new(format, output(None)?);
    for r in records {
        w.write(r)?;
    }
    w.finish()?;
    Ok(batch_code(records))
}

fn compute(graph: &str, base: &str, common: &Common) -> Result<u8, Failure> {
    let graphs = read_graphs(graph)?;
    let mut records = Vec::new();
    for g in &graphs {
        if !g.is_connected() {
            return Err(Failure::input(format!(
                "{} is disconnected",
                write_graph6(g)
            )));
        }
        if base == "all" {
            records.extend(classify_graph(g, &common.classify(false)?)?);
        } else {
            let v: usize = base.parse().map_err(|_| {
                Failure::input(format!("base must be a vertex or `all`, got {base}"))
            })?;
            check_vertex(g, v)?;
            let opts = common.classify(false)?;
            let deadline = Instant::now() + opts.time_budget;
            records.push(classify_base(g, v, 1, None, &opts, deadline));
        }
    }
    write_records(&records, common.format())
}

fn generate(
    family: &str,
    params: &[u32],
    base: Option<usize>,
    common: &Common,
) -> Result<u8, Failure> {
    let (g, pc) = generate_family(family, params)?;
    let Some(v) = base else {
        let mut out = output(None)?;
        writeln!(out, "{}", write_graph6(&g))?;
        out.flush()?;
        return Ok(0);
    };
    check_vertex(&g, v)?;
    let stabilizer = match &pc {
        Some(pc) => {
            Some(paley_stabilizer_at(pc, v).map_err(|e| Failure::from(PipelineError::from(e)))?)
        }
        None => None,
    };
    let opts = common.classify(false)?;
    let deadline = Instant::now() + opts.time_budget;
    let record = classify_base(&g, v, 1, stabilizer, &opts, deadline);
    write_records(&[record], common.format())
}

fn scan(
    file: &std::path::Path,
    filter: FilterArg,
    jobs: Option<usize>,
    out: Option<&PathBuf>,
    no_dedup: bool,
    common: &Common,
) -> Result<u8, Failure> {
    let filter = match filter {
        FilterArg::All => Filter::All,
        FilterArg::T1NeT2 => Filter::T1NeT2,
        FilterArg::T2NeT3 => Filter::T2NeT3,
        FilterArg::T3NeT4 => Filter::T3NeT4,
    };
    let opts = ScanOptions {
        filter,
        jobs: resolve_jobs(jobs),
        classify: common.classify(!no_dedup)?,
    };
    let mut w = ReportWriter::new(common.format(), output(out)?);
    let summary = scan_corpus(file, &opts, |r| w.write(&r))
        .map_err(|e| Failure::input(format!("{}: {e}", file.display())))?;
    w.finish()?;
    eprintln!(
        "scanned {} graphs with {} workers: {} records, {} emitted, {} disconnected skipped, {} over budget, {} failed",
        summary.graphs,
        opts.jobs,
        summary.records,
        summary.emitted,
        summary.skipped_disconnected,
        summary.budget_exceeded,
        summary.failed
    );
    Ok(if summary.budget_exceeded > 0 {
        EXIT_BUDGET
    } else if summary.failed > 0 {
        EXIT_FAILED
    } else {
        0
    })
}

fn decompose(
    graph: &str,
    base: usize,
    level: u8,
    seed: u64,
    node_budget: u64,
) -> Result<u8, Failure> {
    let g = parse_graph6(graph.trim().as_bytes()).map_err(Failure::input)?;
    check_vertex(&g, base)?;
    if !g.is_connected() {
        return Err(Failure::input("graph is disconnected"));
    }
    let opts = terw::algebras::BuildOptions {
        search: SearchOptions {
            node_budget,
            ..Default::default()
        },
        stabilizer: None,
    };
    let alg = build_t(level as usize, &g, base, &opts).map_err(|e| Failure {
        code: match e {
            terw::algebras::AlgebraError::Group(_) => EXIT_BUDGET,
            _ => EXIT_FAILED,
        },
        message: e.to_string(),
    })?;
    let d = wedderburn_decompose_seeded(&alg, seed).map_err(|e| Failure {
        code: EXIT_FAILED,
        message: e.to_string(),
    })?;
    let value = serde_json::json!({
        "graph6": write_graph6(&g),
        "base": base,
        "level": level,
        "dim": alg.dim(),
        "center_dim": d.center_dim,
        "type": d.ty.to_string(),
        "blocks": d.ty.blocks,
        "seed": d.seed,
    });
    let mut out = output(None)?;
    writeln!(out, "{value}")?;
    out.flush()?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Compute {
            graph,
            base,
            common,
        } => compute(&graph, &base, &common),
        Command::Generate {
            family,
            params,
            base,
            common,
        } => generate(&family, &params, base, &common),
        Command::Scan {
            file,
            filter,
            jobs,
            out,
            no_dedup,
            common,
        } => scan(&file, filter, jobs, out.as_ref(), no_dedup, &common),
        Command::Decompose {
            graph,
            base,
            level,
            seed,
            node_budget,
        } => decompose(&graph, base, level, seed, node_budget),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("terw: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
