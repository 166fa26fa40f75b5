//! Acceptance criteria, one pass/fail line each.
//!
//! Run a subset with `cargo test --test acceptance -- 6 8`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{brute_force_automorphism_count, corpus, find_isomorphism};
use num_integer::Integer;
use terw::algebras::{
    build_t, corner, inclusion_chain_report, is_commutative, AlgebraBasis, BuildOptions,
};
use terw::graphs::{
    gen_cycle, gen_delta, gen_paley, gen_path, gen_star, is_strongly_regular, parse_graph6,
    spectrum_summary, write_graph6, Graph,
};
use terw::groups::{
    automorphism_group, orbitals, paley_stabilizer_generators, stabilizer, SearchOptions,
};
use terw::linalg::{IntMat, SpanBasis};
use terw::pipeline::{scan_text, Filter, Format, ReportWriter, ScanOptions, ScanRecord, Status};
use terw::structure::{wedderburn_decompose, wedderburn_decompose_seeded, WedderburnType};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn opts() -> BuildOptions {
    BuildOptions::default()
}

fn paley_opts(p: u32, a: u32) -> Result<(Graph, BuildOptions), String> {
    let (g, pc) = gen_paley(p, a).map_err(fail)?;
    let o = BuildOptions {
        stabilizer: Some(paley_stabilizer_generators(&pc)),
        ..opts()
    };
    Ok((g, o))
}

fn ty(a: &AlgebraBasis) -> Result<WedderburnType, String> {
    Ok(wedderburn_decompose(a).map_err(fail)?.ty)
}

fn paths() -> Outcome {
    let mut cases = 0;
    for n in 2..=12usize {
        let g = gen_path(n).map_err(fail)?;
        for m in 1..=n {
            let t = n * m.gcd(&(n + 1)) / (n + 1);
            let d = build_t(1, &g, m - 1, &opts()).map_err(fail)?.dim();
            ensure!(
                d == (n - t) * (n - t) + t,
                "P{n} base {m}: dim {d}, t = {t}"
            );
            cases += 1;
        }
    }
    Ok(format!("{cases} rooted paths"))
}

fn central_paths() -> Outcome {
    for m in 2..=8usize {
        let n = 2 * m - 1;
        let g = gen_path(n).map_err(fail)?;
        let (r, algs) = inclusion_chain_report(&g, m - 1, &opts()).map_err(fail)?;
        // m^2 + (m - 1)^2, which is (n^2 + 1) / 2
        let want = 2 * m * m - 2 * m + 1;
        ensure!(r.dims[2..] == [want; 3], "P{n} base {m}: dims {:?}", r.dims);
        for a in &algs[2..] {
            let t = ty(a)?;
            ensure!(t.sizes() == [m, m - 1], "P{n} base {m}: type {t}");
        }
    }
    Ok("m = 2..8; m = 1 is the one-vertex graph".into())
}

fn off_center_paths() -> Outcome {
    let mut cases = 0;
    for n in 2..=10usize {
        let g = gen_path(n).map_err(fail)?;
        for m in (1..=n).filter(|m| 2 * m - 1 < n) {
            let (r, algs) = inclusion_chain_report(&g, m - 1, &opts()).map_err(fail)?;
            ensure!(
                r.dims[2..] == [n * n; 3],
                "P{n} base {m}: dims {:?}",
                r.dims
            );
            let t = ty(&algs[2])?;
            ensure!(t.sizes() == [n], "P{n} base {m}: type {t}");
            cases += 1;
        }
    }
    Ok(format!("{cases} rooted paths"))
}

fn stars() -> Outcome {
    for n in 4..=12usize {
        let g = gen_star(n).map_err(fail)?;
        for (base, dim, want) in [(0, 5, [2, 1]), (1, 10, [3, 1])] {
            let (r, algs) = inclusion_chain_report(&g, base, &opts()).map_err(fail)?;
            ensure!(
                r.dims[1..] == [dim; 4],
                "K1,{} base {}: dims {:?}",
                n - 1,
                base + 1,
                r.dims
            );
            for a in &algs[1..] {
                let t = ty(a)?;
                ensure!(
                    t.sizes() == want,
                    "K1,{} base {}: type {t}",
                    n - 1,
                    base + 1
                );
            }
        }
    }
    Ok("n = 4..12, centre and leaf".into())
}

fn cycles() -> Outcome {
    for n in 3..=14usize {
        let g = gen_cycle(n).map_err(fail)?;
        let d = n / 2;
        let (r, algs) = inclusion_chain_report(&g, 0, &opts()).map_err(fail)?;
        let (upper, ones) = if n % 2 == 0 { (d - 1, d - 1) } else { (d, d) };
        ensure!(r.equal[2] && r.equal[3], "C{n}: dims {:?}", r.dims);
        for a in &algs[2..] {
            let t = ty(a)?;
            ensure!(
                t.sizes() == [d + 1, upper],
                "C{n} level {}: type {t}",
                a.level
            );
        }
        let t1 = ty(&algs[1])?;
        let mut want = vec![d + 1];
        want.extend(std::iter::repeat_n(1, ones));
        ensure!(t1.sizes() == want, "C{n} level 1: type {t1}");
    }
    Ok("n = 3..14".into())
}

fn paley_primes() -> Outcome {
    let mut rows = Vec::new();
    for p in [5u32, 13, 17, 29, 37, 41, 53, 61] {
        let (g, o) = paley_opts(p, 1)?;
        let (r, algs) = inclusion_chain_report(&g, 0, &o).map_err(fail)?;
        let pu = p as usize;
        let [_, d1, d2, d3, d4] = r.dims;
        ensure!(d1 == 11, "P({p}): dim T1 = {d1}");
        ensure!(ty(&algs[1])?.sizes() == [3, 1, 1], "P({p}): T1 type");
        ensure!(d4 == 2 * pu + 3, "P({p}): dim T4 = {d4}");
        let mut want = vec![3];
        want.extend(std::iter::repeat_n(2, (pu - 3) / 2));
        let t4 = ty(&algs[4])?;
        ensure!(t4.sizes() == want, "P({p}): T4 type {t4}");
        ensure!(d2 == d3 && r.equal[2], "P({p}): T2 {d2} vs T3 {d3}");
        let expect2 = if p == 37 || p == 61 { pu + 4 } else { pu + 8 };
        ensure!(d2 == expect2, "P({p}): dim T2 = {d2}, expected {expect2}");
        if p >= 7 {
            ensure!(
                !r.equal[1] && !r.equal[3],
                "P({p}): chain {:?} not strict",
                r.dims
            );
        }
        rows.push(format!("{p}:{d2}/{d4}"));
    }
    Ok(format!("p: dim T2 / dim T4 = {}", rows.join(" ")))
}

fn paley_powers() -> Outcome {
    let mut rows = Vec::new();
    for (p, a, want4, want2) in [
        (3u32, 2u32, 15, 15),
        (5, 2, 33, 25),
        (7, 2, 59, 35),
        (3, 4, 51, 33),
    ] {
        let (g, o) = paley_opts(p, a)?;
        let d2 = build_t(2, &g, 0, &o).map_err(fail)?.dim();
        let d4 = build_t(4, &g, 0, &o).map_err(fail)?.dim();
        let q = p.pow(a);
        ensure!(d2 == want2 && d4 == want4, "P({q}): dims T2 {d2}, T4 {d4}");
        rows.push(format!("{q}:{d2}/{d4}"));
    }
    Ok(format!("q: dim T2 / dim T4 = {}", rows.join(" ")))
}

/// The thirteen matrices spanning the algebras of the five-vertex graph.
fn delta5_basis() -> Vec<IntMat> {
    let v = [[1, 1, 1, 1], [0, 1, 1, 0]];
    let blocks: [[[i64; 4]; 4]; 8] = [
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[0, 1, 0, 0], [1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0]],
        [[0, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 0]],
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
        [[0, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 0]],
        [[0, 1, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 1, 0]],
        [[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]],
        [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]],
    ];
    let mut out = vec![IntMat::from_fn(5, |i, j| (i == 4 && j == 4) as i64)];
    for vi in v {
        out.push(IntMat::from_fn(
            5,
            |i, j| if j == 4 && i < 4 { vi[i] } else { 0 },
        ));
    }
    for k in 1..3 {
        out.push(out[k].transpose());
    }
    for b in blocks {
        out.push(IntMat::from_fn(
            5,
            |i, j| if i < 4 && j < 4 { b[i][j] } else { 0 },
        ));
    }
    out
}

fn delta_family() -> Outcome {
    let g = gen_delta(5).map_err(fail)?;
    let (r, algs) = inclusion_chain_report(&g, 4, &opts()).map_err(fail)?;
    ensure!(
        r.dims[2] == 11 && r.dims[3] == 13,
        "Delta5 dims {:?}",
        r.dims
    );
    let (t2, t3) = (ty(&algs[2])?, ty(&algs[3])?);
    ensure!(
        t2.to_string() == "M3+C+C" && t3.to_string() == "M3+M2",
        "Delta5 types {t2}, {t3}"
    );
    let b = delta5_basis();
    let span11 = SpanBasis::from_matrices(5, &b[..11]).map_err(fail)?;
    let span13 = SpanBasis::from_matrices(5, &b).map_err(fail)?;
    ensure!(
        span11.dim() == 11 && span13.dim() == 13,
        "basis matrices are dependent"
    );
    ensure!(span11.same_span(algs[2].span()), "B1..B11 do not span T2");
    ensure!(span13.same_span(algs[3].span()), "B1..B13 do not span T3");
    for n in 5..=10usize {
        let g = gen_delta(n).map_err(fail)?;
        let (r, algs) = inclusion_chain_report(&g, n - 1, &opts()).map_err(fail)?;
        ensure!(
            r.dims[2] == n * n - 4 * n + 6,
            "Delta{n}: dim T2 = {}",
            r.dims[2]
        );
        ensure!(
            r.dims[4] == n * n - 4 * n + 8,
            "Delta{n}: dim T4 = {}",
            r.dims[4]
        );
        ensure!(r.equal[1] && r.equal[3], "Delta{n}: dims {:?}", r.dims);
        let (t2, t4) = (ty(&algs[2])?, ty(&algs[4])?);
        ensure!(t2.sizes() == [n - 2, 1, 1], "Delta{n}: T2 type {t2}");
        ensure!(t4.sizes() == [n - 2, 2], "Delta{n}: T4 type {t4}");
    }
    Ok("explicit basis and n = 5..10".into())
}

fn srg_bounds() -> Outcome {
    let mut count = 0;
    let family: Vec<(u32, u32)> = [5, 13, 17, 29, 37, 41, 53, 61]
        .into_iter()
        .map(|p| (p, 1))
        .chain([(3, 2), (5, 2), (7, 2), (3, 4)])
        .collect();
    for (p, a) in family {
        let (g, o) = paley_opts(p, a)?;
        ensure!(
            is_strongly_regular(&g).is_some(),
            "P({}) not strongly regular",
            p.pow(a)
        );
        let t2 = build_t(2, &g, 0, &o).map_err(fail)?;
        for cell in &t2.cells[1..=2] {
            ensure!(
                is_commutative(&corner(&t2, cell).map_err(fail)?),
                "P({}): corner",
                p.pow(a)
            );
        }
        ensure!(
            t2.dim() <= 2 * g.order() + 3,
            "P({}): dim T2 = {}",
            p.pow(a),
            t2.dim()
        );
        count += 1;
    }
    Ok(format!("{count} strongly regular graphs"))
}

fn scan_report(text: &str, jobs: usize) -> Result<(Vec<ScanRecord>, Vec<u8>), String> {
    let opts = ScanOptions {
        jobs,
        ..Default::default()
    };
    let mut records = Vec::new();
    let mut w = ReportWriter::new(Format::Jsonl, Vec::new());
    scan_text(text, &opts, |r| {
        w.write(&r)?;
        records.push(r);
        Ok(())
    })
    .map_err(fail)?;
    Ok((records, w.finish().map_err(fail)?))
}

fn exhaustive_scan() -> Outcome {
    let text: String = (1..=7).map(corpus).collect::<Vec<_>>().concat();
    let (records, one) = scan_report(&text, 1)?;
    let (_, eight) = scan_report(&text, 8)?;
    ensure!(one == eight, "jobs = 1 and jobs = 8 outputs differ");
    ensure!(
        records.iter().all(|r| r.status == Status::Ok),
        "some records failed"
    );
    for r in &records {
        r.check()?;
    }
    let t34: Vec<&ScanRecord> = records.iter().filter(|r| Filter::T3NeT4.keeps(r)).collect();
    ensure!(t34.is_empty(), "{} witnesses for T3 != T4", t34.len());
    let delta = gen_delta(5).map_err(fail)?;
    let t23: Vec<&ScanRecord> = records
        .iter()
        .filter(|r| r.n == 5 && Filter::T2NeT3.keeps(r))
        .collect();
    let hit = t23.iter().any(|r| {
        let g = parse_graph6(r.graph6.as_bytes()).expect("scan output is graph6");
        find_isomorphism(&delta, &g).is_some_and(|phi| {
            // the witness base lies in the orbit of the hub of the delta graph
            let aut = automorphism_group(&g, SearchOptions::default()).expect("small graph");
            terw::groups::vertex_orbits(&aut)
                .cells
                .iter()
                .any(|c| c.contains(&r.base_vertex) && c.contains(&phi[4]))
        })
    });
    ensure!(
        hit,
        "no T2 != T3 witness on five vertices is the delta graph"
    );
    Ok(format!(
        "{} records, {} graphs; T2 != T3 witnesses on 5 vertices: {}",
        records.len(),
        text.lines().count(),
        t23.len()
    ))
}

fn property_graphs() -> Result<Vec<Graph>, String> {
    let mut gs: Vec<Graph> = (1..=6)
        .flat_map(|n| corpus(n).lines().map(str::to_owned).collect::<Vec<_>>())
        .map(|l| parse_graph6(l.as_bytes()).map_err(fail))
        .collect::<Result<_, _>>()?;
    for n in 2..=8 {
        gs.push(gen_path(n).map_err(fail)?);
        gs.push(gen_star(n).map_err(fail)?);
    }
    for n in 3..=10 {
        gs.push(gen_cycle(n).map_err(fail)?);
    }
    for n in 5..=8 {
        gs.push(gen_delta(n).map_err(fail)?);
    }
    for (p, a) in [(5, 1), (3, 2), (13, 1)] {
        gs.push(gen_paley(p, a).map_err(fail)?.0);
    }
    Ok(gs)
}

fn property_suites() -> Outcome {
    let graphs = property_graphs()?;
    let mut chains = 0;
    for g in &graphs {
        let n = g.order();
        let distinct = spectrum_summary(g).map_err(fail)?.distinct_count;
        for base in 0..n {
            let (r, algs) = inclusion_chain_report(g, base, &opts()).map_err(fail)?;
            let label = format!("{} base {base}", write_graph6(g));
            ensure!(
                r.dims.windows(2).all(|w| w[0] <= w[1]),
                "{label}: dims {:?}",
                r.dims
            );
            ensure!(
                r.dims[0] == distinct,
                "{label}: dim T0 {} vs {distinct} eigenvalues",
                r.dims[0]
            );
            let stab = stabilizer(g, base, SearchOptions::default()).map_err(fail)?;
            ensure!(
                r.dims[4] == orbitals(&stab).rank(),
                "{label}: dim T4 vs orbitals"
            );
            let full = [r.dims[3] == n * n, r.dims[4] == n * n, stab.is_trivial()];
            ensure!(
                full[0] == full[1] && full[1] == full[2],
                "{label}: triviality {full:?}"
            );
            for a in &algs {
                let d = wedderburn_decompose(a)
                    .map_err(|e| format!("{label} level {}: {e}", a.level))?;
                let t = &d.ty;
                ensure!(
                    t.dim() == a.dim(),
                    "{label}: sum n^2 {} != {}",
                    t.dim(),
                    a.dim()
                );
                ensure!(t.degree() == n, "{label}: sum nm {} != {n}", t.degree());
                ensure!(
                    t.blocks.len() == a.center().map_err(fail)?.len(),
                    "{label}: blocks vs center"
                );
                let other = wedderburn_decompose_seeded(a, 0x5eed).map_err(fail)?;
                ensure!(
                    other.ty == d.ty,
                    "{label} level {}: seeds disagree",
                    a.level
                );
            }
            chains += 1;
        }
    }
    let mut checked = 0;
    for n in 1..=7 {
        for line in corpus(n).lines() {
            let g = parse_graph6(line.as_bytes()).map_err(fail)?;
            let aut = automorphism_group(&g, SearchOptions::default()).map_err(fail)?;
            let brute = brute_force_automorphism_count(&g);
            ensure!(
                aut.order() == brute.into(),
                "{line}: |Aut| {} vs {brute}",
                aut.order()
            );
            checked += 1;
        }
    }
    Ok(format!(
        "{chains} rooted chains, {checked} automorphism groups"
    ))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "path T1 dimensions",
            limit: secs(5),
            run: paths,
        },
        Criterion {
            id: 2,
            name: "central path types",
            limit: secs(10),
            run: central_paths,
        },
        Criterion {
            id: 3,
            name: "off-center paths are full",
            limit: secs(5),
            run: off_center_paths,
        },
        Criterion {
            id: 4,
            name: "stars",
            limit: secs(5),
            run: stars,
        },
        Criterion {
            id: 5,
            name: "cycles",
            limit: secs(30),
            run: cycles,
        },
        Criterion {
            id: 6,
            name: "Paley graphs of prime order",
            limit: secs(180),
            run: paley_primes,
        },
        Criterion {
            id: 7,
            name: "Paley graphs of prime-power order",
            limit: secs(300),
            run: paley_powers,
        },
        Criterion {
            id: 8,
            name: "delta family",
            limit: secs(60),
            run: delta_family,
        },
        Criterion {
            id: 9,
            name: "strongly regular bounds",
            limit: secs(480),
            run: srg_bounds,
        },
        Criterion {
            id: 10,
            name: "exhaustive scan up to 7 vertices",
            limit: secs(900),
            run: exhaustive_scan,
        },
        Criterion {
            id: 11,
            name: "property suites",
            limit: secs(600),
            run: property_suites,
        },
    ];
    let wanted: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for c in criteria
        .iter()
        .filter(|c| wanted.is_empty() || wanted.contains(&c.id))
    {
        let start = Instant::now();
        let out = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match out {
            Ok(d) if took <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "{} criterion {:>2} {} ({:.2}s / {}s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
