use std::time::{Duration, Instant};

use terw::algebras::{inclusion_chain_report, pendant_reduction_check, BuildOptions};
use terw::graphs::{
    gen_cycle, gen_delta, gen_paley, gen_path, is_distance_regular, spectrum_summary,
};
use terw::groups::{paley_stabilizer_at, PermGroup};
use terw::pipeline::{classify_base, ClassifyOptions, Status};
use terw::structure::{is_thin, wedderburn_decompose, Thinness};

fn far() -> Instant {
    Instant::now() + Duration::from_secs(600)
}

#[test]
fn paley_records_do_not_depend_on_the_base() {
    let (g, pc) = gen_paley(17, 1).unwrap();
    let opts = ClassifyOptions {
        decompose: true,
        ..Default::default()
    };
    let first = classify_base(
        &g,
        0,
        1,
        Some(paley_stabilizer_at(&pc, 0).unwrap()),
        &opts,
        far(),
    );
    assert_eq!(first.status, Status::Ok);
    assert_eq!(first.dims, [3, 11, 25, 25, 37].map(Some));
    for base in [1, 8, 16] {
        let st: PermGroup = paley_stabilizer_at(&pc, base).unwrap();
        let r = classify_base(&g, base, 1, Some(st), &opts, far());
        assert_eq!(r.dims, first.dims);
        assert_eq!(r.types, first.types);
    }
}

#[test]
fn distance_regular_graphs_follow_the_eigenvalue_rule() {
    // with exactly D + 1 eigenvalues, level 1 is M_{D+1} plus one C per
    // repeated eigenvalue
    for g in (3..=10)
        .map(|n| gen_cycle(n).unwrap())
        .chain([gen_paley(13, 1).unwrap().0])
    {
        let ints = is_distance_regular(&g).unwrap();
        let spec = spectrum_summary(&g).unwrap();
        assert_eq!(spec.distinct_count, ints.diameter + 1);
        let repeated = spec.multiplicities.iter().filter(|&&m| m > 1).count();
        let (r, algs) = inclusion_chain_report(&g, 0, &BuildOptions::default()).unwrap();
        let d = ints.diameter + 1;
        assert_eq!(r.dims[1], d * d + repeated);
        let ty = wedderburn_decompose(&algs[1]).unwrap().ty;
        assert_eq!(ty.blocks[0].0, d);
        assert_eq!(ty.blocks.len(), 1 + repeated);
    }
}

#[test]
fn pendant_paths_grow_one_block() {
    for n in 6..=8 {
        let g = gen_delta(n).unwrap();
        for level in [2, 3] {
            let r = pendant_reduction_check(&g, n - 1, level, &BuildOptions::default()).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }
    let p = gen_path(6).unwrap();
    assert!(pendant_reduction_check(&p, 5, 2, &BuildOptions::default())
        .unwrap()
        .holds());
}

#[test]
fn thin_examples() {
    let opts = BuildOptions::default();
    for g in [gen_cycle(9).unwrap(), gen_paley(3, 2).unwrap().0] {
        let (_, algs) = inclusion_chain_report(&g, 0, &opts).unwrap();
        assert_eq!(is_thin(&algs[2]).unwrap(), Thinness::Thin);
    }
}
