mod common;

use std::collections::HashSet;

use common::two_row_score;
use ftrace::instances::{
    build_chain, build_grid, build_lb_gadget, build_random_layered, hirschberg_grid, ChainWeights, GadgetEncoding,
    GadgetLayout, GadgetSpec, GridLayout, GridOrder, GridSpec, LayeredSpec, Scoring,
};
use ftrace::{
    dagfile, frontier_at, global_forward, oracle_solve, oracle_traceback, traceback, DpDag, TracebackConfig, Value,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute_width(dag: &DpDag) -> usize {
    (0..=dag.vertex_count())
        .map(|l| {
            let mut f: Vec<_> = dag.edges().filter(|e| e.from <= l && e.to > l).map(|e| e.from).collect();
            f.dedup();
            f.len()
        })
        .max()
        .unwrap()
}

#[test]
fn grid_value_matches_two_row_dp() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..100 {
        let a: Vec<u8> = (0..rng.gen_range(0..=40)).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect();
        let b: Vec<u8> = (0..rng.gen_range(0..=40)).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect();
        let s = if i % 2 == 0 { Scoring::lcs() } else { Scoring::alignment() };
        let dag = build_grid(&GridSpec::new(&a, &b, s)).unwrap();
        let (p, _) = traceback(&dag, dag.vertex_count() as u64, &TracebackConfig::default()).unwrap();
        let expected = two_row_score(&a, &b, s.match_score, s.mismatch, s.gap);
        assert_eq!(p.value, Value::new(expected));
        assert_eq!(hirschberg_grid(&a, &b, &s).0, p.value);
    }
}

#[test]
fn spec_examples() {
    let d = build_grid(&GridSpec::new("ABCBDAB", "BDCABA", Scoring::lcs())).unwrap();
    assert_eq!(global_forward(&d, d.vertex_count() as u64).unwrap(), Value::new(4));
    assert_eq!(two_row_score(b"ABCBDAB", b"BDCABA", 1, 0, 0), 4);

    let d = build_grid(&GridSpec::new([b'A'; 5], [b'C'; 50], Scoring::lcs())).unwrap();
    assert_eq!(d.frontier_width(), brute_width(&d));
    assert!(d.frontier_width() <= 7);

    let c = build_chain(10, 3, ChainWeights::Seeded(1)).unwrap();
    assert_eq!(brute_width(&c), 3);
    assert_eq!(c.frontier_width(), 3);

    let l = build_random_layered(LayeredSpec { layers: 8, width: 4, density: 0.5, seed: 42 }).unwrap();
    assert_eq!(l.frontier_width(), brute_width(&l));
    assert_eq!(l.frontier_width(), 6);

    // Complete links between consecutive layers: width W for two layers,
    // 2W - 1 once a middle layer exists.
    for w in 1..=5u32 {
        let two = build_random_layered(LayeredSpec { layers: 2, width: w, density: 1.0, seed: 0 }).unwrap();
        assert_eq!(brute_width(&two), w as usize);
        let many = build_random_layered(LayeredSpec { layers: 4, width: w, density: 1.0, seed: 0 }).unwrap();
        assert_eq!(brute_width(&many), 2 * w as usize - 1);
    }
}

#[test]
fn frontier_widths_agree_with_edge_scan() {
    let mut dags = vec![
        build_grid(&GridSpec::new("GATTACA", "TACGATTACA", Scoring::alignment()).order(GridOrder::RowMajor)).unwrap(),
        build_grid(&GridSpec::new("GATTACAGA", "TACGATTACA", Scoring::lcs()).band(6)).unwrap(),
        build_lb_gadget(&GadgetSpec::new(vec![true, false, true, true], 4, GadgetEncoding::FullPattern)).unwrap(),
    ];
    for seed in 0..20 {
        dags.push(build_random_layered(LayeredSpec { layers: 6, width: 5, density: 0.3, seed }).unwrap());
        dags.push(build_chain(40, 1 + (seed % 5) as u32, ChainWeights::Seeded(seed)).unwrap());
    }
    for d in &dags {
        assert_eq!(d.frontier_width(), brute_width(d));
        let widest = (0..=d.vertex_count() as u64).map(|l| frontier_at(d, l).unwrap().len()).max().unwrap();
        assert_eq!(widest, d.frontier_width());
    }
}

#[test]
fn column_major_grid_width() {
    for m in [1usize, 3, 8] {
        let d = build_grid(&GridSpec::new(vec![b'A'; m], vec![b'G'; 60], Scoring::lcs())).unwrap();
        assert_eq!(d.frontier_width(), m + 2);
    }
}

#[test]
fn banded_grid_cells() {
    let layout = GridLayout::new(20, 20, GridOrder::ColumnMajor, Some(4)).unwrap();
    let cells =
        (0..=20).flat_map(|i| (0..=20).map(move |j| (i, j))).filter(|&(i, j): &(usize, usize)| i.abs_diff(j) <= 2);
    assert_eq!(cells.count() as u32, layout.vertex_count());
    let d = build_grid(&GridSpec::new([b'A'; 20], [b'A'; 20], Scoring::lcs()).band(4)).unwrap();
    assert_eq!(global_forward(&d, d.vertex_count() as u64).unwrap(), Value::new(20));
}

#[test]
fn gadget_witness_uses_exactly_one_active_lane() {
    for omega in 1..=10u32 {
        for bits in 1..(1u64 << omega) {
            for enc in [GadgetEncoding::FirstActive, GadgetEncoding::FullPattern] {
                if enc == GadgetEncoding::FullPattern && omega > 8 && bits % 7 != 0 {
                    continue;
                }
                let pattern = GadgetSpec::pattern_from_bits(bits, omega);
                let spec = GadgetSpec::new(pattern.clone(), 2, enc);
                let dag = build_lb_gadget(&spec).unwrap();
                let p = oracle_traceback(&oracle_solve(&dag), dag.vertex_count()).unwrap();
                let lane = GadgetLayout::of(&spec).lane_of(&p.vertices).expect("one lane");
                assert!(pattern[lane as usize - 1]);
                assert_eq!(lane as usize, pattern.iter().position(|&b| b).unwrap() + 1);
            }
        }
    }
}

#[test]
fn gadget_distinct_witnesses() {
    let omega = 6;
    let mut first_active = HashSet::new();
    let mut full = HashSet::new();
    for bits in 1..(1u64 << omega) {
        let pattern = GadgetSpec::pattern_from_bits(bits, omega);
        for (enc, set) in [(GadgetEncoding::FirstActive, &mut first_active), (GadgetEncoding::FullPattern, &mut full)] {
            let dag = build_lb_gadget(&GadgetSpec::new(pattern.clone(), omega, enc)).unwrap();
            set.insert(oracle_traceback(&oracle_solve(&dag), dag.vertex_count()).unwrap().vertices);
        }
    }
    assert_eq!(first_active.len(), omega as usize);
    assert_eq!(full.len(), (1 << omega) - 1);
}

#[test]
fn every_builder_round_trips_through_the_file_format() {
    let dags = [
        build_grid(&GridSpec::new("ACGT", "AGT", Scoring::alignment())).unwrap(),
        build_grid(&GridSpec::new("ACGTAC", "AGTACC", Scoring::lcs()).band(4)).unwrap(),
        build_chain(25, 4, ChainWeights::Seeded(2)).unwrap(),
        build_random_layered(LayeredSpec { layers: 5, width: 4, density: 0.6, seed: 8 }).unwrap(),
        build_lb_gadget(&GadgetSpec::new(vec![false, true, true], 3, GadgetEncoding::FullPattern)).unwrap(),
    ];
    for d in dags {
        let text = dagfile::to_string(&d);
        let back = dagfile::from_str(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(dagfile::to_string(&back), text);
    }
}
