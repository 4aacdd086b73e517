use tworow_cuts::dive::*;
use tworow_cuts::instance::*;

fn load(name: &str) -> (MilpInstance, KnownSolution) {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let inst = parse_mps(&std::fs::read_to_string(format!("{dir}/{name}.mps")).unwrap()).unwrap();
    let sol = parse_solution(&std::fs::read_to_string(format!("{dir}/{name}.sol")).unwrap()).unwrap();
    (inst, sol)
}

#[test]
fn same_seed_same_record() {
    let (inst, sol) = load("deg3");
    for generator in Generator::ALL {
        let cfg = DiveConfig { generator, seed: 7, ..DiveConfig::default() };
        assert_eq!(run_dive(&inst, &sol, &cfg).unwrap(), run_dive(&inst, &sol, &cfg).unwrap());
    }
}

#[test]
fn experiment_keeps_generator_seed_order() {
    let (inst, sol) = load("deg1");
    let cfg = ExperimentConfig { dives: 3, base_seed: 10, max_depth: 4, ..ExperimentConfig::default() };
    let recs = run_experiment(&inst, &sol, &cfg).unwrap();
    let keys: Vec<(Generator, u64)> = recs.iter().map(|r| (r.generator, r.seed)).collect();
    let expected: Vec<(Generator, u64)> = Generator::ALL.iter().flat_map(|&g| (10..13).map(move |s| (g, s))).collect();
    assert_eq!(keys, expected);
    let again = run_experiment(&inst, &sol, &cfg).unwrap();
    assert_eq!(recs, again);
    let back = records_from_jsonl(&records_to_jsonl(&recs)).unwrap();
    assert_eq!(back, recs);
}

#[test]
fn crafted_instance_separates_the_families() {
    let (inst, sol) = load("crafted");
    let run = |g| run_dive(&inst, &sol, &DiveConfig { generator: g, max_depth: 3, ..DiveConfig::default() }).unwrap();
    let g = run(Generator::G);
    assert!((g.gap_at(0) - 31.25).abs() < 1e-6, "{}", g.gap_at(0));
    let all = run(Generator::GAllpairs);
    assert!((all.gap_at(0) - 100.0).abs() < 1e-6);
    let deep = run(Generator::GDeepest);
    assert!((deep.gap_at(0) - 100.0).abs() < 1e-6);
    assert!(deep.depth_ratios.iter().all(|&r| r > 1.0));
    for rec in [&g, &all, &deep] {
        assert_eq!(rec.validity_failures, 0);
    }
}

#[test]
fn injected_cut_is_quarantined() {
    let (inst, sol) = load("deg2");
    let clean = run_dive(&inst, &sol, &DiveConfig::default()).unwrap();
    let cfg = DiveConfig { inject_invalid: true, ..DiveConfig::default() };
    let rec = run_dive(&inst, &sol, &cfg).unwrap();
    assert_eq!(rec.validity_failures, 1);
    assert_eq!(rec.snapshots[0].cuts_rejected.get("invalid"), Some(&1));
    assert_eq!(rec.snapshots[0].objective, clean.snapshots[0].objective);
}

#[test]
fn gap_closed_conventions() {
    assert_eq!(gap_closed(1.0, 1.0, 1.0), 100.0);
    assert_eq!(gap_closed(0.0, 1.0, 4.0), 25.0);
    assert_eq!(gap_closed(0.0, 5.0, 4.0), 100.0);
}

#[test]
fn summary_carries_values_past_the_end() {
    let (inst, sol) = load("crafted");
    let cfg = ExperimentConfig { dives: 2, max_depth: 3, ..ExperimentConfig::default() };
    let recs = run_experiment(&inst, &sol, &cfg).unwrap();
    let summary = summarize(&recs, &CHECKPOINTS);
    assert_eq!(summary.rows.len(), 4);
    for row in &summary.rows {
        assert_eq!(row.gaps.len(), CHECKPOINTS.len());
        assert!(row.gaps.windows(2).all(|w| w[1] >= w[0] - 1e-9));
    }
    let csv = summary.to_csv();
    assert!(csv.starts_with("generator,depth_0,depth_4,depth_8,depth_12"));
    assert_eq!(csv.lines().count(), 5);
}
