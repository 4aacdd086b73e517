use tworow_cuts::dive::*;
use tworow_cuts::instance::*;

const FIXTURES: [&str; 6] = ["deg1", "deg2", "deg3", "deg4", "deg5", "deg6"];

fn load(name: &str) -> (MilpInstance, KnownSolution) {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let inst = parse_mps(&std::fs::read_to_string(format!("{dir}/{name}.mps")).unwrap()).unwrap();
    let sol = parse_solution(&std::fs::read_to_string(format!("{dir}/{name}.sol")).unwrap()).unwrap();
    (inst, sol)
}

fn all_fixtures() -> Vec<String> {
    let mut out: Vec<String> = FIXTURES.iter().map(|s| s.to_string()).collect();
    out.extend((1..=45).map(|k| format!("split/s{k:02}")));
    out
}

fn option_grid() -> Vec<CutOptions> {
    let mut out = Vec::new();
    for lift in [false, true] {
        for wedges in [false, true] {
            out.push(CutOptions { lift, lift_gmi: lift, wedges, ..CutOptions::default() });
        }
    }
    out
}

#[test]
fn every_cut_keeps_every_integer_point() {
    for name in &all_fixtures() {
        let (inst, _) = load(name);
        let points = enumerate_feasible_points(&inst, 100_000).expect("small pure integer fixture");
        for options in option_grid() {
            for generator in Generator::ALL {
                let mut current = inst.clone();
                let ctx = StepContext { generator, options, x_star: None, validity_tol: 1e-6, inject_invalid: false };
                for _ in 0..3 {
                    let Ok(step) = cutting_step(&mut current, &ctx) else { break };
                    for cut in &step.added {
                        for p in &points {
                            let tol = 1e-6 * cut.rhs.abs().max(1.0);
                            assert!(cut.violation(p) <= tol, "{name} {generator} {options:?}: {cut:?} cuts off {p:?}");
                        }
                    }
                    if step.added.is_empty() {
                        break;
                    }
                }
            }
        }
    }
}

#[test]
fn fixtures_yield_triangle_and_wedge_cuts() {
    for name in FIXTURES {
        let (inst, _) = load(name);
        let lp = solve(&inst).unwrap();
        let round = separate(&inst, &lp, Generator::GAllpairs, &CutOptions::default()).unwrap();
        assert!(round.fractional_rows >= 1 && round.integer_rows >= 1, "{name}");
        assert!(round.body_cuts >= 2, "{name}: {} body cuts", round.body_cuts);
        assert!(round.wedge_cuts >= 1, "{name}: {} wedge cuts", round.wedge_cuts);
    }
}

#[test]
fn dives_report_no_validity_failures() {
    for name in FIXTURES {
        let (inst, sol) = load(name);
        for generator in Generator::ALL {
            for seed in 0..3 {
                let cfg = DiveConfig { generator, seed, ..DiveConfig::default() };
                let rec = run_dive(&inst, &sol, &cfg).unwrap();
                assert_eq!(rec.validity_failures, 0, "{name} {generator} seed {seed}");
                assert_ne!(rec.termination, Termination::KnownSolutionCutOff);
                for s in &rec.snapshots {
                    assert!((0.0..=100.0).contains(&s.gap_closed));
                }
            }
        }
    }
}
