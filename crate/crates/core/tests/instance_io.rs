use proptest::prelude::*;
use tworow_cuts::instance::*;

fn arb_instance() -> impl Strategy<Value = MilpInstance> {
    let var = (any::<bool>(), -3i32..3, 0i32..5, 0u8..4, -9i32..10);
    let row = (prop::collection::vec(-6i32..7, 4), 0u8..3, -10i32..11);
    (prop::collection::vec(var, 1..5), prop::collection::vec(row, 0..4), any::<bool>()).prop_map(|(vars, rows, max)| {
        let mut inst = MilpInstance::new("rt", if max { ObjSense::Max } else { ObjSense::Min });
        for (j, (integer, lo, width, kind, cost)) in vars.into_iter().enumerate() {
            let (lower, upper) = match kind {
                0 => (lo as f64, (lo + width) as f64),
                1 => (f64::NEG_INFINITY, f64::INFINITY),
                2 => (lo as f64, f64::INFINITY),
                _ => (f64::NEG_INFINITY, (lo + width) as f64),
            };
            let name = format!("v{j}");
            let v = if integer {
                Variable::integer(&name, lower, upper)
            } else {
                Variable::continuous(&name, lower, upper)
            };
            inst.add_variable(v, cost as f64 * 0.5);
        }
        let n = inst.num_vars();
        for (i, (coefs, sense, rhs)) in rows.into_iter().enumerate() {
            let coefs: Vec<(usize, f64)> =
                coefs.into_iter().take(n).enumerate().filter(|c| c.1 != 0).map(|(j, a)| (j, a as f64 / 4.0)).collect();
            let sense = [RowSense::Le, RowSense::Ge, RowSense::Eq][sense as usize];
            inst.add_constraint(format!("r{i}"), coefs, sense, rhs as f64 / 3.0);
        }
        inst
    })
}

proptest! {
    #[test]
    fn mps_round_trip(inst in arb_instance()) {
        let back = parse_mps(&inst.to_mps()).unwrap();
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn validation_is_monotone_in_tolerance(vals in prop::collection::vec(-3.0f64..3.0, 2), t in 1e-9f64..0.5, extra in 0.0f64..1.0) {
        let mut inst = MilpInstance::new("m", ObjSense::Max);
        let a = inst.add_variable(Variable::integer("x1", 0.0, 1.0), 1.0);
        let b = inst.add_variable(Variable::continuous("x2", 0.0, 2.0), 1.0);
        inst.add_constraint("c", vec![(a, 1.0), (b, 1.0)], RowSense::Le, 1.0);
        let sol = KnownSolution::from_dense(&inst, &vals);
        let tight = validate_solution(&inst, &sol, t);
        let loose = validate_solution(&inst, &sol, t + extra);
        for v in &loose.violations {
            prop_assert!(tight.violations.iter().any(|w| w.kind == v.kind && w.name == v.name));
        }
    }
}

#[test]
fn solution_examples() {
    let sol = parse_solution("x1 1\nx2 0").unwrap();
    assert_eq!(sol.values["x1"], 1.0);
    assert_eq!(sol.values["x2"], 0.0);
    let empty = parse_solution("").unwrap();
    let mut inst = MilpInstance::new("e", ObjSense::Min);
    inst.add_variable(Variable::integer("x1", 0.0, 3.0), 1.0);
    assert_eq!(empty.dense(&inst), vec![0.0]);
    let err = parse_solution("x1 abc").unwrap_err();
    assert_eq!(err.line, 1);
}

#[test]
fn bundled_fixtures_parse_and_solutions_are_feasible() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    for name in ["crafted", "toy", "deg1", "deg2", "deg3", "deg4", "deg5", "deg6"] {
        let inst = parse_mps(&std::fs::read_to_string(format!("{dir}/{name}.mps")).unwrap()).unwrap();
        let sol = parse_solution(&std::fs::read_to_string(format!("{dir}/{name}.sol")).unwrap()).unwrap();
        let report = validate_solution(&inst, &sol, 1e-6);
        assert!(report.is_feasible(), "{name}: {report}");
    }
}

#[test]
fn enumeration_matches_hand_count() {
    let mut inst = MilpInstance::new("e", ObjSense::Max);
    let a = inst.add_variable(Variable::integer("x1", 0.0, 2.0), 1.0);
    let b = inst.add_variable(Variable::integer("x2", 0.0, 2.0), 1.0);
    inst.add_constraint("c", vec![(a, 1.0), (b, 1.0)], RowSense::Le, 2.0);
    // (0,0) (0,1) (0,2) (1,0) (1,1) (2,0)
    assert_eq!(enumerate_feasible_points(&inst, 100).unwrap().len(), 6);
    inst.add_variable(Variable::continuous("y", 0.0, 1.0), 0.0);
    assert!(enumerate_feasible_points(&inst, 100).is_none());
}
