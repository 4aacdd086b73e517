use proptest::prelude::*;
use tworow_cuts::cutgen::*;
use tworow_cuts::latgeom::*;
use tworow_cuts::tworow::TwoRowModel;

fn model(fl: f64, rays: Vec<[f64; 2]>) -> TwoRowModel {
    let n = rays.len();
    TwoRowModel {
        f: [0.0, fl],
        ray_index: (0..n).collect(),
        integer: vec![false; n],
        dropped: vec![],
        int_row: 1,
        frac_row: 0,
        int_var: 1,
        frac_var: 0,
        offsets: [0.0, 0.0],
        left_wedge_ok: true,
        right_wedge_ok: true,
        width: n,
        rays,
    }
}

fn arb_model() -> impl Strategy<Value = TwoRowModel> {
    let ray = (-30i32..=30, -30i32..=30).prop_map(|(a, b)| [a as f64 / 10.0, b as f64 / 10.0]);
    (5u32..95, prop::collection::vec(ray, 2..7)).prop_map(|(fl, rays)| model(fl as f64 / 100.0, rays))
}

/// Integers strictly between `lo` and `hi`, counted one by one.
fn count_between(lo: f64, hi: f64) -> i64 {
    let mut n = 0;
    let mut y = lo.floor() as i64 - 1;
    while (y as f64) < hi + 1.0 {
        let v = y as f64;
        if v > lo + 1e-9 && v < hi - 1e-9 {
            n += 1;
        }
        y += 1;
    }
    n
}

proptest! {
    #[test]
    fn bodies_are_lattice_free_and_contain_f(m in arb_model()) {
        for side in Side::BOTH {
            let Ok(body) = build_body(&m, side) else { continue };
            prop_assert_eq!(body.transform.det().abs(), 1);
            prop_assert!(body.contains_strictly(m.f));
            let f = body.transform.point(m.f);
            prop_assert!((f[0] - body.f[0]).abs() < 1e-12 && (f[1] - body.f[1]).abs() < 1e-12);
            if let Shape::Triangle { eta, mu, .. } = body.shape {
                prop_assert!(eta >= 0.0 && eta <= mu + 1e-9 && mu <= eta + 1.0 + 1e-9, "eta {eta} mu {mu}");
                prop_assert!(is_lattice_free(&body, WEDGE_EXTENT).unwrap());
                prop_assert!(is_lattice_free(&body.to_wedge().unwrap(), WEDGE_EXTENT).unwrap());
            } else {
                prop_assert!(is_lattice_free(&body, WEDGE_EXTENT).unwrap());
            }
            // independent check in model coordinates on the side of the body
            for x in -1i64..=1 {
                for y in -60i64..=60 {
                    let p = [x as f64, y as f64];
                    prop_assert!(!body.contains_strictly(p), "{p:?} inside {body:?}");
                }
            }
            prop_assert!(body.disjunction().holds_at(&[0.0, 0.0], 1e-9));
            prop_assert!(!body.disjunction().holds_at(&m.f, 1e-9));
        }
    }

    #[test]
    fn lattice_case_matches_exhaustive_count(m in arb_model()) {
        for side in Side::BOTH {
            let Some((p2, p3)) = boundary_points(&m, side) else { continue };
            let n = count_between(p3, p2);
            prop_assert_eq!(count_strict_interior_lattice(p2, p3), n);
            if let Ok(body) = construct_body(&m, side) {
                let expected = match n {
                    0 => LatticeCase::Zero,
                    1 => LatticeCase::One,
                    _ => LatticeCase::Many,
                };
                prop_assert_eq!(body.case, expected);
            }
        }
    }

    #[test]
    fn closed_forms_match_generic_intersection_cut(m in arb_model()) {
        for side in Side::BOTH {
            let Ok(body) = build_body(&m, side) else { continue };
            let Ok(cut) = body_cut(&m, &body) else { continue };
            let rays: Vec<Vec<f64>> = m.rays.iter().map(|r| r.to_vec()).collect();
            let generic = intersection_cut(&rays, &m.f, &body.disjunction()).unwrap();
            for (a, b) in cut.coefs.iter().zip(&generic) {
                prop_assert!((a - b).abs() <= 1e-9 * (1.0 + b.abs()), "{a} vs {b}");
            }
            if let Shape::Triangle { .. } = body.shape {
                let wedge = wedge_cut(&m, &body).unwrap();
                let wd = intersection_cut(&rays, &m.f, &body.to_wedge().unwrap().disjunction()).unwrap();
                for ((w, t), g) in wedge.coefs.iter().zip(&cut.coefs).zip(&wd) {
                    prop_assert!(w <= &(t + 1e-12));
                    prop_assert!((w - g).abs() <= 1e-9 * (1.0 + g.abs()));
                }
            }
        }
    }

    #[test]
    fn triangle_gauge_is_one_at_vertices(eta in 0.0f64..1.0, dmu in 0.0f64..1.0, fl in 0.05f64..0.95) {
        let mu = eta + dmu;
        prop_assume!(eta + mu > 1e-3);
        let f = [0.0, fl];
        prop_assume!(1.0 - fl > 1e-6 && fl - 0.0 > 1e-6);
        let s = eta + mu;
        for v in [[1.0 / s, mu / s], [-1.0, 1.0 + eta], [-1.0, -mu]] {
            let r = [v[0] - f[0], v[1] - f[1]];
            prop_assert!((triangle_coefficient(eta, mu, f, r) - 1.0).abs() < 1e-9);
        }
        prop_assert!(triangle_coefficient(eta, mu, f, [0.0, 0.0]).abs() < 1e-12);
    }
}

#[test]
fn unimodular_inverse_and_composition() {
    let t = Unimodular::reflection().then(&Unimodular::shear(3)).then(&Unimodular::flip());
    assert_eq!(t.det().abs(), 1);
    let back = t.then(&t.inverse());
    assert_eq!(back, Unimodular::IDENTITY);
    for z in [[0, 0], [2, -5], [-7, 4]] {
        assert_eq!(t.inverse().lattice_point(t.lattice_point(z)), z);
    }
}

#[test]
fn documented_body_examples() {
    // p2 = 2.5, p3 = -0.5: two interior points, triangle through the endpoints
    let m = model(0.5, vec![[-1.0, -2.0], [-1.0, 1.0], [1.0, 0.0]]);
    let body = construct_body(&m, Side::Left).unwrap();
    assert_eq!(body.case, LatticeCase::Many);
    // a single crossing height gives a split
    let m = model(0.5, vec![[-1.0, 0.2], [-1.0, -0.2]]);
    let body = build_body(&m, Side::Left).unwrap();
    assert!(matches!(body.shape, Shape::Split { .. }));
    assert!(polygon_is_lattice_free(&[[-1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]).unwrap());
    assert!(!polygon_is_lattice_free(&[[-1.0, -1.0], [2.0, -1.0], [0.5, 2.0]]).unwrap());
}
