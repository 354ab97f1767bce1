use revsurf::numerics::{fd_derivative, DerivativeOrder};
use revsurf::surface::{boundary_margin, curvature_at_node, expected_epsilon};
use revsurf::{
    build_a_profile, build_surface, default_theta_grid, export_curve_csv, import_curve_csv,
    solve_mean, solve_skew, verify_roundtrip, AxisType, CurvatureProfile, Eta, GraphVar,
    MeanSolveRequest, PlanarCurve, Plane, SampledFunction, Sign, SkewFamily, SkewSolveRequest,
    Which,
};

fn mean_req(
    axis: AxisType,
    plane: Plane,
    h: &str,
    eta: Eta,
    c: &[f64],
    range: (f64, f64),
) -> MeanSolveRequest {
    MeanSolveRequest {
        profile: CurvatureProfile::parse(h, "s").unwrap(),
        axis,
        plane,
        eta,
        constants: c.to_vec(),
        s_range: range,
        n: 2001,
    }
}

fn skew_req(family: SkewFamily, s: &str, eta: Eta, sign: Sign, a0: f64) -> SkewSolveRequest {
    SkewSolveRequest {
        profile: CurvatureProfile::parse(s, "u").unwrap(),
        family,
        graph_var: GraphVar::First,
        eta,
        sign,
        outer_sign: Sign::Plus,
        a0,
        offset0: 0.0,
        u_range: (0.5, 2.0),
        n: 2001,
    }
}

fn mean_cases() -> Vec<MeanSolveRequest> {
    let h = "0.3 + 0.1*sin(s)";
    vec![
        mean_req(
            AxisType::Timelike,
            Plane::Xz,
            h,
            Eta::Plus,
            &[2.0, 1.0, 0.5],
            (0.0, 1.0),
        ),
        mean_req(
            AxisType::Timelike,
            Plane::Xz,
            h,
            Eta::Minus,
            &[1.0, 2.0, -0.5],
            (0.0, 1.0),
        ),
        mean_req(
            AxisType::Spacelike,
            Plane::Xz,
            h,
            Eta::Plus,
            &[2.0, 1.0, 0.25],
            (0.0, 0.5),
        ),
        mean_req(
            AxisType::Spacelike,
            Plane::Xz,
            h,
            Eta::Minus,
            &[1.0, 2.0, 0.25],
            (0.0, 0.5),
        ),
        mean_req(
            AxisType::Spacelike,
            Plane::Xy,
            h,
            Eta::Plus,
            &[0.5, 0.2, 1.0],
            (0.0, 1.0),
        ),
        mean_req(
            AxisType::Lightlike,
            Plane::Yz,
            h,
            Eta::Plus,
            &[1.0, 1.0, 2.0, 0.0],
            (0.0, 1.0),
        ),
        mean_req(
            AxisType::Lightlike,
            Plane::Yz,
            h,
            Eta::Minus,
            &[-1.0, 3.0, 2.0, 0.0],
            (0.0, 1.0),
        ),
    ]
}

#[test]
fn mean_curves_are_unit_speed_and_planar() {
    for req in mean_cases() {
        let c = solve_mean(&req).unwrap();
        assert!(c.unit_speed_error().unwrap() <= 1e-6, "{:?}", req.case());
        assert!(c.points.iter().all(|p| c.plane.contains(*p)));
        let eta = c.eta.value();
        for t in c.tangents.as_ref().unwrap() {
            assert!((t.inner(*t) - eta).abs() <= 1e-12);
        }
    }
}

#[test]
fn mean_initial_conditions() {
    let cases = mean_cases();
    let c = solve_mean(&cases[0]).unwrap();
    assert!((c.points[0].x - 3f64.sqrt()).abs() <= 1e-9 && c.points[0].z == 0.5);
    let c = solve_mean(&cases[1]).unwrap();
    assert!((c.points[0].x - 3f64.sqrt()).abs() <= 1e-9 && c.points[0].z == -0.5);
    let c = solve_mean(&cases[2]).unwrap();
    assert!((c.points[0].z - 3f64.sqrt()).abs() <= 1e-9 && c.points[0].x == 0.25);
    let c = solve_mean(&cases[4]).unwrap();
    assert!((c.points[0].y - 0.29f64.sqrt()).abs() <= 1e-9 && c.points[0].x == 1.0);
    let c = solve_mean(&cases[5]).unwrap();
    let p = c.points[0];
    assert!((p.y - p.z - 1.0).abs() <= 1e-12 && (p.y + p.z).abs() <= 1e-12);
}

#[test]
fn causal_character_table() {
    for req in mean_cases() {
        let c = solve_mean(&req).unwrap();
        let s = build_surface(&c, req.axis, &default_theta_grid(req.axis)).unwrap();
        assert_eq!(s.epsilon, expected_epsilon(c.plane, c.eta));
        let node = curvature_at_node(&s, 1000, 0.3).unwrap();
        assert_eq!(node.epsilon, s.epsilon, "{:?} {:?}", req.case(), req.eta);
        let r = verify_roundtrip(&s, &req.profile, Which::Mean);
        assert!(r.flags.is_empty() && r.max_h_error <= 1e-5, "{r:?}");
    }
    for (family, eta, a0) in [
        (SkewFamily::TimelikeAxisXz, Eta::Plus, 1.0),
        (SkewFamily::TimelikeAxisXz, Eta::Minus, 2.5),
        (SkewFamily::SpacelikeAxisXz, Eta::Plus, 2.5),
        (SkewFamily::SpacelikeAxisXz, Eta::Minus, 1.0),
        (SkewFamily::SpacelikeAxisXy, Eta::Plus, 0.3),
    ] {
        let c = solve_skew(&skew_req(family, "0", eta, Sign::Plus, a0)).unwrap();
        let s = build_surface(&c, family.axis(), &default_theta_grid(family.axis())).unwrap();
        let expected = if family == SkewFamily::SpacelikeAxisXy {
            1.0
        } else {
            -eta.value()
        };
        assert_eq!(s.epsilon, expected);
        assert_eq!(curvature_at_node(&s, 1000, -0.4).unwrap().epsilon, expected);
    }
}

/// Fourth-order central differences; the two nodes at each end fall back to
/// the library's second-order stencils.
fn derivative(curve: &PlanarCurve, values: Vec<f64>) -> Vec<f64> {
    let h = curve.grid.step();
    let f = SampledFunction::new(curve.grid.clone(), values).unwrap();
    let mut d = fd_derivative(&f, DerivativeOrder::First).unwrap().values;
    let y = &f.values;
    for k in 2..y.len() - 2 {
        d[k] = (y[k - 2] - 8.0 * y[k - 1] + 8.0 * y[k + 1] - y[k + 2]) / (12.0 * h);
    }
    d
}

/// `A′ + (2/u)A + σ(2/u)H = 0` and `B′ + τ·2uK = 0` with `A`, `B` read off
/// the sampled graph.
fn check_linear_identities(family: SkewFamily, eta: Eta, a0: f64, sign: Sign) {
    let req = skew_req(family, "0.2 + 0.1*u", eta, sign, a0);
    let curve = solve_skew(&req).unwrap();
    let axial = match family {
        SkewFamily::TimelikeAxisXz => 2,
        _ => 0,
    };
    let f = curve.component(axial).values;
    let d = derivative(&curve, f);
    let u: Vec<f64> = curve.grid.points().to_vec();
    let e = eta.value();
    let (a, b): (Vec<f64>, Vec<f64>) = u
        .iter()
        .zip(&d)
        .map(|(&u, &d)| match family {
            SkewFamily::TimelikeAxisXz => {
                (d / (u * (e * (1.0 - d * d)).sqrt()), d * d / (1.0 - d * d))
            }
            SkewFamily::SpacelikeAxisXz => {
                (d / (u * (e * (d * d - 1.0)).sqrt()), d * d / (d * d - 1.0))
            }
            SkewFamily::SpacelikeAxisXy => (d / (u * (1.0 + d * d).sqrt()), d * d / (1.0 + d * d)),
        })
        .unzip();
    let da = derivative(&curve, a.clone());
    let db = derivative(&curve, b);
    let surface = build_surface(&curve, family.axis(), &default_theta_grid(family.axis())).unwrap();
    let (sigma, tau) = match family {
        SkewFamily::SpacelikeAxisXy => (-1.0, -1.0),
        _ => (e, 1.0),
    };
    let margin = boundary_margin(u.len());
    let (mut ra, mut rb): (f64, f64) = (0.0, 0.0);
    for k in margin..u.len() - margin {
        let t = curvature_at_node(&surface, k, 0.2).unwrap().triple;
        ra = ra.max((da[k] + 2.0 / u[k] * a[k] + sigma * 2.0 / u[k] * t.h).abs());
        rb = rb.max((db[k] + tau * 2.0 * u[k] * t.k).abs());
    }
    assert!(ra <= 1e-5 && rb <= 1e-5, "{family}: {ra:e} {rb:e}");
}

// Constants keep |g11| away from 0 on [0.5, 2]; near-null tangents amplify
// the round-off of the 1e-4 surface stencil.
#[test]
fn linear_identities_timelike_axis() {
    check_linear_identities(SkewFamily::TimelikeAxisXz, Eta::Plus, 0.2, Sign::Plus);
    check_linear_identities(SkewFamily::TimelikeAxisXz, Eta::Minus, 2.2, Sign::Minus);
}

#[test]
fn linear_identities_spacelike_axis() {
    check_linear_identities(SkewFamily::SpacelikeAxisXz, Eta::Plus, 2.2, Sign::Minus);
    check_linear_identities(SkewFamily::SpacelikeAxisXz, Eta::Minus, 0.2, Sign::Plus);
    check_linear_identities(SkewFamily::SpacelikeAxisXy, Eta::Plus, 1.0, Sign::Minus);
}

#[test]
fn quadratic_identity() {
    for (family, eta, a0, sign) in [
        (SkewFamily::TimelikeAxisXz, Eta::Plus, 1.0, Sign::Plus),
        (SkewFamily::SpacelikeAxisXz, Eta::Minus, 1.0, Sign::Plus),
        (SkewFamily::SpacelikeAxisXy, Eta::Plus, 1.0, Sign::Minus),
    ] {
        let req = skew_req(family, "0.2 + 0.1*u", eta, sign, a0);
        let a = build_a_profile(&req).unwrap();
        let curve = solve_skew(&req).unwrap();
        let da = derivative(&curve, a.values.clone());
        for (k, u) in a
            .grid
            .points()
            .iter()
            .enumerate()
            .skip(2)
            .take(a.grid.len() - 4)
        {
            let s = 0.2 + 0.1 * u;
            let rhs = u * u / 4.0 * da[k].powi(2);
            assert!((s * s - rhs).abs() <= 1e-6 * s * s, "{family} u={u}");
        }
    }
}

#[test]
fn csv_file_round_trip_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let req = &mean_cases()[4];
    let curve = solve_mean(req).unwrap();
    export_curve_csv(&curve, &path).unwrap();
    let back = import_curve_csv(&path).unwrap();
    assert_eq!(back.points, curve.points);
    assert!(back.grid.is_uniform());
    let s = build_surface(&back, back.meta.axis, &default_theta_grid(back.meta.axis)).unwrap();
    let r = verify_roundtrip(&s, &req.profile, Which::Mean);
    assert!(r.passes(1e-5), "{r:?}");
}

#[test]
fn skew_graph_orientation_duality() {
    for (family, eta, a0, sign) in [
        (SkewFamily::TimelikeAxisXz, Eta::Plus, 1.0, Sign::Plus),
        (SkewFamily::TimelikeAxisXz, Eta::Minus, 2.5, Sign::Minus),
        (SkewFamily::SpacelikeAxisXz, Eta::Minus, 1.0, Sign::Plus),
    ] {
        let first = skew_req(family, "0.5", eta, sign, a0);
        let mut second = first.clone();
        second.graph_var = GraphVar::Second;
        second.sign = if eta == Eta::Minus {
            match sign {
                Sign::Plus => Sign::Minus,
                Sign::Minus => Sign::Plus,
            }
        } else {
            sign
        };
        let (c1, c2) = (solve_skew(&first).unwrap(), solve_skew(&second).unwrap());
        for (p, q) in c1.points.iter().zip(&c2.points) {
            assert!((*p - *q).euclid_norm() <= 1e-8);
        }
    }
}
