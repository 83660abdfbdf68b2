//! Property tests over randomly generated norms and vectors: gauge axioms,
//! derivative-bracket invariants, the scale-parametrized ratio identity,
//! orthogonal-pair sampling, and spec round-trips.

use proptest::prelude::*;

use rectcon::{
    is_bj_orthogonal, mu_pair, mu_ratio, one_sided_derivatives, quotient_derivatives,
    sample_orthogonal_pairs, Norm, NormSpec, Point2, Polytope, Vector,
};

fn polygon_points() -> impl Strategy<Value = Vec<Point2>> {
    proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 3..8)
        .prop_map(|pts| pts.into_iter().map(|(a, b)| [a, b]).collect())
}

fn polygon_norm() -> impl Strategy<Value = Norm> {
    polygon_points().prop_filter_map("degenerate polygon", |pts| Norm::polyhedral(&pts).ok())
}

fn any_planar_norm() -> impl Strategy<Value = Norm> {
    prop_oneof![
        Just(Norm::euclidean(2).expect("euclidean plane")),
        Just(Norm::lp(1.0, 2).expect("l1 plane")),
        Just(Norm::lp(f64::INFINITY, 2).expect("sup-norm plane")),
        (1.2f64..8.0).prop_map(|p| Norm::lp(p, 2).expect("lp plane")),
        polygon_norm(),
    ]
}

fn planar_vector() -> impl Strategy<Value = Vector> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b)| Vector::from([a, b]))
}

/// A vector bounded away from zero, usable as a base point.
fn base_vector() -> impl Strategy<Value = Vector> {
    planar_vector().prop_filter("too close to zero", |v| {
        v.coords().iter().map(|c| c.abs()).fold(0.0, f64::max) > 0.05
    })
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent(pts in polygon_points()) {
        let Ok(poly) = Polytope::canonicalize(&pts) else {
            return Ok(()); // degenerate input: nothing to test
        };
        let again = Polytope::canonicalize(poly.vertices()).expect("canonical vertices stay valid");
        prop_assert_eq!(poly.vertices().len(), again.vertices().len());
        for (a, b) in poly.vertices().iter().zip(again.vertices()) {
            prop_assert!((a[0] - b[0]).abs() <= 1e-12 && (a[1] - b[1]).abs() <= 1e-12,
                "vertex moved: {:?} -> {:?}", a, b);
        }
    }

    #[test]
    fn gauge_satisfies_norm_axioms(
        norm in any_planar_norm(),
        x in planar_vector(),
        y in planar_vector(),
        alpha in -4.0f64..4.0,
    ) {
        let nx = norm.eval(&x).unwrap();
        let ny = norm.eval(&y).unwrap();

        let scaled = norm.eval(&x.scale(alpha)).unwrap();
        prop_assert!((scaled - alpha.abs() * nx).abs() <= 1e-9 * (1.0 + scaled),
            "homogeneity: |{alpha}| * {nx} vs {scaled}");

        let sum = norm.eval(&x.add(&y)).unwrap();
        prop_assert!(sum <= nx + ny + 1e-9 * (1.0 + nx + ny),
            "triangle inequality: {sum} > {nx} + {ny}");

        let negated = norm.eval(&x.scale(-1.0)).unwrap();
        prop_assert!((negated - nx).abs() <= 1e-12 * (1.0 + nx), "symmetry: {negated} vs {nx}");
    }

    #[test]
    fn lp_extremes_match_their_polytopes(v in planar_vector()) {
        let diamond = Norm::lp(1.0, 2).unwrap().to_polytope().expect("l1 ball is a polygon");
        let square = Norm::lp(f64::INFINITY, 2).unwrap().to_polytope().expect("sup ball is a polygon");
        let p = [v.coords()[0], v.coords()[1]];

        let l1 = Norm::lp(1.0, 2).unwrap().eval(&v).unwrap();
        prop_assert!((l1 - diamond.gauge(p)).abs() <= 1e-12 * (1.0 + l1));

        let linf = Norm::lp(f64::INFINITY, 2).unwrap().eval(&v).unwrap();
        prop_assert!((linf - square.gauge(p)).abs() <= 1e-12 * (1.0 + linf));
    }

    #[test]
    fn derivative_bracket_is_ordered_and_bounded(
        norm in any_planar_norm(),
        x in base_vector(),
        y in planar_vector(),
    ) {
        let (dm, dp) = one_sided_derivatives(&norm, &x, &y).unwrap();
        prop_assert!(dm <= dp + 1e-12, "bracket inverted: [{dm}, {dp}]");
        // |g'| <= ||y||: the norm is 1-Lipschitz along any direction.
        let ny = norm.eval(&y).unwrap();
        prop_assert!(dm.abs() <= ny + 1e-9 && dp.abs() <= ny + 1e-9,
            "bracket [{dm}, {dp}] exceeds the slope bound {ny}");
    }

    #[test]
    fn quotient_ladder_brackets_polyhedral_derivatives(
        norm in polygon_norm(),
        x in base_vector(),
        y in planar_vector(),
    ) {
        let (dm, dp) = one_sided_derivatives(&norm, &x, &y).unwrap();
        let (qm, qp) = quotient_derivatives(&norm, &x, &y).unwrap();
        prop_assert!(qm <= dm + 1e-7 && dp <= qp + 1e-7,
            "exact bracket [{dm}, {dp}] not inside ladder bracket [{qm}, {qp}]");
        prop_assert!((dm - qm).abs() <= 1e-6 && (dp - qp).abs() <= 1e-6,
            "methods disagree: exact [{dm}, {dp}] vs ladder [{qm}, {qp}]");
    }

    #[test]
    fn mu_ratio_is_the_scale_parametrized_pair(
        norm in any_planar_norm(),
        x in base_vector(),
        y in base_vector(),
        t in 0.05f64..4.0,
    ) {
        let x = norm.normalize(&x).unwrap();
        let y = norm.normalize(&y).unwrap();
        let denominator = norm.eval(&y.add_scaled(t, &x)).unwrap();
        prop_assume!(denominator > 0.1);

        let ratio = mu_ratio(&norm, &x, &y, t).unwrap();
        let pair = mu_pair(&norm, &x.scale(t), &y).unwrap();
        prop_assert!((ratio - pair).abs() <= 1e-9 * (1.0 + ratio),
            "mu_ratio = {ratio} vs mu_pair = {pair} at t = {t}");
    }

    #[test]
    fn sampled_orthogonal_pairs_are_certified_units(
        norm in any_planar_norm(),
        seed in any::<u64>(),
    ) {
        let pairs = sample_orthogonal_pairs(&norm, 4, seed, 1e-9).unwrap();
        prop_assert_eq!(pairs.len(), 4);
        for (x, y) in &pairs {
            let nx = norm.eval(x).unwrap();
            let ny = norm.eval(y).unwrap();
            prop_assert!((nx - 1.0).abs() <= 1e-9 && (ny - 1.0).abs() <= 1e-9,
                "pair is not unit: ||x|| = {nx}, ||y|| = {ny}");
            let (orthogonal, cert) = is_bj_orthogonal(&norm, x, y, 1e-9).unwrap();
            prop_assert!(orthogonal, "sampled pair not orthogonal: bracket [{}, {}]",
                cert.d_minus, cert.d_plus);
        }
    }

    #[test]
    fn norm_spec_round_trips(norm in any_planar_norm(), v in planar_vector()) {
        let spec = norm.to_spec();
        let text = serde_json::to_string(&spec).unwrap();
        let parsed: NormSpec = serde_json::from_str(&text).unwrap();
        let rebuilt = Norm::from_spec(&parsed).unwrap();

        prop_assert_eq!(norm.describe(), rebuilt.describe());
        let before = norm.eval(&v).unwrap();
        let after = rebuilt.eval(&v).unwrap();
        prop_assert!((before - after).abs() <= 1e-12 * (1.0 + before),
            "eval changed across the round-trip: {before} vs {after}");
    }
}
