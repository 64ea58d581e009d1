use std::f64::consts::PI;

use confinv_core::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn l_shape() -> Vec<Complex64> {
    vec![c(6.0, 1.0), c(1.0, 1.0), c(1.0, 4.0), c(-1.0, 4.0), c(-1.0, -1.0), c(6.0, -1.0)]
}

fn pentagon() -> Vec<Complex64> {
    vec![c(2.0, -2.0), c(2.0, 1.0), c(0.0, 2.0), c(-2.0, 0.0), c(-1.0, -3.0)]
}

fn thirteen_gon() -> Vec<Complex64> {
    vec![
        c(4.0, 0.0),
        c(4.0, 2.0),
        c(2.0, 4.0),
        c(0.0, 4.0),
        c(-1.0, 3.0),
        c(-2.0, 3.0),
        c(-3.0, 1.0),
        c(-3.0, 0.0),
        c(-2.0, -2.0),
        c(-1.0, -3.0),
        c(0.0, -3.0),
        c(1.0, -2.0),
        c(3.0, -2.0),
    ]
}

fn square() -> Vec<Complex64> {
    vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]
}

#[test]
fn l_shape_distances_near_reference_values() {
    let curve = make_polygon(&l_shape(), 256, DEFAULT_GRADING).unwrap();
    let metric = HyperbolicMetric::new(&curve, c(0.0, 0.0), &SolverConfig::default()).unwrap();
    let g = metric.distance(c(0.0, 2.0), c(1.0, 0.0)).unwrap();
    assert!((g - 3.50661554819086).abs() < 1e-6, "{g}");
    let forward = metric.distance(c(0.0, 2.0), c(2.0, 0.0)).unwrap();
    let backward = metric.distance(c(2.0, 0.0), c(0.0, 2.0)).unwrap();
    assert!((forward - backward).abs() < 1e-12);
    assert!((forward - 4.91711064317017).abs() < 1e-6);
}

#[test]
fn l_shape_field_near_three() {
    // The mask keeps 10 node spacings from the boundary; n_s = 512 leaves
    // the arm centre lines unmasked.
    let curve = make_polygon(&l_shape(), 512, DEFAULT_GRADING).unwrap();
    let grid = GridSpec { xmin: -1.0, xmax: 6.0, ymin: -1.0, ymax: 4.0, nx: 71, ny: 51 };
    let field = hyperbolic_distance_field(&curve, c(0.0, 0.0), c(0.0, 2.0), &grid, &SolverConfig::default()).unwrap();
    assert_eq!(field.nearest(c(0.0, 2.0)), Some(0.0));
    let near_three = field.nearest(c(3.0, 0.0)).unwrap();
    assert!((near_three - 6.47927360380709).abs() < 1e-2);
    // Exterior of the L (upper right block) is masked.
    assert!(field.nearest(c(4.0, 3.0)).is_none());
    for (_, _, inside, value) in field.rows() {
        assert_eq!(inside, value.is_finite());
    }
}

#[test]
fn regular_polygons_have_negative_modulus() {
    for sides in [3, 5, 8, 13] {
        let curve = make_polygon(&regular_polygon_vertices(sides), 128, DEFAULT_GRADING).unwrap();
        let m = reduced_modulus(&curve, Base::Point(c(0.0, 0.0)), &SolverConfig::default()).unwrap();
        assert!(m < 0.0, "{sides}: {m}");
    }
}

#[test]
fn pentagon_side_measure_has_the_right_limits() {
    let hm = PolygonHarmonicMeasure::new(&pentagon(), c(0.0, -0.5), 256, DEFAULT_GRADING, &SolverConfig::default()).unwrap();
    // Side 2 runs from 2i to -2; its midpoint is -1 + i.
    let toward = [c(-0.9, 0.9), c(-0.97, 0.97), c(-0.995, 0.995)];
    let values: Vec<f64> = toward.iter().map(|&z| hm.eval(2, z).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] > w[0]), "{values:?}");
    assert!(values[2] > 0.95);
    assert!(hm.eval(2, c(1.9, -1.9)).unwrap() < 0.05);
}

#[test]
fn thirteen_gon_runs_at_production_size() {
    let verts = thirteen_gon();
    let curve = make_polygon(&verts, 512, DEFAULT_GRADING).unwrap();
    let alpha = interior_point(&curve);
    let hm = PolygonHarmonicMeasure::new(&verts, alpha, 512, DEFAULT_GRADING, &SolverConfig::default()).unwrap();
    assert_eq!(hm.sides(), 13);
    for z in [c(0.0, 0.0), c(2.5, 1.0), c(-2.0, 1.5), c(0.5, -2.0)] {
        assert!((hm.sum(z).unwrap() - 1.0).abs() < 1e-8);
    }
}

#[test]
fn square_side_quarter_through_free_function() {
    let w = harmonic_measure(&square(), 0, c(0.1, 0.0), &[c(0.0, 0.0)], 128, DEFAULT_GRADING, &SolverConfig::default()).unwrap();
    assert!((w[0] - 0.25).abs() < 1e-10);
}

fn quad_cfg() -> QuadConfig {
    QuadConfig {
        n_s: 256,
        ..QuadConfig::default()
    }
}

#[test]
fn general_quad_on_the_unit_disk_matches_direct() {
    let angles = [1.5 * PI, 1.75 * PI, 0.25 * PI, 0.5 * PI];
    let circle = make_ellipse(1.0, 1.0, 256, EllipseKind::Interior).unwrap();
    // Parameters must increase: start at θ = π/4.
    let params = [0.25 * PI, 0.5 * PI, 1.5 * PI, 1.75 * PI];
    let general = quad_modulus_general(&circle, c(0.0, 0.0), params, &quad_cfg()).unwrap();
    let direct = quad_modulus(params.map(Complex64::cis), &quad_cfg()).unwrap();
    assert!((general.r - direct.r).abs() < 1e-10);
    // Q₂ with the labels shifted by two places: same modulus √2.
    let q2 = quad_modulus(angles.map(Complex64::cis), &quad_cfg()).unwrap();
    assert!((q2.r - general.r).abs() < 1e-10);
    assert!((q2.r - 2f64.sqrt()).abs() < 1e-8);
}

#[test]
fn square_with_marked_corners_has_modulus_one() {
    let curve = make_polygon(&square(), 128, DEFAULT_GRADING).unwrap();
    let params = [0.0, 0.5 * PI, PI, 1.5 * PI];
    let trace = quad_modulus_general(&curve, c(0.0, 0.0), params, &quad_cfg()).unwrap();
    assert!((trace.r - 1.0).abs() < 1e-8, "{}", trace.r);
}

#[test]
fn shifted_marks_give_reciprocal_modulus() {
    let curve = make_ellipse(1.0, 0.7, 256, EllipseKind::Interior).unwrap();
    let alpha = c(0.1, 0.0);
    let params = [0.3, 1.1, 3.0, 4.4];
    let r = quad_modulus_general(&curve, alpha, params, &quad_cfg()).unwrap().r;
    let shifted = [1.1, 3.0, 4.4, 0.3 + 2.0 * PI];
    // The fourth parameter wraps past 2π; feed the disk points directly.
    let map = map_bounded(&curve, alpha, Normalization::Unit, &SolverConfig::default()).unwrap();
    let z = shifted.map(|t| map.boundary_point(t).unwrap());
    let r_shift = quad_modulus(z, &quad_cfg()).unwrap().r;
    assert!((r * r_shift - 1.0).abs() < 1e-8);
    let oracle_pts = params.map(|t| map.boundary_angle(t).unwrap());
    let base = oracle_pts[0];
    let theta = [oracle_pts[1] - base, oracle_pts[2] - base, oracle_pts[3] - base];
    let exact = oracle_quad_r(theta[0], theta[1], theta[2]).unwrap();
    assert!((r - exact).abs() < 1e-8 * exact);
}

#[test]
fn slit_disk_families_agree_with_closed_forms() {
    let cfg = SolverConfig::default();
    for case in [SlitCase::G1 { r: 0.3 }, SlitCase::G2 { r: 0.7 }, SlitCase::G3 { r: 0.6, a: 0.25 }] {
        let m = reduced_modulus_slit_disk(case, 512, DEFAULT_GRADING, &cfg).unwrap();
        let exact = oracle_reduced_modulus(OracleCase::Slit(case)).unwrap();
        assert!((m - exact).abs() < 1e-8, "{case:?}: {m} vs {exact}");
    }
}

#[test]
fn interior_ellipse_matches_elliptic_oracle() {
    let r = 1.0f64;
    let curve = make_ellipse(r.cosh(), r.sinh(), 1024, EllipseKind::Interior).unwrap();
    let m = reduced_modulus(&curve, Base::Point(c(0.0, 0.0)), &SolverConfig::default()).unwrap();
    let exact = oracle_reduced_modulus(OracleCase::InteriorEllipse { r }).unwrap();
    assert!((m - exact).abs() < 1e-10);
}
