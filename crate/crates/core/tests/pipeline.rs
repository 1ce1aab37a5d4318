mod common;

use inclined_core::catalog::builtin;
use inclined_core::curve::{realize_curve, CurveSpec, SampledCurve};
use inclined_core::helix::{
    analyze_inclined, criterion_terms, detect_inclined, detect_spherical, spherical_image,
    AnalysisOptions, HelixAnalysis, InclinedStatus,
};
use inclined_core::numerics::{constancy_score, finite_difference, mean, rms, ToleranceConfig};
use inclined_core::EuclideanVector;

fn analyze(name: &str) -> HelixAnalysis {
    let tol = ToleranceConfig::default();
    let curve = realize_curve(&builtin(name).unwrap(), &tol).unwrap();
    analyze_inclined(&curve, &tol, &AnalysisOptions::default()).unwrap()
}

#[test]
fn example_one_darboux_field() {
    let a = analyze("example1");
    let tol = ToleranceConfig::default();
    assert!(a.darboux.constancy <= tol.constancy_tol);
    let big = a.darboux.mean.as_slice().iter().map(|x| x.abs()).fold(0.0, f64::max);
    for (j, c) in a.darboux.component_constancy.iter().enumerate() {
        if a.darboux.mean[j].abs() > 1e-3 * big {
            assert!(*c <= tol.constancy_tol);
        }
    }
    let sums = a.harmonic.squared_sum();
    for &i in &a.darboux.retained {
        assert!((a.darboux.vectors[i].norm_squared() - 1.0 - sums[i]).abs() < 1e-10);
    }
    let proj: Vec<f64> = a.darboux.retained.iter().map(|&i| a.pt.tangent()[i].dot(&a.verdict.axis)).collect();
    assert!(constancy_score(&proj) <= tol.constancy_tol);
    assert!((mean(&proj) - a.verdict.varphi.cos()).abs() < 1e-9);
}

#[test]
fn harmonic_vector_rows_hold_on_inclined_curves() {
    for name in ["example1", "example2", "helix3d", "helix4d"] {
        let a = analyze(name);
        let terms = criterion_terms(&a.pt, &a.harmonic);
        let interior: Vec<f64> = a.pt.grid.interior().map(|i| terms[i]).collect();
        assert!(rms(&interior) < 1e-8, "{name}");
        for (h, k) in a.harmonic.values.iter().zip(&a.pt.curvatures) {
            let d = finite_difference(h, &a.pt.grid, 1).unwrap();
            let defect: Vec<f64> = a.pt.grid.interior().map(|i| d[i] + k[i]).collect();
            assert!(rms(&defect) < 1e-6, "{name}");
        }
    }
}

#[test]
fn twisted_cubic_fails_by_a_wide_margin() {
    let a = analyze("cubic");
    let tol = ToleranceConfig::default();
    assert!(a.verdict.absolute_residual > 10.0 * tol.residual_tol);
    assert!(a.darboux.constancy > 10.0 * tol.constancy_tol);
    assert!(a.closed_form_derivative_mismatch.unwrap() > 1e-3);
    assert_eq!(a.verdict.status, InclinedStatus::NotInclined);
}

#[test]
fn transported_normal_image_shares_the_tangent() {
    let a = analyze("example1");
    let m1 = a.pt.normal(1).to_vec();
    assert!(m1.iter().all(|m| (m.norm() - 1.0).abs() < 1e-12));
    let image = SampledCurve::from_samples("M1", a.pt.grid, m1).unwrap();
    let tangents = image.tangents();
    let mut sign = 0.0;
    for i in a.pt.grid.interior() {
        let t = a.pt.tangent()[i];
        let dot = tangents[i].dot(&t);
        if sign == 0.0 {
            sign = dot.signum();
        }
        assert!((tangents[i] - t * sign).norm() < 1e-3, "node {i}");
    }
    // M1' = -k1 T with k1 > 0 along example1.
    assert_eq!(sign, -1.0);
    let reparam = spherical_image(&a.pt, 1).unwrap();
    assert!(reparam.positions.iter().all(|p| (p.norm() - 1.0).abs() < 1e-8));
}

#[test]
fn circles_in_a_plane_of_e4_are_spherical() {
    let tol = ToleranceConfig::default();
    let spec = CurveSpec::new("circle", &["3*cos(s/3)", "0", "3*sin(s/3)", "0"], (0.0, 6.0), 1201).unwrap();
    let curve = realize_curve(&spec, &tol).unwrap();
    let a = analyze_inclined(&curve, &tol, &AnalysisOptions::default()).unwrap();
    let v = detect_spherical(&a.pt, &tol).unwrap();
    assert!(v.is_spherical && v.residual <= tol.residual_tol);
    let far = detect_spherical(&analyze("helix4d").pt, &tol).unwrap();
    assert!(!far.is_spherical);
}

#[test]
fn samples_only_curves_reach_the_same_verdict() {
    let tol = ToleranceConfig::default();
    for (name, inclined) in [("helix4d", true), ("example1", true), ("cubic", false)] {
        let exact = realize_curve(&builtin(name).unwrap(), &tol).unwrap();
        let samples = SampledCurve::from_samples(name, exact.grid, exact.positions.clone()).unwrap();
        let v = detect_inclined(&samples, &tol).unwrap();
        assert_eq!(v.is_inclined, inclined, "{name}");
    }
}

#[test]
fn spec_files_drive_the_pipeline() {
    let text = builtin("helix4d").unwrap().to_text();
    let spec = CurveSpec::from_text(&text).unwrap();
    let tol = ToleranceConfig::default();
    let v = detect_inclined(&realize_curve(&spec, &tol).unwrap(), &tol).unwrap();
    assert!(v.axis.dot(&EuclideanVector::basis(4, 3)) > 1.0 - 1e-9);
    let varphi0: f64 = spec.metadata["varphi0"].parse().unwrap();
    assert!((v.varphi - varphi0).abs() < 1e-6);
}

#[test]
fn random_generic_curves_in_e4_are_not_inclined() {
    let tol = ToleranceConfig::default();
    for seed in 0..3 {
        let (_, curve, _) = common::random_regular_curve(500 + seed, 4, 1201);
        let v = detect_inclined(&curve, &tol).unwrap();
        assert!(!v.is_inclined, "seed {seed}");
    }
}
