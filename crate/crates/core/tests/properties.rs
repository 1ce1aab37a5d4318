mod common;

use inclined_core::curve::{realize_curve, reparametrize_by_arclength};
use inclined_core::expr::{evaluate, parse_expression, BinOp, Expr, Func};
use inclined_core::frames::{bishop_via_rotation_angle, compute_frenet, compute_pt_frame};
use inclined_core::helix::{analyze_inclined, AnalysisOptions, InclinedStatus};
use inclined_core::numerics::{
    cumulative_antiderivative, finite_difference, integrate_linear_ode, rms,
    smallest_eigenvector_symmetric, SampleGrid, ToleranceConfig,
};
use proptest::prelude::*;

fn leaf(inside_integral: bool) -> BoxedStrategy<Expr> {
    let var = if inside_integral { Expr::Bound } else { Expr::Param };
    prop_oneof![
        (0u32..200).prop_map(|n| Expr::Const(n as f64 / 8.0)),
        Just(var),
        Just(Expr::Const(std::f64::consts::PI)),
    ]
    .boxed()
}

fn expr_tree(inside_integral: bool) -> BoxedStrategy<Expr> {
    leaf(inside_integral)
        .prop_recursive(4, 24, 2, move |inner| {
            let op = prop_oneof![
                Just(BinOp::Add),
                Just(BinOp::Sub),
                Just(BinOp::Mul),
                Just(BinOp::Div),
                Just(BinOp::Pow)
            ];
            let func = prop_oneof![
                Just(Func::Sin),
                Just(Func::Cos),
                Just(Func::Tan),
                Just(Func::Exp),
                Just(Func::Ln),
                Just(Func::Sqrt),
                Just(Func::Abs)
            ];
            prop_oneof![
                (op, inner.clone(), inner.clone()).prop_map(|(o, a, b)| Expr::binary(o, a, b)),
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (func, inner).prop_map(|(f, a)| Expr::Call(f, Box::new(a))),
            ]
        })
        .boxed()
}

fn outer_expr() -> impl Strategy<Value = Expr> {
    prop_oneof![
        4 => expr_tree(false),
        1 => (expr_tree(true), -4i32..4).prop_map(|(e, lo)| Expr::Integral {
            integrand: Box::new(e),
            lower: lo as f64 / 2.0,
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printed_ast_parses_back_identically(e in outer_expr()) {
        let text = e.to_string();
        let back = parse_expression(&text).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn symmetric_eigenvector_residual(
        entries in prop::collection::vec(-10.0f64..10.0, 15),
        d in 2usize..=5,
    ) {
        let mut a = vec![vec![0.0; d]; d];
        let mut it = entries.iter();
        for i in 0..d {
            for j in 0..=i {
                let x = *it.next().unwrap();
                a[i][j] = x;
                a[j][i] = x;
            }
        }
        let (lambda, v) = smallest_eigenvector_symmetric(&a).unwrap();
        let norm_a = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
        let residual: f64 = (0..d)
            .map(|i| (0..d).map(|j| a[i][j] * v[j]).sum::<f64>() - lambda * v[i])
            .map(|r| r * r)
            .sum::<f64>()
            .sqrt();
        prop_assert!(residual <= 1e-9 * norm_a.max(1e-300));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integral_nodes_differentiate_to_their_integrand(
        a in -2.0f64..2.0,
        b in 0.2f64..2.0,
        c in -1.0f64..1.0,
        s in -5.0f64..5.0,
    ) {
        let integrand = format!("({a:?})*sin(({b:?})*u) + ({c:?})*u^2");
        let e = parse_expression(&format!("integral({integrand}, 0, s)")).unwrap();
        let h = 1e-2;
        let f = |x: f64| evaluate(&e, x).unwrap();
        let d = (f(s - 2.0 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2.0 * h)) / (12.0 * h);
        let exact = a * (b * s).sin() + c * s * s;
        prop_assert!((d - exact).abs() <= 1e-6 * (1.0 + exact.abs()), "{} vs {}", d, exact);
    }

    #[test]
    fn differentiating_an_antiderivative_recovers_it(
        a in -2.0f64..2.0,
        w in 0.2f64..3.0,
        c in -1.0f64..1.0,
        constant in -3.0f64..3.0,
    ) {
        let grid = SampleGrid::new(-1.0, 2.0, 1001).unwrap();
        let values: Vec<f64> = grid.values().iter().map(|s| a * (w * s).cos() + c * s).collect();
        let anti = cumulative_antiderivative(&values, &grid, constant);
        prop_assert_eq!(anti[0], constant);
        let back = finite_difference(&anti, &grid, 1).unwrap();
        let diff: Vec<f64> = back.iter().zip(&values).map(|(x, y)| x - y).collect();
        prop_assert!(rms(&diff) <= 1e-5);
    }

    #[test]
    fn skew_generators_preserve_the_norm(
        entries in prop::collection::vec(-3.0f64..3.0, 12),
        init in prop::collection::vec(-1.0f64..1.0, 4),
    ) {
        prop_assume!(init.iter().map(|x| x * x).sum::<f64>() > 1e-2);
        let grid = SampleGrid::new(0.0, 1.0, 1001).unwrap();
        let generator = |s: f64| {
            let mut m = [[0.0; 4]; 4];
            let mut k = 0;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let x = entries[k] + entries[k + 6] * (3.0 * s).sin();
                    m[i][j] = x;
                    m[j][i] = -x;
                    k += 1;
                }
            }
            m
        };
        let states = integrate_linear_ode(
            |s, y| {
                let m = generator(s);
                (0..4).map(|i| (0..4).map(|j| m[i][j] * y[j]).sum()).collect()
            },
            &init,
            &grid,
        )
        .unwrap();
        let n0 = init.iter().map(|x| x * x).sum::<f64>().sqrt();
        for y in &states {
            let n = y.iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!((n - n0).abs() <= 1e-7);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reparametrized_curves_have_unit_speed(seed in 0u64..1_000_000) {
        let (_, curve, _) = common::random_regular_curve(seed, 3, 801);
        let unit = reparametrize_by_arclength(&curve).unwrap();
        prop_assert!(unit.unit_speed);
        for i in unit.grid.interior() {
            let d1 = &unit.derivative(1)[i];
            prop_assert!((d1.norm_squared() - 1.0).abs() <= 1e-4);
            prop_assert!(d1.dot(&unit.derivative(2)[i]).abs() <= 1e-3);
        }
    }

    #[test]
    fn frame_fields_satisfy_their_structure_equations(seed in 0u64..1_000_000, four in any::<bool>()) {
        let dim = if four { 4 } else { 3 };
        let (_, curve, frenet) = common::random_regular_curve(seed, dim, 1201);
        let pt = compute_pt_frame(&curve, &frenet).unwrap();
        for frame in [&frenet, &pt] {
            prop_assert!(frame.equation_residual().unwrap() <= 1e-3);
            prop_assert!(frame.orthonormality_error() <= 1e-8);
            prop_assert!(frame.determinants().iter().all(|d| (d - 1.0).abs() <= 1e-6));
        }
        for i in 0..pt.len() {
            let norm = pt.curvatures.iter().map(|k| k[i] * k[i]).sum::<f64>().sqrt();
            prop_assert!((norm - frenet.curvature(1)[i]).abs() <= 1e-5);
        }
        let derivs = pt.derivatives().unwrap();
        for a in 1..dim {
            for b in 1..dim {
                for i in pt.grid.interior() {
                    prop_assert!(derivs[a][i].dot(&pt.vectors[b][i]).abs() <= 1e-4);
                }
            }
        }
    }

    #[test]
    fn transported_and_rotation_angle_frames_coincide(seed in 0u64..1_000_000) {
        let (_, curve, _) = common::random_regular_curve(seed, 3, 2401);
        let curve = reparametrize_by_arclength(&curve).unwrap();
        let frenet = compute_frenet(&curve).unwrap();
        let pt = compute_pt_frame(&curve, &frenet).unwrap();
        let (bishop, _) = bishop_via_rotation_angle(&curve, &frenet).unwrap();
        for i in 0..curve.len() {
            for a in 1..3 {
                prop_assert!((pt.vectors[a][i] - bishop.vectors[a][i]).norm() <= 1e-4);
            }
        }
    }

    #[test]
    fn constructed_inclined_curves_meet_every_characterization(
        phi in 0.3f64..1.3,
        a in 0.5f64..2.0,
        b in 0.1f64..1.0,
    ) {
        let tol = ToleranceConfig::default();
        let curve = realize_curve(&common::inclined_e3(phi, a, b, 1201), &tol).unwrap();
        let an = analyze_inclined(&curve, &tol, &AnalysisOptions::default()).unwrap();
        let v = &an.verdict;
        prop_assert_eq!(v.status, InclinedStatus::Inclined);
        prop_assert!((v.varphi - phi).abs() <= 1e-6);
        prop_assert!(v.axis[2] >= 1.0 - 1e-9);
        prop_assert!(v.axis_agreement >= 1.0 - 1e-3);
        prop_assert!(an.lancret_constancy.unwrap() <= tol.constancy_tol);
        prop_assert!(v.harmonic_sum_constancy <= tol.constancy_tol);
        let tan2 = phi.tan().powi(2);
        prop_assert!((v.harmonic_sum_mean - tan2).abs() <= 1e-3 * tan2);
        prop_assert!(an.closed_form_derivative_mismatch.unwrap() <= 1e-3);
        let t = an.pt.tangent();
        let mut defect = Vec::new();
        for i in an.pt.grid.interior() {
            let tx = t[i].dot(&v.axis);
            for (j, h) in an.harmonic.values.iter().enumerate() {
                defect.push(an.pt.vectors[j + 1][i].dot(&v.axis) - h[i] * tx);
            }
        }
        prop_assert!(rms(&defect) <= 1e-3);
    }

    #[test]
    fn constructed_inclined_curves_in_e4(
        phi in 0.4f64..1.2,
        wobble in 0.15f64..0.5,
        rate in 0.7f64..1.6,
    ) {
        let tol = ToleranceConfig::default();
        let curve = realize_curve(&common::inclined_e4(phi, wobble, rate, 1201), &tol).unwrap();
        let an = analyze_inclined(&curve, &tol, &AnalysisOptions::default()).unwrap();
        let v = &an.verdict;
        prop_assert_eq!(v.status, InclinedStatus::Inclined);
        prop_assert!((v.varphi - phi).abs() <= 1e-6);
        prop_assert!(v.axis[3] >= 1.0 - 1e-6);
    }

    #[test]
    fn generic_curves_are_not_inclined_and_agree_with_lancret(seed in 0u64..1_000_000) {
        let tol = ToleranceConfig::default();
        let (_, curve, _) = common::random_regular_curve(seed, 3, 1201);
        let an = analyze_inclined(&curve, &tol, &AnalysisOptions::default()).unwrap();
        let lancret = an.lancret_constancy.unwrap() <= tol.constancy_tol;
        prop_assert_eq!(an.verdict.is_inclined, lancret);
        prop_assert_eq!(an.verdict.is_inclined, an.verdict.criterion_residual <= tol.residual_tol
            && an.verdict.darboux_constancy <= tol.constancy_tol);
    }
}
