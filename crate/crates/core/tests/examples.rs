mod common;

use common::{example1, example2, example3, example3_q_form, example3_residue, example3_t_form};
use hypratio::representation::{build_representation, gauss_ratio_repr, ratio_direct, Strategy};
use hypratio::zeros::{locate_zeros, residue_at_pole, residue_by_contour};
use hypratio::{CutPlanePoint, Params, Precision, QuadratureConfig, Shift};
use num_complex::Complex64;

fn points() -> Vec<Complex64> {
    [
        (-7.0, 0.0),
        (-1.0, 0.0),
        (0.4, 0.0),
        (0.85, 0.0),
        (0.3, 0.6),
        (-2.0, 2.0),
        (1.5, 0.8),
        (3.0, -1.5),
        (0.9, -0.5),
        (12.0, 4.0),
    ]
    .iter()
    .map(|&(x, y)| Complex64::new(x, y))
    .collect()
}

fn check(label: &str, got: Complex64, want: Complex64, tol: f64) {
    let err = (got - want).norm() / want.norm().max(1.0);
    assert!(err <= tol, "{label}: {got} vs {want} (rel {err:.2e})");
}

fn direct(p: &Params, s: Shift, z: Complex64) -> Complex64 {
    ratio_direct(p, s, &CutPlanePoint::new(z).unwrap(), &Precision::default()).unwrap()
}

fn library(p: &Params, s: Shift, strategy: Strategy, z: Complex64) -> Complex64 {
    let prec = Precision::default();
    let rep = build_representation(p, s, strategy, &prec).unwrap();
    rep.eval(
        &CutPlanePoint::new(z).unwrap(),
        &QuadratureConfig::default(),
        &prec,
    )
    .unwrap()
}

#[test]
fn r111_on_both_sides_of_c_equal_a_plus_b() {
    let shift = Shift::new(1, 1, 1);
    for p in [
        Params::new(0.3, 0.65, 1.55).unwrap(),
        Params::new(0.8, 0.95, 1.3).unwrap(),
    ] {
        for z in points() {
            let closed = example1(&p, z);
            check("closed form vs direct", closed, direct(&p, shift, z), 1e-8);
            check(
                "library vs closed form",
                library(&p, shift, Strategy::Auto, z),
                closed,
                1e-8,
            );
        }
    }
}

#[test]
fn r00m1_with_constant_correction() {
    let shift = Shift::new(0, 0, -1);
    for p in [
        Params::new(0.35, 0.8, 2.45).unwrap(),
        Params::new(1.3, 0.6, 1.75).unwrap(),
    ] {
        for z in points() {
            let closed = example2(&p, z);
            check("closed form vs direct", closed, direct(&p, shift, z), 1e-8);
            check(
                "library vs closed form",
                library(&p, shift, Strategy::QCorrection, z),
                closed,
                1e-8,
            );
        }
    }
}

#[test]
fn r011_pole_free_closed_form() {
    let shift = Shift::new(0, 1, 1);
    let prec = Precision::default();
    let quad = QuadratureConfig::default();
    for p in [
        Params::new(0.4, 0.75, 1.6).unwrap(),
        Params::new(0.9, 0.35, 2.2).unwrap(),
    ] {
        for z in points() {
            let closed = example3(&p, z);
            check("closed form vs direct", closed, direct(&p, shift, z), 1e-8);
            let wrapper =
                gauss_ratio_repr(&p, &CutPlanePoint::new(z).unwrap(), &quad, &prec).unwrap();
            check("wrapper vs closed form", wrapper, closed, 1e-8);
        }
    }
}

#[test]
fn r011_with_a_single_real_pole() {
    let shift = Shift::new(0, 1, 1);
    let prec = Precision::default();
    // 0 < c < a < c + 1 and -1 < b < 0
    for p in [
        Params::new(1.2, -0.4, 0.5).unwrap(),
        Params::new(2.1, -0.75, 1.45).unwrap(),
    ] {
        let report = locate_zeros(&p, &prec).unwrap();
        assert_eq!(report.zeros.len(), 1);
        let beta = report.zeros[0].location.re;
        assert!(beta > 0.0 && beta < 1.0, "β1 = {beta}");

        let bz = Complex64::new(beta, 0.0);
        let a1 = example3_residue(&p, beta);
        let by_derivative = residue_at_pole(&p, shift, bz, &prec).unwrap();
        let by_contour =
            residue_by_contour(&p, shift, bz, 1e-2 * beta.min(1.0 - beta), 256, &prec).unwrap();
        assert!((a1 - by_derivative).norm() <= 1e-9 * a1.abs().max(1.0));
        assert!((a1 - by_contour).norm() <= 1e-9 * a1.abs().max(1.0));

        let t_rep = build_representation(&p, shift, Strategy::TMultiplier, &prec).unwrap();
        assert_eq!((t_rep.m, t_rep.n, t_rep.d), (0, 0, 1));
        for z in points().into_iter().filter(|z| (z - beta).norm() > 0.05) {
            let want = direct(&p, shift, z);
            check(
                "t-multiplier closed form",
                example3_t_form(&p, beta, z),
                want,
                1e-8,
            );
            check(
                "q-correction closed form",
                example3_q_form(&p, beta, a1, z),
                want,
                1e-8,
            );
            check(
                "library t-multiplier",
                library(&p, shift, Strategy::TMultiplier, z),
                want,
                1e-8,
            );
            check(
                "library q-correction",
                library(&p, shift, Strategy::QCorrection, z),
                want,
                1e-8,
            );
        }
    }
}
