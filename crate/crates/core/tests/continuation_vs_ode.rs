use hypratio::{hyp2f1, hyp2f1_ode_oracle, Bank, CutPlanePoint, Params, Precision};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check(params: &Params, pt: &CutPlanePoint, tol: f64) {
    let prec = Precision::default();
    let v = hyp2f1(params, pt, &prec).unwrap();
    let o = hyp2f1_ode_oracle(params, pt, &prec).unwrap();
    let scale = o.norm().max(1e-300);
    assert!(
        (v - o).norm() <= tol * scale,
        "{params:?} at {:?}: {v} vs {o} (rel {:.2e})",
        pt,
        (v - o).norm() / scale
    );
}

fn random_point(rng: &mut ChaCha8Rng) -> CutPlanePoint {
    loop {
        let r = 10f64.powf(rng.gen_range(-1.0..2.0));
        let th = rng.gen_range(-3.1..3.1);
        let z = Complex64::from_polar(r, th);
        if (z - 1.0).norm() > 0.05 && z.norm() > 0.05 {
            if let Ok(p) = CutPlanePoint::new(z) {
                return p;
            }
        }
    }
}

#[test]
fn generic_parameters_across_the_plane() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let params = Params::new(
            rng.gen_range(-2.5..2.5),
            rng.gen_range(-2.5..2.5),
            rng.gen_range(0.2..3.5),
        )
        .unwrap();
        for _ in 0..4 {
            check(&params, &random_point(&mut rng), 1e-9);
        }
    }
}

#[test]
fn exceptional_parameters_across_the_plane() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..40 {
        let a: f64 = rng.gen_range(-1.5..1.5);
        let k = rng.gen_range(-2..=2) as f64;
        let (b, c) = match i % 3 {
            // a - b integer
            0 => (a + k, rng.gen_range(0.3..3.0)),
            // c - a - b integer
            1 => {
                let b = rng.gen_range(-1.5..1.5);
                (b, a + b + k + if a + b + k < 0.2 { 3.0 } else { 0.0 })
            }
            _ => (a + k, 2.0 * a + k + 2.0),
        };
        let Ok(params) = Params::new(a, b, c) else {
            continue;
        };
        for _ in 0..3 {
            check(&params, &random_point(&mut rng), 1e-8);
        }
    }
}

#[test]
fn both_banks_of_the_cut() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let params = Params::new(
            rng.gen_range(-1.5..2.5),
            rng.gen_range(-1.5..2.5),
            rng.gen_range(0.2..3.5),
        )
        .unwrap();
        let x = 1.0 + 10f64.powf(rng.gen_range(-1.0..2.0));
        for bank in [Bank::Upper, Bank::Lower] {
            check(&params, &CutPlanePoint::on_cut(x, bank).unwrap(), 1e-9);
        }
    }
}

#[test]
fn near_sixth_roots_of_unity() {
    let params = Params::new(0.37, 1.41, 2.13).unwrap();
    for &(re, im) in &[(0.5, 0.866), (0.5, -0.866), (0.45, 0.9), (0.6, 0.8)] {
        check(
            &params,
            &CutPlanePoint::new(Complex64::new(re, im)).unwrap(),
            1e-10,
        );
    }
}
