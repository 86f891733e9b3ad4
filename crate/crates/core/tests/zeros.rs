use hypratio::zeros::{
    argument_principle_count, locate_zeros, pole_free_condition, runckel_count, PoleFreeCondition,
    ZeroKind,
};
use hypratio::{hyp2f1, hyp2f1_derivative, CutPlanePoint, Params, Precision};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn far_from_integers(xs: &[f64], gap: f64) -> bool {
    xs.iter().all(|x| (x - x.round()).abs() >= gap)
}

pub fn sample_generic(rng: &mut ChaCha8Rng) -> Params {
    loop {
        let a: f64 = rng.gen_range(-5.0..5.0);
        let b: f64 = rng.gen_range(-5.0..5.0);
        let c: f64 = rng.gen_range(-5.0..5.0);
        if far_from_integers(&[a, b, c, c - a, c - b, c - a - b, a - b], 1e-3) {
            return Params::new(a, b, c).unwrap();
        }
    }
}

#[test]
fn located_zeros_match_the_count() {
    let prec = Precision::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let params = sample_generic(&mut rng);
        let (nu, degenerate) = runckel_count(&params).unwrap();
        assert!(!degenerate);
        let rep = locate_zeros(&params, &prec).unwrap_or_else(|e| panic!("{params:?}: {e}"));
        assert_eq!(rep.multiplicity_total(), nu, "{params:?}");
        for z in &rep.zeros {
            let pt = CutPlanePoint::new(z.location).unwrap();
            let step = hyp2f1(&params, &pt, &prec).unwrap()
                / hyp2f1_derivative(&params, &pt, &prec).unwrap();
            assert!(
                step.norm() <= 1e-9 * z.location.norm().max(1.0),
                "{params:?} at {:?}: {step}",
                z.location
            );
            assert!(!(z.location.im == 0.0 && z.location.re >= 1.0));
            assert!(z.location.norm() > 0.0);
            if z.kind == ZeroKind::ComplexPair {
                assert!(z.location.im > 0.0);
            }
        }
    }
}

#[test]
fn pole_free_iff_zero_count_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..2000 {
        let params = sample_generic(&mut rng);
        let (nu, _) = runckel_count(&params).unwrap();
        assert_eq!(
            pole_free_condition(&params).is_some(),
            nu == 0,
            "{params:?}"
        );
    }
}

#[test]
fn count_symmetries() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let p = sample_generic(&mut rng);
        let nu = runckel_count(&p).unwrap();
        assert_eq!(nu, runckel_count(&p.swapped()).unwrap());
        assert_eq!(nu, runckel_count(&p.euler()).unwrap());
    }
}

#[test]
fn condition_v_floor_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut seen = 0;
    for _ in 0..20000 {
        let p = Params::new(
            rng.gen_range(-6.0..0.0),
            rng.gen_range(-6.0..0.0),
            rng.gen_range(-6.0..0.0),
        )
        .unwrap();
        if pole_free_condition(&p) == Some(PoleFreeCondition::V) {
            let q = hypratio::XiQuadruple::new(&p);
            assert_eq!(q.xi[0].floor() + 1.0, q.xi[3].floor());
            assert_eq!(q.xi[1].floor(), q.xi[2].floor());
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn winding_count_on_growing_squares() {
    let prec = Precision::default();
    let params = Params::new(-2.3, 1.4, 0.7).unwrap();
    let (nu, _) = runckel_count(&params).unwrap();
    let counted = [4.0, 16.0, 64.0]
        .iter()
        .map(|&r| argument_principle_count(&params, r, &prec).unwrap())
        .max()
        .unwrap();
    assert_eq!(counted, nu);
}
