#![allow(dead_code)]

use hypratio::{Bank, CutPlanePoint, Params};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn far_from_integers(xs: &[f64], gap: f64) -> bool {
    xs.iter().all(|x| (x - x.round()).abs() >= gap)
}

/// A triple in (-range, range)³ whose derived parameters stay `gap` away from integers.
pub fn sample(rng: &mut ChaCha8Rng, range: f64, gap: f64) -> Params {
    loop {
        let a: f64 = rng.gen_range(-range..range);
        let b: f64 = rng.gen_range(-range..range);
        let c: f64 = rng.gen_range(-range..range);
        if far_from_integers(&[a, b, c, c - a, c - b, c - a - b, a - b], gap) {
            return Params::new(a, b, c).unwrap();
        }
    }
}

/// Twenty points spread over the cut plane, four of them on the banks.
pub fn spread_points() -> Vec<CutPlanePoint> {
    let mut pts: Vec<CutPlanePoint> = [
        (-5.0, 0.0),
        (-0.7, 0.0),
        (0.3, 0.0),
        (0.9, 0.0),
        (0.5, 0.5),
        (-2.0, 3.0),
        (2.0, 1.0),
        (4.0, -0.5),
        (1.5, 0.05),
        (0.2, -0.9),
        (-20.0, 5.0),
        (10.0, 10.0),
        (0.99, 0.2),
        (1.2, -0.01),
        (-1.0, -1.0),
        (0.5, 0.866),
    ]
    .iter()
    .map(|&(x, y)| CutPlanePoint::new(Complex64::new(x, y)).unwrap())
    .collect();
    for (x, bank) in [
        (1.5, Bank::Upper),
        (3.0, Bank::Lower),
        (8.0, Bank::Upper),
        (1.1, Bank::Lower),
    ] {
        pts.push(CutPlanePoint::on_cut(x, bank).unwrap());
    }
    pts
}

pub fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1.0)
}

use hypratio::quadrature::{integrate, QuadratureConfig, Segment};
use hypratio::special::{gamma, hyp2f1_series, Precision};

fn series(a: f64, b: f64, c: f64, x: f64) -> f64 {
    let p = Params::new(a, b, c).unwrap();
    hyp2f1_series(&p, Complex64::new(x, 0.0), &Precision::default())
        .unwrap()
        .re
}

/// |F(1/t)|² · t^{-2 min(a,b)} · (1-t)^{-2 min(0, c-a-b)}, from the connection
/// formulas around ∞ (series in t) and around 1 (series in (t-1)/t).
/// Needs a - b and c - a - b away from integers.
pub fn scaled_abs_f_inverse_sq(p: &Params, t: f64, one_minus_t: f64) -> f64 {
    let (a, b, c) = (p.a, p.b, p.c);
    let g = Complex64::new;
    if t < 0.8 {
        let m = a.min(b);
        let term = |a: f64, b: f64| {
            let k = gamma(c) * gamma(b - a) / (gamma(b) * gamma(c - a));
            let phase = Complex64::from_polar(1.0, std::f64::consts::PI * a);
            phase * k * t.powf(a - m) * series(a, a - c + 1.0, a - b + 1.0, t)
        };
        let mu = (c - a - b).min(0.0);
        (term(a, b) + term(b, a)).norm_sqr() * one_minus_t.powf(-2.0 * mu)
    } else {
        let s = one_minus_t / t;
        let sigma = c - a - b;
        let mu = sigma.min(0.0);
        let k1 = gamma(c) * gamma(sigma) / (gamma(c - a) * gamma(c - b));
        let k2 = gamma(c) * gamma(-sigma) / (gamma(a) * gamma(b));
        let v = g(k1 * series(a, b, 1.0 - sigma, -s) * s.powf(-mu), 0.0)
            + Complex64::from_polar(1.0, -std::f64::consts::PI * sigma)
                * (k2 * s.powf(sigma - mu) * series(c - a, c - b, sigma + 1.0, -s));
        v.norm_sqr() * t.powf(-2.0 * mu) * t.powf(-2.0 * a.min(b))
    }
}

/// ∫₀¹ t^p (1-t)^q g(t) / ((1 - zt)^k |F(1/t)|²) dt for z off the cut.
pub fn oracle_stieltjes<G: Fn(f64) -> f64>(
    p: &Params,
    pw: f64,
    qw: f64,
    g: G,
    k: i32,
    z: Complex64,
) -> Complex64 {
    let m = p.a.min(p.b);
    let mu = (p.c - p.a - p.b).min(0.0);
    let (e0, e1) = (pw - 2.0 * m, qw - 2.0 * mu);
    let cfg = QuadratureConfig::default();
    integrate(&[Segment::unit(e0, e1)], &cfg, |_, n| {
        let t = n.t;
        let dens = t.powf(e0) * n.one_minus_t.powf(e1) * g(t)
            / scaled_abs_f_inverse_sq(p, t, n.one_minus_t);
        Ok(Complex64::new(dens, 0.0) / (Complex64::new(1.0, 0.0) - z * t).powi(k))
    })
    .unwrap()
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// R_{1,1,1} = 1/(1-z) + z/(z-1) · K ∫ t^{a+b}(1-t)^{c-a-b} / ((1-zt)|F(1/t)|²) dt.
pub fn example1(p: &Params, z: Complex64) -> Complex64 {
    let (a, b, c) = (p.a, p.b, p.c);
    let k =
        gamma(c) * gamma(c + 1.0) / (gamma(a + 1.0) * gamma(b + 1.0) * gamma(c - a) * gamma(c - b));
    ONE / (ONE - z) + z / (z - 1.0) * k * oracle_stieltjes(p, a + b, c - a - b, |_| 1.0, 1, z)
}

/// R_{0,0,-1} with the constant Q = (c - min(a,b) - 1)/(c - 1).
pub fn example2(p: &Params, z: Complex64) -> Complex64 {
    let (a, b, c) = (p.a, p.b, p.c);
    let q = (c - a.min(b) - 1.0) / (c - 1.0);
    let k = gamma(c) * gamma(c - 1.0) / (gamma(a) * gamma(b) * gamma(c - a) * gamma(c - b));
    q + (1.0 - q) / (ONE - z)
        + z / (z - 1.0) * k * oracle_stieltjes(p, a + b - 1.0, c - a - b, |_| 1.0, 1, z)
}

pub fn example3_prefactor(p: &Params) -> f64 {
    let (a, b, c) = (p.a, p.b, p.c);
    gamma(c) * gamma(c + 1.0) / (gamma(a) * gamma(b + 1.0) * gamma(c - b) * gamma(c - a + 1.0))
}

pub fn example3_constant(p: &Params) -> f64 {
    let (a, b, c) = (p.a, p.b, p.c);
    c * (b - a).max(0.0) / (b * (c - a))
}

/// R_{0,1,1} without poles.
pub fn example3(p: &Params, z: Complex64) -> Complex64 {
    let (a, b, c) = (p.a, p.b, p.c);
    example3_constant(p)
        + example3_prefactor(p) * oracle_stieltjes(p, a + b - 1.0, c - a - b, |_| 1.0, 1, z)
}

/// R_{0,1,1} with one real pole β, absorbed by the multiplier (z - β).
pub fn example3_t_form(p: &Params, beta: f64, z: Complex64) -> Complex64 {
    let (a, b, c) = (p.a, p.b, p.c);
    let q = example3_constant(p);
    q + beta * (1.0 - q) / (beta - z)
        + z / (z - beta)
            * example3_prefactor(p)
            * oracle_stieltjes(p, a + b - 1.0, c - a - b, |t| 1.0 - t * beta, 1, z)
}

/// R_{0,1,1} with one real pole β, subtracted as A/(z - β).
pub fn example3_q_form(p: &Params, beta: f64, residue: f64, z: Complex64) -> Complex64 {
    let (a, b, c) = (p.a, p.b, p.c);
    example3_constant(p)
        + residue / (z - beta)
        + example3_prefactor(p) * oracle_stieltjes(p, a + b - 1.0, c - a - b, |_| 1.0, 1, z)
}

/// Residue of R_{0,1,1} at a zero β of F, from contiguous functions at β.
pub fn example3_residue(p: &Params, beta: f64) -> f64 {
    let (a, b, c) = (p.a, p.b, p.c);
    let x = Complex64::new(beta, 0.0);
    let f = |a: f64, b: f64, c: f64| {
        hyp2f1_series(&Params::new(a, b, c).unwrap(), x, &Precision::default())
            .unwrap()
            .re
    };
    c / (a * b) * f(a, b + 1.0, c + 1.0) / f(a + 1.0, b + 1.0, c + 1.0)
}
