//! Closed-form ingredients of the ratio representations: index quantities,
//! the gamma prefactor B, growth exponents at 1 and ∞, the choice of (M, N),
//! the boundary polynomial P_r and the imaginary part of R on the cut.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::continuation::{hyp2f1, hyp2f1_boundary, Bank, CutPlanePoint};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::special::{
    gamma, hyp4f3_terminating_dd, in_n0, near_int, neg_n0, pochhammer_dd, reciprocal_gamma, Params,
    Precision, Shift,
};

/// Derived integers n̲, n̄, p, l, r of a shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexData {
    pub n_low: i32,
    pub n_high: i32,
    pub p: i32,
    pub l: i32,
    pub r: i32,
}

pub fn derive_indices(shift: Shift) -> IndexData {
    let Shift { n1, n2, m } = shift;
    let n_low = n1.min(n2);
    let n_high = n1.max(n2);
    let p = (m - n1 - n2).max(0);
    let l = (n1 + n2 - m).max(0);
    let r = l + m.max(0) - n_low - 1;
    IndexData {
        n_low,
        n_high,
        p,
        l,
        r,
    }
}

/// B = -Γ(c)Γ(c+m) / (Γ(a)Γ(b)Γ(c-a+m-n1)Γ(c-b+m-n2)); exactly zero at gamma poles.
#[allow(non_snake_case)]
pub fn coefficient_B(params: &Params, shift: Shift) -> f64 {
    let (a, b, c) = (params.a, params.b, params.c);
    let m = shift.m as f64;
    let rg = reciprocal_gamma(a)
        * reciprocal_gamma(b)
        * reciprocal_gamma(c - a + m - shift.n1 as f64)
        * reciprocal_gamma(c - b + m - shift.n2 as f64);
    if rg == 0.0 {
        return 0.0;
    }
    -gamma(c) * gamma(c + m) * rg
}

/// Growth exponent of 2F1(a, b; c; z) at z = 1: F ≍ (1-z)^η.
pub fn eta(params: &Params) -> f64 {
    let (a, b, c) = (params.a, params.b, params.c);
    let s = c - (a + b);
    let na = neg_n0(a).is_some();
    let nb = neg_n0(b).is_some();
    let ac = in_n0(a - c);
    let bc = in_n0(b - c);
    if (na && bc) || (nb && ac) {
        s.max(0.0)
    } else if (na || nb) && !ac && !bc {
        0.0
    } else if !na && !nb && (ac || bc) {
        s
    } else {
        s.min(0.0)
    }
}

/// Growth exponent of 2F1(a, b; c; -z) as z → +∞: F ≍ z^ζ.
pub fn zeta(params: &Params) -> f64 {
    let (a, b, c) = (params.a, params.b, params.c);
    if in_n0(b - c) || neg_n0(a).is_some() {
        -a
    } else if in_n0(a - c) || neg_n0(b).is_some() {
        -b
    } else {
        -a.min(b)
    }
}

/// η and ζ for the base and the shifted parameter triples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticProfile {
    pub eta_base: f64,
    pub eta_shifted: f64,
    pub zeta_base: f64,
    pub zeta_shifted: f64,
}

impl AsymptoticProfile {
    pub fn new(params: &Params, shift: Shift) -> Result<Self> {
        let sp = params.shifted(shift)?;
        Ok(AsymptoticProfile {
            eta_base: eta(params),
            eta_shifted: eta(&sp),
            zeta_base: zeta(params),
            zeta_shifted: zeta(&sp),
        })
    }

    /// Exponent of R at z = 1: R ≍ (1-z)^{Δη}.
    pub fn delta_eta(&self) -> f64 {
        self.eta_shifted - self.eta_base
    }

    /// Exponent of R at ∞: R(-z) ≍ z^{Δζ}.
    pub fn delta_zeta(&self) -> f64 {
        self.zeta_shifted - self.zeta_base
    }
}

const MN_MARGIN: f64 = 1e-9;

/// Smallest integer n ≥ 0 with n > x, snapping x to a nearby integer first.
pub(crate) fn least_integer_above(x: f64) -> u32 {
    let snapped = match near_int(x, MN_MARGIN) {
        Some(k) => k as f64,
        None => x,
    };
    let n = snapped.floor() + 1.0;
    if n <= 0.0 {
        0
    } else {
        n as u32
    }
}

/// Minimal admissible (M, N): M > η(base) - η(shifted) - 1, N > M + ζ(shifted) - ζ(base).
pub fn select_mn(params: &Params, shift: Shift) -> Result<(u32, u32)> {
    let prof = AsymptoticProfile::new(params, shift)?;
    let m = least_integer_above(-prof.delta_eta() - 1.0);
    let n = least_integer_above(m as f64 + prof.delta_zeta());
    Ok((m, n))
}

fn dd(x: f64) -> Dd {
    Dd::new(x)
}

fn factorial_recip(n: i64) -> Dd {
    if n < 0 {
        return Dd::ZERO;
    }
    let f = (1..=n).fold(Dd::ONE, |acc, k| acc * dd(k as f64));
    Dd::ONE / f
}

const SINGULAR_FACTOR: f64 = 1e-10;

fn poch_checked(x: f64, n: i64, j: i64, what: &'static str) -> Result<Dd> {
    if n < 0 && (1..=-n).any(|i| (x - i as f64).abs() < SINGULAR_FACTOR) {
        return Err(Error::SingularTerm { j, term: what });
    }
    pochhammer_dd(dd(x), n).ok_or(Error::SingularTerm { j, term: what })
}

/// 1/(x)_n for a signed index.
fn recip_poch_checked(x: f64, n: i64, j: i64, what: &'static str) -> Result<Dd> {
    if n >= 0 {
        if (0..n).any(|i| (x + i as f64).abs() < SINGULAR_FACTOR) {
            return Err(Error::SingularTerm { j, term: what });
        }
        Ok(Dd::ONE / pochhammer_dd(dd(x), n).expect("non-negative index"))
    } else {
        Ok((1..=-n).fold(Dd::ONE, |acc, i| acc * dd(x - i as f64)))
    }
}

/// One of the two symmetric halves of K_j (the second is obtained by a ↔ b, n1 ↔ n2).
fn k_half(a: f64, b: f64, c: f64, n1: i64, n2: i64, m: i64, j: i64) -> Result<Dd> {
    if j + n1 < 0 {
        return Ok(Dd::ZERO);
    }
    let pre = poch_checked(1.0 - a, j, j, "(1-a)_j")?
        * poch_checked(c - a, m + j, j, "(c-a)_{m+j}")?
        * recip_poch_checked(b - a, n2 + j + 1, j, "(b-a)_{n2+j+1}")?
        * factorial_recip(j + n1);
    if pre.is_zero() {
        return Ok(Dd::ZERO);
    }
    let top = [
        dd(-(j + n1) as f64),
        dd(a),
        dd(1.0 + a - c),
        dd(a - b - (n2 + j) as f64),
    ];
    let bottom = [
        dd(a - j as f64),
        dd(1.0 + a - c - (m + j) as f64),
        dd(1.0 + a - b),
    ];
    let f = hyp4f3_terminating_dd(top, bottom).map_err(|e| match e {
        Error::SingularTerm { .. } => Error::SingularTerm { j, term: "4F3" },
        other => other,
    })?;
    Ok(pre * f)
}

fn k_coefficient(params: &Params, shift: Shift, j: i64) -> Result<Dd> {
    let (a, b, c) = (params.a, params.b, params.c);
    let (n1, n2, m) = (shift.n1 as i64, shift.n2 as i64, shift.m as i64);
    Ok(k_half(a, b, c, n1, n2, m, j)? + k_half(b, a, c, n2, n1, m, j)?)
}

fn binomial(n: i64, k: i64) -> Dd {
    if k < 0 || k > n {
        return Dd::ZERO;
    }
    let mut acc = Dd::ONE;
    for i in 0..k {
        acc = acc * dd((n - i) as f64) / dd((i + 1) as f64);
    }
    acc
}

fn pr_coeffs_dd(params: &Params, shift: Shift) -> Result<Vec<Dd>> {
    let idx = derive_indices(shift);
    if idx.r < 0 {
        return Ok(Vec::new());
    }
    let (p, nh, r) = (idx.p as i64, idx.n_high as i64, idx.r as i64);
    let mut coeffs = Vec::with_capacity(r as usize + 1);
    for k in 0..=r {
        let mut inner = Dd::ZERO;
        for j in ((k - p).max(0) - nh)..=(k - nh) {
            let term = binomial(p, k - nh - j) * k_coefficient(params, shift, j)?;
            inner = if j.rem_euclid(2) == 0 {
                inner + term
            } else {
                inner - term
            };
        }
        let sign_pos = (nh + k).rem_euclid(2) == 0;
        coeffs.push(if sign_pos { inner } else { -inner });
    }
    Ok(coeffs)
}

/// Coefficients (ascending in t) of the boundary polynomial P_r(t).
/// The zero polynomial for the identity shift.
pub fn pr_polynomial(params: &Params, shift: Shift, _prec: &Precision) -> Result<RealPolynomial> {
    params.shifted(shift)?;
    let c = pr_coeffs_dd(params, shift)?;
    Ok(RealPolynomial::new(c.into_iter().map(Dd::to_f64).collect()))
}

/// Half-width of the symmetric parameter perturbation used when B vanishes
/// or some K_j is singular.
pub const PERTURBATION: f64 = 1e-8;

/// The product B·P_r(t) as a polynomial in t. When B = 0 or the explicit
/// coefficients are singular, the value is the average over
/// (a ± ε, b ∓ ε), which keeps a + b and c fixed.
pub fn effective_weight(params: &Params, shift: Shift, prec: &Precision) -> Result<RealPolynomial> {
    params.shifted(shift)?;
    if derive_indices(shift).r < 0 {
        return Ok(RealPolynomial::new(Vec::new()));
    }
    let b = coefficient_B(params, shift);
    if b != 0.0 {
        match pr_coeffs_dd(params, shift) {
            Ok(c) => {
                return Ok(RealPolynomial::new(
                    c.into_iter().map(|x| (x * dd(b)).to_f64()).collect(),
                ))
            }
            Err(Error::SingularTerm { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let _ = prec;
    let mut acc: Vec<Dd> = Vec::new();
    for s in [1.0, -1.0] {
        let pp = Params {
            a: params.a + s * PERTURBATION,
            b: params.b - s * PERTURBATION,
            c: params.c,
        };
        let bp = coefficient_B(&pp, shift);
        let c = pr_coeffs_dd(&pp, shift)?;
        if acc.is_empty() {
            acc = vec![Dd::ZERO; c.len()];
        }
        for (x, y) in acc.iter_mut().zip(c) {
            *x = *x + y * dd(0.5 * bp);
        }
    }
    Ok(RealPolynomial::new(
        acc.into_iter().map(Dd::to_f64).collect(),
    ))
}

/// Exponents (of x and x - 1) in the boundary imaginary part.
pub fn boundary_exponents(params: &Params, shift: Shift) -> (f64, f64) {
    let idx = derive_indices(shift);
    (
        (idx.l - idx.n_low) as f64 - params.c,
        params.c - params.a - params.b - idx.l as f64,
    )
}

/// Im R(x ± i0) from the closed form ±π B x^{l-n̲-c} (x-1)^{c-a-b-l} P_r(1/x) / |F(x)|².
pub fn boundary_imag(
    params: &Params,
    shift: Shift,
    x: f64,
    bank: Bank,
    prec: &Precision,
) -> Result<f64> {
    let w = effective_weight(params, shift, prec)?;
    if w.is_zero() {
        return Ok(0.0);
    }
    let f = hyp2f1_boundary(params, x, bank, prec)?;
    let f2 = f.norm_sqr();
    if params.is_degenerate() && (f2 == 0.0 || f.norm() < 1e-10) {
        return Err(Error::PoleOnCut { x });
    }
    let (ex, ex1) = boundary_exponents(params, shift);
    Ok(bank.sign() * PI * w.eval_real(1.0 / x) * (ex * x.ln() + ex1 * (x - 1.0).ln()).exp() / f2)
}

/// Fit of P_r from sampled boundary imaginary parts of the directly computed
/// ratio, at r+1 Chebyshev-spaced points t = 1/x in (0.1, 0.9). Returns the
/// polynomial and the 2-norm condition number of the Vandermonde matrix.
pub fn pr_fit_from_boundary(
    params: &Params,
    shift: Shift,
    prec: &Precision,
) -> Result<(RealPolynomial, f64)> {
    let idx = derive_indices(shift);
    if idx.r < 0 {
        return Err(Error::Domain(
            "identity shift has no boundary polynomial to fit".into(),
        ));
    }
    let bcoef = coefficient_B(params, shift);
    if bcoef == 0.0 {
        return Err(Error::Domain("B vanishes; P_r cannot be isolated".into()));
    }
    let sp = params.shifted(shift)?;
    let n = idx.r as usize + 1;
    let (ex, ex1) = boundary_exponents(params, shift);
    let mut v = DMatrix::<f64>::zeros(n, n);
    let mut rhs = DVector::<f64>::zeros(n);
    for i in 0..n {
        let t = if n == 1 {
            0.5
        } else {
            0.5 + 0.4 * ((2 * i + 1) as f64 * PI / (2 * n) as f64).cos()
        };
        let x = 1.0 / t;
        let pt = CutPlanePoint::on_cut(x, Bank::Upper)?;
        let fb = hyp2f1(params, &pt, prec)?;
        let fs = hyp2f1(&sp, &pt, prec)?;
        let im = (fs / fb).im;
        let scale = PI * bcoef * (ex * x.ln() + ex1 * (x - 1.0).ln()).exp() / fb.norm_sqr();
        rhs[i] = im / scale;
        for k in 0..n {
            v[(i, k)] = t.powi(k as i32);
        }
    }
    let sv = v.clone().svd(false, false).singular_values;
    let cond = sv.max() / sv.min();
    if !cond.is_finite() || cond > 1e12 {
        return Err(Error::IllConditioned { cond });
    }
    let sol = v.lu().solve(&rhs).ok_or(Error::IllConditioned {
        cond: f64::INFINITY,
    })?;
    Ok((RealPolynomial::new(sol.iter().copied().collect()), cond))
}

/// lim R(z) as z → ∞ when it is finite and the leading terms at ∞ are
/// known in closed form; `None` otherwise.
pub fn limit_at_infinity(params: &Params, shift: Shift) -> Result<Option<f64>> {
    let prof = AsymptoticProfile::new(params, shift)?;
    let dz = prof.delta_zeta();
    if dz < -MN_MARGIN {
        return Ok(Some(0.0));
    }
    if dz > MN_MARGIN {
        return Ok(None);
    }
    let sp = params.shifted(shift)?;
    if params.is_degenerate() || sp.is_degenerate() {
        return Ok(None);
    }
    let (a, b, c, n, m) =
        if shift.n1 == 0 && params.a <= params.b && params.a <= params.b + shift.n2 as f64 {
            (params.a, params.b, params.c, shift.n2, shift.m)
        } else if shift.n2 == 0 && params.b <= params.a && params.b <= params.a + shift.n1 as f64 {
            (params.b, params.a, params.c, shift.n1, shift.m)
        } else {
            return Ok(None);
        };
    if n < 0 && (b + n as f64 - a).abs() < 1e-12 {
        return Ok(None);
    }
    let mf = m as f64;
    let poch = pochhammer_dd(dd(b - a), n as i64).map(Dd::to_f64);
    let Some(poch) = poch else { return Ok(None) };
    let k = gamma(c + mf)
        * gamma(c - a)
        * gamma(b)
        * reciprocal_gamma(c)
        * reciprocal_gamma(c + mf - a)
        * reciprocal_gamma(b + n as f64)
        * poch;
    Ok(if k.is_finite() { Some(k) } else { None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(a: f64, b: f64, c: f64) -> Params {
        Params::new(a, b, c).unwrap()
    }

    #[test]
    fn index_examples() {
        assert_eq!(
            derive_indices(Shift::new(0, 0, 0)),
            IndexData {
                n_low: 0,
                n_high: 0,
                p: 0,
                l: 0,
                r: -1
            }
        );
        assert_eq!(
            derive_indices(Shift::new(1, 1, 1)),
            IndexData {
                n_low: 1,
                n_high: 1,
                p: 0,
                l: 1,
                r: 0
            }
        );
        assert_eq!(
            derive_indices(Shift::new(0, 1, 1)),
            IndexData {
                n_low: 0,
                n_high: 1,
                p: 0,
                l: 0,
                r: 0
            }
        );
    }

    #[test]
    fn b_examples() {
        assert_eq!(coefficient_B(&p(-2.0, 0.3, 1.7), Shift::new(0, 1, 1)), 0.0);
        let v = coefficient_B(&p(0.5, 0.5, 1.5), Shift::new(0, 1, 1));
        // -Γ(1.5)Γ(2.5) / (Γ(0.5)Γ(0.5)Γ(2)Γ(1))
        let sp = PI.sqrt();
        let expect = -(0.5 * sp) * (0.75 * sp) / (sp * sp);
        assert!((v - expect).abs() < 1e-14);
    }

    #[test]
    fn eta_zeta_examples() {
        assert!((eta(&p(0.3, 0.4, 0.2)) + 0.5).abs() < 1e-15);
        assert_eq!(eta(&p(-2.0, 0.4, 0.7)), 0.0);
        // -a ∈ ℕ₀ and b - c = 2
        let q = p(-1.0, 3.5, 1.5);
        assert_eq!(eta(&q), (q.c - q.a - q.b).max(0.0));
        assert!((zeta(&p(0.3, 0.7, 1.1)) + 0.3).abs() < 1e-15);
        assert_eq!(zeta(&p(0.5, 2.2, 1.2)), -0.5);
        assert_eq!(zeta(&p(-3.0, 0.5, 1.0)), 3.0);
    }

    #[test]
    fn mn_examples() {
        // Example 1: R_{1,1,1}, c ≤ a+b and c > a+b
        assert_eq!(
            select_mn(&p(0.5, 0.7, 1.0), Shift::new(1, 1, 1)).unwrap(),
            (1, 1)
        );
        assert_eq!(
            select_mn(&p(0.5, 0.7, 1.5), Shift::new(1, 1, 1)).unwrap(),
            (0, 0)
        );
        // Example 2: R_{0,0,-1} with c ≤ a+b needs M = 1; without the constant N = 2
        assert_eq!(
            select_mn(&p(0.6, 0.7, 1.2), Shift::new(0, 0, -1)).unwrap(),
            (1, 2)
        );
    }

    #[test]
    fn p0_for_gauss_ratio() {
        let prec = Precision::default();
        for &(a, b, c) in &[(0.5, 0.5, 1.5), (1.5, -0.5, 1.2), (0.3, 2.1, 3.3)] {
            let pr = pr_polynomial(&p(a, b, c), Shift::new(0, 1, 1), &prec).unwrap();
            assert_eq!(pr.degree(), 0);
            assert!((pr.coeffs()[0] + 1.0 / b).abs() < 1e-14 * (1.0 / b).abs());
        }
    }

    #[test]
    fn identity_shift_gives_zero_polynomial() {
        let prec = Precision::default();
        assert!(pr_polynomial(&p(0.3, 0.4, 1.2), Shift::IDENTITY, &prec)
            .unwrap()
            .is_zero());
        let v = boundary_imag(&p(0.3, 0.4, 1.2), Shift::IDENTITY, 2.0, Bank::Upper, &prec).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn weight_for_r111_matches_gamma_quotient() {
        let prec = Precision::default();
        let (a, b, c) = (0.5, 0.7, 1.0);
        let w = effective_weight(&p(a, b, c), Shift::new(1, 1, 1), &prec).unwrap();
        let expect = gamma(c) * gamma(c + 1.0)
            / (gamma(a + 1.0) * gamma(b + 1.0) * gamma(c - a) * gamma(c - b));
        assert!((w.coeffs()[0] - expect).abs() < 1e-13 * expect.abs());
    }

    #[test]
    fn weight_survives_equal_a_b() {
        let prec = Precision::default();
        let w = effective_weight(&p(0.6, 0.6, 1.5), Shift::new(1, 1, 1), &prec).unwrap();
        let (a, b, c) = (0.6, 0.6, 1.5);
        let expect = gamma(c) * gamma(c + 1.0)
            / (gamma(a + 1.0) * gamma(b + 1.0) * gamma(c - a) * gamma(c - b));
        assert!((w.coeffs()[0] - expect).abs() < 1e-9 * expect.abs());
    }

    #[test]
    fn bank_sign_flips() {
        let prec = Precision::default();
        let q = p(0.5, 0.5, 1.5);
        let s = Shift::new(0, 1, 1);
        let up = boundary_imag(&q, s, 2.0, Bank::Upper, &prec).unwrap();
        let lo = boundary_imag(&q, s, 2.0, Bank::Lower, &prec).unwrap();
        assert_eq!(up, -lo);
        assert!(up != 0.0);
    }

    #[test]
    fn limit_constants() {
        let (a, b, c) = (0.4, 0.9, 1.7);
        let k = limit_at_infinity(&p(a, b, c), Shift::new(0, 1, 1))
            .unwrap()
            .unwrap();
        assert!((k - c * (b - a) / (b * (c - a))).abs() < 1e-13);
        let k = limit_at_infinity(&p(a, b, c), Shift::new(0, 0, -1))
            .unwrap()
            .unwrap();
        assert!((k - (c - a - 1.0) / (c - 1.0)).abs() < 1e-13);
        let k = limit_at_infinity(&p(a, b, c), Shift::new(0, 0, 1))
            .unwrap()
            .unwrap();
        assert!((k - c / (c - a)).abs() < 1e-13);
        assert_eq!(
            limit_at_infinity(&p(a, b, c), Shift::new(1, 1, 1)).unwrap(),
            Some(0.0)
        );
    }

    proptest! {
        #[test]
        fn index_identities(n1 in -4i32..=4, n2 in -4i32..=4, m in -4i32..=4) {
            let d = derive_indices(Shift::new(n1, n2, m));
            prop_assert_eq!(d.p - d.l, m - n1 - n2);
            prop_assert_eq!(d.r == -1, n1 == 0 && n2 == 0 && m == 0);
            prop_assert!(d.r >= -1);
        }

        #[test]
        fn exponents_symmetric(a in -5.0f64..5.0, b in -5.0f64..5.0, c in 0.1f64..5.0) {
            let q = p(a, b, c);
            prop_assert_eq!(eta(&q), eta(&q.swapped()));
            prop_assert_eq!(zeta(&q), zeta(&q.swapped()));
        }
    }
}
