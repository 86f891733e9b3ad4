//! Integral representations of R(z) = 2F1(a+n1, b+n2; c+m; z) / 2F1(a, b; c; z).
//!
//! The general form is
//!
//! R(z) = Q(z) + S(z) / ((1-z)^M T(z)) + z^{N+d} / ((z-1)^M T(z)) · J(z),
//!
//! J(z) = ∫₀¹ t^α (1-t)^E T̃(t) W(t) / (|F(1/t)|² (1 - zt)) dt,
//!
//! where S is the Taylor polynomial of (R - Q)(1-z)^M T(z) of degree < N+d,
//! T̃(t) = t^d T(1/t), W = B·P_r, α = n̲ + N - M + a + b - 1 and
//! E = M + c - a - b - l.

use crate::continuation::{has_log_endpoint, hyp2f1, ln_abs_at_inverse, CutPlanePoint};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::poly::{RationalFunction, RealPolynomial};
use crate::quadrature::{integrate, Node, QuadratureConfig, Segment};
use crate::special::{gamma, reciprocal_gamma, Params, Precision, Shift};
use crate::theory::{
    derive_indices, effective_weight, eta, least_integer_above, limit_at_infinity, select_mn, zeta,
    AsymptoticProfile,
};
use crate::zeros::{
    locate_zeros, pole_free_condition, residue_at_pole, PoleFreeCondition, ZeroKind,
};
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Mutex;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Points closer than this to (1, ∞) must name a bank.
pub const NEAR_CUT: f64 = 1e-6;

/// R(z) computed as a quotient of two continued 2F1 values.
pub fn ratio_direct(
    params: &Params,
    shift: Shift,
    pt: &CutPlanePoint,
    prec: &Precision,
) -> Result<Complex64> {
    if shift.is_identity() {
        return Ok(ONE);
    }
    let den = hyp2f1(params, pt, prec)?;
    if den == Complex64::new(0.0, 0.0) || !den.re.is_finite() || !den.im.is_finite() {
        return Err(Error::Pole { z: pt.z() });
    }
    Ok(hyp2f1(&params.shifted(shift)?, pt, prec)? / den)
}

fn gauss_coeffs(p: &Params, len: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(len);
    let mut u = 1.0;
    for k in 0..len {
        out.push(u);
        let kf = k as f64;
        u *= (p.a + kf) * (p.b + kf) / ((p.c + kf) * (kf + 1.0));
    }
    out
}

fn convolve(x: &[f64], y: &[f64], len: usize) -> Vec<f64> {
    (0..len)
        .map(|k| {
            (0..=k)
                .filter(|&j| j < x.len() && k - j < y.len())
                .map(|j| x[j] * y[k - j])
                .sum()
        })
        .collect()
}

pub const MAX_TAYLOR_ORDER: usize = 64;
pub const MAX_FDB_ORDER: usize = 12;

/// Taylor coefficients R^{(j)}(0)/j!, j = 0..=order, by power-series division.
pub fn ratio_taylor_coeffs(
    params: &Params,
    shift: Shift,
    order: usize,
    _prec: &Precision,
) -> Result<Vec<f64>> {
    if order > MAX_TAYLOR_ORDER {
        return Err(Error::InvalidParams(format!(
            "Taylor order {order} exceeds {MAX_TAYLOR_ORDER}"
        )));
    }
    let len = order + 1;
    let num = gauss_coeffs(&params.shifted(shift)?, len);
    let den = gauss_coeffs(params, len);
    let mut r: Vec<f64> = Vec::with_capacity(len);
    for k in 0..len {
        let acc: f64 = (0..k).map(|j| r[j] * den[k - j]).sum();
        r.push(num[k] - acc);
    }
    Ok(r)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Derivatives R^{(n)}(0), n = 0..=order, from the alternating Faà di Bruno
/// sum R^{(n)} = Σ_k (-1)^k C(n+1, k+1) (N D^k)^{(n)} / D^{k+1}, where at
/// z = 0 every factor equals one and (N D^k)^{(n)}(0) is n! times the sum
/// over multi-indices of products of series coefficients. The alternating
/// sum cancels heavily, so it runs in double-double.
pub fn ratio_derivatives_fdb(
    params: &Params,
    shift: Shift,
    order: usize,
    _prec: &Precision,
) -> Result<Vec<f64>> {
    if order > MAX_FDB_ORDER {
        return Err(Error::InvalidParams(format!(
            "derivative order {order} exceeds {MAX_FDB_ORDER}"
        )));
    }
    let len = order + 1;
    let coeffs = |p: &Params| {
        let mut out = Vec::with_capacity(len);
        let mut u = Dd::new(1.0);
        for k in 0..len {
            out.push(u);
            let kf = k as f64;
            u = u * (Dd::new(p.a) + Dd::new(kf)) * (Dd::new(p.b) + Dd::new(kf))
                / ((Dd::new(p.c) + Dd::new(kf)) * Dd::new(kf + 1.0));
        }
        out
    };
    let den = coeffs(params);
    // powers[k] = coefficients of N·D^k
    let mut powers = vec![coeffs(&params.shifted(shift)?)];
    for k in 1..len {
        let prev = &powers[k - 1];
        let next = (0..len)
            .map(|n| (0..=n).fold(Dd::new(0.0), |acc, j| acc + prev[j] * den[n - j]))
            .collect();
        powers.push(next);
    }
    let mut fact = 1.0;
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        if n > 0 {
            fact *= n as f64;
        }
        let sum = (0..=n).fold(Dd::new(0.0), |acc, k| {
            let term = Dd::new(binomial(n + 1, k + 1)) * powers[k][n];
            if k % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        });
        out.push((sum * Dd::new(fact)).to_f64());
    }
    Ok(out)
}

/// Laurent coefficients A_1..A_d of T(z)R(z)/z^d at the origin, for a
/// polynomial T of degree d: A_{d-j} is the j-th Taylor coefficient of R·T.
pub fn laurent_coefficients(
    params: &Params,
    shift: Shift,
    t: &RealPolynomial,
    prec: &Precision,
) -> Result<Vec<f64>> {
    let d = if t.is_zero() { 0 } else { t.degree() };
    if d == 0 {
        return Ok(Vec::new());
    }
    let r = ratio_taylor_coeffs(params, shift, d - 1, prec)?;
    let rt = convolve(&r, t.coeffs(), d);
    Ok((1..=d).map(|i| rt[d - i]).collect())
}

/// Q(z) = constant + Σ A/(z - β) over real poles + Σ [A/(z - β) + Ā/(z - β̄)]
/// over complex poles listed once with Im β > 0.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PoleTerms {
    pub constant: f64,
    pub real: Vec<(f64, f64)>,
    pub complex: Vec<(Complex64, Complex64)>,
}

impl PoleTerms {
    pub fn constant(k: f64) -> Self {
        PoleTerms {
            constant: k,
            ..Default::default()
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut v = Complex64::new(self.constant, 0.0);
        for &(beta, a) in &self.real {
            let dz = z - beta;
            if dz.norm() == 0.0 {
                return Err(Error::Pole { z });
            }
            v += a / dz;
        }
        for &(beta, a) in &self.complex {
            let (d1, d2) = (z - beta, z - beta.conj());
            if d1.norm() == 0.0 || d2.norm() == 0.0 {
                return Err(Error::Pole { z });
            }
            v += a / d1 + a.conj() / d2;
        }
        Ok(v)
    }

    /// First `len` Taylor coefficients at the origin.
    pub fn taylor(&self, len: usize) -> Vec<f64> {
        let mut out = vec![0.0; len];
        if len > 0 {
            out[0] = self.constant;
        }
        for &(beta, a) in &self.real {
            let mut p = 1.0 / beta;
            for c in out.iter_mut() {
                *c -= a * p;
                p /= beta;
            }
        }
        for &(beta, a) in &self.complex {
            let mut p = beta.inv();
            for c in out.iter_mut() {
                *c -= 2.0 * (a * p).re;
                p /= beta;
            }
        }
        out
    }

    pub fn to_rational(&self) -> RationalFunction {
        let mut factors: Vec<RealPolynomial> = Vec::new();
        for &(beta, _) in &self.real {
            factors.push(RealPolynomial::new(vec![-beta, 1.0]));
        }
        for &(beta, _) in &self.complex {
            factors.push(RealPolynomial::new(vec![
                beta.norm_sqr(),
                -2.0 * beta.re,
                1.0,
            ]));
        }
        let den = factors
            .iter()
            .fold(RealPolynomial::one(), |acc, f| acc.mul(f));
        let others = |skip: usize| {
            factors
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .fold(RealPolynomial::one(), |acc, (_, f)| acc.mul(f))
        };
        let mut num = scale(&den, self.constant);
        for (i, &(_, a)) in self.real.iter().enumerate() {
            num = add(&num, &scale(&others(i), a));
        }
        let nr = self.real.len();
        for (i, &(beta, a)) in self.complex.iter().enumerate() {
            let pair = RealPolynomial::new(vec![-2.0 * (a * beta.conj()).re, 2.0 * a.re]);
            num = add(&num, &others(nr + i).mul(&pair));
        }
        RationalFunction::new(num, den)
    }
}

fn scale(p: &RealPolynomial, k: f64) -> RealPolynomial {
    RealPolynomial::new(p.coeffs().iter().map(|c| c * k).collect())
}

fn add(p: &RealPolynomial, q: &RealPolynomial) -> RealPolynomial {
    let n = p.coeffs().len().max(q.coeffs().len());
    let get = |r: &RealPolynomial, i: usize| r.coeffs().get(i).copied().unwrap_or(0.0);
    RealPolynomial::new((0..n).map(|i| get(p, i) + get(q, i)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    PoleFree,
    QCorrection,
    TMultiplier,
}

/// The boundary density in the x variable: W(1/x) x^{exp_x} (x-1)^{exp_x_minus_1},
/// with W = B·P_r stored as a polynomial in t = 1/x.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    pub poly: RealPolynomial,
    pub exp_x: f64,
    pub exp_x_minus_1: f64,
}

#[derive(Debug)]
pub struct Representation {
    pub params: Params,
    pub shift: Shift,
    pub strategy: Strategy,
    pub q: PoleTerms,
    pub t: RealPolynomial,
    pub m: u32,
    pub n: u32,
    pub d: u32,
    /// Taylor coefficients of R - Q at the origin, length N + d.
    pub taylor: Vec<f64>,
    pub weight: Weight,
    /// Exponents of t and 1 - t in the integrand of J.
    pub alpha: f64,
    pub e: f64,
    /// Exponents of the whole integrand at t → 0 and t → 1, including |F|⁻².
    pub exp_at_zero: f64,
    pub exp_at_one: f64,
    /// Logarithmic factors are present at an endpoint.
    pub log_endpoint: bool,
    s_poly: RealPolynomial,
    qpoly: RealPolynomial,
    density_poly: RealPolynomial,
    cache: Mutex<(f64, HashMap<i64, f64>)>,
}

pub fn build_representation(
    params: &Params,
    shift: Shift,
    strategy: Strategy,
    prec: &Precision,
) -> Result<Representation> {
    build(params, shift, strategy, None, prec)
}

/// As [`build_representation`] with a caller-chosen admissible (M, N).
pub fn build_representation_with_mn(
    params: &Params,
    shift: Shift,
    strategy: Strategy,
    m: u32,
    n: u32,
    prec: &Precision,
) -> Result<Representation> {
    build(params, shift, strategy, Some((m, n)), prec)
}

fn build(
    params: &Params,
    shift: Shift,
    strategy: Strategy,
    mn: Option<(u32, u32)>,
    prec: &Precision,
) -> Result<Representation> {
    if params.is_degenerate() {
        return Err(Error::Degenerate(format!(
            "{params:?}: 2F1 reduces to a polynomial factor; the boundary density may be singular"
        )));
    }
    let sp = params.shifted(shift)?;
    let condition = pole_free_condition(params);
    let strategy = match strategy {
        Strategy::Auto if condition.is_some() => Strategy::PoleFree,
        Strategy::Auto => Strategy::QCorrection,
        Strategy::PoleFree if condition.is_none() => {
            return Err(Error::Condition(format!(
                "{params:?} satisfies none of the pole-free conditions"
            )))
        }
        s => s,
    };

    let prof = AsymptoticProfile::new(params, shift)?;
    let mut q = PoleTerms::default();
    let mut subtract_limit = false;
    if strategy != Strategy::PoleFree && prof.delta_zeta().abs() <= 1e-9 {
        if let Some(k) = limit_at_infinity(params, shift)? {
            q.constant = k;
            subtract_limit = true;
        }
    }
    let mut t = RealPolynomial::one();
    if strategy != Strategy::PoleFree {
        let report = locate_zeros(params, prec)?;
        let mut reals = Vec::new();
        let mut uppers = Vec::new();
        for z in &report.zeros {
            match z.kind {
                ZeroKind::Real => reals.push(z.location.re),
                ZeroKind::ComplexPair => uppers.push(z.location),
            }
        }
        if strategy == Strategy::QCorrection {
            for &x in &reals {
                q.real.push((
                    x,
                    residue_at_pole(params, shift, Complex64::new(x, 0.0), prec)?.re,
                ));
            }
            for &z in &uppers {
                q.complex
                    .push((z, residue_at_pole(params, shift, z, prec)?));
            }
        } else {
            t = RealPolynomial::from_roots(&reals, &uppers);
        }
    }
    let d = t.degree() as u32;

    let (m_min, _) = select_mn(params, shift)?;
    // pole terms in Q decay only like 1/z
    let has_poles = !q.real.is_empty() || !q.complex.is_empty();
    let growth = if has_poles {
        prof.delta_zeta().max(-1.0)
    } else {
        prof.delta_zeta()
    };
    let n_for = |m: u32| {
        if subtract_limit {
            m
        } else {
            least_integer_above(m as f64 + growth)
        }
    };
    let (m, n) = match mn {
        None => (m_min, n_for(m_min)),
        Some((m, n)) => {
            if m < m_min || n < n_for(m) {
                return Err(Error::Condition(format!(
                    "(M, N) = ({m}, {n}) is not admissible; need M ≥ {m_min} and N ≥ {}",
                    n_for(m)
                )));
            }
            (m, n)
        }
    };

    let idx = derive_indices(shift);
    let (a, b, c) = (params.a, params.b, params.c);
    let alpha = (idx.n_low + n as i32 - m as i32) as f64 + a + b - 1.0;
    let e = m as f64 + c - a - b - idx.l as f64;
    let exp_at_zero = alpha + 2.0 * zeta(params);
    let exp_at_one = e - 2.0 * eta(params);
    let w = effective_weight(params, shift, prec)?;
    if !w.is_zero() && (exp_at_zero <= -1.0 || exp_at_one <= -1.0) {
        return Err(Error::Condition(format!(
            "boundary density not integrable: exponents {exp_at_zero} at x = ∞, {exp_at_one} at x = 1"
        )));
    }

    let len = (n + d) as usize;
    let taylor: Vec<f64> = if len == 0 {
        Vec::new()
    } else {
        let r = ratio_taylor_coeffs(params, shift, len - 1, prec)?;
        r.iter().zip(q.taylor(len)).map(|(x, y)| x - y).collect()
    };
    let one_minus_z_m = (0..m).fold(RealPolynomial::one(), |acc, _| {
        acc.mul(&RealPolynomial::new(vec![1.0, -1.0]))
    });
    let qpoly = one_minus_z_m.mul(&t);
    let s_poly = RealPolynomial::new(convolve(&taylor, qpoly.coeffs(), len));
    let t_rev = RealPolynomial::new(t.coeffs().iter().rev().copied().collect());
    let density_poly = t_rev.mul(&w);

    Ok(Representation {
        params: *params,
        shift,
        strategy,
        q,
        t,
        m,
        n,
        d,
        taylor,
        weight: Weight {
            poly: w,
            exp_x: (idx.l - idx.n_low) as f64 - c - (n + d) as f64,
            exp_x_minus_1: e,
        },
        alpha,
        e,
        exp_at_zero,
        exp_at_one,
        log_endpoint: has_log_endpoint(params) || has_log_endpoint(&sp),
        s_poly,
        qpoly,
        density_poly,
        cache: Mutex::new((0.0, HashMap::new())),
    })
}

/// t^p (1-t)^q / |F(1/t)|² evaluated in log space.
fn log_density(params: &Params, p: f64, q: f64, node: &Node, prec: &Precision) -> Result<f64> {
    let lf = ln_abs_at_inverse(params, node.t, node.one_minus_t, prec)?;
    Ok((p * node.t.ln() + q * node.one_minus_t.ln() - 2.0 * lf).exp())
}

impl Representation {
    pub fn q_rational(&self) -> RationalFunction {
        self.q.to_rational()
    }

    /// The integrand of J without the Cauchy kernel.
    fn density(&self, node: &Node, prec: &Precision) -> Result<f64> {
        if let Some(key) = node.key {
            let guard = self.cache.lock().unwrap();
            if guard.0 == prec.series_tolerance {
                if let Some(&v) = guard.1.get(&key) {
                    return Ok(v);
                }
            }
        }
        let poly = self.density_poly.eval_real(node.t);
        let v = if poly == 0.0 {
            0.0
        } else {
            poly * log_density(&self.params, self.alpha, self.e, node, prec)?
        };
        if let Some(key) = node.key {
            let mut guard = self.cache.lock().unwrap();
            if guard.0 != prec.series_tolerance {
                *guard = (prec.series_tolerance, HashMap::new());
            }
            guard.1.insert(key, v);
        }
        Ok(v)
    }

    /// J(z) = ∫₀¹ density(t) dt / (1 - zt).
    pub fn cauchy_integral(
        &self,
        pt: &CutPlanePoint,
        quad: &QuadratureConfig,
        prec: &Precision,
    ) -> Result<Complex64> {
        if self.density_poly.is_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        cauchy_integral(
            |n| self.density(n, prec),
            (self.exp_at_zero, self.exp_at_one),
            pt,
            quad,
        )
    }

    pub fn eval(
        &self,
        pt: &CutPlanePoint,
        quad: &QuadratureConfig,
        prec: &Precision,
    ) -> Result<Complex64> {
        let z = pt.z();
        check_near_cut(pt)?;
        let omz = ONE - z;
        let tz = self.t.eval(z);
        if omz.norm() == 0.0 || tz.norm() == 0.0 {
            return Err(Error::Pole { z });
        }
        let denom = self.qpoly.eval(z);
        let mut v = self.q.eval(z)? + self.s_poly.eval(z) / denom;
        if !self.density_poly.is_zero() {
            let sign = if self.m % 2 == 0 { 1.0 } else { -1.0 };
            let pre = z.powu(self.n + self.d) / (denom * sign);
            v += pre * self.cauchy_integral(pt, quad, prec)?;
        }
        Ok(v)
    }
}

pub fn eval_representation(
    rep: &Representation,
    pt: &CutPlanePoint,
    quad: &QuadratureConfig,
    prec: &Precision,
) -> Result<Complex64> {
    rep.eval(pt, quad, prec)
}

fn check_near_cut(pt: &CutPlanePoint) -> Result<()> {
    let z = pt.z();
    if !pt.is_on_cut() && z.re > 1.0 && z.im.abs() < NEAR_CUT {
        return Err(Error::NeedsBank { z });
    }
    Ok(())
}

/// Where 1/z is close to [0, 1], the quadrature is split at Re(1/z).
fn split_point(z: Complex64) -> Option<f64> {
    let w = z.inv();
    (w.re > 0.0 && w.re < 1.0 && w.im.abs() < 0.1).then_some(w.re)
}

fn strip_key(n: &Node) -> Node {
    Node { key: None, ..*n }
}

/// ∫₀¹ ρ(t) dt / (1 - zt) for a real density with endpoint exponents
/// `exps`. On the cut the limit from the chosen bank is taken, splitting off
/// the principal value and the ± iπ ρ(1/x)/x jump.
pub fn cauchy_integral<D>(
    density: D,
    exps: (f64, f64),
    pt: &CutPlanePoint,
    quad: &QuadratureConfig,
) -> Result<Complex64>
where
    D: Fn(&Node) -> Result<f64>,
{
    let z = pt.z();
    if let Some(bank) = pt.bank() {
        let x = z.re;
        let t0 = 1.0 / x;
        let om0 = (x - 1.0) / x;
        let rho0 = density(&Node {
            t: t0,
            one_minus_t: om0,
            from_lo: t0,
            to_hi: om0,
            key: None,
        })?;
        let segs = [
            Segment {
                lo: 0.0,
                hi: t0,
                one_minus_lo: 1.0,
                one_minus_hi: om0,
                exp_lo: exps.0.min(0.0),
                exp_hi: 0.0,
            },
            Segment {
                lo: t0,
                hi: 1.0,
                one_minus_lo: om0,
                one_minus_hi: 0.0,
                exp_lo: 0.0,
                exp_hi: exps.1.min(0.0),
            },
        ];
        let pv = integrate(&segs, quad, |i, n| {
            let gap = if i == 0 { n.to_hi } else { -n.from_lo };
            Ok(Complex64::new(
                (density(&strip_key(n))? - rho0) / (x * gap),
                0.0,
            ))
        })?;
        let log_part = -rho0 * (x - 1.0).ln() / x;
        return Ok(Complex64::new(
            pv.re + log_part,
            bank.sign() * PI * rho0 / x,
        ));
    }
    check_near_cut(pt)?;
    kernel_integral(&density, exps, z, quad, |n| ONE / (ONE - z * n.t))
}

fn kernel_integral<D, K>(
    density: &D,
    exps: (f64, f64),
    z: Complex64,
    quad: &QuadratureConfig,
    kernel: K,
) -> Result<Complex64>
where
    D: Fn(&Node) -> Result<f64>,
    K: Fn(&Node) -> Complex64,
{
    match split_point(z) {
        Some(t0) => {
            let om0 = 1.0 - t0;
            let segs = [
                Segment {
                    lo: 0.0,
                    hi: t0,
                    one_minus_lo: 1.0,
                    one_minus_hi: om0,
                    exp_lo: exps.0,
                    exp_hi: 0.0,
                },
                Segment {
                    lo: t0,
                    hi: 1.0,
                    one_minus_lo: om0,
                    one_minus_hi: 0.0,
                    exp_lo: 0.0,
                    exp_hi: exps.1,
                },
            ];
            integrate(&segs, quad, |_, n| {
                let n = strip_key(n);
                Ok(kernel(&n) * density(&n)?)
            })
        }
        None => integrate(&[Segment::unit(exps.0, exps.1)], quad, |_, n| {
            Ok(kernel(n) * density(n)?)
        }),
    }
}

/// Lemma-type reconstruction of f from its Taylor data at 0 and the density
/// u(x) = Im f(x + i0)/π on (1, ∞):
/// f(z) = Σ_{k<N} z^k/q(z) Σ_j q_{k-j} f_j + z^N/q(z) ∫₁^∞ q(x)u(x) dx / ((x - z) x^N).
/// `u` receives x and x - 1; `exps` are the exponents of q(1/t)u(1/t)t^{N-1}
/// at t → 0 and t → 1.
pub fn schwarz_reconstruct<U>(
    f_taylor: &[f64],
    q: &RealPolynomial,
    n: u32,
    u: U,
    exps: (f64, f64),
    pt: &CutPlanePoint,
    quad: &QuadratureConfig,
) -> Result<Complex64>
where
    U: Fn(f64, f64) -> Result<f64>,
{
    let z = pt.z();
    let qz = q.eval(z);
    if qz.norm() == 0.0 {
        return Err(Error::Pole { z });
    }
    let len = n as usize;
    let mut fj = f_taylor.to_vec();
    fj.resize(len, 0.0);
    let s = RealPolynomial::new(convolve(&fj, q.coeffs(), len));
    let mut v = s.eval(z) / qz;
    let density = |node: &Node| -> Result<f64> {
        let x = 1.0 / node.t;
        let xm1 = node.one_minus_t / node.t;
        Ok(q.eval_real(x) * u(x, xm1)? * node.t.powi(n as i32 - 1))
    };
    v += z.powu(n) / qz * cauchy_integral(density, exps, pt, quad)?;
    Ok(v)
}

fn require_pole_free(params: &Params) -> Result<PoleFreeCondition> {
    if params.is_degenerate() {
        return Err(Error::Degenerate(format!("{params:?} is degenerate")));
    }
    pole_free_condition(params).ok_or_else(|| {
        Error::Condition(format!(
            "{params:?} satisfies none of the pole-free conditions"
        ))
    })
}

/// Density t^{a+b-1}(1-t)^{c-a-b}/|F(1/t)|² shared by the closed forms below,
/// with its endpoint exponents.
fn basic_density<'a>(
    params: &'a Params,
    prec: &'a Precision,
) -> (impl Fn(&Node) -> Result<f64> + 'a, (f64, f64)) {
    let (a, b, c) = (params.a, params.b, params.c);
    let exps = (
        a + b - 1.0 + 2.0 * zeta(params),
        c - a - b - 2.0 * eta(params),
    );
    (
        move |n: &Node| log_density(params, a + b - 1.0, c - a - b, n, prec),
        exps,
    )
}

/// R_{0,1,1} from its closed representation with constant term c(b-a)₊/(b(c-a)).
pub fn gauss_ratio_repr(
    params: &Params,
    pt: &CutPlanePoint,
    quad: &QuadratureConfig,
    prec: &Precision,
) -> Result<Complex64> {
    let cond = require_pole_free(params)?;
    let (a, b, c) = (params.a, params.b, params.c);
    if cond == PoleFreeCondition::VI && (a - c).abs() < 1e-12 {
        return Err(Error::Condition(
            "a = c makes the density non-integrable".into(),
        ));
    }
    let constant = c * (b - a).max(0.0) / (b * (c - a));
    let k = gamma(c)
        * gamma(c + 1.0)
        * reciprocal_gamma(a)
        * reciprocal_gamma(b + 1.0)
        * reciprocal_gamma(c - b)
        * reciprocal_gamma(c - a + 1.0);
    let (density, exps) = basic_density(params, prec);
    Ok(constant + k * cauchy_integral(density, exps, pt, quad)?)
}

/// c/(c - min(a, b)).
pub fn q_abc(params: &Params) -> f64 {
    params.c / (params.c - params.a.min(params.b))
}

fn off_cut(pt: &CutPlanePoint) -> Result<Complex64> {
    if pt.is_on_cut() {
        return Err(Error::Domain(
            "second-order kernels are evaluated off the cut only".into(),
        ));
    }
    check_near_cut(pt)?;
    Ok(pt.z())
}

/// z·R_{1,1,1}(z)·R_{0,0,1}(z) = (c²/(ab))(1 - Q) + B ∫₀¹ ρ(t)(c + zt(1-c)) dt/(1-zt)².
pub fn product_r111_r001(
    params: &Params,
    pt: &CutPlanePoint,
    quad: &QuadratureConfig,
    prec: &Precision,
) -> Result<Complex64> {
    require_pole_free(params)?;
    let z = off_cut(pt)?;
    let (a, b, c) = (params.a, params.b, params.c);
    let constant = c * c / (a * b) * (1.0 - q_abc(params));
    let bb = gamma(c + 1.0).powi(2)
        * reciprocal_gamma(a + 1.0)
        * reciprocal_gamma(b + 1.0)
        * reciprocal_gamma(c - a + 1.0)
        * reciprocal_gamma(c - b + 1.0);
    let (density, exps) = basic_density(params, prec);
    let integral = kernel_integral(&density, exps, z, quad, |n| {
        let k = ONE - z * n.t;
        (z * n.t * (1.0 - c) + c) / (k * k)
    })?;
    Ok(constant + bb * integral)
}

/// R_{0,0,-1}(z)·R_{0,0,1}(z) as a generalized Stieltjes transform of order 2.
pub fn product_stieltjes2(
    params: &Params,
    pt: &CutPlanePoint,
    quad: &QuadratureConfig,
    prec: &Precision,
) -> Result<Complex64> {
    require_pole_free(params)?;
    let (a, b, c) = (params.a, params.b, params.c);
    if (c - 1.0).abs() < 1e-12 {
        return Err(Error::InvalidParams(
            "c = 1 divides by zero in the constant term".into(),
        ));
    }
    let z = off_cut(pt)?;
    let mn = a.min(b);
    let constant = c * (c - mn - 1.0) / ((c - 1.0) * (c - mn));
    let k = gamma(c - 1.0)
        * gamma(c + 1.0)
        * reciprocal_gamma(a)
        * reciprocal_gamma(b)
        * reciprocal_gamma(c - a + 1.0)
        * reciprocal_gamma(c - b + 1.0);
    let (density, exps) = basic_density(params, prec);
    let integral = kernel_integral(&density, exps, z, quad, |n| {
        let k = ONE - z * n.t;
        ONE / (k * k)
    })?;
    Ok(constant + k * integral)
}
