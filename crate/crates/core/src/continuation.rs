//! Evaluation of 2F1(a, b; c; z) on ℂ∖[1, ∞) and on both banks of the cut.
//!
//! Dispatch picks, among the six linear-transformation arguments
//! {z, z/(z-1), 1-z, 1/z, 1/(1-z), 1-1/z}, the one of smallest modulus and
//! sums the Gauss series there. Connection formulas whose gamma factors are
//! singular (c-a-b or a-b an integer) are evaluated at symmetrically
//! perturbed parameters and Richardson-extrapolated back. The small region
//! around e^{±iπ/3}, where every argument has modulus close to one, is
//! reached by Taylor stepping along the hypergeometric equation.
//!
//! On the cut, powers follow (1-z)^s = (x-1)^s e^{∓iπs} and
//! (-z)^s = x^s e^{∓iπs} for the upper/lower bank.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::{gamma, near_int, neg_n0, reciprocal_gamma, series_raw, Params, Precision};

/// Side of the branch cut (1, ∞).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bank {
    /// x + i0
    Upper,
    /// x − i0
    Lower,
}

impl Bank {
    pub fn sign(self) -> f64 {
        match self {
            Bank::Upper => 1.0,
            Bank::Lower => -1.0,
        }
    }

    pub fn flip(self) -> Bank {
        match self {
            Bank::Upper => Bank::Lower,
            Bank::Lower => Bank::Upper,
        }
    }
}

/// A point of the cut plane, or a boundary point x ± i0 with x > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutPlanePoint {
    z: Complex64,
    on_cut: Option<(f64, Bank)>,
}

impl CutPlanePoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite point {z}")));
        }
        if z.im == 0.0 && z.re >= 1.0 {
            return Err(Error::Domain(format!(
                "z = {} lies on the branch cut [1, ∞); use a bank",
                z.re
            )));
        }
        Ok(CutPlanePoint { z, on_cut: None })
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn on_cut(x: f64, bank: Bank) -> Result<Self> {
        if !(x > 1.0 && x.is_finite()) {
            return Err(Error::Domain(format!(
                "boundary point needs x > 1, got {x}"
            )));
        }
        Ok(CutPlanePoint {
            z: Complex64::new(x, 0.0),
            on_cut: Some((x, bank)),
        })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn bank(&self) -> Option<Bank> {
        self.on_cut.map(|(_, b)| b)
    }

    pub fn is_on_cut(&self) -> bool {
        self.on_cut.is_some()
    }

    /// Mirror image: z̄, or the opposite bank.
    pub fn conj(&self) -> Self {
        CutPlanePoint {
            z: self.z.conj(),
            on_cut: self.on_cut.map(|(x, b)| (x, b.flip())),
        }
    }
}

/// Evaluation argument carrying an accurate 1 - z, which matters when x = 1/t
/// with t close to one.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Arg {
    pub z: Complex64,
    pub omz: Complex64,
    pub bank: Option<Bank>,
}

impl Arg {
    pub fn from_point(pt: &CutPlanePoint) -> Self {
        Arg {
            z: pt.z,
            omz: Complex64::new(1.0, 0.0) - pt.z,
            bank: pt.bank(),
        }
    }

    /// The boundary point x = 1/t, given t and 1 - t separately.
    pub fn cut_from_t(t: f64, one_minus_t: f64, bank: Bank) -> Self {
        Arg {
            z: Complex64::new(1.0 / t, 0.0),
            omz: Complex64::new(-one_minus_t / t, 0.0),
            bank: Some(bank),
        }
    }

    fn ln_omz(&self) -> Complex64 {
        match self.bank {
            Some(b) => Complex64::new((-self.omz.re).ln(), -b.sign() * PI),
            None => {
                if self.omz.im == 0.0 {
                    Complex64::new(self.omz.re.ln(), 0.0)
                } else {
                    self.omz.ln()
                }
            }
        }
    }

    fn ln_negz(&self) -> Complex64 {
        match self.bank {
            Some(b) => Complex64::new(self.z.re.ln(), -b.sign() * PI),
            None => {
                if self.z.im == 0.0 {
                    Complex64::new(-self.z.re, 0.0).ln()
                } else {
                    (-self.z).ln()
                }
            }
        }
    }

    fn ln_z(&self) -> Complex64 {
        if self.z.im == 0.0 {
            Complex64::new(self.z.re, 0.0).ln()
        } else {
            self.z.ln()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Transform {
    Direct,
    Pfaff,
    OneMinus,
    Inverse,
    InvOneMinus,
    OneMinusInv,
}

/// Above this modulus the transformed series is not used directly.
const SERIES_RADIUS: f64 = 0.75;
/// c-a-b or a-b this close to an integer makes a connection formula exceptional.
const EXCEPTIONAL_TOL: f64 = 1e-6;

impl Transform {
    const ALL: [Transform; 6] = [
        Transform::Direct,
        Transform::Pfaff,
        Transform::OneMinus,
        Transform::Inverse,
        Transform::InvOneMinus,
        Transform::OneMinusInv,
    ];

    fn argument(self, arg: &Arg) -> Complex64 {
        match self {
            Transform::Direct => arg.z,
            Transform::Pfaff => -arg.z / arg.omz,
            Transform::OneMinus => arg.omz,
            Transform::Inverse => arg.z.inv(),
            Transform::InvOneMinus => arg.omz.inv(),
            Transform::OneMinusInv => -arg.omz / arg.z,
        }
    }

    /// Parameter combination whose integrality breaks the formula.
    fn critical(self, p: &Params) -> Option<f64> {
        match self {
            Transform::Direct | Transform::Pfaff => None,
            Transform::OneMinus | Transform::OneMinusInv => Some(p.c - p.a - p.b),
            Transform::Inverse | Transform::InvOneMinus => Some(p.a - p.b),
        }
    }

    fn eval(self, p: &Params, arg: &Arg, prec: &Precision) -> Result<Complex64> {
        let (a, b, c) = (p.a, p.b, p.c);
        let w = self.argument(arg);
        let ex = |s: f64, l: Complex64| (l * s).exp();
        match self {
            Transform::Direct => series_raw(a, b, c, w, prec),
            Transform::Pfaff => Ok(ex(-a, arg.ln_omz()) * series_raw(a, c - b, c, w, prec)?),
            Transform::OneMinus => {
                let s = c - a - b;
                let g1 = gamma(c) * gamma(s) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
                let g2 = gamma(c) * gamma(-s) * reciprocal_gamma(a) * reciprocal_gamma(b);
                let mut v = Complex64::new(0.0, 0.0);
                if g1 != 0.0 {
                    v += series_raw(a, b, 1.0 - s, w, prec)? * g1;
                }
                if g2 != 0.0 {
                    v += ex(s, arg.ln_omz()) * series_raw(c - a, c - b, 1.0 + s, w, prec)? * g2;
                }
                Ok(v)
            }
            Transform::Inverse | Transform::InvOneMinus => {
                let d = b - a;
                let g1 = gamma(c) * gamma(d) * reciprocal_gamma(b) * reciprocal_gamma(c - a);
                let g2 = gamma(c) * gamma(-d) * reciprocal_gamma(a) * reciprocal_gamma(c - b);
                let mut v = Complex64::new(0.0, 0.0);
                if self == Transform::Inverse {
                    let l = arg.ln_negz();
                    if g1 != 0.0 {
                        v += ex(-a, l) * series_raw(a, a - c + 1.0, 1.0 - d, w, prec)? * g1;
                    }
                    if g2 != 0.0 {
                        v += ex(-b, l) * series_raw(b, b - c + 1.0, 1.0 + d, w, prec)? * g2;
                    }
                } else {
                    let l = arg.ln_omz();
                    if g1 != 0.0 {
                        v += ex(-a, l) * series_raw(a, c - b, 1.0 - d, w, prec)? * g1;
                    }
                    if g2 != 0.0 {
                        v += ex(-b, l) * series_raw(b, c - a, 1.0 + d, w, prec)? * g2;
                    }
                }
                Ok(v)
            }
            Transform::OneMinusInv => {
                let s = c - a - b;
                let g1 = gamma(c) * gamma(s) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
                let g2 = gamma(c) * gamma(-s) * reciprocal_gamma(a) * reciprocal_gamma(b);
                let lz = arg.ln_z();
                let mut v = Complex64::new(0.0, 0.0);
                if g1 != 0.0 {
                    v += ex(-a, lz) * series_raw(a, a - c + 1.0, 1.0 - s, w, prec)? * g1;
                }
                if g2 != 0.0 {
                    v += (arg.ln_omz() * s + lz * (a - c)).exp()
                        * series_raw(c - a, 1.0 - a, 1.0 + s, w, prec)?
                        * g2;
                }
                Ok(v)
            }
        }
    }
}

fn offset_from_int(x: f64) -> f64 {
    x - x.round()
}

/// Richardson-extrapolated evaluation at parameters perturbed away from an
/// exceptional (integer) configuration. The perturbation keeps the
/// non-offending combination fixed.
fn eval_perturbed(t: Transform, p: &Params, arg: &Arg, prec: &Precision) -> Result<Complex64> {
    let e_ab = offset_from_int(p.a - p.b);
    let e_cab = offset_from_int(p.c - p.a - p.b);
    let bad_ab = e_ab.abs() <= EXCEPTIONAL_TOL;
    let bad_cab = e_cab.abs() <= EXCEPTIONAL_TOL;
    // direction (da, db, dc) per unit δ
    let dir = match (bad_ab, bad_cab) {
        (true, true) => (1.0, 0.0, 0.0),
        (true, false) => (0.5, -0.5, 0.0),
        _ => (0.0, 0.0, 1.0),
    };
    let w = t.argument(arg);
    let log_scale = w.norm().ln().abs().max(arg.z.norm().ln().abs());
    let mut floor: f64 = 0.0;
    if bad_ab {
        floor = floor.max(4.0 * e_ab.abs());
    }
    if bad_cab {
        floor = floor.max(4.0 * e_cab.abs());
    }
    let delta = (0.05 / (1.0 + log_scale)).clamp(floor.max(2e-5), 1e-3);
    let g = |k: f64| -> Result<Complex64> {
        let d = k * delta;
        let plus = Params {
            a: p.a + d * dir.0,
            b: p.b + d * dir.1,
            c: p.c + d * dir.2,
        };
        let minus = Params {
            a: p.a - d * dir.0,
            b: p.b - d * dir.1,
            c: p.c - d * dir.2,
        };
        Ok((t.eval(&plus, arg, prec)? + t.eval(&minus, arg, prec)?) * 0.5)
    };
    // weights cancel the δ² and δ⁴ terms
    Ok(g(1.0)? * 1.5 - g(2.0)? * 0.6 + g(3.0)? * 0.1)
}

/// Taylor coefficients of a solution of the hypergeometric equation about
/// `p`, summed at `p + h`. Returns (w(p+h), w'(p+h)).
pub(crate) fn taylor_step(
    params: &Params,
    p: Complex64,
    w0: Complex64,
    w1: Complex64,
    h: Complex64,
    prec: &Precision,
) -> Result<(Complex64, Complex64)> {
    let (a, b, c) = (params.a, params.b, params.c);
    let s = p * (Complex64::new(1.0, 0.0) - p);
    let lin = Complex64::new(1.0, 0.0) - p * 2.0;
    let base = Complex64::new(c, 0.0) - p * (a + b + 1.0);
    let mut ck = w0;
    let mut ck1 = w1;
    let mut hk = Complex64::new(1.0, 0.0);
    let mut val = w0;
    let mut der = w1;
    let mut small = 0;
    for k in 0..prec.max_terms {
        let kf = k as f64;
        // c_{k+2} from the three-term recurrence
        let ck2 = ((kf + a) * (kf + b) * ck - (lin * kf + base) * (kf + 1.0) * ck1)
            / (s * ((kf + 1.0) * (kf + 2.0)));
        let term_v = ck1 * hk * h; // c_{k+1} h^{k+1}
        val += term_v;
        hk *= h;
        let term_d = ck2 * (kf + 2.0) * hk; // (k+2) c_{k+2} h^{k+1}
        der += term_d;
        if term_v.norm() <= prec.series_tolerance * val.norm()
            && term_d.norm() <= prec.series_tolerance * der.norm().max(1e-300)
        {
            small += 1;
            if small >= 3 {
                return Ok((val, der));
            }
        } else {
            small = 0;
        }
        ck = ck1;
        ck1 = ck2;
    }
    Err(Error::Truncation {
        terms: prec.max_terms,
        last: f64::NAN,
    })
}

/// Continue (F, F') from `start` to `target` along straight segments,
/// with steps bounded by half the distance to the singular points 0 and 1.
pub(crate) fn march(
    params: &Params,
    waypoints: &[Complex64],
    mut f: Complex64,
    mut df: Complex64,
    prec: &Precision,
) -> Result<(Complex64, Complex64)> {
    let mut p = waypoints[0];
    for &q in &waypoints[1..] {
        loop {
            let remaining = q - p;
            if remaining.norm() == 0.0 {
                break;
            }
            let dist = p.norm().min((p - 1.0).norm());
            let max_step = 0.5 * dist;
            if max_step < 1e-14 {
                return Err(Error::StepUnderflow { z: p });
            }
            let h = if remaining.norm() <= max_step {
                remaining
            } else {
                remaining * (max_step / remaining.norm())
            };
            let (nf, ndf) = taylor_step(params, p, f, df, h, prec)?;
            f = nf;
            df = ndf;
            p = if h == remaining { q } else { p + h };
        }
    }
    Ok((f, df))
}

fn eval_marching(p: &Params, arg: &Arg, prec: &Precision) -> Result<Complex64> {
    let sigma = match arg.bank {
        Some(b) => b.sign(),
        None if arg.z.im < 0.0 => -1.0,
        None => 1.0,
    };
    let start = Complex64::new(0.5, 0.5 * sigma);
    let f0 = series_raw(p.a, p.b, p.c, start, prec)?;
    let df0 = series_raw(p.a + 1.0, p.b + 1.0, p.c + 1.0, start, prec)? * (p.a * p.b / p.c);
    let mid = Complex64::new(arg.z.re, 0.5 * sigma);
    let (f, _) = march(p, &[start, mid, arg.z], f0, df0, prec)?;
    Ok(f)
}

fn eval_generic(p: &Params, arg: &Arg, prec: &Precision) -> Result<Complex64> {
    let mut best_ok: Option<(f64, Transform)> = None;
    let mut best_any: Option<(f64, Transform)> = None;
    for t in Transform::ALL {
        if arg.bank.is_some() && matches!(t, Transform::Direct | Transform::Pfaff) {
            continue;
        }
        let r = t.argument(arg).norm();
        if !r.is_finite() {
            continue;
        }
        let exceptional = t
            .critical(p)
            .map(|x| offset_from_int(x).abs() <= EXCEPTIONAL_TOL)
            .unwrap_or(false);
        if best_any.map_or(true, |(br, _)| r < br) {
            best_any = Some((r, t));
        }
        if !exceptional && best_ok.map_or(true, |(br, _)| r < br) {
            best_ok = Some((r, t));
        }
    }
    if let Some((r, t)) = best_ok {
        if r <= SERIES_RADIUS {
            return t.eval(p, arg, prec);
        }
    }
    if let Some((r, t)) = best_any {
        if r <= SERIES_RADIUS {
            return eval_perturbed(t, p, arg, prec);
        }
    }
    eval_marching(p, arg, prec)
}

pub(crate) fn hyp2f1_arg(params: &Params, arg: &Arg, prec: &Precision) -> Result<Complex64> {
    if arg.z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let (a, b, c) = (params.a, params.b, params.c);
    if neg_n0(a).is_some() || neg_n0(b).is_some() {
        return series_raw(a, b, c, arg.z, prec);
    }
    if neg_n0(c - a).is_some() || neg_n0(c - b).is_some() {
        let poly = series_raw(c - a, c - b, c, arg.z, prec)?;
        return Ok((arg.ln_omz() * (c - a - b)).exp() * poly);
    }
    eval_generic(params, arg, prec)
}

/// 2F1(a, b; c; z) on the principal branch, or its limit from the requested bank.
pub fn hyp2f1(params: &Params, pt: &CutPlanePoint, prec: &Precision) -> Result<Complex64> {
    hyp2f1_arg(params, &Arg::from_point(pt), prec)
}

/// Boundary value 2F1(a, b; c; x ± i0), x > 1.
pub fn hyp2f1_boundary(params: &Params, x: f64, bank: Bank, prec: &Precision) -> Result<Complex64> {
    hyp2f1(params, &CutPlanePoint::on_cut(x, bank)?, prec)
}

/// d/dz 2F1(a, b; c; z) = (ab/c) 2F1(a+1, b+1; c+1; z).
pub fn hyp2f1_derivative(
    params: &Params,
    pt: &CutPlanePoint,
    prec: &Precision,
) -> Result<Complex64> {
    let k = params.a * params.b / params.c;
    if k == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let up = Params::new(params.a + 1.0, params.b + 1.0, params.c + 1.0)?;
    Ok(hyp2f1(&up, pt, prec)? * k)
}

/// ln|2F1(a, b; c; x ± i0)| at x = 1/t, given t and 1 - t separately. The
/// power-law factor at the near singular point is split off analytically, so
/// the result stays finite for t down to the smallest normal numbers.
pub(crate) fn ln_abs_at_inverse(
    params: &Params,
    t: f64,
    one_minus_t: f64,
    prec: &Precision,
) -> Result<f64> {
    let (a, b, c) = (params.a, params.b, params.c);
    let ln_x_minus_1 = one_minus_t.ln() - t.ln();
    let (scale, value) = if t >= 0.5 {
        let s = c - a - b;
        let arg = Arg::cut_from_t(t, one_minus_t, Bank::Upper);
        if s < 0.0 {
            (
                s * ln_x_minus_1,
                hyp2f1_arg(
                    &Params {
                        a: c - a,
                        b: c - b,
                        c,
                    },
                    &arg,
                    prec,
                )?,
            )
        } else {
            (0.0, hyp2f1_arg(params, &arg, prec)?)
        }
    } else {
        // Pfaff: F(x) = (1-x)^{-a'} F(a', c-b'; c; x/(x-1)) with a' ≤ b'
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let w = Arg {
            z: Complex64::new(1.0 / one_minus_t, 0.0),
            omz: Complex64::new(-t / one_minus_t, 0.0),
            bank: Some(Bank::Lower),
        };
        (
            -lo * ln_x_minus_1,
            hyp2f1_arg(
                &Params {
                    a: lo,
                    b: c - hi,
                    c,
                },
                &w,
                prec,
            )?,
        )
    };
    let n = value.norm();
    if n == 0.0 || !n.is_finite() {
        return Err(Error::Domain(format!(
            "2F1 vanishes or overflows at x = {}",
            1.0 / t
        )));
    }
    Ok(scale + n.ln())
}

/// True when c-a-b or a-b is (nearly) an integer, i.e. logarithmic terms
/// appear at z = 1 or z = ∞.
pub fn has_log_endpoint(params: &Params) -> bool {
    near_int(params.c - params.a - params.b, 1e-6).is_some()
        || near_int(params.a - params.b, 1e-6).is_some()
}
