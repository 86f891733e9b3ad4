//! Zeros of 2F1(a, b; c; z) in the cut plane: Runckel's count, the
//! parameter regions free of zeros, numerical location by the argument
//! principle, and residues of the ratio at simple zeros of the denominator.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::continuation::{hyp2f1, hyp2f1_derivative, CutPlanePoint};
use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::special::{gamma_sign, in_n0, near_int, Params, Precision, Shift};

/// a, b, c-a, c-b in non-decreasing order, with S = sign ΠΓ(ξ_j).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiQuadruple {
    pub xi: [f64; 4],
    pub s: f64,
}

impl XiQuadruple {
    pub fn new(params: &Params) -> Self {
        let mut xi = [params.a, params.b, params.c - params.a, params.c - params.b];
        xi.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let s = xi.iter().map(|&x| gamma_sign(x)).product();
        XiQuadruple { xi, s }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroKind {
    /// Representative α of a conjugate pair α, ᾱ (Im α > 0).
    ComplexPair,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zero {
    pub location: Complex64,
    pub kind: ZeroKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroReport {
    pub count: u32,
    pub zeros: Vec<Zero>,
    /// Residues of the ratio, aligned with `zeros`; empty until
    /// [`ZeroReport::with_residues`] is called.
    pub residues: Vec<Complex64>,
    pub degenerate: bool,
    /// Indices of real zeros lying on (1, ∞). Only possible in the
    /// degenerate case, where they sit on both banks at once.
    pub on_cut: Vec<usize>,
}

impl ZeroReport {
    /// Number of zeros with conjugate pairs counted twice.
    pub fn multiplicity_total(&self) -> u32 {
        self.zeros
            .iter()
            .map(|z| match z.kind {
                ZeroKind::ComplexPair => 2,
                ZeroKind::Real => 1,
            })
            .sum()
    }

    pub fn with_residues(
        mut self,
        params: &Params,
        shift: Shift,
        prec: &Precision,
    ) -> Result<Self> {
        self.residues = self
            .zeros
            .iter()
            .map(|z| residue_at_pole(params, shift, z.location, prec))
            .collect::<Result<_>>()?;
        Ok(self)
    }
}

const AMBIGUITY_TOL: f64 = 1e-9;

/// Runckel's count ν and whether the degenerate branch applied.
pub fn runckel_count(params: &Params) -> Result<(u32, bool)> {
    let (a, b, c) = (params.a, params.b, params.c);
    let degenerate = [-a, -b, a - c, b - c]
        .iter()
        .filter(|&&x| in_n0(x))
        .map(|&x| x.round() as u32)
        .min();
    if let Some(xi) = degenerate {
        return Ok((xi, true));
    }
    let q = XiQuadruple::new(params);
    for &x in &q.xi {
        if let Some(k) = near_int(x, AMBIGUITY_TOL) {
            if k <= 0 {
                return Err(Error::Ambiguous {
                    xi: x,
                    tol: AMBIGUITY_TOL,
                });
            }
        }
    }
    let [x1, _, _, x4] = q.xi;
    let s = q.s;
    let half = ((1.0 + s) / 2.0) as i64;
    let nu = if x1 > 0.0 {
        0
    } else if x4 > 0.0 {
        (-x1).floor() as i64 + half
    } else {
        (-x1).floor() as i64 + half + (s as i64) * (1.0 - x4).floor() as i64
    };
    if nu < 0 {
        return Err(Error::Condition(format!(
            "negative zero count {nu} for {params:?}"
        )));
    }
    Ok((nu as u32, false))
}

/// The six parameter regions in which 2F1 has no zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PoleFreeCondition {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl std::fmt::Display for PoleFreeCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PoleFreeCondition::I => "I",
            PoleFreeCondition::II => "II",
            PoleFreeCondition::III => "III",
            PoleFreeCondition::IV => "IV",
            PoleFreeCondition::V => "V",
            PoleFreeCondition::VI => "VI",
        };
        f.write_str(s)
    }
}

const COND_TOL: f64 = 1e-12;

fn le(x: f64, y: f64) -> bool {
    x <= y + COND_TOL
}

/// First of the conditions I–VI satisfied by the parameters, if any.
pub fn pole_free_condition(params: &Params) -> Option<PoleFreeCondition> {
    let (a, b, c) = (params.a, params.b, params.c);
    let lo = a.min(b);
    let hi = a.max(b);
    if -1.0 < lo && le(lo, c) && le(c, hi) && le(hi, 0.0) {
        return Some(PoleFreeCondition::I);
    }
    if -1.0 < lo && le(lo, 0.0) && le(0.0, hi) && le(hi, c) {
        return Some(PoleFreeCondition::II);
    }
    if -1.0 < c && le(c, lo) && le(lo, 0.0) && le(0.0, hi) && hi < c + 1.0 {
        return Some(PoleFreeCondition::III);
    }
    if le(0.0, lo) && le(lo, c) && hi < c + 1.0 {
        return Some(PoleFreeCondition::IV);
    }
    let five = [a, b, c, c - a, c - b];
    if five
        .iter()
        .all(|&x| x < 0.0 && near_int(x, COND_TOL).is_none())
    {
        let q = XiQuadruple::new(params);
        let [x1, x2, x3, x4] = q.xi;
        if x1.floor() + 1.0 == x4.floor() && x2.floor() == x3.floor() {
            return Some(PoleFreeCondition::V);
        }
    }
    if [a, b, c - a, c - b].iter().any(|&x| x.abs() <= COND_TOL) {
        return Some(PoleFreeCondition::VI);
    }
    None
}

fn eval(params: &Params, z: Complex64, prec: &Precision) -> Result<Complex64> {
    hyp2f1(params, &CutPlanePoint::new(z)?, prec)
}

const MAX_ARG_STEP: f64 = 0.6;
const MAX_LOG_DERIV_STEP: f64 = 0.5;
const MIN_SEGMENT: f64 = 1e-12;

#[derive(Clone, Copy)]
struct Sample {
    z: Complex64,
    f: Complex64,
    /// |F'/F| at z
    log_deriv: f64,
}

fn sample(params: &Params, z: Complex64, prec: &Precision) -> Result<Sample> {
    let pt = CutPlanePoint::new(z)?;
    let f = hyp2f1(params, &pt, prec)?;
    if f == Complex64::new(0.0, 0.0) || !f.re.is_finite() || !f.im.is_finite() {
        return Err(Error::SearchFailure {
            expected: 0,
            found: 0,
        });
    }
    let df = hyp2f1_derivative(params, &pt, prec)?;
    Ok(Sample {
        z,
        f,
        log_deriv: (df / f).norm(),
    })
}

/// Change of arg F along a segment, subdividing until each half turns by
/// less than a fixed angle and the segment is short against |F/F'| at its
/// samples, so that no zero can slip past unnoticed.
fn arg_change(
    params: &Params,
    s0: Sample,
    s1: Sample,
    prec: &Precision,
    depth: u32,
) -> Result<f64> {
    let direct = (s1.f / s0.f).arg();
    let sm = sample(params, (s0.z + s1.z) * 0.5, prec)?;
    let d1 = (sm.f / s0.f).arg();
    let d2 = (s1.f / sm.f).arg();
    let h = (s1.z - s0.z).norm();
    let ld = s0.log_deriv.max(sm.log_deriv).max(s1.log_deriv);
    if d1.abs() < MAX_ARG_STEP && d2.abs() < MAX_ARG_STEP && h * ld < MAX_LOG_DERIV_STEP {
        return Ok(direct);
    }
    if h < MIN_SEGMENT || depth > 60 {
        return Err(Error::SearchFailure {
            expected: 0,
            found: 0,
        });
    }
    Ok(arg_change(params, s0, sm, prec, depth + 1)? + arg_change(params, sm, s1, prec, depth + 1)?)
}

/// Points along z0 → z1, at least 8 pieces and graded so that no piece is
/// longer than a quarter of the distance from its start to z = 1.
fn edge_points(z0: Complex64, z1: Complex64) -> Vec<Complex64> {
    let len = (z1 - z0).norm();
    let dir = (z1 - z0) / len;
    let cap = len / 8.0;
    let one = Complex64::new(1.0, 0.0);
    let mut pts = vec![z0];
    let mut s = 0.0;
    while s < len {
        let here = z0 + dir * s;
        let step = cap.min(0.25 * (here - one).norm()).max(len * 1e-14);
        s = (s + step).min(len);
        pts.push(if s >= len { z1 } else { z0 + dir * s });
    }
    pts
}

/// Winding number of F around a closed polygon (vertices in order).
fn winding(params: &Params, vertices: &[Complex64], prec: &Precision) -> Result<f64> {
    let vals: Vec<Sample> = vertices
        .iter()
        .map(|&z| sample(params, z, prec))
        .collect::<Result<_>>()?;
    let mut total = 0.0;
    for i in 0..vertices.len() {
        let j = (i + 1) % vertices.len();
        let pts = edge_points(vertices[i], vertices[j]);
        let mut sa = vals[i];
        for k in 1..pts.len() {
            let sb = if k + 1 == pts.len() {
                vals[j]
            } else {
                sample(params, pts[k], prec)?
            };
            total += arg_change(params, sa, sb, prec, 0)?;
            sa = sb;
        }
    }
    Ok(total / (2.0 * PI))
}

fn snap_count(w: f64) -> Result<u32> {
    let n = w.round();
    if (w - n).abs() > 0.1 || n < 0.0 {
        return Err(Error::SearchFailure {
            expected: 0,
            found: n.max(0.0) as u32,
        });
    }
    Ok(n as u32)
}

const SLIT: f64 = 1e-6;

/// Number of zeros of F inside the square of half-width `r` minus a thin
/// slit around [1, r].
pub fn argument_principle_count(params: &Params, r: f64, prec: &Precision) -> Result<u32> {
    let c = |x: f64, y: f64| Complex64::new(x, y);
    let v = [
        c(1.0 - SLIT, SLIT),
        c(r, SLIT),
        c(r, r),
        c(-r, r),
        c(-r, -r),
        c(r, -r),
        c(r, -SLIT),
        c(1.0 - SLIT, -SLIT),
    ];
    snap_count(winding(params, &v, prec)?)
}

fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> [Complex64; 4] {
    [
        Complex64::new(x0, y0),
        Complex64::new(x1, y0),
        Complex64::new(x1, y1),
        Complex64::new(x0, y1),
    ]
}

fn rect_count(params: &Params, r: [f64; 4], prec: &Precision) -> Result<u32> {
    snap_count(winding(params, &rect(r[0], r[1], r[2], r[3]), prec)?)
}

fn newton(params: &Params, z0: Complex64, prec: &Precision) -> Option<Complex64> {
    let mut z = z0;
    for _ in 0..60 {
        let pt = CutPlanePoint::new(z).ok()?;
        let f = hyp2f1(params, &pt, prec).ok()?;
        let df = hyp2f1_derivative(params, &pt, prec).ok()?;
        if df.norm() == 0.0 {
            return None;
        }
        let step = f / df;
        z -= step;
        if !z.re.is_finite() || !z.im.is_finite() {
            return None;
        }
        if step.norm() <= 1e-15 * z.norm().max(1e-3) {
            return Some(z);
        }
    }
    None
}

/// Counting squares grow by 4x from 4 up to about 1e12: near-polynomial
/// parameters can push a zero very far out.
const RADIUS_STEPS: i32 = 20;
const UPPER_FLOOR: f64 = 1e-7;

/// Recursive quadrisection of a rectangle known to hold `n` zeros.
fn isolate(
    params: &Params,
    r: [f64; 4],
    n: u32,
    prec: &Precision,
    out: &mut Vec<Complex64>,
    depth: u32,
) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    let [x0, x1, y0, y1] = r;
    if n == 1 {
        let center = Complex64::new(0.5 * (x0 + x1), 0.5 * (y0 + y1));
        if let Some(z) = newton(params, center, prec) {
            let pad = 1e-9 * (1.0 + z.norm());
            if z.re >= x0 - pad && z.re <= x1 + pad && z.im >= y0 - pad && z.im <= y1 + pad {
                out.push(z);
                return Ok(());
            }
        }
    }
    if depth > 50 {
        return Err(Error::SearchFailure {
            expected: n,
            found: 0,
        });
    }
    // off-centre split reduces the chance of cutting through a zero
    let xm = x0 + (x1 - x0) * 0.5003;
    let ym = y0 + (y1 - y0) * 0.4997;
    let quads = [
        [x0, xm, y0, ym],
        [xm, x1, y0, ym],
        [xm, x1, ym, y1],
        [x0, xm, ym, y1],
    ];
    let counts: Vec<u32> = quads
        .iter()
        .map(|&q| rect_count(params, q, prec))
        .collect::<Result<_>>()?;
    let total: u32 = counts.iter().sum();
    if total != n {
        return Err(Error::SearchFailure {
            expected: n,
            found: total,
        });
    }
    for (q, k) in quads.iter().zip(counts) {
        isolate(params, *q, k, prec, out, depth + 1)?;
    }
    Ok(())
}

fn real_sign_changes(f: &dyn Fn(f64) -> Result<f64>, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let mut prev = (grid[0], f(grid[0])?);
    for &x in &grid[1..] {
        let v = f(x)?;
        if v == 0.0 {
            out.push((x, x));
        } else if prev.1 != 0.0 && v.signum() != prev.1.signum() {
            out.push((prev.0, x));
        }
        prev = (x, v);
    }
    Ok(out)
}

fn bisect(f: &dyn Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<f64> {
    if lo == hi {
        return Ok(lo);
    }
    let mut flo = f(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Grid on (0, 1) refined geometrically towards 1.
fn unit_grid() -> Vec<f64> {
    let mut g: Vec<f64> = (0..400).map(|i| i as f64 / 400.0).collect();
    let mut u = 2.6;
    while u < 14.0 {
        g.push(1.0 - 10f64.powf(-u));
        g.push(10f64.powf(-u));
        u += 0.02;
    }
    g.sort_by(|x, y| x.partial_cmp(y).unwrap());
    g.dedup();
    g
}

fn real_zeros(params: &Params, prec: &Precision) -> Result<Vec<f64>> {
    let grid = unit_grid();
    let mut roots = Vec::new();
    let f_pos = |x: f64| -> Result<f64> { Ok(eval(params, Complex64::new(x, 0.0), prec)?.re) };
    for (lo, hi) in real_sign_changes(&f_pos, &grid)? {
        roots.push(bisect(&f_pos, lo, hi)?);
    }
    // negative axis through w = z/(z-1) ∈ (0, 1); F = (1-z)^{-a} F(a, c-b; c; w)
    let pf = Params::new(params.a, params.c - params.b, params.c)?;
    let f_neg = |w: f64| -> Result<f64> { Ok(eval(&pf, Complex64::new(w, 0.0), prec)?.re) };
    for (lo, hi) in real_sign_changes(&f_neg, &grid)? {
        let w = bisect(&f_neg, lo, hi)?;
        roots.push(w / (w - 1.0));
    }
    let polished = roots
        .into_iter()
        .map(|x| match newton(params, Complex64::new(x, 0.0), prec) {
            Some(z) if (z.re - x).abs() <= 1e-6 * (1.0 + x.abs()) => z.re,
            _ => x,
        })
        .collect();
    Ok(polished)
}

fn degenerate_polynomial(params: &Params) -> RealPolynomial {
    let (a, b, c) = (params.a, params.b, params.c);
    let cands = [
        (-a, a, b),
        (-b, a, b),
        (a - c, c - a, c - b),
        (b - c, c - a, c - b),
    ];
    let (deg, p, q) = cands
        .iter()
        .filter(|t| in_n0(t.0))
        .min_by(|x, y| x.0.partial_cmp(&y.0).unwrap())
        .map(|&(d, p, q)| (d.round() as usize, p, q))
        .expect("degenerate parameters");
    let mut coeffs = vec![1.0];
    let mut t = 1.0;
    for k in 0..deg {
        let kf = k as f64;
        t *= (p + kf) * (q + kf) / ((c + kf) * (kf + 1.0));
        coeffs.push(t);
    }
    RealPolynomial::new(coeffs)
}

fn locate_degenerate(params: &Params, nu: u32) -> Result<ZeroReport> {
    let poly = degenerate_polynomial(params);
    let roots = poly.roots();
    let mut zeros = Vec::new();
    let mut on_cut = Vec::new();
    for z in roots {
        let tol = 1e-9 * (1.0 + z.norm());
        if z.im.abs() <= tol {
            if z.re > 1.0 {
                on_cut.push(zeros.len());
            }
            zeros.push(Zero {
                location: Complex64::new(z.re, 0.0),
                kind: ZeroKind::Real,
            });
        } else if z.im > 0.0 {
            zeros.push(Zero {
                location: z,
                kind: ZeroKind::ComplexPair,
            });
        }
    }
    let report = ZeroReport {
        count: nu,
        zeros,
        residues: Vec::new(),
        degenerate: true,
        on_cut,
    };
    if report.multiplicity_total() != nu {
        return Err(Error::SearchFailure {
            expected: nu,
            found: report.multiplicity_total(),
        });
    }
    Ok(report)
}

/// Count and locate the zeros of 2F1(a, b; c; ·).
pub fn locate_zeros(params: &Params, prec: &Precision) -> Result<ZeroReport> {
    let (nu, degenerate) = runckel_count(params)?;
    if degenerate {
        return locate_degenerate(params, nu);
    }
    let empty = ZeroReport {
        count: 0,
        zeros: Vec::new(),
        residues: Vec::new(),
        degenerate: false,
        on_cut: Vec::new(),
    };
    if nu == 0 {
        return Ok(empty);
    }
    let mut radius = None;
    let mut last = 0;
    for r in (1..=RADIUS_STEPS).map(|k| 4f64.powi(k)) {
        last = argument_principle_count(params, r, prec)?;
        if last == nu {
            radius = Some(r);
            break;
        }
    }
    let r = radius.ok_or(Error::SearchFailure {
        expected: nu,
        found: last,
    })?;
    let reals = real_zeros(params, prec)?;
    let upper = rect_count(params, [-r, r, UPPER_FLOOR, r], prec)?;
    if 2 * upper as usize + reals.len() != nu as usize {
        return Err(Error::SearchFailure {
            expected: nu,
            found: 2 * upper + reals.len() as u32,
        });
    }
    let mut complex = Vec::new();
    isolate(
        params,
        [-r, r, UPPER_FLOOR, r],
        upper,
        prec,
        &mut complex,
        0,
    )?;
    let mut zeros: Vec<Zero> = reals
        .into_iter()
        .map(|x| Zero {
            location: Complex64::new(x, 0.0),
            kind: ZeroKind::Real,
        })
        .collect();
    zeros.extend(complex.into_iter().map(|z| Zero {
        location: z,
        kind: ZeroKind::ComplexPair,
    }));
    Ok(ZeroReport {
        count: nu,
        zeros,
        ..empty
    })
}

/// Residue of R at a simple zero β of the denominator: numerator(β)/F'(β).
pub fn residue_at_pole(
    params: &Params,
    shift: Shift,
    beta: Complex64,
    prec: &Precision,
) -> Result<Complex64> {
    if shift.is_identity() {
        return Err(Error::Domain(
            "the identity ratio is constant and has no poles".into(),
        ));
    }
    let pt = CutPlanePoint::new(beta)?;
    let num = hyp2f1(&params.shifted(shift)?, &pt, prec)?;
    let deriv = hyp2f1_derivative(params, &pt, prec)?;
    let scale = 1.0f64.max(num.norm());
    if deriv.norm() < 1e-8 * scale {
        return Err(Error::Multiplicity {
            z: beta,
            deriv: deriv.norm(),
        });
    }
    Ok(num / deriv)
}

/// Residue of R at β from the trapezoid rule for (1/2πi)∮R dz on a circle.
pub fn residue_by_contour(
    params: &Params,
    shift: Shift,
    beta: Complex64,
    radius: f64,
    nodes: usize,
    prec: &Precision,
) -> Result<Complex64> {
    let sp = params.shifted(shift)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..nodes {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / nodes as f64);
        let z = beta + e * radius;
        let pt = CutPlanePoint::new(z)?;
        let r = hyp2f1(&sp, &pt, prec)? / hyp2f1(params, &pt, prec)?;
        acc += r * e * radius;
    }
    Ok(acc / nodes as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, b: f64, c: f64) -> Params {
        Params::new(a, b, c).unwrap()
    }

    #[test]
    fn runckel_examples() {
        assert_eq!(runckel_count(&p(0.5, 0.5, 1.5)).unwrap(), (0, false));
        assert_eq!(runckel_count(&p(1.5, -0.5, 1.2)).unwrap(), (1, false));
        assert_eq!(runckel_count(&p(-3.0, 0.7, 1.1)).unwrap(), (3, true));
        assert!(matches!(
            runckel_count(&p(-2.0 + 1e-10, 0.7, 1.1)),
            Err(Error::Ambiguous { .. })
        ));
    }

    #[test]
    fn xi_invariants() {
        let q = XiQuadruple::new(&p(1.5, -0.5, 1.2));
        assert_eq!(q.xi, [-0.5, -0.30000000000000004, 1.5, 1.7]);
        assert!((q.xi[0] + q.xi[3] - 1.2).abs() < 1e-12);
        assert!((q.xi[1] + q.xi[2] - 1.2).abs() < 1e-12);
        assert_eq!(q.s, 1.0);
    }

    #[test]
    fn condition_examples() {
        assert_eq!(
            pole_free_condition(&p(0.5, 0.5, 1.5)),
            Some(PoleFreeCondition::IV)
        );
        assert_eq!(
            pole_free_condition(&p(-0.5, -0.3, -0.4)),
            Some(PoleFreeCondition::I)
        );
        assert_eq!(
            pole_free_condition(&p(-1.5, 2.0, -1.5)),
            Some(PoleFreeCondition::VI)
        );
        assert_eq!(pole_free_condition(&p(1.5, -0.5, 1.2)), None);
    }

    #[test]
    fn example3_zero_in_unit_interval() {
        let prec = Precision::default();
        let rep = locate_zeros(&p(1.5, -0.5, 1.2), &prec).unwrap();
        assert_eq!(rep.count, 1);
        assert_eq!(rep.zeros.len(), 1);
        let z = rep.zeros[0];
        assert_eq!(z.kind, ZeroKind::Real);
        assert!(z.location.re > 0.0 && z.location.re < 1.0);
        let f = hyp2f1(
            &p(1.5, -0.5, 1.2),
            &CutPlanePoint::new(z.location).unwrap(),
            &prec,
        )
        .unwrap();
        assert!(f.norm() < 1e-12);
    }

    #[test]
    fn degenerate_cubic() {
        let prec = Precision::default();
        let params = p(-3.0, 0.7, 1.1);
        let rep = locate_zeros(&params, &prec).unwrap();
        assert!(rep.degenerate);
        assert_eq!(rep.multiplicity_total(), 3);
        for z in &rep.zeros {
            let f = crate::special::hyp2f1_series(&params, z.location, &prec).unwrap();
            assert!(f.norm() < 1e-10, "{z:?}: {f}");
        }
    }

    #[test]
    fn residue_routes_agree() {
        let prec = Precision::default();
        let params = p(1.5, -0.5, 1.2);
        let rep = locate_zeros(&params, &prec).unwrap();
        let beta = rep.zeros[0].location;
        let shift = Shift::new(0, 1, 1);
        let r1 = residue_at_pole(&params, shift, beta, &prec).unwrap();
        let r2 = residue_by_contour(&params, shift, beta, 0.05, 64, &prec).unwrap();
        assert!((r1 - r2).norm() < 1e-9 * r1.norm(), "{r1} vs {r2}");
        assert!(residue_at_pole(&params, Shift::IDENTITY, beta, &prec).is_err());
    }
}
