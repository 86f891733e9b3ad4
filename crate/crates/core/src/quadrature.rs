//! Quadrature on subintervals of (0, 1) with algebraic endpoint behaviour.
//!
//! Integrands receive a [`Node`] carrying t, 1 - t and the distances to both
//! segment ends, each computed without cancellation, so that factors such as
//! (1 - t)^E or 1/(t0 - t) stay accurate right up to the endpoints.

use crate::error::{Error, Result};
use crate::special::gamma;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    DoubleExponential,
    GaussJacobiComposite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_levels: usize,
    pub scheme: Scheme,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_levels: 12,
            scheme: Scheme::DoubleExponential,
        }
    }
}

impl QuadratureConfig {
    pub fn with_scheme(self, scheme: Scheme) -> Self {
        QuadratureConfig { scheme, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_levels > 0) {
            return Err(Error::InvalidParams(
                "quadrature tolerances and level count must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// An interval [lo, hi] ⊂ [0, 1] with 1 - lo, 1 - hi given exactly, and the
/// power-law exponents of the integrand at each end.
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub one_minus_lo: f64,
    pub one_minus_hi: f64,
    pub exp_lo: f64,
    pub exp_hi: f64,
}

impl Segment {
    pub fn unit(exp_lo: f64, exp_hi: f64) -> Self {
        Segment {
            lo: 0.0,
            hi: 1.0,
            one_minus_lo: 1.0,
            one_minus_hi: 0.0,
            exp_lo,
            exp_hi,
        }
    }

    fn len(&self) -> f64 {
        self.hi - self.lo
    }

    fn node(&self, from_lo: f64, to_hi: f64, key: Option<i64>) -> Node {
        let (t, one_minus_t) = if from_lo <= to_hi {
            (self.lo + from_lo, self.one_minus_lo - from_lo)
        } else {
            (self.hi - to_hi, self.one_minus_hi + to_hi)
        };
        Node {
            t,
            one_minus_t,
            from_lo,
            to_hi,
            key,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Node {
    pub t: f64,
    pub one_minus_t: f64,
    pub from_lo: f64,
    pub to_hi: f64,
    /// Stable identifier of a double-exponential node within its segment.
    pub key: Option<i64>,
}

/// Integrate over each segment and sum. The callback gets the segment index.
pub fn integrate<F>(segments: &[Segment], cfg: &QuadratureConfig, mut f: F) -> Result<Complex64>
where
    F: FnMut(usize, &Node) -> Result<Complex64>,
{
    cfg.validate()?;
    let share = QuadratureConfig {
        abs_tol: cfg.abs_tol / segments.len().max(1) as f64,
        ..*cfg
    };
    let mut total = Complex64::new(0.0, 0.0);
    for (i, seg) in segments.iter().enumerate() {
        if seg.len() <= 0.0 {
            continue;
        }
        total += match cfg.scheme {
            Scheme::DoubleExponential => tanh_sinh(seg, &share, |n| f(i, n))?,
            Scheme::GaussJacobiComposite => gauss_jacobi_composite(seg, &share, |n| f(i, n))?,
        };
    }
    Ok(total)
}

const U_MAX: f64 = 6.0;
const KEY_SCALE: f64 = 4096.0;

/// Tanh-sinh with step halving. The pieces of the integral closer to the ends
/// than the outermost node are added from the endpoint power laws.
fn tanh_sinh<F>(seg: &Segment, cfg: &QuadratureConfig, mut f: F) -> Result<Complex64>
where
    F: FnMut(&Node) -> Result<Complex64>,
{
    let len = seg.len();
    let mut eval = |u: f64| -> Result<Complex64> {
        let s = 0.5 * PI * u.sinh();
        let e = (-2.0 * s.abs()).exp();
        let near = len * e / (1.0 + e);
        let far = len / (1.0 + e);
        let (from_lo, to_hi) = if s < 0.0 { (near, far) } else { (far, near) };
        let w = len * PI * u.cosh() * e / ((1.0 + e) * (1.0 + e));
        let key = (u * KEY_SCALE).round() as i64;
        let v = f(&seg.node(from_lo, to_hi, Some(key)))?;
        Ok(v * w)
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let n0 = U_MAX as i64;
    for k in -n0..=n0 {
        sum += eval(k as f64)?;
    }
    let tail = endpoint_tails(seg, &mut eval)?;
    let mut h = 1.0;
    let mut prev = sum * h + tail;
    for level in 1..=cfg.max_levels {
        h *= 0.5;
        let count = (U_MAX / h).round() as i64;
        let mut k = -count + 1;
        while k < count {
            sum += eval(k as f64 * h)?;
            k += 2;
        }
        let est = sum * h + tail;
        let gap = (est - prev).norm();
        if level >= 3 && gap <= cfg.abs_tol.max(cfg.rel_tol * est.norm()) {
            return Ok(est);
        }
        if !est.re.is_finite() || !est.im.is_finite() {
            return Err(Error::Quadrature {
                levels: level,
                gap: f64::INFINITY,
            });
        }
        prev = est;
        if level == cfg.max_levels {
            return Err(Error::Quadrature { levels: level, gap });
        }
    }
    unreachable!()
}

/// ∫ over the distance d ∈ (0, d_out) from an end, with integrand ~ C d^κ:
/// d_out · f(d_out) / (κ + 1).
fn endpoint_tails<G>(seg: &Segment, eval: &mut G) -> Result<Complex64>
where
    G: FnMut(f64) -> Result<Complex64>,
{
    let mut tail = Complex64::new(0.0, 0.0);
    for (u, kappa) in [(-U_MAX, seg.exp_lo), (U_MAX, seg.exp_hi)] {
        if kappa <= -1.0 {
            return Err(Error::Domain(format!(
                "endpoint exponent {kappa} is not integrable"
            )));
        }
        // eval returns f·w; at the outermost node w ≈ d·π cosh(u), so f·d = (f·w)/(π cosh u)
        tail += eval(u)? / (PI * U_MAX.cosh() * (kappa + 1.0));
    }
    Ok(tail)
}

/// Nodes and weights of Gauss–Jacobi quadrature on [-1, 1] for the weight
/// (1 - x)^α (1 + x)^β, from the eigen-decomposition of the Jacobi matrix.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let mut j = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        let diag = if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        j[(k, k)] = diag;
        if k + 1 < n {
            let m = kf + 1.0;
            let off = if k == 0 {
                (4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0).powi(2) * (ab + 3.0))).sqrt()
            } else {
                let s = 2.0 * m + ab;
                (4.0 * m * (m + alpha) * (m + beta) * (m + ab) / (s * s * (s + 1.0) * (s - 1.0)))
                    .sqrt()
            };
            j[(k, k + 1)] = off;
            j[(k + 1, k)] = off;
        }
    }
    let mu0 = 2f64.powf(ab + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(ab + 2.0);
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pairs.into_iter().unzip()
}

/// Graded composite rule: geometric panels towards both ends, Gauss–Legendre
/// inside, Gauss–Jacobi on the two end panels with the declared exponents.
fn gauss_jacobi_composite<F>(seg: &Segment, cfg: &QuadratureConfig, mut f: F) -> Result<Complex64>
where
    F: FnMut(&Node) -> Result<Complex64>,
{
    let len = seg.len();
    let mut prev: Option<Complex64> = None;
    let mut gap = f64::INFINITY;
    for level in 1..=cfg.max_levels {
        let order = 6 + 2 * level;
        let depth = 10 + 4 * level;
        let gl = gauss_jacobi(order, 0.0, 0.0);
        let jl = gauss_jacobi(order, 0.0, seg.exp_lo);
        let jr = gauss_jacobi(order, seg.exp_hi, 0.0);
        // panel boundaries as distances from lo in the left half and from hi in the right half
        let mut cuts = vec![0.0];
        for k in (0..=depth).rev() {
            cuts.push(0.5 * len * 0.5f64.powi(k as i32));
        }
        let tol = cfg
            .abs_tol
            .max(cfg.rel_tol * prev.map_or(0.0, |p| p.norm()));
        let mut total = Complex64::new(0.0, 0.0);
        for from_left in [true, false] {
            let (rule, kappa) = if from_left {
                (&jl, seg.exp_lo)
            } else {
                (&jr, seg.exp_hi)
            };
            total += end_panel(seg, from_left, cuts[1], rule, kappa, &mut f)?;
            for p in 1..cuts.len() - 1 {
                total +=
                    adaptive_panel(seg, from_left, cuts[p], cuts[p + 1], &gl, tol, 10, &mut f)?;
            }
        }
        if let Some(p) = prev {
            gap = (total - p).norm();
            if gap <= cfg.abs_tol.max(cfg.rel_tol * total.norm()) {
                return Ok(total);
            }
        }
        prev = Some(total);
    }
    Err(Error::Quadrature {
        levels: cfg.max_levels,
        gap,
    })
}

fn panel_node(seg: &Segment, from_left: bool, d: f64) -> Node {
    let len = seg.len();
    if from_left {
        seg.node(d, len - d, None)
    } else {
        seg.node(len - d, d, None)
    }
}

/// Panel [0, width] at an end, with the Jacobi weight of that end's exponent.
fn end_panel<F>(
    seg: &Segment,
    from_left: bool,
    width: f64,
    rule: &(Vec<f64>, Vec<f64>),
    kappa: f64,
    f: &mut F,
) -> Result<Complex64>
where
    F: FnMut(&Node) -> Result<Complex64>,
{
    let half = 0.5 * width;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &w) in rule.0.iter().zip(&rule.1) {
        // the right-end rule carries its weight at x = 1
        let xe = if from_left { x } else { -x };
        let d = half * (1.0 + xe);
        acc += f(&panel_node(seg, from_left, d))? * (w * half) * (half / d).powf(kappa);
    }
    Ok(acc)
}

fn gl_panel<F>(
    seg: &Segment,
    from_left: bool,
    d0: f64,
    d1: f64,
    rule: &(Vec<f64>, Vec<f64>),
    f: &mut F,
) -> Result<Complex64>
where
    F: FnMut(&Node) -> Result<Complex64>,
{
    let half = 0.5 * (d1 - d0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &w) in rule.0.iter().zip(&rule.1) {
        acc += f(&panel_node(seg, from_left, d0 + half * (1.0 + x)))? * (w * half);
    }
    Ok(acc)
}

/// Bisects until a panel agrees with the sum of its halves to a share of `tol`
/// proportional to its width.
#[allow(clippy::too_many_arguments)]
fn adaptive_panel<F>(
    seg: &Segment,
    from_left: bool,
    d0: f64,
    d1: f64,
    rule: &(Vec<f64>, Vec<f64>),
    tol: f64,
    depth: u32,
    f: &mut F,
) -> Result<Complex64>
where
    F: FnMut(&Node) -> Result<Complex64>,
{
    let whole = gl_panel(seg, from_left, d0, d1, rule, f)?;
    let mid = 0.5 * (d0 + d1);
    let halves =
        gl_panel(seg, from_left, d0, mid, rule, f)? + gl_panel(seg, from_left, mid, d1, rule, f)?;
    if depth == 0 || (whole - halves).norm() <= tol * (d1 - d0) / seg.len() {
        return Ok(halves);
    }
    Ok(
        adaptive_panel(seg, from_left, d0, mid, rule, tol, depth - 1, f)?
            + adaptive_panel(seg, from_left, mid, d1, rule, tol, depth - 1, f)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{hyp2f1_series, Params, Precision};

    fn beta_kernel(p: f64, q: f64, z: Complex64, scheme: Scheme) -> Complex64 {
        let cfg = QuadratureConfig::default().with_scheme(scheme);
        integrate(&[Segment::unit(p, q)], &cfg, |_, n| {
            Ok(Complex64::new(n.t.powf(p) * n.one_minus_t.powf(q), 0.0)
                / (Complex64::new(1.0, 0.0) - z * n.t))
        })
        .unwrap()
    }

    #[test]
    fn beta_kernel_matches_euler_integral() {
        let prec = Precision::default();
        for &(p, q) in &[(0.3, -0.6), (-0.7, 1.2), (2.0, 0.0), (-0.95, -0.4)] {
            for z in [Complex64::new(-0.5, 0.0), Complex64::new(0.3, 0.4)] {
                let b = gamma(p + 1.0) * gamma(q + 1.0) / gamma(p + q + 2.0);
                let exact =
                    hyp2f1_series(&Params::new(1.0, p + 1.0, p + q + 2.0).unwrap(), z, &prec)
                        .unwrap()
                        * b;
                for scheme in [Scheme::DoubleExponential, Scheme::GaussJacobiComposite] {
                    let got = beta_kernel(p, q, z, scheme);
                    assert!(
                        (got - exact).norm() < 1e-9 * exact.norm(),
                        "{p} {q} {z} {scheme:?}: {got} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn gauss_jacobi_integrates_polynomials() {
        let (x, w) = gauss_jacobi(5, 0.5, -0.3);
        // ∫(1-x)^0.5 (1+x)^-0.3 dx over [-1, 1] = 2^1.2 B(1.5, 0.7)
        let exact = 2f64.powf(1.2) * gamma(1.5) * gamma(0.7) / gamma(2.2);
        assert!((w.iter().sum::<f64>() - exact).abs() < 1e-13);
        let (_, wl) = gauss_jacobi(4, 0.0, 0.0);
        assert!((wl.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn zero_integrand() {
        let v = integrate(
            &[Segment::unit(0.0, 0.0)],
            &QuadratureConfig::default(),
            |_, _| Ok(Complex64::new(0.0, 0.0)),
        )
        .unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }
}
