//! Scalar building blocks: parameter types, rising factorials, reciprocal
//! gamma, the Gauss power series and terminating unit-argument 4F3 sums.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Tolerance used to decide whether a real parameter "is" an integer.
pub const INT_TOL: f64 = 1e-12;

/// Nearest integer to `x` if `x` lies within `tol` of it.
pub fn near_int(x: f64, tol: f64) -> Option<i64> {
    let r = x.round();
    if (x - r).abs() <= tol * r.abs().max(1.0) {
        Some(r as i64)
    } else {
        None
    }
}

/// `Some(n)` when `x = -n` with `n ∈ ℕ₀` (up to [`INT_TOL`]).
pub fn neg_n0(x: f64) -> Option<u64> {
    match near_int(x, INT_TOL) {
        Some(k) if k <= 0 => Some((-k) as u64),
        _ => None,
    }
}

/// True when `x ∈ ℕ₀` (up to [`INT_TOL`]).
pub fn in_n0(x: f64) -> bool {
    matches!(near_int(x, INT_TOL), Some(k) if k >= 0)
}

/// Real parameter triple (a, b, c) of the base function 2F1(a, b; c; z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Params {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "non-finite parameters ({a}, {b}, {c})"
            )));
        }
        if neg_n0(c).is_some() {
            return Err(Error::InvalidParams(format!(
                "c = {c} is zero or a negative integer"
            )));
        }
        Ok(Params { a, b, c })
    }

    /// Parameters of the numerator function 2F1(a+n1, b+n2; c+m; z).
    pub fn shifted(&self, s: Shift) -> Result<Params> {
        Params::new(
            self.a + s.n1 as f64,
            self.b + s.n2 as f64,
            self.c + s.m as f64,
        )
    }

    pub fn swapped(&self) -> Params {
        Params {
            a: self.b,
            b: self.a,
            c: self.c,
        }
    }

    /// Parameters (c-a, c-b, c) of the Euler-transformed function.
    pub fn euler(&self) -> Params {
        Params {
            a: self.c - self.a,
            b: self.c - self.b,
            c: self.c,
        }
    }

    /// Some of a, b, c-a, c-b is a non-positive integer: 2F1 is a polynomial,
    /// possibly times a power of (1-z).
    pub fn is_degenerate(&self) -> bool {
        [self.a, self.b, self.c - self.a, self.c - self.b]
            .iter()
            .any(|&x| neg_n0(x).is_some())
    }
}

/// Integer shift (n1, n2, m) defining the numerator function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shift {
    pub n1: i32,
    pub n2: i32,
    pub m: i32,
}

impl Shift {
    pub const IDENTITY: Shift = Shift { n1: 0, n2: 0, m: 0 };

    pub const fn new(n1: i32, n2: i32, m: i32) -> Self {
        Shift { n1, n2, m }
    }

    pub fn is_identity(&self) -> bool {
        *self == Shift::IDENTITY
    }

    pub fn swapped(&self) -> Shift {
        Shift {
            n1: self.n2,
            n2: self.n1,
            m: self.m,
        }
    }
}

/// Working precision and series truncation controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Precision {
    /// Requested significant digits. Values above 16 switch the
    /// cancellation-prone sums to double-double arithmetic.
    pub working_digits: u32,
    pub series_tolerance: f64,
    pub max_terms: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            working_digits: 32,
            series_tolerance: 1e-17,
            max_terms: 20_000,
        }
    }
}

impl Precision {
    pub fn new(working_digits: u32, series_tolerance: f64, max_terms: usize) -> Result<Self> {
        if working_digits == 0 || !(series_tolerance > 0.0) || max_terms == 0 {
            return Err(Error::InvalidParams(format!(
                "bad precision ({working_digits}, {series_tolerance}, {max_terms})"
            )));
        }
        Ok(Precision {
            working_digits,
            series_tolerance,
            max_terms,
        })
    }

    pub fn with_digits(digits: u32) -> Self {
        Precision {
            working_digits: digits.max(1),
            ..Precision::default()
        }
    }

    pub fn extended(&self) -> bool {
        self.working_digits > 16
    }
}

/// Rising factorial (a)_n = a(a+1)...(a+n-1), (a)_0 = 1.
pub fn rising_factorial(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

/// Rising factorial with a signed index: (x)_{-n} = 1/((x-1)(x-2)...(x-n)).
/// Returns `None` when a negative index hits a zero factor.
pub fn pochhammer_dd(x: Dd, n: i64) -> Option<Dd> {
    if n >= 0 {
        Some((0..n).fold(Dd::ONE, |acc, k| acc * (x + Dd::new(k as f64))))
    } else {
        let mut den = Dd::ONE;
        for i in 1..=(-n) {
            den = den * (x - Dd::new(i as f64));
        }
        if den.is_zero() {
            None
        } else {
            Some(Dd::ONE / den)
        }
    }
}

/// sin(πx), exactly zero at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == r.round() {
        return 0.0;
    }
    let y = if r > 0.5 {
        1.0 - r
    } else if r < -0.5 {
        -1.0 - r
    } else {
        r
    };
    (PI * y).sin()
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, &p)| acc + p / (x + i as f64 + 1.0))
}

// Γ(x) for x >= 0.5.
fn gamma_right(x: f64) -> f64 {
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * lanczos_sum(x)
}

/// Γ(x) for real x; infinite at the poles.
pub fn gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        PI / (sin_pi(x) * gamma_right(1.0 - x))
    } else {
        gamma_right(x)
    }
}

/// ln|Γ(x)| for real x.
pub fn ln_gamma_abs(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return f64::INFINITY;
    }
    if x < 0.5 {
        return (PI / sin_pi(x).abs()).ln() - ln_gamma_abs(1.0 - x);
    }
    let y = x - 1.0;
    let t = y + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (y + 0.5) * t.ln() - t + lanczos_sum(y).ln()
}

/// 1/Γ(x), exactly zero at x ∈ -ℕ₀.
pub fn reciprocal_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        return 0.0;
    }
    if x < 0.5 {
        sin_pi(x) * gamma_right(1.0 - x) / PI
    } else {
        1.0 / gamma_right(x)
    }
}

/// Sign of Γ(x) for x not a pole.
pub fn gamma_sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if ((-x).floor() as i64) % 2 == 0 {
        -1.0
    } else {
        1.0
    }
}

/// Partial sum of the Gauss series with no parameter validation. Terminates
/// exactly when a or b is a non-positive integer.
pub(crate) fn series_raw(
    a: f64,
    b: f64,
    c: f64,
    z: Complex64,
    prec: &Precision,
) -> Result<Complex64> {
    let cap = match (neg_n0(a), neg_n0(b)) {
        (Some(n), Some(k)) => Some(n.min(k)),
        (Some(n), None) | (None, Some(n)) => Some(n),
        (None, None) => None,
    };
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    if let Some(n) = cap {
        for k in 0..n {
            let kf = k as f64;
            term *= z * ((a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)));
            sum += term;
        }
        return Ok(sum);
    }
    let mut small = 0;
    for k in 0..prec.max_terms {
        let kf = k as f64;
        term *= z * ((a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)));
        sum += term;
        if term.norm() <= prec.series_tolerance * sum.norm() {
            small += 1;
            if small == 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Truncation {
        terms: prec.max_terms,
        last: term.norm() / sum.norm(),
    })
}

/// The Gauss power series inside its disc of convergence, or the finite sum
/// when it terminates.
pub fn hyp2f1_series(params: &Params, z: Complex64, prec: &Precision) -> Result<Complex64> {
    let terminating = neg_n0(params.a).is_some() || neg_n0(params.b).is_some();
    if !terminating && z.norm() >= 1.0 {
        return Err(Error::Domain(format!(
            "power series needs |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    series_raw(params.a, params.b, params.c, z, prec)
}

/// Absolute size below which a bottom Pochhammer factor counts as zero.
const SINGULAR_BOTTOM: f64 = 1e-10;

/// Terminating 4F3 at unit argument in double-double arithmetic.
/// `top[0]` must be a non-positive integer.
pub fn hyp4f3_terminating_dd(top: [Dd; 4], bottom: [Dd; 3]) -> Result<Dd> {
    let n = neg_n0(top[0].to_f64()).ok_or_else(|| {
        Error::Domain(format!(
            "first upper parameter {} is not a non-positive integer",
            top[0].to_f64()
        ))
    })?;
    let mut sum = Dd::ONE;
    let mut term = Dd::ONE;
    for k in 0..n {
        let kd = Dd::new(k as f64);
        let num = top.iter().fold(Dd::ONE, |acc, &t| acc * (t + kd));
        if num.is_zero() {
            break;
        }
        let mut den = Dd::new(k as f64 + 1.0);
        for &bt in &bottom {
            let f = bt + kd;
            if f.to_f64().abs() < SINGULAR_BOTTOM {
                return Err(Error::SingularTerm {
                    j: k as i64,
                    term: "4F3",
                });
            }
            den = den * f;
        }
        term = term * num / den;
        sum = sum + term;
    }
    Ok(sum)
}

/// Terminating 4F3 at unit argument.
pub fn hyp4f3_terminating(top: [f64; 4], bottom: [f64; 3], prec: &Precision) -> Result<f64> {
    if prec.extended() {
        return hyp4f3_terminating_dd(top.map(Dd::new), bottom.map(Dd::new)).map(Dd::to_f64);
    }
    let n = neg_n0(top[0]).ok_or_else(|| {
        Error::Domain(format!(
            "first upper parameter {} is not a non-positive integer",
            top[0]
        ))
    })?;
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let num = top.iter().map(|&t| t + kf).product::<f64>();
        if num == 0.0 {
            break;
        }
        let mut den = kf + 1.0;
        for &bt in &bottom {
            if (bt + kf).abs() < SINGULAR_BOTTOM {
                return Err(Error::SingularTerm {
                    j: k as i64,
                    term: "4F3",
                });
            }
            den *= bt + kf;
        }
        term *= num / den;
        sum += term;
    }
    Ok(sum)
}
