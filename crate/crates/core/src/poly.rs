//! Real polynomials and rational functions, stored with ascending coefficients.

use nalgebra::DMatrix;
use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    /// From ascending coefficients; trailing zeros are dropped.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        RealPolynomial { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::new(vec![0.0]);
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::new(out)
    }

    /// Monic polynomial vanishing at the given real roots and at each
    /// complex root together with its conjugate.
    pub fn from_roots(real: &[f64], complex_upper: &[Complex64]) -> Self {
        let mut p = Self::one();
        for &r in real {
            p = p.mul(&Self::new(vec![-r, 1.0]));
        }
        for &z in complex_upper {
            p = p.mul(&Self::new(vec![z.norm_sqr(), -2.0 * z.re, 1.0]));
        }
        p
    }

    /// All complex roots: companion-matrix eigenvalues refined by Newton steps.
    pub fn roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[n];
        let mut comp = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            comp[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            comp[(i, n - 1)] = -self.coeffs[i] / lead;
        }
        let d = self.derivative();
        comp.complex_eigenvalues()
            .iter()
            .map(|&z0| {
                let mut z = z0;
                for _ in 0..3 {
                    let dz = d.eval(z);
                    if dz.norm() == 0.0 {
                        break;
                    }
                    let step = self.eval(z) / dz;
                    if !step.re.is_finite() || !step.im.is_finite() {
                        break;
                    }
                    let cand = z - step;
                    if self.eval(cand).norm() <= self.eval(z).norm() {
                        z = cand;
                    } else {
                        break;
                    }
                }
                z
            })
            .collect()
    }
}

/// num(z) / den(z).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    pub num: RealPolynomial,
    pub den: RealPolynomial,
}

impl RationalFunction {
    pub fn new(num: RealPolynomial, den: RealPolynomial) -> Self {
        RationalFunction { num, den }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_roots_and_back() {
        let p = RealPolynomial::from_roots(&[2.0, -0.5], &[Complex64::new(0.3, 1.2)]);
        assert_eq!(p.degree(), 4);
        assert_eq!(p.coeffs()[4], 1.0);
        let mut r = p.roots();
        r.sort_by(|x, y| {
            x.re.partial_cmp(&y.re)
                .unwrap()
                .then(x.im.partial_cmp(&y.im).unwrap())
        });
        let expect = [
            Complex64::new(-0.5, 0.0),
            Complex64::new(0.3, -1.2),
            Complex64::new(0.3, 1.2),
            Complex64::new(2.0, 0.0),
        ];
        for (a, b) in r.iter().zip(expect.iter()) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn derivative_and_eval() {
        let p = RealPolynomial::new(vec![1.0, -3.0, 0.0, 2.0, 0.0]);
        assert_eq!(p.degree(), 3);
        assert_eq!(p.derivative().coeffs(), &[-3.0, 0.0, 6.0]);
        assert_eq!(p.eval_real(2.0), 11.0);
        let z = Complex64::new(0.0, 1.0);
        assert_eq!(p.eval(z), Complex64::new(1.0, -5.0));
    }

    #[test]
    fn rational_eval() {
        let f = RationalFunction::new(
            RealPolynomial::new(vec![1.0]),
            RealPolynomial::new(vec![-1.0, 1.0]),
        );
        assert_eq!(f.eval(Complex64::new(3.0, 0.0)), Complex64::new(0.5, 0.0));
    }
}
