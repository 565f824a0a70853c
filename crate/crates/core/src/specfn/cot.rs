use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::value::{ComplexVal, PrecisionConfig};
use super::EPS;
use crate::error::{Error, Result};

/// The integer polynomial Pₘ with cot⁽ᵐ⁾(w) = Pₘ(cot w).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotDerivPolynomial {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl CotDerivPolynomial {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs_f64().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs_f64()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    /// Pₘ/(1 + X²) for m ≥ 1, which divides exactly.
    fn over_one_plus_square(&self) -> Vec<f64> {
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let n = rem.len();
        let mut q = vec![BigInt::zero(); n.saturating_sub(2)];
        for d in (2..n).rev() {
            let c = rem[d].clone();
            q[d - 2] = c.clone();
            rem[d - 2] -= &c;
            rem[d] = BigInt::zero();
        }
        debug_assert!(rem.iter().all(Zero::is_zero));
        q.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

/// P₀ = X and P_{m+1} = −(1 + X²)·Pₘ′.
pub fn cot_deriv_poly(m: u32) -> CotDerivPolynomial {
    let mut p = vec![BigInt::zero(), BigInt::from(1)];
    for _ in 0..m {
        let deriv: Vec<BigInt> = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(d, c)| c * BigInt::from(d))
            .collect();
        let mut next = vec![BigInt::zero(); deriv.len() + 2];
        for (d, c) in deriv.iter().enumerate() {
            next[d] -= c;
            next[d + 2] -= c;
        }
        p = next;
    }
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    CotDerivPolynomial { order: m, coeffs: p }
}

/// cot⁽ᵐ⁾(w) for real w, differentiating with respect to w itself.
pub fn cot_derivative(m: u32, w: f64, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    cfg.validate()?;
    let turns = w / PI;
    if !w.is_finite() || (turns - turns.round()).abs() < 1e-12 {
        return Err(Error::Pole(format!("cotangent derivative at w = {w}")));
    }
    let x = 1.0 / w.tan();
    let p = cot_deriv_poly(m);
    let v = p.eval(x);
    let coeffs = p.coeffs_f64();
    let mag: f64 = coeffs
        .iter()
        .enumerate()
        .map(|(d, c)| c.abs() * x.abs().powi(d as i32))
        .sum();
    let slope: f64 = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(d, c)| d as f64 * c.abs() * x.abs().powi(d as i32 - 1))
        .sum();
    // rounding of w and of tan feeds through dPₘ/dX
    let cot_err = EPS * (1.0 + x * x) * (1.0 + w.abs()) + EPS * x.abs();
    let err = EPS * mag * (p.degree() as f64 + 1.0) + slope * cot_err;
    Ok(ComplexVal::new(Complex64::new(v, 0.0), err))
}

/// Evaluates cot⁽ᵐ⁾ at complex points with the polynomial prepared once.
///
/// For m ≥ 1 the value is written as csc²(w)·Rₘ(cot w) with Rₘ = Pₘ/(1+X²),
/// and csc² is taken from q = e^{2iw}, so the exponential decay away from the
/// real axis is kept to full relative precision.
#[derive(Debug, Clone)]
pub struct CotDerivEvaluator {
    order: u32,
    quotient: Vec<f64>,
}

impl CotDerivEvaluator {
    pub fn new(m: u32) -> Self {
        let quotient = if m == 0 {
            Vec::new()
        } else {
            cot_deriv_poly(m).over_one_plus_square()
        };
        CotDerivEvaluator { order: m, quotient }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        if w.im < 0.0 {
            let sign = if self.order % 2 == 0 { -1.0 } else { 1.0 };
            return self.eval(-w) * sign;
        }
        let q = (Complex64::i() * 2.0 * w).exp();
        let one = Complex64::new(1.0, 0.0);
        let x = -Complex64::i() * (one + q) / (one - q);
        if self.order == 0 {
            return x;
        }
        let csc2 = -4.0 * q / ((one - q) * (one - q));
        let r = self
            .quotient
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
        csc2 * r
    }
}

/// cot⁽ᵐ⁾(w) for complex w off the real axis poles, stable for large |Im w|.
pub fn cot_derivative_complex(m: u32, w: Complex64) -> Complex64 {
    CotDerivEvaluator::new(m).eval(w)
}
