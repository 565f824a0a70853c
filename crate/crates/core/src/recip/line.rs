use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::quad::{choose_height, integrate, rounding_budget, QuadratureConfig};
use crate::error::{domain, Error, Result};
use crate::exact::{bernoulli_numbers, binomial, factorial, BernoulliConvention, ExactScaled};
use crate::report::Sides;
use crate::specfn::{riemann_zeta, ComplexVal, CotDerivEvaluator, PrecisionConfig, EPS};
use crate::sums::bc_sum;

/// Direction of travel along Re z = ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// From ε + i∞ down to ε − i∞.
    #[default]
    Downward,
    Upward,
}

const HEIGHT_LIMIT: f64 = 400.0;

struct CotProduct {
    factors: Vec<(f64, f64, CotDerivEvaluator)>,
}

impl CotProduct {
    fn new(factors: &[(u64, u32)]) -> Self {
        let factors = factors
            .iter()
            .map(|&(k, m)| {
                let w = PI * k as f64;
                (w, w.powi(m as i32), CotDerivEvaluator::new(m))
            })
            .collect();
        CotProduct { factors }
    }

    /// ∏ (d/dz)^{m_j} cot(πk_j z).
    fn eval(&self, z: Complex64) -> Complex64 {
        self.factors
            .iter()
            .fold(Complex64::new(1.0, 0.0), |acc, (w, scale, ev)| acc * ev.eval(z * *w) * *scale)
    }
}

/// ∫ from ε+i∞ to ε−i∞ of ∏ (d/dz)^{m_j} cot(πk_j z) / z^b dz.
///
/// `factors` lists (k_j, m_j). The constant limits of the product as
/// Im z → ±∞ are subtracted before integrating and their contribution is
/// added back in closed form, so the integrand decays like e^{−2π min k_j |t|}.
pub fn line_integral_product(
    b: Complex64,
    factors: &[(u64, u32)],
    quad: &QuadratureConfig,
) -> Result<ComplexVal> {
    quad.validate()?;
    if b.re <= 1.0 {
        return domain(format!("need Re(b) > 1 for convergence, got b = {b}"));
    }
    if factors.is_empty() || factors.iter().any(|&(k, _)| k == 0) {
        return domain("need at least one cotangent factor with positive modulus");
    }
    let moduli: Vec<u64> = factors.iter().map(|f| f.0).collect();
    let eps = quad.abscissa_for(&moduli)?;
    let kmin = *moduli.iter().min().unwrap() as f64;
    let kmax = *moduli.iter().max().unwrap() as f64;
    let product = CotProduct::new(factors);

    // cot → ∓i as Im z → ±∞, and every derivative tends to 0
    let d = factors.len() as i32;
    let (upper, lower) = if factors.iter().all(|f| f.1 == 0) {
        (Complex64::new(0.0, -1.0).powi(d), Complex64::new(0.0, 1.0).powi(d))
    } else {
        (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    };
    let power = |z: Complex64| (-b * z.ln()).exp();
    let up = |t: f64| {
        let z = Complex64::new(eps, t);
        (product.eval(z) - upper) * power(z)
    };
    let down = |t: f64| {
        let z = Complex64::new(eps, t);
        (product.eval(z) - lower) * power(z)
    };
    let both = |t: f64| if t >= 0.0 { up(t) } else { down(t) };

    let tol = quad.target_abs_err;
    let rate = 2.0 * PI * kmin;
    let (height, tail) = match quad.truncation_height {
        Some(t) => (t, super::quad::tail_bound_at(&both, rate, t)),
        None => choose_height(&both, rate, 1.0 / kmin, tol / 4.0, HEIGHT_LIMIT)?,
    };
    let panel = (0.25f64).min(0.25 / kmax).min(eps);
    let rule = quad.panel_rule;
    let hi = integrate(&up, 0.0, height, panel, tol / 4.0, rule);
    let lo = integrate(&down, -height, 0.0, panel, tol / 4.0, rule);

    // dz = i dt, and travelling downward flips the sign
    let body = -Complex64::i() * (hi.value + lo.value);
    let one = Complex64::new(1.0, 0.0);
    let compensation = (upper - lower) * (power(Complex64::new(eps, 0.0)) * eps) / (one - b);
    let value = body + compensation;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Precision("line integral did not produce a finite value".into()));
    }
    let rel = 64.0 * EPS * (1.0 + b.norm()) * (1.0 + (height.max(1.0) / eps).ln());
    let err = hi.err + lo.err + tail + rounding_budget(hi.l1 + lo.l1, rel) + EPS * compensation.norm();
    Ok(ComplexVal::new(value, err))
}

fn check_coprime(h: u64, k: u64) -> Result<()> {
    if h == 0 || k == 0 {
        return domain("h and k must be positive");
    }
    if h.gcd(&k) != 1 {
        return domain(format!("gcd({h}, {k}) != 1"));
    }
    Ok(())
}

/// ∫ from ε+i∞ to ε−i∞ of cot(πhz)cot(πkz)/z^a dz for Re(a) > 1.
pub fn line_integral_cotcot(a: Complex64, h: u64, k: u64, quad: &QuadratureConfig) -> Result<ComplexVal> {
    if a.re <= 1.0 {
        return domain(format!("need Re(a) > 1, got a = {a}"));
    }
    check_coprime(h, k)?;
    line_integral_product(a, &[(h, 0), (k, 0)], quad)
}

/// The closed form of the cot·cot line integral at odd integer a = n > 1:
/// 2(2πi)ⁿ/(hk(n+1)!) Σ_{m=0}^{n+1} C(n+1,m)B_mB_{n+1−m}h^mk^{n+1−m}, with B₁ = 0.
pub fn closed_form_integral(n: u32, h: u64, k: u64) -> Result<ExactScaled> {
    if n <= 1 || n % 2 == 0 {
        return domain(format!("n must be odd and > 1, got {n}"));
    }
    check_coprime(h, k)?;
    let b = bernoulli_numbers(n as usize + 1, BernoulliConvention::Zeroed);
    let (hh, kk) = (BigInt::from(h), BigInt::from(k));
    let bracket: BigRational = (0..=n + 1)
        .map(|m| {
            BigRational::from_integer(binomial(n as u64 + 1, m as u64) * hh.pow(m) * kk.pow(n + 1 - m))
                * &b[m as usize]
                * &b[(n + 1 - m) as usize]
        })
        .sum();
    let scale = BigRational::new(
        BigInt::from(2) * BigInt::from(2).pow(n),
        BigInt::from(h * k) * factorial(n as u64 + 1),
    );
    Ok(ExactScaled::new(bracket * scale, n as i64, n as i64))
}

fn pow_real(x: f64, a: Complex64) -> Complex64 {
    (a * x.ln()).exp()
}

/// Both sides of
/// h^{1−a}c₋ₐ(h/k) + k^{1−a}c₋ₐ(k/h) = aζ(a+1)/(π(hk)^a) + (hk)^{1−a}/(2i)·∫_{ε+i∞}^{ε−i∞} cot(πhz)cot(πkz)/z^a dz.
pub fn verify_thm12(a: Complex64, h: u64, k: u64, quad: &QuadratureConfig) -> Result<Sides> {
    verify_thm12_oriented(a, h, k, quad, Orientation::Downward)
}

/// As [`verify_thm12`], with the line integral taken in the given direction.
/// Only the downward direction makes the identity hold.
pub fn verify_thm12_oriented(
    a: Complex64,
    h: u64,
    k: u64,
    quad: &QuadratureConfig,
    orientation: Orientation,
) -> Result<Sides> {
    let integral = line_integral_cotcot(a, h, k, quad)?;
    let integral = match orientation {
        Orientation::Downward => integral,
        Orientation::Upward => -integral,
    };
    let cfg = sum_config(quad);
    let one = Complex64::new(1.0, 0.0);
    let (hf, kf) = (h as f64, k as f64);
    let lhs = bc_sum(-a, h, k, &cfg)?.scale(pow_real(hf, one - a)) + bc_sum(-a, k, h, &cfg)?.scale(pow_real(kf, one - a));
    let zeta = riemann_zeta(a + 1.0, &cfg)?;
    let first = zeta.scale(a / (PI * pow_real(hf * kf, a)));
    let second = integral.scale(pow_real(hf * kf, one - a) / Complex64::new(0.0, 2.0));
    Ok(Sides::new(lhs, first + second))
}

/// Precision settings for the finite sums and zeta values next to a quadrature.
pub(crate) fn sum_config(quad: &QuadratureConfig) -> PrecisionConfig {
    PrecisionConfig::with_target(quad.target_abs_err.clamp(1e-13, 1e-2) / 10.0)
}
