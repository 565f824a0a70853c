use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::BigRational;

use super::apostol::lerch_phi;
use super::gamma::complex_gamma;
use super::value::{ComplexVal, PrecisionConfig};
use super::EPS;
use crate::error::{domain, Error, Result};
use crate::exact::{
    bernoulli_numbers, bernoulli_polynomial, factorial, rational_to_f64, rising_factorial,
    BernoulliConvention,
};

const EM_DEPTH: usize = 60;

/// B_{2k}/(2k)! for k = 0..EM_DEPTH.
fn even_bernoulli_over_factorial() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli_numbers(2 * EM_DEPTH, BernoulliConvention::Standard);
        (0..=EM_DEPTH)
            .map(|k| {
                let r = &b[2 * k] / BigRational::from_integer(factorial(2 * k as u64));
                rational_to_f64(&r)
            })
            .collect()
    })
}

/// Some(n) when s = −n for a nonnegative integer n.
pub(crate) fn nonpositive_integer(s: Complex64) -> Option<u64> {
    (s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 && s.re > -1e6).then(|| (-s.re) as u64)
}

fn is_one(s: Complex64) -> bool {
    s.re == 1.0 && s.im == 0.0
}

/// d^m/dx^m of −B_{n+1}(x)/(n+1), which is ζ(−n, x) differentiated m times in x.
fn zeta_neg_int_poly_deriv(n: u64, m: u64, x: f64) -> ComplexVal {
    if m > n + 1 {
        return ComplexVal::zero();
    }
    let poly = bernoulli_polynomial((n + 1 - m) as usize);
    // −(n+1)n⋯(n+2−m)/(n+1)
    let falling: f64 = (0..m).map(|i| (n + 1 - i) as f64).product();
    let c = -falling / (n + 1) as f64;
    let v = c * poly.eval_f64(x);
    let mag: f64 = poly
        .coeffs()
        .iter()
        .enumerate()
        .map(|(d, q)| rational_to_f64(q).abs() * x.powi(d as i32))
        .sum();
    ComplexVal::new(
        Complex64::new(v, 0.0),
        4.0 * EPS * c.abs() * mag * (poly.degree() as f64 + 1.0),
    )
}

/// Euler–Maclaurin evaluation of ζ(s, x) for s ≠ 1.
fn euler_maclaurin(s: Complex64, x: f64, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    let table = even_bernoulli_over_factorial();
    let mut n_shift = cfg.working_digits as usize + s.norm().ceil() as usize;
    loop {
        if n_shift > cfg.max_terms {
            return Err(Error::Precision(format!(
                "Hurwitz zeta at s = {s}, x = {x}: no convergence within {} terms",
                cfg.max_terms
            )));
        }
        let mut head = Complex64::new(0.0, 0.0);
        let mut rounding = 0.0;
        for j in 0..n_shift {
            let ln = (j as f64 + x).ln();
            let t = (-s * ln).exp();
            head += t;
            rounding += t.norm() * (1.0 + (s * ln).norm());
        }
        let w = n_shift as f64 + x;
        let lnw = w.ln();
        let w_ms = (-s * lnw).exp();
        let mut tail = w_ms * w / (s - 1.0) + w_ms * 0.5;
        rounding += tail.norm() * (2.0 + (s * lnw).norm());
        // term_k = B_{2k}/(2k)! (s)_{2k−1} w^{−s−2k+1}
        let mut poch = s; // (s)_{2k−1} at k = 1
        let mut wpow = w_ms / w;
        let mut last = f64::INFINITY;
        let mut converged = None;
        for k in 1..=EM_DEPTH {
            let term = poch * wpow * table[k];
            let size = term.norm();
            if size > last && k > 2 {
                break;
            }
            tail += term;
            rounding += size;
            last = size;
            let bound = size * (1.0 + (s + 2.0 * k as f64).norm() / (s.re + 2.0 * k as f64).max(1.0));
            let tol = cfg.target_abs_err.max(EPS * (head + tail).norm()) * 0.25;
            if bound < tol {
                converged = Some(bound);
                break;
            }
            poch *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
            wpow /= w * w;
        }
        if let Some(trunc) = converged {
            let v = head + tail;
            return Ok(ComplexVal::new(v, trunc + 2.0 * EPS * rounding));
        }
        n_shift *= 2;
    }
}

fn check_cfg(cfg: &PrecisionConfig) -> Result<()> {
    cfg.validate()
}

/// ζ(s, x) for complex s ≠ 1 and real x > 0.
pub fn hurwitz_zeta(s: Complex64, x: f64, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    check_cfg(cfg)?;
    if !(x > 0.0 && x.is_finite()) {
        return domain(format!("Hurwitz zeta needs x > 0, got {x}"));
    }
    if is_one(s) {
        return Err(Error::Pole("Hurwitz zeta at s = 1".into()));
    }
    if let Some(n) = nonpositive_integer(s) {
        return Ok(zeta_neg_int_poly_deriv(n, 0, x));
    }
    if s.re < 0.0 && x <= 1.0 {
        return hurwitz_reflected(s, x, cfg);
    }
    euler_maclaurin(s, x, cfg)
}

// Euler–Maclaurin cancels badly for Re s < 0, so use
// ζ(s, x) = Γ(1−s)(2π)^{s−1} [e^{−πiσ/2} F(x, σ) + e^{πiσ/2} F(−x, σ)], σ = 1 − s,
// with F(x, σ) = Σ_{n≥1} e(nx) n^{−σ} = e(x) Φ(σ, 1, e(x)).
fn hurwitz_reflected(s: Complex64, x: f64, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    let sigma = Complex64::new(1.0, 0.0) - s;
    let gamma = complex_gamma(sigma, cfg)?;
    let pre = (-sigma * (2.0 * PI).ln()).exp();
    let i_half_pi = Complex64::new(0.0, PI / 2.0);
    let rot_plus = (-i_half_pi * sigma).exp();
    let rot_minus = (i_half_pi * sigma).exp();
    let scale = gamma.norm() * pre.norm() * (rot_plus.norm() + rot_minus.norm());
    let floor = 10f64.powi(-(cfg.working_digits as i32) + 2);
    let inner = PrecisionConfig {
        target_abs_err: (cfg.target_abs_err / scale.max(1.0)).max(floor),
        ..*cfg
    };
    let periodic = |t: f64| -> Result<ComplexVal> {
        // e(±1) = 1 exactly
        let lambda = if x == 1.0 { Complex64::new(1.0, 0.0) } else { super::e(t) };
        let phi = lerch_phi(sigma, Complex64::new(1.0, 0.0), lambda, &inner)?;
        Ok(phi.scale(lambda).with_extra_err(4.0 * EPS * phi.norm()))
    };
    let sum = periodic(x)?.scale(rot_plus) + periodic(-x)?.scale(rot_minus);
    let v = (gamma * sum).scale(pre);
    Ok(v.with_extra_err(4.0 * EPS * v.norm() * (1.0 + sigma.norm())))
}

/// ∂ᵐ/∂xᵐ ζ(s, x) = (−1)ᵐ (s)_m ζ(s+m, x).
pub fn hurwitz_zeta_x_deriv(
    m: u32,
    s: Complex64,
    x: f64,
    cfg: &PrecisionConfig,
) -> Result<ComplexVal> {
    check_cfg(cfg)?;
    if let Some(n) = nonpositive_integer(s) {
        if !(x > 0.0 && x.is_finite()) {
            return domain(format!("Hurwitz zeta needs x > 0, got {x}"));
        }
        return Ok(zeta_neg_int_poly_deriv(n, m as u64, x));
    }
    let shifted = s + m as f64;
    if is_one(shifted) {
        return Err(Error::Pole(format!(
            "derivative order {m} of the Hurwitz zeta at s = {s} hits the pole at 1"
        )));
    }
    let z = hurwitz_zeta(shifted, x, cfg)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(z.scale(rising_factorial(s, m as usize) * sign))
}

/// ζ(s) on the whole plane.
pub fn riemann_zeta(s: Complex64, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    check_cfg(cfg)?;
    if is_one(s) {
        return Err(Error::Pole("Riemann zeta at s = 1".into()));
    }
    if nonpositive_integer(s).is_some() || s.re >= 0.5 {
        return hurwitz_zeta(s, 1.0, cfg);
    }
    // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
    let one = Complex64::new(1.0, 0.0);
    let reflected = euler_maclaurin(one - s, 1.0, cfg)?;
    let gamma = complex_gamma(one - s, cfg)?;
    let factor = (s * (2.0 * PI).ln()).exp() / PI * (PI * s / 2.0).sin();
    let factor = ComplexVal::new(factor, 4.0 * EPS * factor.norm() * (1.0 + s.norm()));
    Ok(factor * gamma * reflected)
}

/// Ψ⁽ⁿ⁾(x) = (−1)ⁿ⁺¹ n! ζ(n+1, x) for n ≥ 1.
pub fn polygamma(n: u32, x: f64, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    if n == 0 {
        return domain("polygamma order must be positive");
    }
    let z = hurwitz_zeta(Complex64::new(n as f64 + 1.0, 0.0), x, cfg)?;
    let nf: f64 = (1..=n).map(f64::from).product();
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    Ok(z.scale(Complex64::new(sign * nf, 0.0)))
}
