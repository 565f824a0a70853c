use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::line::sum_config;
use super::quad::{choose_height, integrate, rounding_budget, QuadratureConfig};
use crate::error::{domain, Error, Result};
use crate::exact::{bernoulli_number, psi_polynomial, BernoulliConvention, rational_to_f64};
use crate::report::Sides;
use crate::specfn::{complex_gamma, riemann_zeta, ComplexVal, PrecisionConfig, EPS};
use crate::sums::{bc_sum, bc_sum_signed};

const HEIGHT_LIMIT: f64 = 200.0;
const POLE_MARGIN: f64 = 0.25;

/// Smallest admissible M for a, i.e. the least integer with M ≥ −min(0, Re a)/2.
pub fn default_m(a: Complex64) -> i64 {
    (-(a.re.min(0.0)) / 2.0).ceil() as i64
}

fn odd_integer(a: Complex64) -> bool {
    a.im == 0.0 && a.re.fract() == 0.0 && (a.re as i64) % 2 != 0
}

fn even_integer(a: Complex64) -> bool {
    a.im == 0.0 && a.re.fract() == 0.0 && (a.re as i64) % 2 == 0
}

fn check_z(z: Complex64) -> Result<()> {
    if z == Complex64::new(0.0, 0.0) || (z.im == 0.0 && z.re < 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return domain(format!("z = {z} must lie off the closed negative real axis"));
    }
    Ok(())
}

fn pole_distance(a: Complex64, c: f64) -> f64 {
    // poles of the integrand at s = a + 2j (j ≥ 0) and s = a + 1
    let mut distance = (a.re + 1.0 - c).abs();
    let mut j = 0.0;
    while a.re + 2.0 * j - c < distance {
        distance = distance.min((a.re + 2.0 * j - c).abs());
        j += 1.0;
    }
    distance
}

/// The abscissa c = −1/2 − 2M after checking the pole margin and the bound on M.
fn abscissa(a: Complex64, m: i64) -> Result<f64> {
    let least = default_m(a);
    let line = |m: i64| -0.5 - 2.0 * m as f64;
    let c = line(m);
    let distance = pole_distance(a, c);
    if distance < POLE_MARGIN {
        let suggested_m = (m + 1..)
            .find(|&k| k >= least && pole_distance(a, line(k)) >= POLE_MARGIN)
            .unwrap_or(least);
        return Err(Error::AbscissaShift {
            abscissa: c,
            distance,
            suggested_m,
        });
    }
    if m < least {
        return domain(format!("M = {m} is below the least admissible value {least} for a = {a}"));
    }
    Ok(c)
}

/// The Bernoulli part 2Σ_{n=1}^{M}(−1)ⁿB_{2n}/(2n)!·ζ(1−2n−a)(2πz)^{2n−1}.
fn bernoulli_part(a: Complex64, z: Complex64, m: i64, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    let w = 2.0 * PI * z;
    let mut terms = Vec::new();
    let mut fact = 1.0f64;
    for n in 1..=m {
        let n2 = 2 * n as usize;
        fact *= ((n2 - 1) * n2) as f64;
        let b = rational_to_f64(&bernoulli_number(n2, BernoulliConvention::Standard));
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let zeta = riemann_zeta(Complex64::new(1.0 - n2 as f64, 0.0) - a, cfg)?;
        terms.push(zeta.scale(w.powi(n2 as i32 - 1) * (2.0 * sign * b / fact)));
    }
    Ok(ComplexVal::sum(terms))
}

/// ζ(s)ζ(s−a)Γ(s)cos(πa/2)/sin(π(s−a)/2)·(2πz)^{−s}, written as
/// cos(πa/2)/(2π)·ζ(1−s)ζ(1−w)Γ(1−w)(2π)^w z^{−s}/cos(πs/2) with w = s − a,
/// which has no removable singularities left on the line.
fn integrand(a: Complex64, z: Complex64, s: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let w = s - a;
    let z1 = riemann_zeta(one - s, cfg)?.value();
    let z2 = riemann_zeta(one - w, cfg)?.value();
    let g = complex_gamma(one - w, cfg)?.value();
    let ca = (PI * a / 2.0).cos();
    let pow = (w * (2.0 * PI).ln() - s * z.ln()).exp();
    Ok(ca / (2.0 * PI) * z1 * z2 * g * pow / (PI * s / 2.0).cos())
}

/// g_a(z): the Bernoulli sum plus (1/πi)∫ over Re s = −1/2 − 2M, taken upward.
///
/// `m = None` uses the least admissible M. For odd integer a the integral
/// vanishes identically and only the Bernoulli sum is evaluated.
pub fn g_a_numeric(a: Complex64, z: Complex64, m: Option<i64>, quad: &QuadratureConfig) -> Result<ComplexVal> {
    quad.validate()?;
    check_z(z)?;
    let m = m.unwrap_or_else(|| default_m(a));
    let c = abscissa(a, m)?;
    let cfg = sum_config(quad);
    let head = bernoulli_part(a, z, m, &cfg)?;
    if odd_integer(a) {
        return Ok(head);
    }
    let rate = PI - z.arg().abs();
    if rate < 0.05 {
        return domain(format!("z = {z} is too close to the negative real axis"));
    }
    let failure: OnceLock<Error> = OnceLock::new();
    let f = |t: f64| match integrand(a, z, Complex64::new(c, t), &cfg) {
        Ok(v) => v,
        Err(e) => {
            let _ = failure.set(e);
            Complex64::new(f64::NAN, f64::NAN)
        }
    };
    let tol = quad.target_abs_err * PI;
    // the decay carries a polynomial factor, so model it with a slightly smaller rate
    let model = 0.75 * rate;
    let (height, tail) = match quad.truncation_height {
        Some(t) => (t, super::quad::tail_bound_at(&f, model, t)),
        None => choose_height(&f, model, 1.0, tol / 4.0, HEIGHT_LIMIT)?,
    };
    let body = integrate(&f, -height, height, 0.5, tol / 4.0, quad.panel_rule);
    if let Some(e) = failure.get() {
        return Err(e.clone());
    }
    if !body.value.re.is_finite() || !body.value.im.is_finite() {
        return Err(Error::Precision("Mellin integral did not produce a finite value".into()));
    }
    let rel = 1e3 * EPS * (1.0 + c.abs() + a.norm());
    let err = body.err + tail + rounding_budget(body.l1, rel);
    Ok(head + ComplexVal::new(body.value / PI, err / PI))
}

/// ψ_a(z) = (i/(πz))ζ(1−a)/ζ(−a) − i z^{−1−a}cot(πa/2) + i g_a(z)/ζ(−a).
pub fn psi_a_numeric(a: Complex64, z: Complex64, m: Option<i64>, quad: &QuadratureConfig) -> Result<ComplexVal> {
    check_z(z)?;
    if a == Complex64::new(0.0, 0.0) {
        return domain("a = 0 puts zeta(1 - a) at its pole");
    }
    if even_integer(a) {
        return domain(format!("cot(pi a / 2) has a pole at a = {a}"));
    }
    let cfg = sum_config(quad);
    let one = Complex64::new(1.0, 0.0);
    let zeta_neg = riemann_zeta(-a, &cfg)?;
    if zeta_neg.norm() <= 2.0 * zeta_neg.abs_err() {
        return domain(format!("zeta(-a) vanishes at a = {a}"));
    }
    let i = Complex64::i();
    let zeta_one = riemann_zeta(one - a, &cfg)?;
    let first = (zeta_one / zeta_neg).scale(i / (PI * z));
    let second = if odd_integer(a) {
        ComplexVal::zero()
    } else {
        let zpow = (-(one + a) * z.ln()).exp();
        let cot = (PI * a / 2.0).cos() / (PI * a / 2.0).sin();
        ComplexVal::rounded(-i * zpow * cot).with_extra_err(EPS * (1.0 + a.norm()) * 8.0 * (zpow * cot).norm())
    };
    let g = g_a_numeric(a, z, m, quad)?;
    let third = (g / zeta_neg).scale(i);
    Ok(first + second + third)
}

/// Where ψ_a comes from in [`verify_thm11`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PsiSource {
    /// The exact period polynomial; needs a = −n with n > 1 odd.
    Polynomial,
    /// The Mellin integral representation with the given M (or the least one).
    Mellin { m: Option<i64> },
}

/// Both sides of
/// c_a(h/k) − (k/h)^{1+a}c_a(−k/h) + k^a aζ(1−a)/(πh) = −iζ(−a)ψ_a(h/k).
pub fn verify_thm11(a: Complex64, h: u64, k: u64, source: PsiSource, quad: &QuadratureConfig) -> Result<Sides> {
    if h == 0 || k == 0 {
        return domain("h and k must be positive");
    }
    let cfg = sum_config(quad);
    let one = Complex64::new(1.0, 0.0);
    let (hf, kf) = (h as f64, k as f64);
    let z = Complex64::new(hf / kf, 0.0);
    let zeta_neg = riemann_zeta(-a, &cfg)?;
    let psi = match source {
        PsiSource::Polynomial => {
            if !(odd_integer(a) && a.re < -1.0) {
                return domain(format!("the period polynomial needs a = -n with n > 1 odd, got a = {a}"));
            }
            let n = (-a.re) as u32;
            let v = psi_polynomial(n)?.eval(z)?;
            ComplexVal::new(v, 64.0 * EPS * v.norm().max(1.0))
        }
        PsiSource::Mellin { m } => psi_a_numeric(a, z, m, quad)?,
    };
    let c_hk = bc_sum(a, h, k, &cfg)?;
    let c_neg = bc_sum_signed(a, -(k as i64), h, &cfg)?;
    let ratio = ((one + a) * (kf / hf).ln()).exp();
    let kpow = (a * kf.ln()).exp();
    let zeta_one = riemann_zeta(one - a, &cfg)?;
    let lhs = c_hk - c_neg.scale(ratio) + zeta_one.scale(kpow * a / (PI * hf));
    let rhs = (zeta_neg * psi).scale(-Complex64::i());
    Ok(Sides::new(lhs, rhs))
}
