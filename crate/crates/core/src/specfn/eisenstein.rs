use std::f64::consts::PI;

use num_complex::Complex64;

use super::value::{ComplexVal, PrecisionConfig};
use super::zeta::riemann_zeta;
use super::EPS;
use crate::error::{domain, Error, Result};

fn pow_real(d: u64, a: Complex64) -> Complex64 {
    (a * (d as f64).ln()).exp()
}

/// σₐ(n) = Σ_{d | n} dᵃ.
pub fn divisor_sigma(a: Complex64, n: u64) -> Result<ComplexVal> {
    if n == 0 {
        return domain("divisor sum needs n >= 1");
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            let t = pow_real(d, a);
            acc += t;
            mag += t.norm();
            let e = n / d;
            if e != d {
                let t = pow_real(e, a);
                acc += t;
                mag += t.norm();
            }
        }
        d += 1;
    }
    Ok(ComplexVal::new(acc, EPS * mag * (2.0 + a.norm() * (n as f64).ln())))
}

/// Σ_{n>N} n^p rⁿ, bounding |σₐ(n) qⁿ| through σₐ(n) ≤ n^{1+max(0, Re a)}.
fn tail_bound(n_cut: u64, p: f64, r: f64) -> f64 {
    let mut total = 0.0;
    let mut n = n_cut + 1;
    loop {
        let t = (p * (n as f64).ln() + n as f64 * r.ln()).exp();
        total += t;
        // once terms shrink geometrically by at least ρ < 1 the rest is ≤ t·ρ/(1−ρ)
        let rho = r * ((n + 1) as f64 / n as f64).powf(p);
        if rho < 0.9 && t < 1e-40 {
            return total + t * rho / (1.0 - rho);
        }
        if n > n_cut + 1_000_000 {
            return f64::INFINITY;
        }
        n += 1;
    }
}

/// E_{a+1}(z) = 1 + (2/ζ(−a)) Σ σₐ(n) e(nz), truncated after `truncation` terms
/// (0 picks the truncation from the target error).
pub fn eisenstein_e(
    a: Complex64,
    z: Complex64,
    truncation: usize,
    cfg: &PrecisionConfig,
) -> Result<ComplexVal> {
    cfg.validate()?;
    if z.im <= 0.0 {
        return domain(format!("Eisenstein series needs Im(z) > 0, got {z}"));
    }
    let zeta = riemann_zeta(-a, cfg)?;
    if zeta.norm() <= 2.0 * zeta.abs_err() + 1e-300 {
        return domain(format!("zeta(-a) vanishes at a = {a}"));
    }
    let q = (Complex64::i() * 2.0 * PI * z).exp();
    let r = q.norm();
    let p = 1.0 + a.re.max(0.0);
    let scale = 2.0 / zeta.norm();
    let n_cut = if truncation > 0 {
        truncation as u64
    } else {
        let mut n = 8u64;
        loop {
            if scale * tail_bound(n, p, r) < cfg.target_abs_err / 4.0 {
                break n;
            }
            if n as usize > cfg.max_terms {
                return Err(Error::Precision(format!(
                    "Eisenstein q-series at z = {z} needs more than {} terms",
                    cfg.max_terms
                )));
            }
            n *= 2;
        }
    };
    let terms = (1..=n_cut).map(|n| {
        let qn = q.powu(n as u32);
        divisor_sigma(a, n).map(|s| s.scale(qn))
    });
    let series = ComplexVal::sum(terms.collect::<Result<Vec<_>>>()?);
    let tail = tail_bound(n_cut, p, r);
    let body = series.with_extra_err(tail) * ComplexVal::real(2.0) / zeta;
    Ok(ComplexVal::real(1.0) + body)
}
