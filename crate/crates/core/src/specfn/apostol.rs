use num_complex::Complex64;

use super::value::{ComplexVal, PrecisionConfig};
use super::zeta::{hurwitz_zeta, nonpositive_integer};
use super::EPS;
use crate::error::{domain, Error, Result};
use crate::exact::{bernoulli_polynomial, binomial, rational_to_f64};
use num_traits::ToPrimitive;

fn near_one(lambda: Complex64) -> bool {
    (lambda - 1.0).norm() < 1e-14
}

/// Bₖ(0; λ) for k = 0..=k_max from t/(λeᵗ − 1), with running magnitude bounds.
///
/// (λ − 1)Bₙ = [n = 1] − λ Σ_{j=1}^{n} C(n,j) B_{n−j}.
pub fn apostol_bernoulli_numbers(k_max: usize, lambda: Complex64) -> Result<Vec<ComplexVal>> {
    if near_one(lambda) {
        return domain("Apostol-Bernoulli numbers need lambda != 1");
    }
    let inv = (lambda - 1.0).inv();
    let mut vals: Vec<Complex64> = vec![Complex64::new(0.0, 0.0)];
    let mut errs: Vec<f64> = vec![0.0];
    for n in 1..=k_max {
        let mut acc = Complex64::new(if n == 1 { 1.0 } else { 0.0 }, 0.0);
        let mut err = 0.0;
        let mut mag = acc.norm();
        for j in 1..=n {
            let c = binomial(n as u64, j as u64).to_f64().unwrap_or(f64::INFINITY);
            let t = lambda * vals[n - j] * c;
            acc -= t;
            mag += t.norm();
            err += c * errs[n - j] * lambda.norm();
        }
        let v = acc * inv;
        vals.push(v);
        errs.push((err + 2.0 * EPS * mag) * inv.norm() + EPS * v.norm());
    }
    Ok(vals
        .into_iter()
        .zip(errs)
        .map(|(v, e)| ComplexVal::new(v, e))
        .collect())
}

/// Bₖ(z; λ) = Σ_j C(k,j) B_j(0;λ) z^{k−j}, for λ ≠ 1.
pub fn apostol_bernoulli(k: usize, z: Complex64, lambda: Complex64) -> Result<ComplexVal> {
    let b = apostol_bernoulli_numbers(k, lambda)?;
    let terms = (0..=k).map(|j| {
        let c = binomial(k as u64, j as u64).to_f64().unwrap_or(f64::INFINITY);
        b[j].scale(z.powi((k - j) as i32) * c)
    });
    Ok(ComplexVal::sum(terms))
}

fn bernoulli_poly_complex(n: usize, z: Complex64) -> ComplexVal {
    let p = bernoulli_polynomial(n);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for (d, c) in p.coeffs().iter().enumerate() {
        let t = z.powi(d as i32) * rational_to_f64(c);
        acc += t;
        mag += t.norm();
    }
    ComplexVal::new(acc, 4.0 * EPS * mag * (n as f64 + 1.0))
}

/// The Lerch transcendent Φ(s, z, λ) = Σ_{n≥0} λⁿ (z+n)^{−s} for |λ| = 1.
///
/// Supported regimes: Re s > 1, and s a nonpositive integer, where
/// Φ(−k, z, λ) = −B_{k+1}(z; λ)/(k+1).
pub fn lerch_phi(
    s: Complex64,
    z: Complex64,
    lambda: Complex64,
    cfg: &PrecisionConfig,
) -> Result<ComplexVal> {
    cfg.validate()?;
    if (lambda.norm() - 1.0).abs() > 1e-12 {
        return domain(format!("Lerch transcendent needs |lambda| = 1, got {lambda}"));
    }
    if z.re <= 0.0 {
        return domain(format!("Lerch transcendent needs Re(z) > 0, got {z}"));
    }
    if let Some(k) = nonpositive_integer(s) {
        let k = k as usize;
        let b = if near_one(lambda) {
            bernoulli_poly_complex(k + 1, z)
        } else {
            apostol_bernoulli(k + 1, z, lambda)?
        };
        return Ok(b.scale(Complex64::new(-1.0 / (k as f64 + 1.0), 0.0)));
    }
    if s.re <= 1.0 {
        return domain(format!(
            "Lerch transcendent implemented for Re(s) > 1 or nonpositive integer s, got s = {s}"
        ));
    }
    if near_one(lambda) {
        if z.im != 0.0 {
            return domain("Lerch transcendent with lambda = 1 needs real z");
        }
        return hurwitz_zeta(s, z.re, cfg);
    }
    series_with_tail(s, z, lambda, cfg)
}

// Σ_{n<N} λⁿ(z+n)^{−s} + λᴺ Σ_k (−1)ᵏ (s)ₖ/k! (z+N)^{−s−k} Φ(−k, 0, λ).
fn series_with_tail(
    s: Complex64,
    z: Complex64,
    lambda: Complex64,
    cfg: &PrecisionConfig,
) -> Result<ComplexVal> {
    const DEPTH: usize = 40;
    let b = apostol_bernoulli_numbers(DEPTH + 1, lambda)?;
    let mut n_head = 32 + 2 * (s.norm().ceil() as usize);
    loop {
        if n_head > cfg.max_terms {
            return Err(Error::Precision(format!(
                "Lerch transcendent at s = {s}: no convergence within {} terms",
                cfg.max_terms
            )));
        }
        let mut head = Complex64::new(0.0, 0.0);
        let mut rounding = 0.0;
        let mut lam_pow = Complex64::new(1.0, 0.0);
        for n in 0..n_head {
            let ln = (z + n as f64).ln();
            let t = lam_pow * (-s * ln).exp();
            head += t;
            rounding += t.norm() * (2.0 + (s * ln).norm());
            lam_pow *= lambda;
        }
        // λᴺ computed directly to avoid drift
        let lam_n = lambda.powu(n_head as u32);
        let w = z + n_head as f64;
        let w_ms = (-s * w.ln()).exp();
        let mut tail = Complex64::new(0.0, 0.0);
        let mut coef = Complex64::new(1.0, 0.0); // (−1)ᵏ (s)ₖ / k!
        let mut wpow = w_ms;
        // Φ(−k, 0, λ) can vanish for single k (λ = −1), so sizes are judged in pairs
        let mut prev = f64::INFINITY;
        let mut last_pair = f64::INFINITY;
        let mut done = None;
        for k in 0..=DEPTH {
            let phi_k = -b[k + 1].value() / (k as f64 + 1.0);
            let t = coef * wpow * phi_k;
            let size = t.norm();
            let pair = size + prev;
            if pair > last_pair && k > 3 {
                break;
            }
            tail += t;
            last_pair = pair;
            prev = size;
            let tol = cfg.target_abs_err.max(EPS * (head + tail).norm()) * 0.25;
            if pair < tol {
                done = Some(pair);
                break;
            }
            coef *= -(s + k as f64) / (k as f64 + 1.0);
            wpow /= w;
        }
        if let Some(trunc) = done {
            let v = head + lam_n * tail;
            let err = 2.0 * trunc + EPS * rounding + EPS * tail.norm() * (2.0 + s.norm() * w.norm().ln());
            return Ok(ComplexVal::new(v, err));
        }
        n_head *= 2;
    }
}
