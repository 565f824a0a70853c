use std::f64::consts::PI;

use num_complex::Complex64;

use super::line::{closed_form_integral, line_integral_cotcot};
use super::mellin::g_a_numeric;
use super::quad::QuadratureConfig;
use crate::error::{domain, Result};
use crate::exact::{g_polynomial, psi_polynomial};
use crate::report::Sides;
use crate::specfn::{eisenstein_e, riemann_zeta, ComplexVal, PrecisionConfig};

/// The cot·cot line integral at odd n against its closed form.
pub fn verify_cor23(n: u32, h: u64, k: u64, quad: &QuadratureConfig) -> Result<Sides> {
    let exact = closed_form_integral(n, h, k)?;
    let numeric = line_integral_cotcot(Complex64::new(n as f64, 0.0), h, k, quad)?;
    Ok(Sides::new(numeric, ComplexVal::rounded(exact.to_complex())))
}

/// ψ₋ₙ(z) from its polynomial against E_{1−n}(z) − z^{n−1}E_{1−n}(−1/z).
pub fn verify_eisenstein_period(n: u32, z: Complex64, cfg: &PrecisionConfig) -> Result<Sides> {
    if z.im <= 0.0 {
        return domain(format!("needs Im(z) > 0, got {z}"));
    }
    let poly = psi_polynomial(n)?.eval(z)?;
    let a = Complex64::new(-(n as f64), 0.0);
    let near = eisenstein_e(a, z, 0, cfg)?;
    let far = eisenstein_e(a, -z.inv(), 0, cfg)?.scale(z.powi(n as i32 - 1));
    Ok(Sides::new(ComplexVal::rounded(poly), near - far))
}

/// ψ₋ₙ(z) against i·g₋ₙ(z)/ζ(n) + (i/(πz))ζ(n+1)/ζ(n), both polynomials exact.
pub fn verify_thm14_relation(n: u32, z: Complex64, cfg: &PrecisionConfig) -> Result<Sides> {
    if z == Complex64::new(0.0, 0.0) {
        return domain("z must be nonzero");
    }
    let psi = psi_polynomial(n)?.eval(z)?;
    let g = g_polynomial(n)?.eval(z)?;
    let zn = riemann_zeta(Complex64::new(n as f64, 0.0), cfg)?.value();
    let zn1 = riemann_zeta(Complex64::new(n as f64 + 1.0, 0.0), cfg)?.value();
    let i = Complex64::i();
    let rhs = i * g / zn + i / (PI * z) * zn1 / zn;
    Ok(Sides::new(ComplexVal::rounded(psi), ComplexVal::rounded(rhs)))
}

/// g₋ₙ(z) from the Mellin representation against the polynomial g₋ₙ(z).
pub fn verify_thm14_mellin(n: u32, z: Complex64, m: Option<i64>, quad: &QuadratureConfig) -> Result<Sides> {
    let poly = g_polynomial(n)?.eval(z)?;
    let numeric = g_a_numeric(Complex64::new(-(n as f64), 0.0), z, m, quad)?;
    Ok(Sides::new(numeric, ComplexVal::rounded(poly)))
}
