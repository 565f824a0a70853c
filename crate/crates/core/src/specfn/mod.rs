//! Double-precision special functions with attached absolute-error estimates.

mod apostol;
mod cot;
mod eisenstein;
mod gamma;
mod value;
mod zeta;

pub use apostol::{apostol_bernoulli, apostol_bernoulli_numbers, lerch_phi};
pub use cot::{
    cot_deriv_poly, cot_derivative, cot_derivative_complex, CotDerivEvaluator, CotDerivPolynomial,
};
pub use eisenstein::{divisor_sigma, eisenstein_e};
pub use gamma::complex_gamma;
pub use value::{complex_json, render, ComplexVal, PrecisionConfig};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_x_deriv, polygamma, riemann_zeta};

/// Unit roundoff of f64.
pub(crate) const EPS: f64 = f64::EPSILON;

/// e(x) = exp(2πix).
pub fn e(x: f64) -> num_complex::Complex64 {
    let t = 2.0 * std::f64::consts::PI * x;
    num_complex::Complex64::new(t.cos(), t.sin())
}
