//! Reciprocity checks built on integrals along vertical lines.
//!
//! Line integrals of cotangent products are taken downward, from ε + i∞ to
//! ε − i∞. Each `verify_*` function returns both sides of its identity with
//! error estimates; deciding pass or fail is left to the caller.

mod general;
mod laurent;
mod line;
mod mellin;
mod period;
mod quad;

pub use general::{collapsed_integral, verify_cor33, verify_thm31, verify_thm32, CotFactors};
pub use laurent::{
    cot_coeff, cot_convolution, laurent_coeff, residue_at_one, Center, LaurentCoeffs,
    LaurentFactor, LaurentValue,
};
pub use line::{
    closed_form_integral, line_integral_cotcot, line_integral_product, verify_thm12,
    verify_thm12_oriented, Orientation,
};
pub use mellin::{default_m, g_a_numeric, psi_a_numeric, verify_thm11, PsiSource};
pub use period::{verify_cor23, verify_eisenstein_period, verify_thm14_mellin, verify_thm14_relation};
pub use quad::{gauss_legendre, integrate, Integral, PanelRule, QuadratureConfig};
