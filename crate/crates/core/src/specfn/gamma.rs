use std::f64::consts::PI;

use num_complex::Complex64;

use super::value::{ComplexVal, PrecisionConfig};
use super::zeta::nonpositive_integer;
use super::EPS;
use crate::error::{Error, Result};

// B_{2k} / (2k(2k−1)) for k = 1..=12
const STIRLING: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
];

const SHIFT_TO: f64 = 20.0;

/// ln Γ(w) by the Stirling series, for |w| ≥ SHIFT_TO and Re w > 0.
fn stirling_ln_gamma(w: Complex64) -> (Complex64, f64) {
    let mut acc = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln();
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    let mut last = 0.0;
    for c in STIRLING {
        let t = p * c;
        acc += t;
        last = t.norm();
        p *= inv2;
    }
    (acc, last)
}

/// Γ(s) for complex s off the nonpositive integers.
pub fn complex_gamma(s: Complex64, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    cfg.validate()?;
    if nonpositive_integer(s).is_some() {
        return Err(Error::Pole(format!("Gamma at s = {s}")));
    }
    if s.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        let g = complex_gamma(one - s, cfg)?;
        let sin = (PI * s).sin();
        let sin = ComplexVal::new(sin, 4.0 * EPS * sin.norm() * (1.0 + (PI * s).norm()));
        return Ok(ComplexVal::real(PI) / (sin * g));
    }
    let shift = (SHIFT_TO - s.re).ceil().max(0.0) as usize;
    let w = s + shift as f64;
    let (ln_g, trunc) = stirling_ln_gamma(w);
    let mut v = ln_g.exp();
    let mut rel = trunc + EPS * (ln_g.norm() + 4.0);
    for j in 0..shift {
        v /= s + j as f64;
        rel += EPS;
    }
    Ok(ComplexVal::new(v, 2.0 * rel * v.norm()))
}
