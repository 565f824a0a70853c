use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfn::EPS;

/// How each quadrature panel is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PanelRule {
    /// n-point Gauss–Legendre, bisecting panels until a panel agrees with its halves.
    GaussLegendre(usize),
    /// Adaptive Simpson with Richardson correction.
    AdaptiveSimpson,
}

impl Default for PanelRule {
    fn default() -> Self {
        PanelRule::GaussLegendre(20)
    }
}

impl fmt::Display for PanelRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PanelRule::GaussLegendre(n) => write!(f, "gauss-legendre-{n}"),
            PanelRule::AdaptiveSimpson => write!(f, "adaptive-simpson"),
        }
    }
}

impl FromStr for PanelRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase().replace('_', "-");
        if s == "adaptive-simpson" || s == "simpson" {
            return Ok(PanelRule::AdaptiveSimpson);
        }
        if s == "gauss-legendre" || s == "gl" {
            return Ok(PanelRule::default());
        }
        let n = s
            .strip_prefix("gauss-legendre-")
            .or_else(|| s.strip_prefix("gl"))
            .and_then(|n| n.trim_start_matches('-').parse::<usize>().ok());
        match n {
            Some(n) if (2..=128).contains(&n) => Ok(PanelRule::GaussLegendre(n)),
            _ => domain(format!(
                "unknown quadrature rule '{s}' (use gauss-legendre-N with 2 <= N <= 128, or adaptive-simpson)"
            )),
        }
    }
}

/// Settings for integrals along vertical lines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Abscissa of cotangent-type lines; `None` picks half the admissible bound.
    pub epsilon: Option<f64>,
    /// Truncation height T; `None` derives it from the observed decay.
    pub truncation_height: Option<f64>,
    pub panel_rule: PanelRule,
    pub target_abs_err: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            epsilon: None,
            truncation_height: None,
            panel_rule: PanelRule::default(),
            target_abs_err: 1e-11,
        }
    }
}

impl QuadratureConfig {
    pub fn with_target(target_abs_err: f64) -> Self {
        QuadratureConfig {
            target_abs_err,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_err.is_finite() && self.target_abs_err > 0.0) {
            return domain("quadrature target must be positive");
        }
        if self.target_abs_err < 1e-15 {
            return Err(Error::Precision(format!(
                "quadrature target {:e} is below double-precision resolution",
                self.target_abs_err
            )));
        }
        if let Some(t) = self.truncation_height {
            if !(t.is_finite() && t > 0.0) {
                return domain("truncation height must be positive");
            }
        }
        if let Some(e) = self.epsilon {
            if !(e.is_finite() && e > 0.0) {
                return domain("epsilon must be positive");
            }
        }
        Ok(())
    }

    /// The abscissa to use when cotangent poles sit at multiples of 1/k for each k in `moduli`.
    pub fn abscissa_for(&self, moduli: &[u64]) -> Result<f64> {
        let kmax = moduli.iter().copied().max().unwrap_or(1).max(1) as f64;
        let bound = 1.0 / kmax;
        match self.epsilon {
            None => Ok(0.5 * bound),
            Some(e) if e < bound => Ok(e),
            Some(e) => domain(format!("epsilon = {e} must be below min 1/k_j = {bound}")),
        }
    }
}

/// Result of a one-dimensional quadrature.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: Complex64,
    /// Estimated discretization error.
    pub err: f64,
    /// ∫|f|, used to size rounding errors.
    pub l1: f64,
}

impl Integral {
    fn zero() -> Self {
        Integral {
            value: Complex64::new(0.0, 0.0),
            err: 0.0,
            l1: 0.0,
        }
    }

    fn add(self, o: Integral) -> Integral {
        Integral {
            value: self.value + o.value,
            err: self.err + o.err,
            l1: self.l1 + o.l1,
        }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on Pₙ.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * z * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

struct GlRule {
    x: Vec<f64>,
    w: Vec<f64>,
}

impl GlRule {
    fn apply<F: Fn(f64) -> Complex64>(&self, f: &F, a: f64, b: f64) -> (Complex64, f64) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        let mut s = Complex64::new(0.0, 0.0);
        let mut l1 = 0.0;
        for (x, w) in self.x.iter().zip(&self.w) {
            let v = f(mid + half * x);
            s += v * *w;
            l1 += v.norm() * w;
        }
        (s * half, l1 * half.abs())
    }
}

const MAX_DEPTH: u32 = 24;

// below this relative level a disagreement between rules is rounding noise
const NOISE: f64 = 64.0 * EPS;

fn gl_adaptive<F: Fn(f64) -> Complex64 + Sync>(
    rule: &GlRule,
    f: &F,
    a: f64,
    b: f64,
    whole: (Complex64, f64),
    tol: f64,
    depth: u32,
) -> Integral {
    let m = 0.5 * (a + b);
    let left = rule.apply(f, a, m);
    let right = rule.apply(f, m, b);
    let split = left.0 + right.0;
    let diff = (split - whole.0).norm();
    let l1 = left.1 + right.1;
    if diff <= tol.max(NOISE * l1) || depth >= MAX_DEPTH || (b - a).abs() < 1e-12 {
        return Integral {
            value: split,
            err: diff,
            l1,
        };
    }
    gl_adaptive(rule, f, a, m, left, tol / 2.0, depth + 1)
        .add(gl_adaptive(rule, f, m, b, right, tol / 2.0, depth + 1))
}

fn simpson<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    fa: Complex64,
    b: f64,
    fb: Complex64,
    m: f64,
    fm: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Integral {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    let scale = (b - a).abs() * (fa.norm() + fm.norm() + fb.norm() + flm.norm() + frm.norm()) / 5.0;
    if delta.norm() <= (15.0 * tol).max(NOISE * scale) || depth >= MAX_DEPTH || (b - a).abs() < 1e-12 {
        let l1 = (b - a).abs() / 12.0
            * (fa.norm() + 4.0 * flm.norm() + 2.0 * fm.norm() + 4.0 * frm.norm() + fb.norm());
        return Integral {
            value: left + right + delta / 15.0,
            err: delta.norm() / 15.0,
            l1,
        };
    }
    simpson(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth + 1).add(simpson(
        f,
        m,
        fm,
        b,
        fb,
        rm,
        frm,
        right,
        tol / 2.0,
        depth + 1,
    ))
}

/// ∫_a^b f(t) dt over panels of width at most `panel`, each refined adaptively.
///
/// Panels are evaluated in parallel and summed left to right, so the result is
/// the same for every thread count.
pub fn integrate<F: Fn(f64) -> Complex64 + Sync>(
    f: &F,
    a: f64,
    b: f64,
    panel: f64,
    tol: f64,
    rule: PanelRule,
) -> Integral {
    if a == b {
        return Integral::zero();
    }
    let count = (((b - a).abs() / panel).ceil() as usize).max(1);
    let width = (b - a) / count as f64;
    let per_panel = tol / count as f64;
    let gl = match rule {
        PanelRule::GaussLegendre(n) => {
            let (x, w) = gauss_legendre(n);
            Some(GlRule { x, w })
        }
        PanelRule::AdaptiveSimpson => None,
    };
    let pieces: Vec<Integral> = (0..count)
        .into_par_iter()
        .map(|i| {
            let lo = a + width * i as f64;
            let hi = if i + 1 == count { b } else { lo + width };
            match &gl {
                Some(rule) => {
                    let whole = rule.apply(f, lo, hi);
                    gl_adaptive(rule, f, lo, hi, whole, per_panel, 0)
                }
                None => {
                    let (fa, fb) = (f(lo), f(hi));
                    let m = 0.5 * (lo + hi);
                    let fm = f(m);
                    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
                    simpson(f, lo, fa, hi, fb, m, fm, whole, per_panel, 0)
                }
            }
        })
        .collect();
    pieces.into_iter().fold(Integral::zero(), Integral::add)
}

/// Picks T ≥ `start` so that the part of ∫|f| beyond ±T is about `tol`,
/// assuming |f(t)| decays like e^{−rate·|t|}.
///
/// Returns (T, tail estimate).
pub fn choose_height<F: Fn(f64) -> Complex64>(
    f: &F,
    rate: f64,
    start: f64,
    tol: f64,
    limit: f64,
) -> Result<(f64, f64)> {
    let mut t = start;
    loop {
        let bound = tail_bound_at(f, rate, t);
        if !bound.is_finite() {
            return Err(Error::Precision(format!("integrand is not finite at height {t}")));
        }
        if bound <= tol {
            return Ok((t, bound));
        }
        if t > limit {
            return Err(Error::Precision(format!(
                "integrand still of size {bound:e} at height {t}; raise the target error or the height limit"
            )));
        }
        t += ((bound / tol).ln() / rate).max(0.02);
    }
}

/// Tail bound at a fixed height T for the same decay model.
pub fn tail_bound_at<F: Fn(f64) -> Complex64>(f: &F, rate: f64, t: f64) -> f64 {
    2.0 * f(t).norm().max(f(-t).norm()) / rate
}

/// Rounding budget for an integral of size `l1` whose integrand is accurate
/// to relative precision `rel`.
pub fn rounding_budget(l1: f64, rel: f64) -> f64 {
    l1 * (rel + 32.0 * EPS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in [2usize, 5, 10, 20, 40] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for deg in 0..(2 * n) {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((got - want).abs() < 1e-12, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn both_rules_integrate_a_peak() {
        // ∫_{-5}^{5} 1/(t²+0.01) dt = 20 atan(50)
        let f = |t: f64| Complex64::new(1.0 / (t * t + 0.01), 0.0);
        let want = 20.0 * 50f64.atan();
        for rule in [PanelRule::GaussLegendre(20), PanelRule::AdaptiveSimpson] {
            let r = integrate(&f, -5.0, 5.0, 0.5, 1e-11, rule);
            assert!((r.value.re - want).abs() < 1e-9, "{rule}: {}", r.value.re);
        }
    }

    #[test]
    fn rule_parsing() {
        assert_eq!("gauss-legendre-30".parse::<PanelRule>().unwrap(), PanelRule::GaussLegendre(30));
        assert_eq!("adaptive-simpson".parse::<PanelRule>().unwrap(), PanelRule::AdaptiveSimpson);
        assert_eq!("gl".parse::<PanelRule>().unwrap(), PanelRule::GaussLegendre(20));
        assert!("midpoint".parse::<PanelRule>().is_err());
    }

    #[test]
    fn height_selection_meets_tail_target() {
        let f = |t: f64| Complex64::new((-3.0 * t.abs()).exp(), 0.0);
        let (t, bound) = choose_height(&f, 3.0, 1.0, 1e-12, 100.0).unwrap();
        let true_tail = 2.0 * (-3.0 * t).exp() / 3.0;
        assert!(bound <= 1e-12 && bound > 1e-13);
        assert!((true_tail - bound).abs() < 1e-6 * bound);
    }

    #[test]
    fn abscissa_rule() {
        let q = QuadratureConfig::default();
        assert_eq!(q.abscissa_for(&[2, 3]).unwrap(), 1.0 / 6.0);
        let bad = QuadratureConfig {
            epsilon: Some(0.4),
            ..q
        };
        assert!(bad.abscissa_for(&[2, 3]).is_err());
    }
}
