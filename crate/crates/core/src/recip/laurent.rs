use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::exact::{bernoulli_number, factorial, rising_factorial, BernoulliConvention, ExactScaled};
use crate::specfn::{riemann_zeta, ComplexVal, PrecisionConfig};

/// Where an expansion is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Center {
    Zero,
    One,
}

/// One factor of the integrand ζ^{(m₀)}(a, z)·∏ cot^{(m_j)}(πk_j z), with
/// derivatives taken in z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LaurentFactor {
    /// ζ^{(m₀)}(a, z) expanded at z = 1.
    Zeta { a: Complex64, m0: u32 },
    /// (d/dz)^m cot(πkz), at z = 0 or z = 1 (the expansions agree).
    Cot { k: u64, m: u32 },
}

impl LaurentFactor {
    /// Lowest index with a possibly nonzero coefficient.
    pub fn support_start(&self) -> i64 {
        match self {
            LaurentFactor::Zeta { .. } => 0,
            LaurentFactor::Cot { m, .. } => -(*m as i64 + 1),
        }
    }
}

/// A coefficient: exact for cotangent factors, numeric for the zeta factor.
#[derive(Debug, Clone, PartialEq)]
pub enum LaurentValue {
    Exact(ExactScaled),
    Numeric(ComplexVal),
}

impl LaurentValue {
    pub fn to_complex_val(&self) -> ComplexVal {
        match self {
            LaurentValue::Exact(e) => ComplexVal::rounded(e.to_complex()),
            LaurentValue::Numeric(v) => *v,
        }
    }
}

/// The expansions of all factors of an integrand about one center.
///
/// Index 0 is the zeta factor when present; cotangent factors follow.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentCoeffs {
    center: Center,
    factors: Vec<LaurentFactor>,
    cfg: PrecisionConfig,
}

impl LaurentCoeffs {
    pub fn new(center: Center, factors: Vec<LaurentFactor>, cfg: PrecisionConfig) -> Result<Self> {
        if center == Center::Zero && factors.iter().any(|f| matches!(f, LaurentFactor::Zeta { .. })) {
            return domain("the zeta factor is expanded about z = 1 only");
        }
        Ok(LaurentCoeffs { center, factors, cfg })
    }

    pub fn center(&self) -> Center {
        self.center
    }

    pub fn factors(&self) -> &[LaurentFactor] {
        &self.factors
    }

    /// a_l of factor j.
    pub fn coeff(&self, j: usize, l: i64) -> Result<LaurentValue> {
        match self.factors.get(j) {
            Some(f) => laurent_coeff(f, l, &self.cfg),
            None => domain(format!("no factor with index {j}")),
        }
    }

    /// Lowest l with a possibly nonzero a_l for factor j.
    pub fn support_start(&self, j: usize) -> Option<i64> {
        self.factors.get(j).map(LaurentFactor::support_start)
    }
}

/// The coefficient of (z − center)^l in the expansion of `factor`.
///
/// Cotangent factors: (2i)^{l+m+1}B_{l+m+1}(πk)^{l+m}(l+1)^{(m)}/(l+m+1)! for
/// l ≥ 0, (−1)^m m!/(πk) at l = −(m+1), zero otherwise (B₁ = 0).
/// Zeta factor: (−1)^{m₀+l}a^{(m₀+l)}ζ(a+m₀+l)/l! for l ≥ 0.
pub fn laurent_coeff(factor: &LaurentFactor, l: i64, cfg: &PrecisionConfig) -> Result<LaurentValue> {
    match *factor {
        LaurentFactor::Cot { k, m } => Ok(LaurentValue::Exact(cot_coeff(k, m, l)?)),
        LaurentFactor::Zeta { a, m0 } => {
            if l < 0 {
                return Ok(LaurentValue::Numeric(ComplexVal::zero()));
            }
            let order = m0 as usize + l as usize;
            let s = a + order as f64;
            if s == Complex64::new(1.0, 0.0) {
                return Err(Error::Pole(format!("zeta(a + m0 + l) at a = {a}, m0 = {m0}, l = {l}")));
            }
            let zeta = riemann_zeta(s, cfg)?;
            let rising = rising_factorial(a, order);
            let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
            let lfact: f64 = (1..=l).map(|j| j as f64).product();
            Ok(LaurentValue::Numeric(zeta.scale(rising * sign / lfact)))
        }
    }
}

/// Exact coefficient of a cotangent factor.
pub fn cot_coeff(k: u64, m: u32, l: i64) -> Result<ExactScaled> {
    if k == 0 {
        return domain("cotangent modulus must be positive");
    }
    let m_i = m as i64;
    if l == -(m_i + 1) {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let c = BigRational::new(BigInt::from(sign) * factorial(m as u64), BigInt::from(k));
        return Ok(ExactScaled::new(c, -1, 0));
    }
    if l < 0 {
        return Ok(ExactScaled::zero());
    }
    let n = (l + m_i + 1) as usize;
    let b = bernoulli_number(n, BernoulliConvention::Zeroed);
    let rising = rising_factorial(BigInt::from(l + 1), m as usize);
    let c = BigRational::from_integer(BigInt::from(2).pow(n as u32) * rising * BigInt::from(k).pow((l + m_i) as u32))
        * b
        / BigRational::from_integer(factorial(n as u64));
    Ok(ExactScaled::new(c, l + m_i, n as i64))
}

/// Σ over l₁+…+l_d = `total` of ∏ a_{l_j} for cotangent factors (k_j, m_j).
///
/// Every product has the same power of π and of i, so the sum is exact.
pub fn cot_convolution(factors: &[(u64, u32)], total: i64) -> Result<ExactScaled> {
    if factors.is_empty() {
        return Ok(if total == 0 { ExactScaled::one() } else { ExactScaled::zero() });
    }
    let (k, m) = factors[0];
    let rest = &factors[1..];
    let rest_floor: i64 = rest.iter().map(|&(_, m)| -(m as i64 + 1)).sum();
    let mut acc = ExactScaled::zero();
    let lowest = -(m as i64 + 1);
    let candidates = std::iter::once(lowest).chain(0..=(total - rest_floor).max(-1));
    for l in candidates {
        if l > total - rest_floor {
            break;
        }
        let head = cot_coeff(k, m, l)?;
        if head.is_zero() {
            continue;
        }
        let tail = cot_convolution(rest, total - l)?;
        acc = acc.checked_add(&(&head * &tail))?;
    }
    Ok(acc)
}

/// Res_{z=1} of ζ^{(m₀)}(a, z)∏ cot^{(m_j)}(πk_j z), derivatives in z.
pub fn residue_at_one(
    a: Complex64,
    m0: u32,
    factors: &[(u64, u32)],
    cfg: &PrecisionConfig,
) -> Result<ComplexVal> {
    let top: i64 = factors.iter().map(|&(_, m)| m as i64 + 1).sum::<i64>() - 1;
    let mut terms = Vec::new();
    for l0 in 0..=top {
        let conv = cot_convolution(factors, -l0 - 1)?;
        if conv.is_zero() {
            continue;
        }
        let z = laurent_coeff(&LaurentFactor::Zeta { a, m0 }, l0, cfg)?.to_complex_val();
        terms.push(z * ComplexVal::rounded(conv.to_complex()));
    }
    Ok(ComplexVal::sum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use std::f64::consts::PI;

    #[test]
    fn named_cot_coefficients() {
        // principal part 1/(πk)
        assert_eq!(cot_coeff(3, 0, -1).unwrap(), ExactScaled::new(frac(1, 3), -1, 0));
        assert!(cot_coeff(3, 0, 0).unwrap().is_zero());
        // −πk/3
        assert_eq!(cot_coeff(2, 0, 1).unwrap(), ExactScaled::new(frac(-2, 3), 1, 0));
        assert!(cot_coeff(2, 1, -1).unwrap().is_zero());
        assert!(cot_coeff(2, 0, -3).unwrap().is_zero());
    }

    // Compare against a Laurent expansion of cot computed from its power series
    // cot(w) = 1/w − w/3 − w³/45 − 2w⁵/945 − …, differentiated termwise.
    #[test]
    fn derivative_coefficients_match_series() {
        let series = [(-1, 1.0), (1, -1.0 / 3.0), (3, -1.0 / 45.0), (5, -2.0 / 945.0)];
        for k in [1u64, 2, 5] {
            for m in 0..3u32 {
                for (p, c) in series {
                    // d^m/dz^m of c(πk)^p z^p
                    let mut coeff = c * (PI * k as f64).powi(p);
                    let mut e = p;
                    for _ in 0..m {
                        coeff *= e as f64;
                        e -= 1;
                    }
                    if coeff == 0.0 {
                        continue;
                    }
                    let got = cot_coeff(k, m, e as i64).unwrap().to_complex();
                    assert!((got.re - coeff).abs() < 1e-12 * coeff.abs(), "k={k} m={m} l={e}");
                    assert_eq!(got.im, 0.0);
                }
            }
        }
    }

    #[test]
    fn convolution_is_exact_and_finite() {
        // cot(πz)cot(2πz) = 1/(2π²z²) − 5/6 + O(z²)
        let c = cot_convolution(&[(1, 0), (2, 0)], -2).unwrap();
        assert_eq!(c, ExactScaled::new(frac(1, 2), -2, 0));
        let c = cot_convolution(&[(1, 0), (2, 0)], 0).unwrap();
        assert_eq!(c, ExactScaled::from_rational(frac(-5, 6)));
        assert!(cot_convolution(&[(1, 0), (2, 0)], -3).unwrap().is_zero());
    }

    #[test]
    fn coefficient_table_accessor() {
        let cfg = PrecisionConfig::default();
        let a = Complex64::new(2.5, 0.0);
        let t = LaurentCoeffs::new(
            Center::One,
            vec![LaurentFactor::Zeta { a, m0: 1 }, LaurentFactor::Cot { k: 3, m: 2 }],
            cfg,
        )
        .unwrap();
        assert_eq!(t.support_start(0), Some(0));
        assert_eq!(t.support_start(1), Some(-3));
        // a_0 of ζ'(a, z) at 1 is −aζ(a+1)
        let want = -a * riemann_zeta(a + 1.0, &cfg).unwrap().value();
        let got = t.coeff(0, 0).unwrap().to_complex_val().value();
        assert!((got - want).norm() < 1e-14);
        assert!(matches!(t.coeff(1, -2).unwrap(), LaurentValue::Exact(e) if e.is_zero()));
        assert!(t.coeff(2, 0).is_err());
        assert!(LaurentCoeffs::new(Center::Zero, vec![LaurentFactor::Zeta { a, m0: 0 }], cfg).is_err());
    }

    #[test]
    fn residue_for_two_plain_factors() {
        let cfg = PrecisionConfig::default();
        for (a, h, k) in [(2.5, 2u64, 3u64), (3.0, 1, 4)] {
            let a = Complex64::new(a, 0.0);
            let r = residue_at_one(a, 0, &[(h, 0), (k, 0)], &cfg).unwrap();
            let z = riemann_zeta(a + 1.0, &cfg).unwrap().value();
            let want = -a * z / (PI * PI * (h * k) as f64);
            assert!((r.value() - want).norm() < 1e-14, "{r} vs {want}");
        }
    }
}
