use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::bernoulli::{bernoulli_numbers, binomial, factorial, BernoulliConvention};
use super::dedekind::two_pi_i_pow;
use super::scaled::ExactScaled;
use crate::error::{domain, Result};
use crate::specfn::{riemann_zeta, PrecisionConfig};

/// A Laurent polynomial Σ c_e z^e (e ≥ −1) with exact coefficients,
/// optionally carrying an implicit overall factor 1/ζ(n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodPolynomial {
    coefficients: BTreeMap<i32, ExactScaled>,
    /// 0 for no weight, otherwise the n in the implicit 1/ζ(n).
    zeta_weight: u32,
}

impl PeriodPolynomial {
    pub fn new(coefficients: BTreeMap<i32, ExactScaled>, zeta_weight: u32) -> Result<Self> {
        if let Some((&e, _)) = coefficients.iter().next() {
            if e < -1 {
                return domain(format!("exponent {e} below -1"));
            }
        }
        let coefficients = coefficients
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(PeriodPolynomial {
            coefficients,
            zeta_weight,
        })
    }

    pub fn coefficients(&self) -> &BTreeMap<i32, ExactScaled> {
        &self.coefficients
    }

    /// Coefficient of z^e (exact zero when absent).
    pub fn coeff(&self, e: i32) -> ExactScaled {
        self.coefficients
            .get(&e)
            .cloned()
            .unwrap_or_else(ExactScaled::zero)
    }

    pub fn zeta_weight(&self) -> u32 {
        self.zeta_weight
    }

    /// Value of the polynomial part alone, without the 1/ζ(n) weight.
    pub fn eval_unweighted(&self, z: Complex64) -> Result<Complex64> {
        if z == Complex64::new(0.0, 0.0) && self.coefficients.contains_key(&-1) {
            return domain("period polynomial has a z^-1 term; z must be nonzero");
        }
        Ok(self
            .coefficients
            .iter()
            .map(|(&e, c)| c.to_complex() * z.powi(e))
            .sum())
    }

    /// Full value, including the 1/ζ(n) factor when present.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let raw = self.eval_unweighted(z)?;
        if self.zeta_weight == 0 {
            return Ok(raw);
        }
        let zeta = riemann_zeta(
            Complex64::new(self.zeta_weight as f64, 0.0),
            &PrecisionConfig::default(),
        )?;
        Ok(raw / zeta.value())
    }
}

impl fmt::Display for PeriodPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zeta_weight > 0 {
            write!(f, "(1/zeta({}))*(", self.zeta_weight)?;
        }
        if self.coefficients.is_empty() {
            write!(f, "0")?;
        }
        for (idx, (e, c)) in self.coefficients.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*z^{e}")?;
        }
        if self.zeta_weight > 0 {
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn check_order(n: u32) -> Result<()> {
    if n <= 1 || n % 2 == 0 {
        return domain(format!("order n must be odd and > 1, got {n}"));
    }
    Ok(())
}

/// ψ₋ₙ(z) = (2πi)ⁿ/(ζ(n)(n+1)!) Σ_{m=0}^{n+1} C(n+1,m) B_m B_{n+1−m} z^{m−1}.
pub fn psi_polynomial(n: u32) -> Result<PeriodPolynomial> {
    check_order(n)?;
    let b = bernoulli_numbers(n as usize + 1, BernoulliConvention::Zeroed);
    let prefactor = two_pi_i_pow(n);
    let denom = factorial(n as u64 + 1);
    let coefficients = (0..=n + 1)
        .map(|m| {
            let r = BigRational::new(binomial(n as u64 + 1, m as u64), denom.clone())
                * &b[m as usize]
                * &b[(n + 1 - m) as usize];
            (m as i32 - 1, prefactor.scale(&r))
        })
        .collect();
    PeriodPolynomial::new(coefficients, n)
}

/// g₋ₙ(z) = (2πi)ⁿ/(i(n+1)!) Σ_{m=0}^{n} C(n+1,m+1) B_{m+1} B_{n−m} zᵐ, with B₁ = 0.
pub fn g_polynomial(n: u32) -> Result<PeriodPolynomial> {
    check_order(n)?;
    let b = bernoulli_numbers(n as usize + 1, BernoulliConvention::Zeroed);
    // 1/i = −i
    let prefactor = &two_pi_i_pow(n) * &ExactScaled::new(BigRational::one(), 0, 3);
    let denom = factorial(n as u64 + 1);
    let coefficients = (0..=n)
        .map(|m| {
            let r = BigRational::new(binomial(n as u64 + 1, m as u64 + 1), denom.clone())
                * &b[m as usize + 1]
                * &b[(n - m) as usize];
            (m as i32, prefactor.scale(&r))
        })
        .collect();
    PeriodPolynomial::new(coefficients, 0)
}

/// ψ₋ₙ(1)·ζ(n) collapses to (2πi)ⁿ/(n+1)! times Σ C(n+1,m) B_m B_{n+1−m}.
pub fn psi_at_one_unweighted(n: u32) -> Result<ExactScaled> {
    let p = psi_polynomial(n)?;
    ExactScaled::checked_sum(p.coefficients().values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::bernoulli::frac;
    use num_bigint::BigInt;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn psi_three_structure() {
        let p = psi_polynomial(3).unwrap();
        // (2πi)^3 B4 / 4! on z^-1 and 6 B2^2 (2πi)^3/4! on z^1
        let two_pi_i3 = two_pi_i_pow(3);
        assert_eq!(p.coeff(-1), two_pi_i3.scale(&(frac(-1, 30) / int(24))));
        assert_eq!(p.coeff(1), two_pi_i3.scale(&(frac(6, 36) / int(24))));
        assert!(p.coeff(0).is_zero());
        assert_eq!(p.zeta_weight(), 3);
    }

    #[test]
    fn psi_at_one() {
        // Σ C(4,m) B_m B_{4−m} = 1/10, so ζ(3)ψ₋₃(1) = (2πi)^3/(4!·10) = −iπ³/30
        assert_eq!(
            psi_at_one_unweighted(3).unwrap(),
            ExactScaled::new(frac(-1, 30), 3, 1)
        );
    }

    #[test]
    fn psi_odd_odd_coefficients_vanish() {
        for n in [3u32, 5, 7, 9, 11] {
            let p = psi_polynomial(n).unwrap();
            for m in 0..=n as i32 + 1 {
                let other = n as i32 + 1 - m;
                if m % 2 == 1 && other % 2 == 1 && m > 1 && other > 1 {
                    assert!(p.coeff(m - 1).is_zero());
                }
            }
        }
    }

    #[test]
    fn g_three() {
        let g = g_polynomial(3).unwrap();
        assert_eq!(g.coeff(3), ExactScaled::new(frac(1, 90), 3, 0));
        assert_eq!(g.coeff(1), ExactScaled::new(frac(-1, 18), 3, 0));
        assert_eq!(g.coefficients().len(), 2);
        let at_one = ExactScaled::checked_sum(g.coefficients().values()).unwrap();
        assert_eq!(at_one, ExactScaled::new(frac(-2, 45), 3, 0));
    }

    #[test]
    fn g_has_real_coefficients_and_no_constant_term() {
        for n in [3u32, 5, 7, 9, 11, 13] {
            let g = g_polynomial(n).unwrap();
            assert!(g.coeff(0).is_zero());
            for c in g.coefficients().values() {
                assert!(c.is_real());
                assert_eq!(c.pi_power(), n as i64);
            }
        }
    }

    #[test]
    fn evaluation_rejects_zero_when_singular() {
        let p = psi_polynomial(3).unwrap();
        assert!(p.eval(Complex64::new(0.0, 0.0)).is_err());
        let g = g_polynomial(3).unwrap();
        assert_eq!(g.eval(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn g_psi_relation() {
        // i·g(z)/ζ(n) + (i/(πz))·ζ(n+1)/ζ(n) = ψ(z)
        let cfg = PrecisionConfig::default();
        for n in [3u32, 5, 7] {
            let psi = psi_polynomial(n).unwrap();
            let g = g_polynomial(n).unwrap();
            let zn = riemann_zeta(Complex64::new(n as f64, 0.0), &cfg).unwrap().value();
            let zn1 = riemann_zeta(Complex64::new(n as f64 + 1.0, 0.0), &cfg).unwrap().value();
            for z in [Complex64::new(1.0, 0.0), Complex64::new(0.3, 1.2), Complex64::new(2.0, -0.5)] {
                let i = Complex64::i();
                let lhs = i * g.eval(z).unwrap() / zn + i / (std::f64::consts::PI * z) * zn1 / zn;
                let rhs = psi.eval(z).unwrap();
                assert!((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()), "n={n} z={z}");
            }
        }
    }
}
