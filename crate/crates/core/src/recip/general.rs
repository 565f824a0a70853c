use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_bigint::BigInt;

use super::laurent::{cot_convolution, residue_at_one};
use super::line::{line_integral_product, sum_config};
use super::quad::QuadratureConfig;
use crate::error::{domain, Result};
use crate::exact::{rising_factorial, ExactScaled};
use crate::report::Sides;
use crate::specfn::{ComplexVal, PrecisionConfig};
use crate::sums::{bc_sum_general, BCSumSpec};

/// Moduli k₁…k_d with derivative orders m₀; m₁…m_d for the generalized
/// reciprocity laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotFactors {
    k: Vec<u64>,
    m0: u32,
    m: Vec<u32>,
}

impl CotFactors {
    /// `orders` lists m₀ first, then one order per modulus.
    pub fn new(moduli: &[u64], orders: &[u32]) -> Result<Self> {
        if moduli.len() < 2 {
            return domain(format!("need at least two moduli, got {}", moduli.len()));
        }
        if orders.len() != moduli.len() + 1 {
            return domain(format!(
                "expected {} derivative orders (m0 plus one per modulus), got {}",
                moduli.len() + 1,
                orders.len()
            ));
        }
        if moduli.contains(&0) {
            return domain("moduli must be positive");
        }
        for (i, &x) in moduli.iter().enumerate() {
            for &y in &moduli[i + 1..] {
                if x.gcd(&y) != 1 {
                    return domain(format!("moduli {x} and {y} are not coprime"));
                }
            }
        }
        Ok(CotFactors {
            k: moduli.to_vec(),
            m0: orders[0],
            m: orders[1..].to_vec(),
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.k
    }

    pub fn m0(&self) -> u32 {
        self.m0
    }

    pub fn orders(&self) -> &[u32] {
        &self.m
    }

    pub fn d(&self) -> usize {
        self.k.len()
    }

    fn pairs(&self) -> Vec<(u64, u32)> {
        self.k.iter().copied().zip(self.m.iter().copied()).collect()
    }

    fn check_parity(&self, n: u32) -> Result<()> {
        let total = self.m0 as u64 + n as u64 + self.d() as u64 + self.m.iter().map(|&x| x as u64).sum::<u64>();
        if total % 2 == 0 {
            return domain(format!(
                "m0 + n + d + sum(m_j) = {total} must be odd for the integral to collapse"
            ));
        }
        Ok(())
    }
}

/// All ways of writing `total` as an ordered sum of `parts` nonnegative integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn multinomial(parts: &[u32]) -> f64 {
    let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
    fact(parts.iter().sum()) / parts.iter().map(|&p| fact(p)).product::<f64>()
}

/// Σ_j (−1)^{m_j}/π Σ multinom·∏_{t≠j}(πk_t)^{l_t+m_t}·k_j^{a−1}c_{−a}(j).
///
/// The factor (πk_t)^{m_t} appears because the integrand differentiates each
/// cotangent in z, while the generalized sums differentiate in the argument.
fn sum_side(a: Complex64, f: &CotFactors, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    let d = f.d();
    let mut total = Vec::new();
    for j in 0..d {
        let others: Vec<usize> = (0..d).filter(|&t| t != j).collect();
        let kj = f.k[j];
        let mut inner = Vec::new();
        for comp in compositions(f.m[j], d) {
            let (l0, ls) = (comp[0], &comp[1..]);
            let ks: Vec<u64> = others.iter().map(|&t| f.k[t]).collect();
            let mut orders = vec![f.m0 + l0];
            orders.extend(others.iter().zip(ls).map(|(&t, &l)| f.m[t] + l));
            let spec = BCSumSpec::new(-a, kj, ks, orders)?;
            let weight: f64 = others
                .iter()
                .zip(ls)
                .map(|(&t, &l)| (PI * f.k[t] as f64).powi((l + f.m[t]) as i32))
                .product::<f64>()
                * multinomial(&comp);
            inner.push(bc_sum_general(&spec, cfg)?.scale(Complex64::new(weight, 0.0)));
        }
        let sign = if f.m[j] % 2 == 0 { 1.0 } else { -1.0 };
        let kpow = ((a - 1.0) * (kj as f64).ln()).exp();
        total.push(ComplexVal::sum(inner).scale(kpow * sign / PI));
    }
    Ok(ComplexVal::sum(total))
}

/// Both sides of the generalized reciprocity law for Re(a) > 1: the sums on
/// the left, and −Res_{z=1} plus (−1)^{m₀}a^{(m₀)}/(2πi) times the downward
/// line integral of ∏ cot^{(m_j)}(πk_j z)/z^{a+m₀} on the right.
pub fn verify_thm31(a: Complex64, moduli: &[u64], orders: &[u32], quad: &QuadratureConfig) -> Result<Sides> {
    if a.re <= 1.0 {
        return domain(format!("need Re(a) > 1, got a = {a}"));
    }
    let f = CotFactors::new(moduli, orders)?;
    let cfg = sum_config(quad);
    let lhs = sum_side(a, &f, &cfg)?;
    let pairs = f.pairs();
    let residue = residue_at_one(a, f.m0, &pairs, &cfg)?;
    let integral = line_integral_product(a + f.m0 as f64, &pairs, quad)?;
    let sign = if f.m0 % 2 == 0 { 1.0 } else { -1.0 };
    let factor = rising_factorial(a, f.m0 as usize) * sign / Complex64::new(0.0, 2.0 * PI);
    Ok(Sides::new(lhs, integral.scale(factor) - residue))
}

/// Both sides of the integer-order law: for n > 1 with m₀ + n + d + Σm_j odd,
/// the line integral collapses to (−1)^{m₀+1}n^{(m₀)}/2·Σ_{l₁+…+l_d=n+m₀−1}∏a_{l_j}.
pub fn verify_thm32(n: u32, moduli: &[u64], orders: &[u32], cfg: &PrecisionConfig) -> Result<Sides> {
    if n <= 1 {
        return domain(format!("need n > 1, got {n}"));
    }
    let f = CotFactors::new(moduli, orders)?;
    f.check_parity(n)?;
    let a = Complex64::new(n as f64, 0.0);
    let lhs = sum_side(a, &f, cfg)?;
    let pairs = f.pairs();
    let residue = residue_at_one(a, f.m0, &pairs, cfg)?;
    let conv = cot_convolution(&pairs, n as i64 + f.m0 as i64 - 1)?;
    let rising: BigInt = rising_factorial(BigInt::from(n), f.m0 as usize);
    let sign = if f.m0 % 2 == 0 { -1 } else { 1 };
    let collapsed = conv.scale(&BigRational::new(rising * sign, BigInt::from(2)));
    Ok(Sides::new(lhs, ComplexVal::rounded(collapsed.to_complex()) - residue))
}

/// The exact value −πi·Σ_{l₁+…+l_d=n+m₀−1}∏a_{l_j} of the downward line
/// integral of ∏ cot^{(m_j)}(πk_j z)/z^{n+m₀}.
pub fn collapsed_integral(n: u32, moduli: &[u64], orders: &[u32]) -> Result<ExactScaled> {
    if n <= 1 {
        return domain(format!("need n > 1, got {n}"));
    }
    let f = CotFactors::new(moduli, orders)?;
    f.check_parity(n)?;
    let conv = cot_convolution(&f.pairs(), n as i64 + f.m0 as i64 - 1)?;
    Ok(&conv * &ExactScaled::new(BigRational::from_integer(BigInt::from(-1)), 1, 1))
}

/// The line integral by quadrature on the left, its exact collapsed value on the right.
pub fn verify_cor33(n: u32, moduli: &[u64], orders: &[u32], quad: &QuadratureConfig) -> Result<Sides> {
    let exact = collapsed_integral(n, moduli, orders)?;
    let f = CotFactors::new(moduli, orders)?;
    let b = Complex64::new((n + f.m0) as f64, 0.0);
    let numeric = line_integral_product(b, &f.pairs(), quad)?;
    Ok(Sides::new(numeric, ComplexVal::rounded(exact.to_complex())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recip::closed_form_integral;
    use crate::recip::verify_thm12;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn composition_counts() {
        // C(total + parts − 1, parts − 1)
        assert_eq!(compositions(3, 3).len(), 10);
        assert_eq!(compositions(0, 4), vec![vec![0, 0, 0, 0]]);
        assert_eq!(multinomial(&[1, 2, 0]), 3.0);
    }

    #[test]
    fn factor_validation() {
        assert!(CotFactors::new(&[2], &[0, 0]).is_err());
        assert!(CotFactors::new(&[2, 4], &[0, 0, 0]).is_err());
        assert!(CotFactors::new(&[2, 3], &[0, 0]).is_err());
        assert!(CotFactors::new(&[1, 2, 3], &[0, 0, 0, 0]).is_ok());
    }

    // With d = 2 and no derivatives the law is a rescaling of the two-term law.
    #[test]
    fn two_plain_factors_agree_with_two_term_law() {
        let quad = QuadratureConfig::default();
        let a = c(2.5, 0.0);
        let general = verify_thm31(a, &[2, 3], &[0, 0, 0], &quad).unwrap();
        let plain = verify_thm12(a, 2, 3, &quad).unwrap();
        let ratio = general.lhs.value() / plain.lhs.value();
        let want = ((a - 1.0) * 6f64.ln()).exp() / PI;
        assert!((ratio - want).norm() < 1e-12 * want.norm());
        assert!(general.residual().norm() < 1e-9, "{}", general.residual());
    }

    #[test]
    fn thm31_examples() {
        let quad = QuadratureConfig::default();
        for (a, k, m) in [
            (c(3.5, 0.0), vec![2u64, 3], vec![1u32, 0, 0]),
            (c(2.5, 0.0), vec![2, 3, 5], vec![0, 0, 0, 0]),
            (c(3.0, 0.5), vec![3, 4], vec![0, 1, 0]),
            (c(4.0, 0.0), vec![1, 2], vec![0, 1, 2]),
        ] {
            let s = verify_thm31(a, &k, &m, &quad).unwrap();
            let scale = s.lhs.norm().max(1.0);
            assert!(s.residual().norm() < 1e-8 * scale, "a={a} k={k:?} m={m:?}: {} vs {}", s.lhs, s.rhs);
        }
    }

    #[test]
    fn thm32_examples() {
        let cfg = PrecisionConfig::default();
        for (n, k, m) in [
            (3u32, vec![2u64, 3], vec![0u32, 0, 0]),
            (4, vec![3, 4], vec![1, 0, 0]),
            (2, vec![2, 3, 5], vec![0, 0, 0, 0]),
            (4, vec![2, 5], vec![0, 0, 1]),
        ] {
            let s = verify_thm32(n, &k, &m, &cfg).unwrap();
            assert!(s.residual().norm() < 1e-10 * s.lhs.norm().max(1.0), "n={n} k={k:?} m={m:?}: {} vs {}", s.lhs, s.rhs);
        }
        assert!(verify_thm32(3, &[2, 3], &[1, 0, 0], &cfg).is_err());
    }

    #[test]
    fn cor33_reduces_to_closed_form() {
        for (n, h, k) in [(3u32, 1u64, 2u64), (5, 2, 3), (7, 3, 4)] {
            let general = collapsed_integral(n, &[h, k], &[0, 0, 0]).unwrap();
            assert_eq!(general, closed_form_integral(n, h, k).unwrap());
        }
    }

    #[test]
    fn cor33_quadrature() {
        let quad = QuadratureConfig::default();
        for (n, k, m) in [(4u32, vec![2u64, 3], vec![0u32, 1, 0]), (2, vec![2, 3, 5], vec![0, 0, 0, 0]), (3, vec![1, 2], vec![0, 0, 0])] {
            let s = verify_cor33(n, &k, &m, &quad).unwrap();
            assert!(s.residual().norm() < 1e-9, "n={n} k={k:?} m={m:?}: {} vs {}", s.lhs, s.rhs);
        }
    }
}
