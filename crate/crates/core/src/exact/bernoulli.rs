use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Which value B₁ takes. Everything else is convention independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BernoulliConvention {
    /// B₁ = −1/2, the coefficient of t in t/(eᵗ − 1).
    #[default]
    Standard,
    /// B₁ = 0, as in the expansion πz·cot(πz) = Σ (2πi)ᵐ Bₘ zᵐ / m!.
    Zeroed,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// B₀ … B_{n_max} under `conv`.
///
/// Uses the Akiyama–Tanigawa transform, which produces B₁ = +1/2; the sign is
/// fixed up afterwards. No state is kept between calls.
pub fn bernoulli_numbers(n_max: usize, conv: BernoulliConvention) -> Vec<BigRational> {
    let mut row: Vec<BigRational> = Vec::with_capacity(n_max + 1);
    let mut out = Vec::with_capacity(n_max + 1);
    for m in 0..=n_max {
        row.push(frac(1, m as i64 + 1));
        for j in (1..=m).rev() {
            let diff = &row[j - 1] - &row[j];
            row[j - 1] = rat(j as i64) * diff;
        }
        out.push(row[0].clone());
    }
    if n_max >= 1 {
        out[1] = match conv {
            BernoulliConvention::Standard => frac(-1, 2),
            BernoulliConvention::Zeroed => BigRational::zero(),
        };
    }
    out
}

/// The Bernoulli number Bₙ.
pub fn bernoulli_number(n: usize, conv: BernoulliConvention) -> BigRational {
    bernoulli_numbers(n, conv).pop().expect("table has n + 1 entries")
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// A polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        RationalPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + super::rational_to_f64(c))
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && self.coeffs.len() > 1 {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match deg {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if deg == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{deg}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The Bernoulli polynomial Bₙ(x) = Σ C(n,k) B_k x^{n−k} (standard B₁).
pub fn bernoulli_polynomial(n: usize) -> RationalPoly {
    let b = bernoulli_numbers(n, BernoulliConvention::Standard);
    let coeffs = (0..=n)
        .map(|deg| {
            // coefficient of x^deg comes from k = n - deg
            let k = n - deg;
            BigRational::from_integer(binomial(n as u64, k as u64)) * &b[k]
        })
        .collect();
    RationalPoly::new(coeffs)
}

/// x(x+1)…(x+n−1); the empty product for n = 0.
pub fn rising_factorial<T>(x: T, n: usize) -> T
where
    T: Clone + One + std::ops::Add<Output = T> + std::ops::Mul<Output = T>,
{
    let mut acc = T::one();
    let mut term = x;
    for _ in 0..n {
        acc = acc * term.clone();
        term = term + T::one();
    }
    acc
}

/// ζ(−k) = (−1)ᵏ B_{k+1}/(k+1), which is −B_{k+1}/(k+1) for every k ≥ 1.
pub fn zeta_neg_int(k: usize) -> BigRational {
    let v = bernoulli_number(k + 1, BernoulliConvention::Standard) / rat(k as i64 + 1);
    if k % 2 == 0 {
        v
    } else {
        -v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Σ_{j<n} C(n+1, j) B_j = 0, solved for B_n.
    fn recurrence_oracle(n_max: usize) -> Vec<BigRational> {
        let mut b: Vec<BigRational> = vec![rat(1)];
        for n in 1..=n_max {
            let s: BigRational = (0..n)
                .map(|j| BigRational::from_integer(binomial(n as u64 + 1, j as u64)) * &b[j])
                .sum();
            b.push(-s / rat(n as i64 + 1));
        }
        b
    }

    #[test]
    fn numbers_match_recurrence_oracle() {
        let oracle = recurrence_oracle(40);
        let ours = bernoulli_numbers(40, BernoulliConvention::Standard);
        assert_eq!(ours, oracle);
    }

    #[test]
    fn named_values() {
        assert_eq!(bernoulli_number(0, BernoulliConvention::Standard), rat(1));
        assert_eq!(bernoulli_number(1, BernoulliConvention::Zeroed), rat(0));
        assert_eq!(bernoulli_number(1, BernoulliConvention::Standard), frac(-1, 2));
        assert_eq!(bernoulli_number(4, BernoulliConvention::Standard), frac(-1, 30));
        assert_eq!(bernoulli_number(12, BernoulliConvention::Standard), frac(-691, 2730));
    }

    #[test]
    fn odd_indices_vanish_in_both_conventions() {
        for conv in [BernoulliConvention::Standard, BernoulliConvention::Zeroed] {
            let b = bernoulli_numbers(31, conv);
            for k in (3..=31).step_by(2) {
                assert!(b[k].is_zero(), "B_{k} under {conv:?}");
            }
        }
    }

    // B_n' = n B_{n-1} and ∫_0^1 B_n = 0 determine B_n from B_{n-1}.
    fn polynomial_oracle(n: usize) -> Vec<BigRational> {
        let mut p = vec![rat(1)];
        for m in 1..=n {
            let mut next = vec![rat(0)];
            for (deg, c) in p.iter().enumerate() {
                next.push(c * rat(m as i64) / rat(deg as i64 + 1));
            }
            let integral: BigRational = next
                .iter()
                .enumerate()
                .map(|(deg, c)| c / rat(deg as i64 + 1))
                .sum();
            next[0] = -integral;
            p = next;
        }
        p
    }

    #[test]
    fn polynomials_match_derivative_oracle() {
        for n in 0..=14 {
            assert_eq!(bernoulli_polynomial(n), RationalPoly::new(polynomial_oracle(n)), "n = {n}");
        }
        assert_eq!(bernoulli_polynomial(1).coeffs(), &[frac(-1, 2), rat(1)]);
        assert_eq!(bernoulli_polynomial(2).coeffs(), &[frac(1, 6), rat(-1), rat(1)]);
        assert_eq!(bernoulli_polynomial(2).to_string(), "x^2 - x + 1/6");
    }

    #[test]
    fn polynomial_at_zero_is_the_number() {
        for n in 0..20 {
            assert_eq!(
                bernoulli_polynomial(n).eval(&rat(0)),
                bernoulli_number(n, BernoulliConvention::Standard)
            );
        }
    }

    #[test]
    fn rising_factorial_values() {
        assert_eq!(rising_factorial(rat(3), 0), rat(1));
        assert_eq!(rising_factorial(rat(2), 3), rat(24));
        assert_eq!(rising_factorial(frac(1, 2), 2), frac(3, 4));
        let z = num_complex::Complex64::new(0.5, 1.0);
        let r = rising_factorial(z, 2);
        assert!((r - z * (z + 1.0)).norm() < 1e-15);
    }

    #[test]
    fn zeta_at_negative_integers() {
        assert_eq!(zeta_neg_int(0), frac(-1, 2));
        assert_eq!(zeta_neg_int(1), frac(-1, 12));
        assert_eq!(zeta_neg_int(2), rat(0));
        assert_eq!(zeta_neg_int(3), frac(1, 120));
    }
}
