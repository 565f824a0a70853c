use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::bernoulli::{
    bernoulli_numbers, bernoulli_polynomial, binomial, factorial, frac, rat, BernoulliConvention,
};
use super::scaled::ExactScaled;
use crate::error::{domain, Result};

fn check_coprime(h: u64, k: u64) -> Result<()> {
    if h == 0 || k == 0 {
        return domain(format!("h and k must be positive, got ({h}, {k})"));
    }
    if h.gcd(&k) != 1 {
        return domain(format!("gcd({h}, {k}) = {} != 1", h.gcd(&k)));
    }
    Ok(())
}

fn check_odd_order(n: u32) -> Result<()> {
    if n <= 1 || n % 2 == 0 {
        return domain(format!("order n must be odd and > 1, got {n}"));
    }
    Ok(())
}

/// The sawtooth ((x)): x − ⌊x⌋ − 1/2 off the integers, 0 on them.
pub fn sawtooth(x: &BigRational) -> BigRational {
    if x.is_integer() {
        BigRational::zero()
    } else {
        x - x.floor() - frac(1, 2)
    }
}

/// The Dedekind sum s(h,k) = Σ_{m=1}^{k−1} ((m/k))((mh/k)).
pub fn dedekind_sum(h: u64, k: u64) -> Result<BigRational> {
    check_coprime(h, k)?;
    let kk = rat(k as i64);
    Ok((1..k)
        .map(|m| {
            let a = sawtooth(&(rat(m as i64) / &kk));
            let b = sawtooth(&(rat((m * h) as i64) / &kk));
            a * b
        })
        .sum())
}

/// The periodic Bernoulli function B̄ₙ(x) = Bₙ({x}).
pub fn periodic_bernoulli(n: usize, x: &BigRational) -> BigRational {
    let frac_part = x - x.floor();
    bernoulli_polynomial(n).eval(&frac_part)
}

/// The Dedekind–Apostol sum sₙ(h,k) = Σ_{μ=1}^{k−1} (μ/k)·B̄ₙ(hμ/k).
pub fn apostol_sum(n: u32, h: u64, k: u64) -> Result<BigRational> {
    check_coprime(h, k)?;
    let poly = bernoulli_polynomial(n as usize);
    let kk = rat(k as i64);
    Ok((1..k)
        .map(|mu| {
            let x = rat(((h * mu) % k) as i64) / &kk;
            rat(mu as i64) / &kk * poly.eval(&x)
        })
        .sum())
}

/// (2πi)ⁿ as an exact value.
pub(crate) fn two_pi_i_pow(n: u32) -> ExactScaled {
    ExactScaled::new(rat(2), 1, 1).powi(n)
}

/// c₋ₙ(h/k) for odd n > 1, through sₙ(h,k) = i·n!·(2πi)⁻ⁿ·c₋ₙ(h/k).
pub fn exact_c_minus_n(n: u32, h: u64, k: u64) -> Result<ExactScaled> {
    check_odd_order(n)?;
    let s = apostol_sum(n, h, k)?;
    let scale = BigRational::new(s.numer().clone(), s.denom() * factorial(n as u64));
    // (2πi)^n / i = (2πi)^n · (−i)
    let prefactor = &two_pi_i_pow(n) * &ExactScaled::new(BigRational::one(), 0, 3);
    Ok(prefactor.scale(&scale))
}

/// c₋ₙ(h/k) for a signed numerator, using c₋ₙ(−x) = −c₋ₙ(x).
pub fn exact_c_minus_n_signed(n: u32, h: i64, k: u64) -> Result<ExactScaled> {
    let v = exact_c_minus_n(n, h.unsigned_abs(), k)?;
    Ok(if h < 0 { -v } else { v })
}

/// Σ_{m=0}^{n+1} C(n+1,m) B_m B_{n+1−m} h^m k^{n+1−m}.
pub fn bernoulli_bracket(n: u32, h: u64, k: u64, conv: BernoulliConvention) -> BigRational {
    let b = bernoulli_numbers(n as usize + 1, conv);
    let (hb, kb) = (BigInt::from(h), BigInt::from(k));
    (0..=n + 1)
        .map(|m| {
            let weight = binomial(n as u64 + 1, m as u64) * Pow::pow(&hb, m) * Pow::pow(&kb, n + 1 - m);
            BigRational::from_integer(weight) * &b[m as usize] * &b[(n + 1 - m) as usize]
        })
        .sum()
}

/// Right-hand side of the odd-order reciprocity law,
/// (2πi/hk)ⁿ·(1/(i(n+1)!))·(n·B_{n+1} + bracket), under the given B₁ convention.
pub fn thm13_rhs_with(n: u32, h: u64, k: u64, conv: BernoulliConvention) -> Result<ExactScaled> {
    check_odd_order(n)?;
    check_coprime(h, k)?;
    let b = bernoulli_numbers(n as usize + 1, conv);
    let inner = rat(n as i64) * &b[n as usize + 1] + bernoulli_bracket(n, h, k, conv);
    let hk_n = Pow::pow(BigInt::from(h * k), n);
    let scale = inner / BigRational::from_integer(hk_n * factorial(n as u64 + 1));
    let prefactor = &two_pi_i_pow(n) * &ExactScaled::new(BigRational::one(), 0, 3);
    Ok(prefactor.scale(&scale))
}

pub fn thm13_rhs(n: u32, h: u64, k: u64) -> Result<ExactScaled> {
    thm13_rhs_with(n, h, k, BernoulliConvention::Zeroed)
}

/// h^{1−n}c₋ₙ(h/k) + k^{1−n}c₋ₙ(k/h) − rhs. Zero exactly when the law holds.
pub fn verify_thm13(n: u32, h: u64, k: u64) -> Result<ExactScaled> {
    let lhs_h = exact_c_minus_n(n, h, k)?.scale(&BigRational::new(
        BigInt::one(),
        Pow::pow(BigInt::from(h), n - 1),
    ));
    let lhs_k = exact_c_minus_n(n, k, h)?.scale(&BigRational::new(
        BigInt::one(),
        Pow::pow(BigInt::from(k), n - 1),
    ));
    lhs_h.checked_add(&lhs_k)?.checked_sub(&thm13_rhs(n, h, k)?)
}
