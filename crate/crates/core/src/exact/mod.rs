//! Exact rational arithmetic: Bernoulli numbers and polynomials, values of the
//! form rational·πᵖ·iᵠ, Dedekind and Dedekind–Apostol sums, the odd-order
//! reciprocity law and the period polynomials ψ₋ₙ, g₋ₙ.

mod bernoulli;
mod dedekind;
mod period;
mod scaled;

use num_rational::BigRational;
use num_traits::ToPrimitive;

pub use bernoulli::{
    bernoulli_number, bernoulli_numbers, bernoulli_polynomial, binomial, factorial,
    rising_factorial, zeta_neg_int, BernoulliConvention, RationalPoly,
};
pub use dedekind::{
    apostol_sum, bernoulli_bracket, dedekind_sum, exact_c_minus_n, exact_c_minus_n_signed,
    periodic_bernoulli, sawtooth, thm13_rhs, thm13_rhs_with, verify_thm13,
};
pub use period::{g_polynomial, psi_at_one_unweighted, psi_polynomial, PeriodPolynomial};
pub use scaled::ExactScaled;

/// Convenience alias; values are always reduced with a positive denominator.
pub type Rational = BigRational;

pub(crate) use bernoulli::{frac, rat};

/// Nearest f64 to a big rational.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Dedekind reciprocity right-hand side −1/4 + (h/k + 1/(hk) + k/h)/12.
pub fn dedekind_reciprocity_rhs(h: u64, k: u64) -> BigRational {
    let (h, k) = (h as i64, k as i64);
    frac(-1, 4) + (frac(h, k) + frac(1, h * k) + frac(k, h)) / rat(12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedekind_reciprocity_small_range() {
        for h in 1..=12u64 {
            for k in 1..=12u64 {
                if num_integer::Integer::gcd(&h, &k) != 1 {
                    continue;
                }
                let lhs = dedekind_sum(h, k).unwrap() + dedekind_sum(k, h).unwrap();
                assert_eq!(lhs, dedekind_reciprocity_rhs(h, k), "({h},{k})");
            }
        }
    }
}
