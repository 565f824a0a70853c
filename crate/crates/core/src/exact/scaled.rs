use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational_to_f64;
use crate::error::{Error, Result};

/// An exact value `coeff · π^pi_power · i^i_power`.
///
/// Values are kept normalized: `i² = −1` is folded into the sign of the
/// coefficient, so `i_power` is 0 or 1 after construction, and zero has a
/// single representation with both powers 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactScaled {
    coeff: BigRational,
    pi_power: i64,
    i_power: u8,
}

impl ExactScaled {
    pub fn new(coeff: BigRational, pi_power: i64, i_power: i64) -> Self {
        let mut v = ExactScaled {
            coeff,
            pi_power,
            i_power: i_power.rem_euclid(4) as u8,
        };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        self.i_power %= 4;
        if self.i_power >= 2 {
            self.coeff = -std::mem::take(&mut self.coeff);
            self.i_power -= 2;
        }
        if self.coeff.is_zero() {
            self.pi_power = 0;
            self.i_power = 0;
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(coeff: BigRational) -> Self {
        Self::new(coeff, 0, 0)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn pi() -> Self {
        Self::new(BigRational::one(), 1, 0)
    }

    pub fn imag_unit() -> Self {
        Self::new(BigRational::one(), 0, 1)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn pi_power(&self) -> i64 {
        self.pi_power
    }

    pub fn i_power(&self) -> u8 {
        self.i_power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// True when the value is real (no leftover factor of i).
    pub fn is_real(&self) -> bool {
        self.i_power == 0
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.coeff * r, self.pi_power, self.i_power as i64)
    }

    pub fn powi(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of exact zero".into()));
        }
        // 1/i = -i
        Ok(Self::new(
            self.coeff.recip(),
            -self.pi_power,
            -(self.i_power as i64),
        ))
    }

    fn like(&self, other: &Self) -> bool {
        self.pi_power == other.pi_power && self.i_power == other.i_power
    }

    /// Sum of two values, defined when they are like terms or one is zero.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if !self.like(other) {
            return Err(Error::UnlikeTerms(format!("{self} + {other}")));
        }
        Ok(Self::new(
            &self.coeff + &other.coeff,
            self.pi_power,
            self.i_power as i64,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Sums a sequence of like terms.
    pub fn checked_sum<'a>(terms: impl IntoIterator<Item = &'a ExactScaled>) -> Result<Self> {
        terms
            .into_iter()
            .try_fold(Self::zero(), |acc, t| acc.checked_add(t))
    }

    pub fn to_complex(&self) -> Complex64 {
        let mag = rational_to_f64(&self.coeff) * std::f64::consts::PI.powi(self.pi_power as i32);
        if self.i_power == 0 {
            Complex64::new(mag, 0.0)
        } else {
            Complex64::new(0.0, mag)
        }
    }
}

impl Mul for &ExactScaled {
    type Output = ExactScaled;

    fn mul(self, rhs: &ExactScaled) -> ExactScaled {
        ExactScaled::new(
            &self.coeff * &rhs.coeff,
            self.pi_power + rhs.pi_power,
            self.i_power as i64 + rhs.i_power as i64,
        )
    }
}

impl Mul for ExactScaled {
    type Output = ExactScaled;

    fn mul(self, rhs: ExactScaled) -> ExactScaled {
        &self * &rhs
    }
}

impl Neg for &ExactScaled {
    type Output = ExactScaled;

    fn neg(self) -> ExactScaled {
        ExactScaled::new(-&self.coeff, self.pi_power, self.i_power as i64)
    }
}

impl Neg for ExactScaled {
    type Output = ExactScaled;

    fn neg(self) -> ExactScaled {
        -&self
    }
}

impl fmt::Display for ExactScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.coeff.is_negative() {
            write!(f, "-")?;
        }
        write!(f, "{}", self.coeff.abs())?;
        match self.pi_power {
            0 => {}
            1 => write!(f, "*pi")?,
            p => write!(f, "*pi^{p}")?,
        }
        if self.i_power == 1 {
            write!(f, "*i")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ExactScaledRepr {
    num: String,
    den: String,
    pi_pow: i64,
    i_pow: i64,
}

impl Serialize for ExactScaled {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExactScaledRepr {
            num: self.coeff.numer().to_string(),
            den: self.coeff.denom().to_string(),
            pi_pow: self.pi_power,
            i_pow: self.i_power as i64,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactScaled {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ExactScaledRepr::deserialize(deserializer)?;
        let num: BigInt = repr.num.parse().map_err(D::Error::custom)?;
        let den: BigInt = repr.den.parse().map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(ExactScaled::new(
            BigRational::new(num, den),
            repr.pi_pow,
            repr.i_pow,
        ))
    }
}
