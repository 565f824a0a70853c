use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::EPS;
use crate::error::{Error, Result};

/// A complex value together with an estimated bound on its absolute error.
///
/// Arithmetic propagates the error to first order and adds one rounding unit
/// of the result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexVal {
    value: Complex64,
    abs_err: f64,
}

impl ComplexVal {
    pub fn new(value: Complex64, abs_err: f64) -> Self {
        ComplexVal {
            value,
            abs_err: abs_err.abs(),
        }
    }

    /// A value known to full double precision.
    pub fn rounded(value: Complex64) -> Self {
        Self::new(value, EPS * value.norm())
    }

    pub fn zero() -> Self {
        Self::new(Complex64::new(0.0, 0.0), 0.0)
    }

    pub fn real(x: f64) -> Self {
        Self::rounded(Complex64::new(x, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }

    pub fn abs_err(&self) -> f64 {
        self.abs_err
    }

    pub fn norm(&self) -> f64 {
        self.value.norm()
    }

    pub fn with_extra_err(self, err: f64) -> Self {
        Self::new(self.value, self.abs_err + err.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.value.re.is_finite() && self.value.im.is_finite() && self.abs_err.is_finite()
    }

    /// Multiplies by a constant that is itself exact up to rounding.
    pub fn scale(self, c: Complex64) -> Self {
        let v = self.value * c;
        Self::new(v, self.abs_err * c.norm() + EPS * v.norm())
    }

    pub fn conj(self) -> Self {
        Self::new(self.value.conj(), self.abs_err)
    }

    /// Sums values left to right, error budgets added.
    pub fn sum<I: IntoIterator<Item = ComplexVal>>(terms: I) -> Self {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        let mut mag = 0.0;
        for t in terms {
            acc += t.value;
            err += t.abs_err;
            mag += t.value.norm();
        }
        Self::new(acc, err + EPS * mag)
    }

    /// |self − other| together with the combined error budget.
    pub fn distance(&self, other: &ComplexVal) -> (f64, f64) {
        ((self.value - other.value).norm(), self.abs_err + other.abs_err)
    }
}

impl Add for ComplexVal {
    type Output = ComplexVal;
    fn add(self, rhs: ComplexVal) -> ComplexVal {
        let v = self.value + rhs.value;
        ComplexVal::new(v, self.abs_err + rhs.abs_err + EPS * v.norm())
    }
}

impl Sub for ComplexVal {
    type Output = ComplexVal;
    fn sub(self, rhs: ComplexVal) -> ComplexVal {
        self + (-rhs)
    }
}

impl Neg for ComplexVal {
    type Output = ComplexVal;
    fn neg(self) -> ComplexVal {
        ComplexVal::new(-self.value, self.abs_err)
    }
}

impl Mul for ComplexVal {
    type Output = ComplexVal;
    fn mul(self, rhs: ComplexVal) -> ComplexVal {
        let v = self.value * rhs.value;
        let err = self.abs_err * rhs.value.norm()
            + rhs.abs_err * self.value.norm()
            + self.abs_err * rhs.abs_err
            + EPS * v.norm();
        ComplexVal::new(v, err)
    }
}

impl Div for ComplexVal {
    type Output = ComplexVal;
    fn div(self, rhs: ComplexVal) -> ComplexVal {
        let d = rhs.value.norm();
        let v = self.value / rhs.value;
        // first order in the relative errors, which is only meaningful when the
        // divisor is well separated from zero
        let rel = if d > 2.0 * rhs.abs_err {
            rhs.abs_err / (d - rhs.abs_err)
        } else {
            f64::INFINITY
        };
        let err = self.abs_err / d + v.norm() * rel + EPS * v.norm();
        ComplexVal::new(v, err)
    }
}

impl From<Complex64> for ComplexVal {
    fn from(v: Complex64) -> Self {
        ComplexVal::rounded(v)
    }
}

impl fmt::Display for ComplexVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} + {}i (+/- {})",
            render(self.value.re),
            render(self.value.im),
            render(self.abs_err)
        )
    }
}

/// Fixed scientific rendering with 14 significant digits; −0 prints as 0.
pub fn render(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    if x.is_finite() {
        format!("{x:.13e}")
    } else {
        format!("{x}")
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexValRepr {
    re: String,
    im: String,
    abs_err: String,
}

impl Serialize for ComplexVal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexValRepr {
            re: render(self.value.re),
            im: render(self.value.im),
            abs_err: render(self.abs_err),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexVal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = ComplexValRepr::deserialize(deserializer)?;
        let p = |s: &str| s.parse::<f64>().map_err(D::Error::custom);
        Ok(ComplexVal::new(
            Complex64::new(p(&r.re)?, p(&r.im)?),
            p(&r.abs_err)?,
        ))
    }
}

/// Working precision and error target for numeric evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub working_digits: u32,
    pub target_abs_err: f64,
    pub max_terms: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            working_digits: 16,
            target_abs_err: 1e-13,
            max_terms: 200_000,
        }
    }
}

impl PrecisionConfig {
    pub fn with_target(target_abs_err: f64) -> Self {
        PrecisionConfig {
            target_abs_err,
            ..Self::default()
        }
    }

    /// Checks the configuration against what double precision can deliver.
    pub fn validate(&self) -> Result<()> {
        if !(15..=16).contains(&self.working_digits) {
            return Err(Error::Precision(format!(
                "working_digits = {} unsupported: the numeric backend is IEEE double (15 or 16 digits)",
                self.working_digits
            )));
        }
        let floor = 10f64.powi(-(self.working_digits as i32) + 2);
        if !(self.target_abs_err.is_finite() && self.target_abs_err >= floor) {
            return Err(Error::Precision(format!(
                "target_abs_err = {:e} must be finite and >= {floor:e}",
                self.target_abs_err
            )));
        }
        if self.max_terms == 0 {
            return Err(Error::Precision("max_terms must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_uses_decimal_strings() {
        let v = ComplexVal::new(Complex64::new(1.5, -0.0), 2e-15);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"re":"1.5000000000000e0","im":"0.0000000000000e0","abs_err":"2.0000000000000e-15"}"#
        );
        let back: ComplexVal = serde_json::from_str(&s).unwrap();
        assert_eq!(back.value(), Complex64::new(1.5, 0.0));
    }

    #[test]
    fn error_propagates_through_products() {
        let a = ComplexVal::new(Complex64::new(2.0, 0.0), 1e-10);
        let b = ComplexVal::new(Complex64::new(0.0, 3.0), 1e-10);
        let p = a * b;
        assert!(p.abs_err() >= 5e-10);
        let q = p / b;
        assert!((q.value() - a.value()).norm() < 1e-15);
        assert!(q.abs_err() > a.abs_err());
    }

    #[test]
    fn config_validation() {
        assert!(PrecisionConfig::default().validate().is_ok());
        let mut c = PrecisionConfig::default();
        c.working_digits = 30;
        assert!(c.validate().is_err());
        c.working_digits = 16;
        c.target_abs_err = 1e-16;
        assert!(c.validate().is_err());
    }
}

/// Serde adapter writing a `Complex64` as `{"re": "..", "im": ".."}` with
/// round-trip decimal strings. Reading also accepts plain JSON numbers, either
/// for each part or for the whole (real) value.
pub mod complex_json {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize)]
    struct Out {
        re: String,
        im: String,
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Part {
        Num(f64),
        Text(String),
    }

    impl Part {
        fn get<E: serde::de::Error>(self) -> Result<f64, E> {
            match self {
                Part::Num(x) => Ok(x),
                Part::Text(s) => s.trim().parse().map_err(E::custom),
            }
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum In {
        Parts { re: Part, #[serde(default)] im: Option<Part> },
        Real(Part),
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        let zero = |x: f64| if x == 0.0 { 0.0 } else { x };
        Out {
            re: format!("{}", zero(z.re)),
            im: format!("{}", zero(z.im)),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        match In::deserialize(d)? {
            In::Parts { re, im } => {
                let im = match im {
                    Some(p) => p.get()?,
                    None => 0.0,
                };
                Ok(Complex64::new(re.get()?, im))
            }
            In::Real(p) => Ok(Complex64::new(p.get()?, 0.0)),
        }
    }
}
