//! Verification results in the shape the command line prints.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::exact::ExactScaled;
use crate::specfn::{render, ComplexVal};

/// Both sides of an identity, each with its own error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sides {
    pub lhs: ComplexVal,
    pub rhs: ComplexVal,
}

impl Sides {
    pub fn new(lhs: ComplexVal, rhs: ComplexVal) -> Self {
        Sides { lhs, rhs }
    }

    /// lhs − rhs, carrying the combined error estimate.
    pub fn residual(&self) -> ComplexVal {
        self.lhs - self.rhs
    }
}

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub theorem: String,
    pub params: BTreeMap<String, String>,
    pub lhs: ComplexVal,
    pub rhs: ComplexVal,
    pub residual: ComplexVal,
    pub budget: String,
    pub pass: bool,
}

impl Report {
    /// A numeric check passes when |residual| and the residual's own error
    /// estimate are both within `tolerance`.
    pub fn numeric(
        theorem: &str,
        params: BTreeMap<String, String>,
        sides: Sides,
        tolerance: f64,
    ) -> Self {
        let residual = sides.residual();
        let pass = residual.is_finite()
            && residual.norm() <= tolerance
            && residual.abs_err() <= tolerance;
        Report {
            theorem: theorem.to_string(),
            params,
            lhs: sides.lhs,
            rhs: sides.rhs,
            residual,
            budget: render(tolerance),
            pass,
        }
    }

    /// An exact check passes only when lhs − rhs is exactly zero.
    pub fn exact(
        theorem: &str,
        params: BTreeMap<String, String>,
        lhs: &ExactScaled,
        rhs: &ExactScaled,
    ) -> Self {
        let exact = |v: &ExactScaled| ComplexVal::new(v.to_complex(), 0.0);
        let diff = lhs.checked_sub(rhs);
        let (residual, pass) = match &diff {
            Ok(d) => (exact(d), d.is_zero()),
            // unlike terms never cancel exactly
            Err(_) => (
                ComplexVal::new(lhs.to_complex() - rhs.to_complex(), 0.0),
                false,
            ),
        };
        Report {
            theorem: theorem.to_string(),
            params,
            lhs: exact(lhs),
            rhs: exact(rhs),
            residual,
            budget: "0".to_string(),
            pass,
        }
    }

    pub fn residual_norm(&self) -> f64 {
        self.residual.norm()
    }
}

/// Builds a parameter map from (name, value) pairs.
pub fn params<I, K, V>(pairs: I) -> BTreeMap<String, String>
where
    I: IntoIterator<Item = (K, V)>,
    K: Into<String>,
    V: ToString,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.into(), v.to_string()))
        .collect()
}

/// Short text for a complex parameter: `2.5` or `2+1i`.
pub fn complex_param(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}
