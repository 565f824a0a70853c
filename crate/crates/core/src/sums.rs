//! Direct evaluation of the cotangent sums c_a(h/k) and their generalizations.
//!
//! The plain sum is
//! c_a(h/k) = k^a Σ_{m=1}^{k−1} cot(πmh/k) ζ(−a, m/k),
//! and the generalized sum replaces ζ by its m₀-th x-derivative and the single
//! cotangent by a product of cotangent derivatives cot^{(m_j)}(π k_j l/k₀).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfn::{
    complex_json, cot_derivative, hurwitz_zeta_x_deriv, ComplexVal, PrecisionConfig,
};

/// A reduced fraction p/q with q ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RationalArgRepr", into = "RationalArgRepr")]
pub struct RationalArg {
    p: i64,
    q: u64,
}

#[derive(Serialize, Deserialize)]
struct RationalArgRepr {
    p: i64,
    q: u64,
}

impl TryFrom<RationalArgRepr> for RationalArg {
    type Error = Error;
    fn try_from(r: RationalArgRepr) -> Result<Self> {
        RationalArg::new(r.p, r.q)
    }
}

impl From<RationalArg> for RationalArgRepr {
    fn from(r: RationalArg) -> Self {
        RationalArgRepr { p: r.p, q: r.q }
    }
}

impl RationalArg {
    pub fn new(p: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return domain("denominator must be positive");
        }
        let g = p.unsigned_abs().gcd(&q);
        if g != 1 {
            return domain(format!("{p}/{q} is not reduced (gcd = {g})"));
        }
        Ok(RationalArg { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn to_f64(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// p·m reduced mod q, as a nonnegative residue.
    pub fn residue_times(&self, m: i64) -> u64 {
        (self.p as i128 * m as i128).rem_euclid(self.q as i128) as u64
    }

    pub(crate) fn require_proper_denominator(&self) -> Result<()> {
        if self.q < 2 {
            return domain(format!("denominator of {self} must exceed 1"));
        }
        Ok(())
    }
}

impl fmt::Display for RationalArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RationalArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("cannot parse '{s}' as p/q"));
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        RationalArg::new(p, q)
    }
}

/// Parameters (a; k₀, k₁…k_d; m₀, m₁…m_d) of a generalized sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BCSumSpecRepr", into = "BCSumSpecRepr")]
pub struct BCSumSpec {
    a: Complex64,
    k0: u64,
    k: Vec<u64>,
    m: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct BCSumSpecRepr {
    #[serde(with = "complex_json")]
    a: Complex64,
    k0: u64,
    k: Vec<u64>,
    m: Vec<u32>,
}

impl TryFrom<BCSumSpecRepr> for BCSumSpec {
    type Error = Error;
    fn try_from(r: BCSumSpecRepr) -> Result<Self> {
        BCSumSpec::new(r.a, r.k0, r.k, r.m)
    }
}

impl From<BCSumSpec> for BCSumSpecRepr {
    fn from(s: BCSumSpec) -> Self {
        BCSumSpecRepr {
            a: s.a,
            k0: s.k0,
            k: s.k,
            m: s.m,
        }
    }
}

impl BCSumSpec {
    /// `m` lists m₀ first, then one order per modulus in `k`.
    pub fn new(a: Complex64, k0: u64, k: Vec<u64>, m: Vec<u32>) -> Result<Self> {
        if k.is_empty() {
            return domain("need at least one cotangent modulus");
        }
        if m.len() != k.len() + 1 {
            return domain(format!(
                "expected {} derivative orders (m0 plus one per modulus), got {}",
                k.len() + 1,
                m.len()
            ));
        }
        if k0 == 0 || k.contains(&0) {
            return domain("moduli must be positive");
        }
        for &kj in &k {
            if k0.gcd(&kj) != 1 {
                return domain(format!("gcd(k0 = {k0}, {kj}) != 1"));
            }
        }
        let shifted = -a + m[0] as f64;
        if shifted == Complex64::new(1.0, 0.0) {
            return domain(format!(
                "zeta pole: -a + m0 = 1 at a = {a}, m0 = {} (a = -1 is excluded)",
                m[0]
            ));
        }
        Ok(BCSumSpec { a, k0, k, m })
    }

    /// All derivative orders zero.
    pub fn plain(a: Complex64, k0: u64, k: Vec<u64>) -> Result<Self> {
        let m = vec![0; k.len() + 1];
        Self::new(a, k0, k, m)
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn k0(&self) -> u64 {
        self.k0
    }

    pub fn moduli(&self) -> &[u64] {
        &self.k
    }

    pub fn orders(&self) -> &[u32] {
        &self.m
    }
}

/// k₀^a Σ_{l=1}^{k₀−1} ζ^{(m₀)}(−a, l/k₀) ∏_j cot^{(m_j)}(π k_j l/k₀).
pub fn bc_sum_general(spec: &BCSumSpec, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    cfg.validate()?;
    let k0 = spec.k0;
    if k0 == 1 {
        return Ok(ComplexVal::zero());
    }
    let mut terms = Vec::with_capacity(k0 as usize - 1);
    for l in 1..k0 {
        let x = l as f64 / k0 as f64;
        let mut term = hurwitz_zeta_x_deriv(spec.m[0], -spec.a, x, cfg)?;
        for (kj, &mj) in spec.k.iter().zip(&spec.m[1..]) {
            // cot and its derivatives have period π, so reduce k_j·l first
            let r = (kj * l) % k0;
            term = term * cot_derivative(mj, PI * r as f64 / k0 as f64, cfg)?;
        }
        terms.push(term);
    }
    let weight = (spec.a * (k0 as f64).ln()).exp();
    Ok(ComplexVal::sum(terms).scale(weight))
}

/// c_a(h/k) = k^a Σ_{m=1}^{k−1} cot(πmh/k) ζ(−a, m/k).
pub fn bc_sum(a: Complex64, h: u64, k: u64, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    if h == 0 {
        return domain("h must be positive");
    }
    bc_sum_general(&BCSumSpec::plain(a, k, vec![h])?, cfg)
}

/// c_a(h/k) for a signed numerator, through c_a(−x) = −c_a(x).
pub fn bc_sum_signed(a: Complex64, h: i64, k: u64, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    let v = bc_sum(a, h.unsigned_abs(), k, cfg)?;
    Ok(if h < 0 { -v } else { v })
}

/// The higher-dimensional sum: all derivative orders zero.
pub fn bc_sum_higher(
    a: Complex64,
    k0: u64,
    ks: &[u64],
    cfg: &PrecisionConfig,
) -> Result<ComplexVal> {
    bc_sum_general(&BCSumSpec::plain(a, k0, ks.to_vec())?, cfg)
}

/// C(a, k, x) = −(2i)^{−(k+1)} q^a Σ_{m=1}^{q−1} cot^{(k)}(πmp/q) ζ(−a, m/q).
pub fn cotangent_sum_c(a: u32, k: u32, x: RationalArg, cfg: &PrecisionConfig) -> Result<ComplexVal> {
    cfg.validate()?;
    x.require_proper_denominator()?;
    let q = x.q();
    let mut terms = Vec::with_capacity(q as usize - 1);
    for m in 1..q {
        let r = x.residue_times(m as i64);
        let cot = cot_derivative(k, PI * r as f64 / q as f64, cfg)?;
        let z = hurwitz_zeta_x_deriv(0, Complex64::new(-(a as f64), 0.0), m as f64 / q as f64, cfg)?;
        terms.push(cot * z);
    }
    let prefactor = -Complex64::new(0.0, 2.0).powi(-(k as i32 + 1)) * (q as f64).powi(a as i32);
    Ok(ComplexVal::sum(terms).scale(prefactor))
}
