use std::collections::BTreeMap;

use bcsums::estermann::{estermann_hurwitz, estermann_nonpositive, estermann_series, EstermannPoint};
use bcsums::exact::{
    apostol_sum, bernoulli_number, bernoulli_polynomial, dedekind_sum,
    exact_c_minus_n, g_polynomial, psi_polynomial, BernoulliConvention, PeriodPolynomial, Rational,
};
use bcsums::recip::line_integral_product;
use bcsums::report::complex_param;
use bcsums::specfn::ComplexVal;
use bcsums::sums::{bc_sum, bc_sum_general, cotangent_sum_c, BCSumSpec, RationalArg};
use bcsums::ExactScaled;
use clap::{Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::Record;
use crate::parse;
use crate::{CliError, Ctx};

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Convention {
    /// B₁ = −1/2
    Standard,
    /// B₁ = 0
    Zeroed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Route {
    Auto,
    Series,
    Hurwitz,
    Closed,
}

#[derive(Debug, Subcommand)]
pub enum Target {
    /// Bernoulli number B_n, or the polynomial value B_n(x) with --x.
    Bernoulli {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Convention::Standard)]
        convention: Convention,
        /// Rational argument p/q.
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
    },
    /// Dedekind sum s(h, k).
    Dedekind {
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
    },
    /// Dedekind–Apostol sum s_n(h, k).
    Apostol {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
    },
    /// c_a(h/k) = k^a Σ cot(πmh/k) ζ(−a, m/k).
    BcSum {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        a: Complex64,
        #[arg(long)]
        h: u64,
        #[arg(long)]
        k: u64,
    },
    /// The generalized sum with derivative orders; --spec takes the JSON form.
    BcSumGeneral {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        a: Option<Complex64>,
        #[arg(long)]
        k0: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        moduli: Vec<u64>,
        /// m₀ followed by one order per modulus.
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u32>,
        #[arg(long, conflicts_with_all = ["a", "k0", "moduli", "orders"])]
        spec: Option<String>,
    },
    /// ψ₋ₙ as a Laurent polynomial, optionally evaluated at --z.
    PsiPoly {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        z: Option<Complex64>,
    },
    /// g₋ₙ as a polynomial, optionally evaluated at --z.
    GPoly {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        z: Option<Complex64>,
    },
    /// ∫ from ε+i∞ down to ε−i∞ of ∏ cot^{(m_j)}(πk_j z) / z^a dz.
    LineIntegral {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        a: Complex64,
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
        /// One derivative order per modulus (default all 0).
        #[arg(long, value_delimiter = ',')]
        orders: Vec<u32>,
    },
    /// Estermann zeta E(s, p/q, a).
    Estermann {
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        s: Complex64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse::complex)]
        a: Complex64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Route::Auto)]
        route: Route,
    },
    /// C(a, k, p/q).
    #[command(name = "cotangent-sum-C", alias = "cotangent-sum-c")]
    CotangentSumC {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        p: i64,
        #[arg(long)]
        q: u64,
    },
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn conv(c: Convention) -> BernoulliConvention {
    match c {
        Convention::Standard => BernoulliConvention::Standard,
        Convention::Zeroed => BernoulliConvention::Zeroed,
    }
}

struct Builder {
    quantity: &'static str,
    params: BTreeMap<String, String>,
}

impl Builder {
    fn new(quantity: &'static str) -> Self {
        Builder { quantity, params: BTreeMap::new() }
    }

    fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.into(), v.to_string());
        self
    }

    fn exact(self, ctx: &Ctx, v: &ExactScaled) -> Record {
        let text = v.to_string();
        self.finish(ctx, to_json(v), text)
    }

    fn numeric(self, ctx: &Ctx, v: &ComplexVal) -> Record {
        let text = v.to_string();
        self.finish(ctx, to_json(v), text)
    }

    fn finish(self, ctx: &Ctx, value: Value, text: String) -> Record {
        Record {
            quantity: self.quantity.to_string(),
            params: self.params,
            config: ctx.echo(),
            value,
            text,
        }
    }
}

fn polynomial(ctx: &Ctx, b: Builder, p: &PeriodPolynomial, z: Option<Complex64>) -> Result<Record, CliError> {
    let mut value = to_json(p);
    let mut text = p.to_string();
    let b = match z {
        Some(z) => {
            let v = ComplexVal::rounded(p.eval(z)?);
            value["value_at_z"] = to_json(&v);
            text = format!("{text}\nat z = {}: {v}", complex_param(z));
            b.param("z", complex_param(z))
        }
        None => b,
    };
    Ok(b.finish(ctx, value, text))
}

pub fn run(target: &Target, ctx: &Ctx) -> Result<Record, CliError> {
    let cfg = &ctx.precision;
    match target {
        Target::Bernoulli { n, convention, x } => {
            let b = Builder::new("bernoulli").param("n", n).param(
                "convention",
                format!("{convention:?}").to_lowercase(),
            );
            match x {
                None => Ok(b.exact(ctx, &ExactScaled::from_rational(bernoulli_number(*n, conv(*convention))))),
                Some(x) => {
                    let r: Rational = x
                        .parse()
                        .map_err(|_| CliError::Usage(format!("cannot parse '{x}' as p/q")))?;
                    let v = bernoulli_polynomial(*n).eval(&r);
                    Ok(b.param("x", x).exact(ctx, &ExactScaled::from_rational(v)))
                }
            }
        }
        Target::Dedekind { h, k } => {
            let v = dedekind_sum(*h, *k)?;
            Ok(Builder::new("dedekind").param("h", h).param("k", k).exact(ctx, &ExactScaled::from_rational(v)))
        }
        Target::Apostol { n, h, k } => {
            let v = apostol_sum(*n, *h, *k)?;
            Ok(Builder::new("apostol")
                .param("n", n)
                .param("h", h)
                .param("k", k)
                .exact(ctx, &ExactScaled::from_rational(v)))
        }
        Target::BcSum { a, h, k } => {
            let v = bc_sum(*a, *h, *k, cfg)?;
            let b = Builder::new("bc-sum").param("a", complex_param(*a)).param("h", h).param("k", k);
            let mut value = to_json(&v);
            let mut text = v.to_string();
            if let Some(e) = closed_form_or_none(*a, *h, *k) {
                value = json!({ "numeric": value, "exact": to_json(&e) });
                text = format!("{text}\nexact: {e}");
            }
            Ok(b.finish(ctx, value, text))
        }
        Target::BcSumGeneral { a, k0, moduli, orders, spec } => {
            let spec = match spec {
                Some(s) => serde_json::from_str::<BCSumSpec>(s)
                    .map_err(|e| CliError::Usage(format!("invalid --spec: {e}")))?,
                None => {
                    let a = a.ok_or("bc-sum-general needs --a or --spec".to_string())?;
                    let k0 = k0.ok_or("bc-sum-general needs --k0 or --spec".to_string())?;
                    let orders = if orders.is_empty() { vec![0; moduli.len() + 1] } else { orders.clone() };
                    BCSumSpec::new(a, k0, moduli.clone(), orders)?
                }
            };
            let v = bc_sum_general(&spec, cfg)?;
            let b = Builder::new("bc-sum-general").param("spec", to_json(&spec));
            Ok(b.numeric(ctx, &v))
        }
        Target::PsiPoly { n, z } => polynomial(ctx, Builder::new("psi-poly").param("n", n), &psi_polynomial(*n)?, *z),
        Target::GPoly { n, z } => polynomial(ctx, Builder::new("g-poly").param("n", n), &g_polynomial(*n)?, *z),
        Target::LineIntegral { a, moduli, orders } => {
            let orders = if orders.is_empty() { vec![0; moduli.len()] } else { orders.clone() };
            if orders.len() != moduli.len() {
                return Err(CliError::Usage("--orders needs one entry per modulus".into()));
            }
            let pairs: Vec<(u64, u32)> = moduli.iter().copied().zip(orders.iter().copied()).collect();
            let v = line_integral_product(*a, &pairs, &ctx.quad)?;
            let join = |v: &[String]| v.join(",");
            Ok(Builder::new("line-integral")
                .param("a", complex_param(*a))
                .param("moduli", join(&moduli.iter().map(u64::to_string).collect::<Vec<_>>()))
                .param("orders", join(&orders.iter().map(u32::to_string).collect::<Vec<_>>()))
                .numeric(ctx, &v))
        }
        Target::Estermann { s, a, p, q, route } => {
            let x = RationalArg::new(*p, *q)?;
            let pt = EstermannPoint::new(*s, x, *a)?;
            let closed = closed_indices(*s, *a);
            let route = match route {
                Route::Auto if closed.is_some() => Route::Closed,
                Route::Auto => Route::Hurwitz,
                r => *r,
            };
            let v = match route {
                Route::Closed => {
                    let (k, a_int) = closed.ok_or_else(|| {
                        CliError::Usage("the closed form needs s = -k and a + k a nonnegative integer".into())
                    })?;
                    estermann_nonpositive(k, x, a_int, cfg)?
                }
                Route::Series => estermann_series(&pt, cfg)?,
                _ => estermann_hurwitz(&pt, cfg)?,
            };
            Ok(Builder::new("estermann")
                .param("s", complex_param(*s))
                .param("a", complex_param(*a))
                .param("x", x)
                .param("route", format!("{route:?}").to_lowercase())
                .numeric(ctx, &v))
        }
        Target::CotangentSumC { a, k, p, q } => {
            let x = RationalArg::new(*p, *q)?;
            let v = cotangent_sum_c(*a, *k, x, cfg)?;
            Ok(Builder::new("cotangent-sum-C")
                .param("a", a)
                .param("k", k)
                .param("x", x)
                .numeric(ctx, &v))
        }
    }
}

// c_a(h/k) is exact at a = −n for odd n > 1.
fn closed_form_or_none(a: Complex64, h: u64, k: u64) -> Option<ExactScaled> {
    let n = parse::nonneg_int(-a, "a").ok()?;
    if n > 1 && n % 2 == 1 {
        exact_c_minus_n(n, h, k).ok()
    } else {
        None
    }
}

// s = −k and a = a' − k with k, a' nonnegative integers.
fn closed_indices(s: Complex64, a: Complex64) -> Option<(u32, u32)> {
    let k = parse::nonneg_int(-s, "s").ok()?;
    let a_int = parse::nonneg_int(a + k as f64, "a").ok()?;
    Some((k, a_int))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_indices() {
        let c = |re| Complex64::new(re, 0.0);
        assert_eq!(closed_indices(c(0.0), c(0.0)), Some((0, 0)));
        assert_eq!(closed_indices(c(-2.0), c(1.0)), Some((2, 3)));
        assert_eq!(closed_indices(c(-2.0), c(-3.0)), None);
        assert_eq!(closed_indices(c(3.0), c(0.0)), None);
    }
}
