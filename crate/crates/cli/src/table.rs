use bcsums::exact::{g_polynomial, psi_polynomial, thm13_rhs, PeriodPolynomial};
use bcsums::ExactScaled;
use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use crate::output::Table;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Coefficients of ψ₋ₙ.
    Psi,
    /// Coefficients of g₋ₙ.
    G,
    /// Right-hand sides of the odd-order reciprocity law.
    Thm13,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    kind: Kind,
    /// Explicit list of odd orders; overrides the range.
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    #[arg(long, default_value_t = 3)]
    n_min: u32,
    #[arg(long, default_value_t = 9)]
    n_max: u32,
    /// Coprime pairs 1 <= h, k <= this bound (thm13 only).
    #[arg(long, default_value_t = 5)]
    hk_max: u64,
}

fn orders(args: &TableArgs) -> Vec<u32> {
    if !args.n.is_empty() {
        return args.n.clone();
    }
    (args.n_min.max(3)..=args.n_max).filter(|n| n % 2 == 1).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

// Every coefficient shares one power of π and of i, so a row stores those once.
fn polynomial_row(n: u32, p: &PeriodPolynomial) -> Result<Vec<String>, CliError> {
    let coeffs = p.coefficients();
    let (lo, hi) = match (coeffs.keys().next(), coeffs.keys().next_back()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Ok(vec![n.to_string(), p.zeta_weight().to_string(), "0".into(), "0".into(), "0".into(), String::new()]),
    };
    let first = &coeffs[&lo];
    let (pi, i) = (first.pi_power(), first.i_power());
    let mut cells = Vec::new();
    for e in lo..=hi {
        let c = p.coeff(e);
        if c.is_zero() {
            cells.push("0".to_string());
        } else if c.pi_power() != pi || c.i_power() != i {
            return Err(CliError::Lib(bcsums::Error::UnlikeTerms(format!("coefficient of z^{e} in order {n}"))));
        } else {
            cells.push(c.coeff().to_string());
        }
    }
    Ok(vec![
        n.to_string(),
        p.zeta_weight().to_string(),
        pi.to_string(),
        i.to_string(),
        lo.to_string(),
        cells.join(";"),
    ])
}

fn exact_cells(v: &ExactScaled) -> [String; 4] {
    [
        v.coeff().numer().to_string(),
        v.coeff().denom().to_string(),
        v.pi_power().to_string(),
        v.i_power().to_string(),
    ]
}

pub fn run(args: &TableArgs) -> Result<Table, CliError> {
    let ns = orders(args);
    match args.kind {
        Kind::Psi | Kind::G => {
            let mut rows = Vec::new();
            let mut json = Vec::new();
            for n in ns {
                let p = if args.kind == Kind::Psi { psi_polynomial(n)? } else { g_polynomial(n)? };
                rows.push(polynomial_row(n, &p)?);
                json.push(json!({ "n": n, "polynomial": serde_json::to_value(&p).unwrap_or(Value::Null) }));
            }
            Ok(Table {
                columns: ["n", "zeta_weight", "pi_pow", "i_pow", "lowest_exponent", "coefficients"]
                    .map(String::from)
                    .to_vec(),
                rows,
                json: Value::Array(json),
            })
        }
        Kind::Thm13 => {
            let mut rows = Vec::new();
            let mut json = Vec::new();
            for n in ns {
                for h in 1..=args.hk_max {
                    for k in (1..=args.hk_max).filter(|&k| gcd(h, k) == 1) {
                        let rhs = thm13_rhs(n, h, k)?;
                        let mut row = vec![n.to_string(), h.to_string(), k.to_string()];
                        row.extend(exact_cells(&rhs));
                        rows.push(row);
                        json.push(json!({ "n": n, "h": h, "k": k, "rhs": serde_json::to_value(&rhs).unwrap_or(Value::Null) }));
                    }
                }
            }
            Ok(Table {
                columns: ["n", "h", "k", "num", "den", "pi_pow", "i_pow"].map(String::from).to_vec(),
                rows,
                json: Value::Array(json),
            })
        }
    }
}
