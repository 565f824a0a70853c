use bcsums::estermann::{verify_cor45, verify_lemma41, verify_lemma42, verify_prop43, verify_thm44};
use bcsums::exact::{dedekind_reciprocity_rhs, dedekind_sum, thm13_rhs, verify_thm13};
use bcsums::recip::{
    verify_cor23, verify_cor33, verify_eisenstein_period, verify_thm11, verify_thm12, verify_thm14_mellin,
    verify_thm14_relation, verify_thm31, verify_thm32, PsiSource,
};
use bcsums::report::{complex_param, params, Report, Sides};
use bcsums::sums::RationalArg;
use bcsums::ExactScaled;
use clap::{Args, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::parse;
use crate::{CliError, Ctx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Thm11,
    Thm12,
    Thm13,
    #[value(name = "thm14-cross")]
    Thm14Cross,
    Thm31,
    Thm32,
    Cor23,
    Cor33,
    Prop43,
    Thm44,
    Cor45,
    Lemma41,
    Lemma42,
    #[value(name = "eisenstein-period")]
    EisensteinPeriod,
    #[value(name = "dedekind-recip")]
    DedekindRecip,
}

impl Theorem {
    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }

    /// Pass budget when --tolerance is not given.
    fn default_budget(self) -> f64 {
        match self {
            Theorem::Thm12 | Theorem::Cor23 | Theorem::EisensteinPeriod => 1e-8,
            Theorem::Thm11 | Theorem::Thm14Cross | Theorem::Thm31 | Theorem::Thm32 | Theorem::Cor33 => 1e-6,
            Theorem::Prop43 | Theorem::Thm44 | Theorem::Cor45 | Theorem::Lemma42 => 1e-9,
            Theorem::Lemma41 => 1e-10,
            Theorem::Thm13 | Theorem::DedekindRecip => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Polynomial,
    Mellin,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    theorem: Theorem,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    n: Vec<i64>,
    #[arg(long, value_delimiter = ',')]
    h: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    k: Vec<u64>,
    /// All coprime pairs 1 <= h, k <= this bound.
    #[arg(long)]
    hk_max: Option<u64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse::complex)]
    a: Vec<Complex64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse::complex)]
    s: Vec<Complex64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse::complex)]
    z: Vec<Complex64>,
    /// Numerators of x = p/q (default 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    p: Vec<i64>,
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    /// Cotangent moduli k₁..k_d.
    #[arg(long, value_delimiter = ',')]
    moduli: Vec<u64>,
    /// Derivative orders m₀, m₁..m_d (default all 0).
    #[arg(long, value_delimiter = ',')]
    orders: Vec<u32>,
    /// Where ψ comes from in thm11.
    #[arg(long, value_enum, default_value_t = Source::Polynomial)]
    source: Source,
    /// Shift index M of the Mellin line.
    #[arg(long = "m", allow_hyphen_values = true)]
    mellin_m: Option<i64>,
    /// Pass budget for |residual| and its error estimate.
    #[arg(long)]
    tolerance: Option<f64>,
}

type Job = Box<dyn Fn(&Ctx) -> Result<Vec<Report>, CliError> + Send + Sync>;

fn need<T: Clone>(v: &[T], name: &str, th: Theorem) -> Result<Vec<T>, CliError> {
    if v.is_empty() {
        Err(CliError::Usage(format!("{} needs --{name}", th.name())))
    } else {
        Ok(v.to_vec())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

impl VerifyArgs {
    fn pairs(&self) -> Result<Vec<(u64, u64)>, CliError> {
        if let Some(m) = self.hk_max {
            return Ok((1..=m)
                .flat_map(|h| (1..=m).map(move |k| (h, k)))
                .filter(|&(h, k)| gcd(h, k) == 1)
                .collect());
        }
        let hs = need(&self.h, "h", self.theorem)?;
        let ks = need(&self.k, "k", self.theorem)?;
        let mut out = Vec::new();
        for &h in &hs {
            for &k in &ks {
                if h == 0 || k == 0 || gcd(h, k) != 1 {
                    return Err(CliError::Usage(format!("(h, k) = ({h}, {k}) must be coprime positive integers")));
                }
                out.push((h, k));
            }
        }
        Ok(out)
    }

    fn fractions(&self) -> Result<Vec<RationalArg>, CliError> {
        let ps = if self.p.is_empty() { vec![1] } else { self.p.clone() };
        let qs = need(&self.q, "q", self.theorem)?;
        let mut out = Vec::new();
        for &q in &qs {
            if q < 2 {
                return Err(CliError::Usage(format!("--q must exceed 1, got {q}")));
            }
            for &p in &ps {
                out.push(RationalArg::new(p, q)?);
            }
        }
        Ok(out)
    }

    fn orders(&self) -> Vec<u32> {
        if self.orders.is_empty() {
            vec![0; self.moduli.len() + 1]
        } else {
            self.orders.clone()
        }
    }

    fn odd_orders(&self) -> Result<Vec<u32>, CliError> {
        need(&self.n, "n", self.theorem)?
            .into_iter()
            .map(|n| parse::u32_of(n, "n").map_err(CliError::Usage))
            .collect()
    }

    fn ints(&self, v: &[Complex64], name: &str) -> Result<Vec<u32>, CliError> {
        need(v, name, self.theorem)?
            .into_iter()
            .map(|z| parse::nonneg_int(z, name).map_err(CliError::Usage))
            .collect()
    }
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn jobs(args: &VerifyArgs, budget: f64) -> Result<Vec<Job>, CliError> {
    let th = args.theorem;
    let name = th.name();
    let mut out: Vec<Job> = Vec::new();
    let numeric = move |sides: Sides, ps| Report::numeric(&name, ps, sides, budget);
    match th {
        Theorem::Thm11 => {
            let source = match args.source {
                Source::Polynomial => PsiSource::Polynomial,
                Source::Mellin => PsiSource::Mellin { m: args.mellin_m },
            };
            let src = format!("{:?}", args.source).to_lowercase();
            for a in need(&args.a, "a", th)? {
                for (h, k) in args.pairs()? {
                    let (numeric, src) = (numeric.clone(), src.clone());
                    out.push(Box::new(move |c| {
                        let sides = verify_thm11(a, h, k, source, &c.quad)?;
                        let ps = params([("a", complex_param(a)), ("h", h.to_string()), ("k", k.to_string()), ("source", src.clone())]);
                        Ok(vec![numeric(sides, ps)])
                    }));
                }
            }
        }
        Theorem::Thm12 => {
            for a in need(&args.a, "a", th)? {
                for (h, k) in args.pairs()? {
                    let numeric = numeric.clone();
                    out.push(Box::new(move |c| {
                        let sides = verify_thm12(a, h, k, &c.quad)?;
                        Ok(vec![numeric(sides, params([("a", complex_param(a)), ("h", h.to_string()), ("k", k.to_string())]))])
                    }));
                }
            }
        }
        Theorem::Thm13 => {
            for n in args.odd_orders()? {
                for (h, k) in args.pairs()? {
                    out.push(Box::new(move |_| {
                        let rhs = thm13_rhs(n, h, k)?;
                        let lhs = verify_thm13(n, h, k)?.checked_add(&rhs)?;
                        Ok(vec![Report::exact("thm13", params([("n", n.to_string()), ("h", h.to_string()), ("k", k.to_string())]), &lhs, &rhs)])
                    }));
                }
            }
        }
        Theorem::DedekindRecip => {
            for (h, k) in args.pairs()? {
                out.push(Box::new(move |_| {
                    let lhs = ExactScaled::from_rational(dedekind_sum(h, k)? + dedekind_sum(k, h)?);
                    let rhs = ExactScaled::from_rational(dedekind_reciprocity_rhs(h, k));
                    Ok(vec![Report::exact("dedekind-recip", params([("h", h), ("k", k)]), &lhs, &rhs)])
                }));
            }
        }
        Theorem::Thm14Cross => {
            let zs = if args.z.is_empty() { vec![Complex64::new(1.0, 0.0)] } else { args.z.clone() };
            let m = args.mellin_m;
            for n in args.odd_orders()? {
                for &z in &zs {
                    let numeric = numeric.clone();
                    out.push(Box::new(move |c| {
                        let p = |route: &str| params([("n", n.to_string()), ("z", complex_param(z)), ("route", route.to_string())]);
                        let rel = verify_thm14_relation(n, z, &c.precision)?;
                        let mel = verify_thm14_mellin(n, z, m, &c.quad)?;
                        Ok(vec![numeric(rel, p("relation")), numeric(mel, p("mellin"))])
                    }));
                }
            }
        }
        Theorem::Thm31 | Theorem::Thm32 | Theorem::Cor33 => {
            let moduli = need(&args.moduli, "moduli", th)?;
            let orders = args.orders();
            let base = vec![("moduli", list(&moduli)), ("orders", list(&orders))];
            if th == Theorem::Thm31 {
                for a in need(&args.a, "a", th)? {
                    let (numeric, moduli, orders, base) = (numeric.clone(), moduli.clone(), orders.clone(), base.clone());
                    out.push(Box::new(move |c| {
                        let sides = verify_thm31(a, &moduli, &orders, &c.quad)?;
                        let mut ps = params(base.clone());
                        ps.insert("a".into(), complex_param(a));
                        Ok(vec![numeric(sides, ps)])
                    }));
                }
            } else {
                for n in args.odd_orders()? {
                    let (numeric, moduli, orders, base) = (numeric.clone(), moduli.clone(), orders.clone(), base.clone());
                    out.push(Box::new(move |c| {
                        let sides = if th == Theorem::Thm32 {
                            verify_thm32(n, &moduli, &orders, &c.precision)?
                        } else {
                            verify_cor33(n, &moduli, &orders, &c.quad)?
                        };
                        let mut ps = params(base.clone());
                        ps.insert("n".into(), n.to_string());
                        Ok(vec![numeric(sides, ps)])
                    }));
                }
            }
        }
        Theorem::Cor23 => {
            for n in args.odd_orders()? {
                for (h, k) in args.pairs()? {
                    let numeric = numeric.clone();
                    out.push(Box::new(move |c| {
                        let sides = verify_cor23(n, h, k, &c.quad)?;
                        Ok(vec![numeric(sides, params([("n", n.to_string()), ("h", h.to_string()), ("k", k.to_string())]))])
                    }));
                }
            }
        }
        Theorem::Prop43 => {
            let ss = need(&args.s, "s", th)?;
            let as_ = need(&args.a, "a", th)?;
            for x in args.fractions()? {
                for &s in &ss {
                    for &a in &as_ {
                        let numeric = numeric.clone();
                        out.push(Box::new(move |c| {
                            let [first, second] = verify_prop43(s, x, a, &c.precision)?;
                            let p = |d: &str| params([("s", complex_param(s)), ("a", complex_param(a)), ("x", x.to_string()), ("display", d.to_string())]);
                            Ok(vec![numeric(first, p("1")), numeric(second, p("2"))])
                        }));
                    }
                }
            }
        }
        Theorem::Thm44 | Theorem::Cor45 => {
            let as_ = args.ints(&args.a, "a")?;
            let ks = need(&args.k, "k", th)?;
            for x in args.fractions()? {
                for &a in &as_ {
                    for &k in &ks {
                        let k = u32::try_from(k).map_err(|_| CliError::Usage(format!("--k too large: {k}")))?;
                        let numeric = numeric.clone();
                        out.push(Box::new(move |c| {
                            let sides = if th == Theorem::Thm44 {
                                verify_thm44(k, x, a, &c.precision)?
                            } else {
                                verify_cor45(a, k, x, &c.precision)?
                            };
                            Ok(vec![numeric(sides, params([("a", a.to_string()), ("k", k.to_string()), ("x", x.to_string())]))])
                        }));
                    }
                }
            }
        }
        Theorem::Lemma41 => {
            let ks = need(&args.k, "k", th)?;
            for x in args.fractions()? {
                for &k in &ks {
                    let k = u32::try_from(k).map_err(|_| CliError::Usage(format!("--k too large: {k}")))?;
                    let numeric = numeric.clone();
                    out.push(Box::new(move |c| {
                        let sides = verify_lemma41(k, x, &c.precision)?;
                        Ok(vec![numeric(sides, params([("k", k.to_string()), ("x", x.to_string())]))])
                    }));
                }
            }
        }
        Theorem::Lemma42 => {
            let ss = need(&args.s, "s", th)?;
            let zs: Vec<f64> = need(&args.z, "z", th)?
                .into_iter()
                .map(|z| parse::real_positive(z, "z"))
                .collect::<Result<_, _>>()?;
            let ns = need(&args.n, "n", th)?;
            for x in args.fractions()? {
                for &s in &ss {
                    for &z in &zs {
                        for &n in &ns {
                            let numeric = numeric.clone();
                            out.push(Box::new(move |c| {
                                let sides = verify_lemma42(s, z, n, x, &c.precision)?;
                                let ps = params([("s", complex_param(s)), ("z", z.to_string()), ("n", n.to_string()), ("x", x.to_string())]);
                                Ok(vec![numeric(sides, ps)])
                            }));
                        }
                    }
                }
            }
        }
        Theorem::EisensteinPeriod => {
            let zs = need(&args.z, "z", th)?;
            for n in args.odd_orders()? {
                for &z in &zs {
                    let numeric = numeric.clone();
                    out.push(Box::new(move |c| {
                        let sides = verify_eisenstein_period(n, z, &c.precision)?;
                        Ok(vec![numeric(sides, params([("n", n.to_string()), ("z", complex_param(z))]))])
                    }));
                }
            }
        }
    }
    Ok(out)
}

pub fn run(args: &VerifyArgs, ctx: &Ctx) -> Result<Vec<Report>, CliError> {
    let budget = args.tolerance.unwrap_or_else(|| args.theorem.default_budget());
    if !(budget.is_finite() && budget >= 0.0) {
        return Err(CliError::Usage(format!("--tolerance must be nonnegative, got {budget}")));
    }
    let ctx = ctx.for_budget(budget.max(1e-12));
    let jobs = jobs(args, budget)?;
    let results: Vec<Result<Vec<Report>, CliError>> = jobs.par_iter().map(|j| j(&ctx)).collect();
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    Ok(reports)
}
