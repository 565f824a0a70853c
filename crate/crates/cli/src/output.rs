use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use bcsums::report::Report;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One computed quantity with the configuration that produced it.
#[derive(Debug, Serialize)]
pub struct Record {
    pub quantity: String,
    pub params: BTreeMap<String, String>,
    pub config: Value,
    pub value: Value,
    #[serde(skip)]
    pub text: String,
}

/// Rows of strings plus a structured JSON form of the same data.
#[derive(Debug)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub json: Value,
}

pub enum Output {
    Record(Record),
    Reports(Vec<Report>),
    Table(Table),
}

pub fn check_target(out: Option<&Path>, force: bool) -> Result<(), CliError> {
    if let Some(p) = out {
        if p.exists() && !force {
            return Err(CliError::Usage(format!(
                "{} exists; pass --force to overwrite",
                p.display()
            )));
        }
    }
    Ok(())
}

pub fn emit(output: &Output, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let body = render(output, format)?;
    match out {
        Some(p) => fs::write(p, body).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Io("stdout".into(), e)),
    }
}

pub fn render(output: &Output, format: Format) -> Result<String, CliError> {
    let s = match (output, format) {
        (Output::Record(r), Format::Json) => pretty(r)?,
        (Output::Record(r), Format::Csv) => {
            let mut flat = Vec::new();
            flatten("", &serde_json::to_value(r).map_err(json_err)?, &mut flat);
            csv_string(&["field".into(), "value".into()], flat.into_iter().map(|(k, v)| vec![k, v]))?
        }
        (Output::Record(r), Format::Text) => format!("{}\n", r.text),
        (Output::Reports(rs), Format::Json) => {
            let mut s = String::new();
            for r in rs {
                s += &serde_json::to_string(r).map_err(json_err)?;
                s.push('\n');
            }
            s
        }
        (Output::Reports(rs), Format::Csv) => {
            let columns = [
                "theorem", "params", "lhs_re", "lhs_im", "lhs_abs_err", "rhs_re", "rhs_im",
                "rhs_abs_err", "residual_re", "residual_im", "residual_abs_err", "budget", "pass",
            ];
            let rows = rs.iter().map(|r| {
                let mut row = vec![r.theorem.clone(), joined_params(r)];
                for v in [&r.lhs, &r.rhs, &r.residual] {
                    let j = serde_json::to_value(v).unwrap_or(Value::Null);
                    for key in ["re", "im", "abs_err"] {
                        row.push(j[key].as_str().unwrap_or_default().to_string());
                    }
                }
                row.push(r.budget.clone());
                row.push(r.pass.to_string());
                row
            });
            csv_string(&columns.map(String::from), rows)?
        }
        (Output::Reports(rs), Format::Text) => rs
            .iter()
            .map(|r| {
                format!(
                    "{} {} {} |residual| = {} (+/- {}), budget {}\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.theorem,
                    joined_params(r),
                    bcsums::specfn::render(r.residual.norm()),
                    bcsums::specfn::render(r.residual.abs_err()),
                    r.budget
                )
            })
            .collect(),
        (Output::Table(t), Format::Json) => pretty(&t.json)?,
        (Output::Table(t), Format::Csv) => csv_string(&t.columns, t.rows.iter().cloned())?,
        (Output::Table(t), Format::Text) => {
            let mut s = String::new();
            if !t.rows.is_empty() {
                s += &t.columns.join("\t");
                s.push('\n');
            }
            for row in &t.rows {
                s += &row.join("\t");
                s.push('\n');
            }
            s
        }
    };
    Ok(s)
}

fn joined_params(r: &Report) -> String {
    r.params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn pretty<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(json_err)?;
    s.push('\n');
    Ok(s)
}

fn json_err(e: serde_json::Error) -> CliError {
    CliError::Usage(format!("serialization failed: {e}"))
}

fn csv_string<I>(columns: &[String], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::Usage(format!("csv output failed: {e}"));
    w.write_record(columns).map_err(err)?;
    for row in rows {
        w.write_record(&row).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Usage(format!("csv output failed: {e}")))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

// Leaves of a JSON value keyed by dotted paths, in document order.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flatten_paths() {
        let mut out = Vec::new();
        flatten("", &json!({"a": {"b": "1", "c": [2, null]}, "d": true}), &mut out);
        let keys: Vec<_> = out.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, ["a.b", "a.c.0", "a.c.1", "d"]);
        assert_eq!(out[1].1, "2");
    }

    #[test]
    fn empty_table_renders_header_only_in_csv() {
        let t = Output::Table(Table { columns: vec!["n".into()], rows: vec![], json: json!([]) });
        assert_eq!(render(&t, Format::Csv).unwrap(), "n\n");
        assert_eq!(render(&t, Format::Json).unwrap(), "[]\n");
        assert_eq!(render(&t, Format::Text).unwrap(), "");
    }
}
