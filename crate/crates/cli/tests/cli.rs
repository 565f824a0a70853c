use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcsums"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn reports(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn dedekind_golden_text() {
    let o = run(&["compute", "dedekind", "--h", "1", "--k", "3", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1/18\n");
}

#[test]
fn bernoulli_json_value() {
    let o = run(&["compute", "bernoulli", "--n", "4"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quantity"], "bernoulli");
    assert_eq!(v["value"], serde_json::json!({"num": "-1", "den": "30", "pi_pow": 0, "i_pow": 0}));
    assert_eq!(v["config"]["precision"]["working_digits"], 16);
}

#[test]
fn g_poly_coefficients() {
    let o = run(&["compute", "g-poly", "--n", "3"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c = &v["value"]["coefficients"];
    assert_eq!(c["1"], serde_json::json!({"num": "-1", "den": "18", "pi_pow": 3, "i_pow": 0}));
    assert_eq!(c["3"], serde_json::json!({"num": "1", "den": "90", "pi_pow": 3, "i_pow": 0}));
    assert!(c.get("2").is_none());
}

#[test]
fn thm13_sweep_is_exact() {
    let o = run(&["verify", "thm13", "--n", "3,5,7,9", "--hk-max", "20"]);
    assert_eq!(code(&o), 0);
    let rs = reports(&o);
    // 255 coprime ordered pairs in [1,20]², four orders
    assert_eq!(rs.len(), 4 * 255);
    for r in &rs {
        assert_eq!(r["pass"], true);
        assert_eq!(r["budget"], "0");
        assert_eq!(r["residual"]["re"], "0.0000000000000e0");
    }
}

#[test]
fn thm12_and_cor45_examples_pass() {
    let o = run(&["verify", "thm12", "--a", "2.5", "--h", "2", "--k", "3"]);
    assert_eq!(code(&o), 0);
    let rs = reports(&o);
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0]["theorem"], "thm12");
    assert_eq!(rs[0]["params"]["a"], "2.5");

    let o = run(&["verify", "cor45", "--a", "2", "--k", "4", "--q", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(reports(&o)[0]["pass"], true);
}

#[test]
fn report_order_follows_parameters() {
    let o = run(&["verify", "thm12", "--a", "3,2.5", "--h", "1,2", "--k", "3"]);
    assert_eq!(code(&o), 0);
    let keys: Vec<(String, String)> = reports(&o)
        .iter()
        .map(|r| (r["params"]["a"].as_str().unwrap().into(), r["params"]["h"].as_str().unwrap().into()))
        .collect();
    let want = [("3", "1"), ("3", "2"), ("2.5", "1"), ("2.5", "2")];
    assert_eq!(keys, want.map(|(a, h)| (a.to_string(), h.to_string())));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "prop43", "--s", "2,0", "--a", "3,1", "--q", "3,2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn failing_budget_exits_one() {
    let o = run(&["verify", "thm12", "--a", "2.5", "--h", "2", "--k", "3", "--tolerance", "1e-20"]);
    assert_eq!(code(&o), 1);
    assert_eq!(reports(&o)[0]["pass"], false);
}

#[test]
fn usage_and_domain_errors_exit_two() {
    assert_eq!(code(&run(&["verify", "nonsense"])), 2);
    assert_eq!(code(&run(&["verify", "thm12", "--h", "2", "--k", "3"])), 2);
    assert_eq!(code(&run(&["verify", "thm12", "--a", "2.5", "--h", "2", "--k", "4"])), 2);
    assert_eq!(code(&run(&["compute", "dedekind", "--h", "2", "--k", "4"])), 2);
    assert_eq!(code(&run(&["compute", "g-poly", "--n", "4"])), 2);
    assert_eq!(code(&run(&["verify", "thm12", "--a", "2.5", "--h", "2", "--k", "3", "--epsilon", "0.9"])), 2);
    assert_eq!(code(&run(&["compute", "bc-sum", "--a", "2", "--h", "1", "--k", "3", "--precision-digits", "30"])), 2);
    assert_eq!(code(&run(&["compute", "bc-sum", "--a", "2", "--h", "1", "--k", "3", "--quad-rule", "trapezoid"])), 2);
}

#[test]
fn csv_reports() {
    let o = run(&["verify", "lemma41", "--k", "1,2", "--q", "5", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("theorem,params,lhs_re"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn table_rows_and_empty_range() {
    let o = run(&["table", "psi", "--n", "3,5,7", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 4);

    let o = run(&["table", "g", "--n-min", "9", "--n-max", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "[]\n");
}

#[test]
fn overwrite_protection() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let p = path.to_str().unwrap();
    let first = run(&["table", "thm13", "--n", "3", "--hk-max", "3", "--format", "csv", "--out", p]);
    assert_eq!(code(&first), 0);
    let written = fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("n,h,k,num,den,pi_pow,i_pow\n"));

    let again = run(&["table", "g", "--n", "3", "--out", p]);
    assert_eq!(code(&again), 2);
    assert_eq!(fs::read_to_string(&path).unwrap(), written);

    let forced = run(&["table", "g", "--n", "3", "--out", p, "--force"]);
    assert_eq!(code(&forced), 0);
    assert!(fs::read_to_string(&path).unwrap().starts_with('['));
}

#[test]
fn estermann_routes() {
    let o = run(&["compute", "estermann", "--s", "0", "--a", "0", "--q", "2", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("2.5000000000000e-1 + 0.0000000000000e0i"));

    let hurwitz = run(&["compute", "estermann", "--s", "4", "--a", "1", "--q", "3"]);
    let series = run(&["compute", "estermann", "--s", "4", "--a", "1", "--q", "3", "--route", "series", "--target-err", "1e-9"]);
    assert_eq!(code(&hurwitz), 0);
    assert_eq!(code(&series), 0);
    let re = |o: &Output| {
        let v: Value = serde_json::from_str(&stdout(o)).unwrap();
        v["value"]["re"].as_str().unwrap().parse::<f64>().unwrap()
    };
    assert!((re(&hurwitz) - re(&series)).abs() < 1e-9);
}

#[test]
fn line_integral_matches_closed_value() {
    let o = run(&["compute", "line-integral", "--a", "3", "--moduli", "1,1"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let im: f64 = v["value"]["im"].as_str().unwrap().parse().unwrap();
    assert!((im + std::f64::consts::PI.powi(3) / 15.0).abs() < 1e-9);
}
