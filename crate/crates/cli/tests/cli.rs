use std::process::{Command, Output};

use serde_json::Value;

fn bertrand(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bertrand")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn records(out: &Output) -> Vec<Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).expect("one JSON record per line")).collect()
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} missing in {v}"))
}

#[test]
fn payoff_examples() {
    let out = bertrand(&["payoff", "--model", "ldm", "-a", "10", "-c", "2", "--gamma", "0.6931", "--x1", "0", "--x2", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert!((num(r, "u1") - 16.0).abs() < 1e-6);
    assert_eq!(num(r, "u2"), 0.0);

    let out = bertrand(&["payoff", "--model", "classical", "-a", "10", "-c", "2", "--x1", "2", "--x2", "2"]);
    let r = &records(&out)[0];
    assert_eq!((num(r, "u1"), num(r, "u2")), (0.0, 0.0));

    let out = bertrand(&["payoff", "--model", "two-qubit", "--gamma", "0.7854", "-a", "10", "-c", "2", "--x1", "4", "--x2", "8"]);
    let r = &records(&out)[0];
    assert_eq!((num(r, "u1"), num(r, "u2")), (8.0, 8.0));
}

#[test]
fn best_reply_examples() {
    let base = ["best-reply", "--model", "ldm", "--gamma", "0.6931", "-a", "10", "-c", "2", "--player", "1", "--opp"];
    let run = |opp: &str| {
        let mut args = base.to_vec();
        args.extend([opp, "--oracle"]);
        let out = bertrand(&args);
        assert_eq!(out.status.code(), Some(0));
        records(&out).remove(0)
    };
    let r = run("4");
    assert_eq!(r["variant"], "Point");
    assert!((num(&r, "value") - 2.4).abs() < 1e-3);
    assert_eq!(r["oracle_agrees"], true);
    assert_eq!(run("2")["variant"], "Empty");
    assert_eq!(run("14")["variant"], "Full");
}

#[test]
fn equilibria_commands() {
    let out = bertrand(&["equilibria", "list", "--model", "ldm", "--gamma", "0.6931", "-a", "10", "-c", "2"]);
    assert_eq!(records(&out).len(), 8);

    let out = bertrand(&["equilibria", "list", "--model", "classical", "-a", "10", "-c", "2"]);
    let rows = records(&out);
    assert_eq!(rows.len(), 1);
    assert_eq!((num(&rows[0], "start_x1"), num(&rows[0], "start_x2")), (2.0, 2.0));

    let out = bertrand(&["equilibria", "verify", "--model", "two-qubit", "--gamma", "0.5236", "-a", "10", "-c", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(records(&out).iter().all(|r| r["nash"] == true && r["payoff_agrees"] == true));

    let out = bertrand(&["equilibria", "search", "--model", "classical", "--x-max", "20", "--h", "0.5", "--epsilon", "0.1"]);
    let rows = records(&out);
    assert_eq!(rows[0]["kind"], "metadata");
    assert_eq!(num(&rows[0], "h"), 0.5);
    assert_eq!(rows[0]["count"].as_u64().unwrap() as usize, rows.len() - 1);
    assert!(rows[1..].iter().any(|r| num(r, "x1") == 2.0 && num(r, "x2") == 2.0));
}

#[test]
fn plot_data_csv() {
    let out = bertrand(&["plot-data", "--model", "ldm", "--gamma", "ln2", "--format", "csv"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,player,opp,variant,value"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.iter().filter(|l| l.starts_with("sample,")).count(), 2000);
    let bps: Vec<f64> = rows
        .iter()
        .filter(|l| l.starts_with("breakpoint,"))
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(bps.len(), 4);
    for (got, want) in bps.iter().zip([1.0, 3.0, 8.0, 40.0 / 3.0]) {
        assert!((got - want).abs() <= 1e-9, "{got} {want}");
    }
}

#[test]
fn verify_quantum_exit_codes() {
    let qubit = bertrand(&["verify-quantum", "--model", "two-qubit"]);
    assert_eq!(qubit.status.code(), Some(0));
    assert_eq!(records(&qubit).len(), 202);

    let coarse = bertrand(&["verify-quantum", "--model", "ldm", "-N", "4"]);
    assert_eq!(coarse.status.code(), Some(1));
    let fine = bertrand(&["verify-quantum", "--model", "ldm", "--gamma", "0.5", "-N", "32"]);
    assert_eq!(fine.status.code(), Some(0));
    let err = |o: &Output| num(records(o).last().unwrap(), "error");
    assert!(err(&coarse) > err(&fine));
    assert!(err(&fine) <= 1e-6);

    assert_eq!(bertrand(&["verify-quantum", "--model", "ldm", "--gamma", "0.9"]).status.code(), Some(2));
    assert_eq!(bertrand(&["verify-quantum", "--model", "classical"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["payoff", "-a", "1", "-c", "5", "--x1", "1", "--x2", "1"][..],
        &["payoff", "--x1", "-1", "--x2", "1"],
        &["payoff", "--x1", "1"],
        &["payoff", "--model", "two-qubit", "--gamma", "1.0", "--x1", "1", "--x2", "1"],
        &["best-reply", "--player", "3", "--opp", "1"],
        &["equilibria", "search", "--h", "-0.1"],
        &["equilibria", "search", "--epsilon", "0"],
        &["payoff", "--gamma", "tau", "--x1", "1", "--x2", "1"],
        &["frobnicate"],
    ] {
        let out = bertrand(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let args = ["equilibria", "list", "--model", "two-qubit", "--gamma", "pi/6"];
    let a = bertrand(&args);
    let b = bertrand(&args);
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), line);
    }
    let q1 = bertrand(&["verify-quantum", "--model", "two-qubit", "--format", "csv"]);
    let q2 = bertrand(&["verify-quantum", "--model", "two-qubit", "--format", "csv"]);
    assert_eq!(q1.stdout, q2.stdout);
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("bertrand-cli-test-{}.csv", std::process::id()));
    let out = bertrand(&["payoff", "--x1", "4", "--x2", "6", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text, "model,a,c,gamma,x1,x2,p1,p2,u1,u2\nclassical,10.0,2.0,0.0,4.0,6.0,4.0,6.0,12.0,0.0\n");
}
