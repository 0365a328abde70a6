use std::io::Write;
use std::process::{Command, Output, Stdio};

fn sf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sf"))
        .args(args)
        .output()
        .expect("sf runs")
}

fn sf_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sf"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("sf runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = sf(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o).trim_end().to_string()
}

#[test]
fn poly_routes() {
    for route in ["ap", "exc-cyc", "egf"] {
        assert_eq!(
            ok(&["poly", "--n", "3", "--k", "2", "--which", "A", "--route", route]),
            "[1,10,4]"
        );
    }
    assert_eq!(ok(&["poly", "--n", "3", "--k", "2", "--which", "a"]), "[1,7,1]");
    assert_eq!(ok(&["poly", "--n", "3", "--k", "2", "--which", "b"]), "[3,3]");
    assert_eq!(
        ok(&["poly", "--n", "4", "--k", "3", "--which", "c", "--route", "ap"]),
        "[0,27,108,27]"
    );
    assert_eq!(
        ok(&["poly", "--n", "3", "--k", "2", "--which", "A", "--pretty"]),
        "1 + 10x + 4x^2"
    );
}

#[test]
fn poly_routes_agree_in_guard() {
    for k in 1..=3 {
        for n in 0..=5 {
            let (n, k) = (n.to_string(), k.to_string());
            let a = ok(&["poly", "--n", &n, "--k", &k, "--which", "A", "--route", "ap"]);
            for route in ["exc-cyc", "egf"] {
                let b = ok(&["poly", "--n", &n, "--k", &k, "--which", "A", "--route", route]);
                assert_eq!(a, b, "n={n} k={k} route={route}");
            }
        }
    }
}

#[test]
fn gamma_outputs() {
    assert_eq!(
        ok(&["gamma", "--n", "3", "--k", "2", "--which", "a"]),
        r#"{"center":2,"gamma":[1,5]}"#
    );
    for by in ["census", "decomposition"] {
        assert_eq!(
            ok(&["gamma", "--n", "3", "--k", "2", "--which", "b", "--by", by]),
            r#"{"center":3,"gamma":[0,3]}"#
        );
        assert_eq!(
            ok(&["gamma", "--n", "4", "--k", "3", "--which", "c", "--by", by]),
            r#"{"center":4,"gamma":[0,27,54]}"#
        );
    }
}

#[test]
fn map_examples() {
    assert_eq!(
        ok(&["map", "--name", "psi", "--k", "3", "--x", "2", "--input", "1[3;;7] 2 4[;;6] 5 8"]),
        "1[3;;7] 2[;;4[;;6],5] 8"
    );
    assert_eq!(
        ok(&["map", "--name", "phi", "--k", "3", "--x", "4", "--input", "1[3,4[5,10;6[;9;],8;7];;2]"]),
        "1[3,4,5,10;6[;9;],8;2,7]"
    );
    assert_eq!(
        ok(&["map", "--name", "phi-set", "--k", "3", "--set", "3,5", "--input", "1[;3[;7;];2] 4[;;5[;6,8;]] 9"]),
        "1[;3,7;2] 4[;6,8;5] 9"
    );
    assert_eq!(
        ok(&["map", "--name", "gamma", "--k", "3", "--input", "1 2[;5;] 3 4[;;7] 6 8[;9,10;] | {1,3}"]),
        "1[;9,10;2[;5;],3[;;4[;;7],6],8]"
    );
    assert_eq!(
        ok(&["map", "--name", "beta", "--k", "3", "--input", "1[;4,7;2[;5;],3,6[;8;]]"]),
        "1 2[;5;] 3[;4,7;6[;8;]] | {1}"
    );
    assert_eq!(
        ok(&["map", "--name", "theta", "--k", "2", "--set", "2", "--input", "1[2[3;];]"]),
        "1[2,3;] | {}"
    );
}

#[test]
fn maps_undo_each_other_verbatim() {
    let pairs: [(&str, &str, &str, &str); 5] = [
        ("xi", "xi-inv", "3", "133377711446664225552888"),
        ("zeta", "zeta-inv", "3", "888244666422555113337771"),
        ("chi", "chi-inv", "3", "244666422555"),
        ("theta", "theta-prime", "2", "1[2[3;];] | {2}"),
        ("gamma-prime", "gamma", "3", "1[;4,7;2[;5;],3,6[;8;]]"),
    ];
    for (there, back, k, input) in pairs {
        let mid = ok(&["map", "--name", there, "--k", k, "--input", input]);
        assert_eq!(ok(&["map", "--name", back, "--k", k, "--input", &mid]), input, "{there}");
    }
    let mid = ok(&["map", "--name", "psi", "--k", "3", "--x", "2", "--input", "1[3;;7] 2 4[;;9] 5[;8;6]"]);
    assert_eq!(
        ok(&["map", "--name", "psi", "--k", "3", "--x", "5", "--input", &mid]),
        "1[3;;7] 2 4[;;9] 5[;8;6]"
    );
    let mid = ok(&["map", "--name", "alpha", "--k", "2", "--input", "1 2 3 | {1}"]);
    assert_eq!(ok(&["map", "--name", "beta", "--k", "2", "--input", &mid]), "1 2 3 | {1}");
}

#[test]
fn stdin_pipes() {
    let o = sf_stdin(&["map", "--name", "xi-inv", "--k", "2", "--input", "-"], "1 2\n");
    assert_eq!(stdout(&o), "1122\n");
}

#[test]
fn stats_records() {
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["stats", "--k", "3", "--input", "1[;3,7;] 2[4[;;6];;5] 8"])).unwrap();
    assert_eq!(v["kind"], "forest");
    assert_eq!(v["lleaf"], 5);
    assert_eq!(v["si"], 1);
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["stats", "--k", "3", "--input", "888244666422555113337771"])).unwrap();
    assert_eq!(v["kind"], "word");
    assert_eq!(v["ap"], 4);
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["stats", "--k", "1", "--input", "1", "--kind", "forest"])).unwrap();
    assert_eq!(v["si"], 1);
}

#[test]
fn enumerate_lists() {
    assert_eq!(
        ok(&["enumerate", "--n", "2", "--k", "2", "--kind", "perms"]),
        "1122\n1221\n2211"
    );
    let bar = ok(&["enumerate", "--n", "3", "--k", "2", "--kind", "forests", "--filter", "bar"]);
    assert_eq!(bar.lines().count(), 9);
    let hat = ok(&["enumerate", "--n", "3", "--k", "2", "--kind", "forests", "--filter", "hat"]);
    assert_eq!(hat.lines().count(), 6);
    let some = ok(&["enumerate", "--n", "4", "--k", "2", "--kind", "perms", "--limit", "5"]);
    assert_eq!(some.lines().count(), 5);
    let tilde = ok(&["enumerate", "--n", "3", "--k", "3", "--kind", "perms", "--filter", "tilde"]);
    assert_eq!(tilde.lines().count(), 18);
    let json = ok(&["enumerate", "--n", "1", "--k", "2", "--kind", "forests", "--format", "json"]);
    assert_eq!(json, r#"{"k":2,"trees":[{"label":1}]}"#);
}

#[test]
fn verify_json_and_exit() {
    let o = sf(&["verify", "--n-max", "3", "--k-max", "2", "--suite", "theorems", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|v| v["pass"] == true && v.get("witness").is_none()));
    let bar = lines
        .iter()
        .find(|v| v["identity"] == "theorems.bar-vs-decomposition" && v["n"] == 3 && v["k"] == 2)
        .unwrap();
    assert_eq!(bar["left"], serde_json::json!([1, 7, 1]));
    let text = ok(&["verify", "--n-max", "2", "--k-max", "2", "--suite", "gfs,pipeline"]);
    assert!(text.ends_with("0 failed"));
    let vacuous = ok(&["verify", "--n-max", "0", "--k-max", "3", "--suite", "bijections"]);
    assert_eq!(vacuous, "0 reports, 0 failed");
}

#[test]
fn usage_and_input_errors_exit_2() {
    let cases: [&[&str]; 6] = [
        &["poly", "--n", "3", "--k", "2", "--which", "Q"],
        &["poly", "--n", "3", "--k", "2", "--which", "A", "--bogus"],
        &["poly", "--n", "3", "--k", "2", "--which", "c", "--route", "egf"],
        &["map", "--name", "psi", "--k", "3", "--input", "1 2"],
        &["map", "--name", "xi-inv", "--k", "2", "--input", "2[;3] 1"],
        &["--max-objects", "10", "enumerate", "--n", "5", "--k", "2", "--kind", "perms"],
    ];
    for args in cases {
        let o = sf(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = sf(&["poly", "--n", "3", "--k", "2", "--which", "A", "--bogus"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--bogus"));
}
