use std::process::{Command, Output};

use serde_json::Value;

fn ordcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordcalc"))
        .args(args)
        .output()
        .expect("run ordcalc")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn analyze_l() {
    let out = ordcalc(&["analyze", "L"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    let a = &v["result"]["attrs"];
    assert_eq!(a["weakly_kappa_dense"], true);
    assert_eq!(a["wf_kappa"], true);
    assert_eq!(a["hier"]["in_h"], true);
}

#[test]
fn hausdorff_rank_of_omega_squared() {
    let out = ordcalc(&["rank", "--kind", "hausdorff", "ord(w^2)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["rank"]["cnf"], "2");
}

#[test]
fn antichain_rank_of_finite_poset() {
    let out = ordcalc(&["rank", "--kind", "antichain", "fin(3; 0<1)"]);
    let v = json(&out);
    assert_eq!(v["result"]["exact"], true);
    assert_eq!(v["result"]["rank"]["cnf"], "2");
}

#[test]
fn check_all_passes() {
    let out = ordcalc(&["check", "all"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["result"]["passed"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ordcalc(&["analyze", "sum(w"]).status.code(), Some(2));
    assert_eq!(
        ordcalc(&["rank", "--kind", "hausdorff", "Q"]).status.code(),
        Some(2)
    );
    assert_eq!(ordcalc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ordcalc(&["check", "nonsense"]).status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let commands: [&[&str]; 5] = [
        &[
            "sample",
            "lsum(fin(3; 0<1, 0<2); w, k*, Q)",
            "-n",
            "16",
            "--seed",
            "42",
        ],
        &["gen-dense", "--rounds", "3", "--bound", "2", "--seed", "9"],
        &["analyze", "non_fac"],
        &["condense", "--mode", "h", "sum(Q, k)"],
        &["examples"],
    ];
    for args in commands {
        let (a, b) = (ordcalc(args), ordcalc(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn dot_output_and_config() {
    let dir = std::env::temp_dir().join(format!("ordcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("s.dot");
    let cfg = dir.join("caps.conf");
    std::fs::write(&cfg, "# caps\nsample_width = 8\nkappa = w^3\n").unwrap();
    let out = ordcalc(&[
        "sample",
        "k",
        "-n",
        "5",
        "--config",
        cfg.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["instantiation"]["kappa"], "w^3");
    assert!(std::fs::read_to_string(&dot)
        .unwrap()
        .starts_with("digraph"));
    std::fs::write(&cfg, "kappa = 5\n").unwrap();
    assert_eq!(
        ordcalc(&["examples", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
