use std::process::Command;

use gradpi_cli::{emit_report, parse_scenario, print_scenario, run_text, Format, RunOptions, Verdict, SCHEMA, SHIPPED};
use gradpi_core::par::Mode;
use serde_json::Value;

fn shipped(name: &str) -> &'static str {
    SHIPPED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).unwrap()
}

/// JSON report with timings zeroed.
fn normalized(name: &str, text: &str, opts: &RunOptions) -> Value {
    let report = run_text(name, text, opts).unwrap();
    let mut v: Value = serde_json::from_str(&emit_report(&report, Format::Json)).unwrap();
    for r in v["records"].as_array_mut().unwrap() {
        r["wall_time_ms"] = Value::from(0);
    }
    v
}

#[test]
fn a4_matches_golden() {
    let got = normalized("a4.scenario", shipped("a4"), &RunOptions::default());
    let golden: Value = serde_json::from_str(include_str!("golden/a4.json")).unwrap();
    assert_eq!(got, golden);
    assert_eq!(got["summary"]["holds"], 7);
}

#[test]
fn shipped_scenarios_round_trip() {
    for (name, text) in SHIPPED {
        let sc = parse_scenario(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print_scenario(&sc);
        let again = parse_scenario(&printed).unwrap_or_else(|e| panic!("{name} reprinted: {e}"));
        assert_eq!(sc, again, "{name}");
        assert_eq!(printed, print_scenario(&again), "{name}");
    }
}

#[test]
fn shipped_scenarios_all_hold() {
    for (name, text) in SHIPPED {
        let report = run_text(name, text, &RunOptions::default()).unwrap();
        for r in &report.records {
            assert_eq!(r.verdict, Verdict::Holds, "{name}/{}: {}", r.id, r.detail);
        }
        assert!(report.success());
    }
}

#[test]
fn output_is_deterministic_across_runs_and_modes() {
    let seq = RunOptions {
        mode: Mode::Sequential,
        ..RunOptions::default()
    };
    for name in ["a4", "embeddings"] {
        let a = normalized(name, shipped(name), &RunOptions::default());
        let b = normalized(name, shipped(name), &RunOptions::default());
        let c = normalized(name, shipped(name), &seq);
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(a.to_string(), c.to_string());
    }
}

#[test]
fn zero_exponent_main_bound_fails() {
    let text = "\
[group A4]
kind = alternating 4

[algebra FA4]
kind = group_algebra A4

[check k0]
kind = main_bound
group = A4
algebra = FA4
k = 0
";
    let report = run_text("k0", text, &RunOptions::default()).unwrap();
    let r = &report.records[0];
    assert_eq!(r.verdict, Verdict::Fails);
    assert_eq!(r.lhs, Value::from(3));
    assert_eq!(r.rhs, Value::from(1));
    assert!(!report.success());
}

#[test]
fn undefined_cocycle_is_positioned() {
    let text = "[group G]\nkind = cyclic 4\n\n[algebra T]\nkind = twisted nope\n";
    let e = parse_scenario(text).unwrap_err();
    assert_eq!(e.line, 5);
    assert!(e.message.contains("nope"), "{}", e.message);
}

#[test]
fn empty_scenario_reports_nothing() {
    let v = normalized("empty", "# nothing here\n", &RunOptions::default());
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["records"], Value::Array(vec![]));
    assert_eq!(v["summary"]["holds"], 0);
}

#[test]
fn seed_is_recorded() {
    let opts = RunOptions {
        seed: 17,
        ..RunOptions::default()
    };
    let v = normalized("a4", shipped("a4"), &opts);
    assert_eq!(v["seed"], 17);
}

fn gradpi(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gradpi")).args(args).output().unwrap()
}

fn write_tmp(name: &str, text: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("gradpi-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn binary_exit_codes() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let ok = gradpi(&["run", &format!("{dir}/scenarios/a4.scenario")]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["summary"]["holds"], 7);

    let failing = write_tmp(
        "fail.scenario",
        "[group A4]\nkind = alternating 4\n[algebra F]\nkind = group_algebra A4\n[check]\nkind = main_bound\ngroup = A4\nalgebra = F\nk = 0\n",
    );
    assert_eq!(gradpi(&["run", failing.to_str().unwrap()]).status.code(), Some(1));

    let broken = write_tmp("broken.scenario", "[group G]\nkind = frobnicate 3\n");
    let out = gradpi(&["run", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(gradpi(&["validate", broken.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(gradpi(&["run", "/nonexistent/x.scenario"]).status.code(), Some(2));
    assert_eq!(gradpi(&["--threads", "1", "catalog"]).status.code(), Some(0));

    let _ = std::fs::remove_file(failing);
    let _ = std::fs::remove_file(broken);
}

#[test]
fn derived_algebra_errors_are_positioned() {
    let base = "[group G]\nkind = cyclic 4\n\n[algebra F]\nkind = group_algebra G\n\n";
    let tensor = format!("{base}[algebra FF]\nkind = tensor_trivial F F\n");
    let e = run_text("t", &tensor, &RunOptions::default()).unwrap_err();
    assert!(e.to_string().contains("line 7"), "{e}");

    let quotient = format!("{base}[algebra Q]\nkind = quotient_grading F\nnormal = gen 2\n");
    let report = run_text("q", &quotient, &RunOptions::default()).unwrap();
    assert!(report.records.is_empty());
    let missing = format!("{base}[algebra Q]\nkind = quotient_grading F\n");
    assert!(parse_scenario(&missing).is_err());
}

#[test]
fn per_check_budget_skips_instead_of_deciding() {
    let text = "\
[algebra M2]
kind = matrix 2

[check tight]
kind = invariants
algebra = M2
quantity = codimensions
n = 3
expect = 1 2 6
budget = 10

[check roomy]
kind = invariants
algebra = M2
quantity = codimensions
n = 3
expect = 1 2 6
";
    let report = run_text("b", text, &RunOptions::default()).unwrap();
    assert_eq!(report.records[0].verdict, Verdict::SkippedBudget);
    assert_eq!(report.records[0].lhs, Value::Null);
    assert_eq!(report.records[0].inputs["budget"], "10");
    assert_eq!(report.records[1].verdict, Verdict::Holds);
    assert!(report.success());
    assert_eq!(report.summary.skipped, 1);
}

#[test]
fn gamma_reports_least_abelian_index() {
    let text = "[group G]\nkind = cyclic 2\n\n[check]\nkind = gamma\ngroup = G\n\n[group S]\nkind = symmetric 3\n\n[check]\nkind = gamma\ngroup = S\nexpect = 3\n";
    let report = run_text("g", text, &RunOptions::default()).unwrap();
    assert_eq!(report.records[0].lhs, Value::from(1));
    assert_eq!(report.records[0].verdict, Verdict::Holds);
    assert_eq!(report.records[1].lhs, Value::from(2));
    assert_eq!(report.records[1].verdict, Verdict::Fails);
}
