use std::path::Path;
use std::process::{Command, Output};

use packmech::format::{parse_instance, serialize_instance, WitnessFile};
use packmech_core::corpus::{generate, CorpusKind, CorpusSpec};

fn run(dir: &Path, args: &[&str]) -> Output {
    run_env(dir, args, None)
}

fn run_env(dir: &Path, args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_packmech"));
    cmd.args(args).current_dir(dir).env_remove("GM_SEED");
    if let Some(s) = seed {
        cmd.env("GM_SEED", s);
    }
    cmd.output().expect("run packmech")
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key:?} in\n{text}"))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn solve_reproduces_max_greedy_packing() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["counterexample", "--eps", "1/10"]).status.code(), Some(1));
    let out = run(dir.path(), &["solve", "counterexample.json", "--oracle", "maxgreedy"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert_eq!(field(&s, "bin 0"), "{0,1} (1/2,11/10) (1/2,11/10)");
    assert_eq!(field(&s, "bin 1"), "{2,3} (3/4,3/2) (1/4,1/2)");
    assert_eq!(field(&s, "value"), "21/5 (~4.200000)");
    assert_eq!(field(&s, "oracle_calls"), "2");
}

#[test]
fn solve_empty_and_fptas() {
    let dir = tempfile::tempdir().unwrap();
    let s = stdout(&run(dir.path(), &["solve", &data("empty.json")]));
    assert_eq!(field(&s, "bin 0"), "{}");
    assert_eq!(field(&s, "value"), "0 (~0.000000)");
    let out = run(dir.path(), &["solve", &data("three_items.json"), "--oracle", "fptas:1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let value = field(&stdout(&out), "value").split(' ').next().unwrap().to_string();
    let v: i64 = value.parse().unwrap();
    assert!(v >= 11, "fptas value {v}");
}

#[test]
fn solve_global_respects_budget() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "b.json",
        r#"{"bins":[{"capacity":1},{"capacity":1},{"capacity":1}],"bin_budget":1,
            "items":[{"value":3,"size":1},{"value":2,"size":1},{"value":1,"size":1}]}"#,
    );
    let s = stdout(&run(dir.path(), &["solve", &f, "--allocator", "global"]));
    assert_eq!(field(&s, "value"), "3 (~3.000000)");
    // one round tries all three bins
    assert_eq!(field(&s, "oracle_calls"), "3");
}

#[test]
fn pay_second_price_and_sole_bidder() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["pay", &data("two_bidders.json"), "--oracle", "maxvalue", "--breakpoint"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert_eq!(field(&s, "winners"), "{0}");
    assert_eq!(field(&s, "agent 0 payment"), "3 (~3.000000)");
    assert_eq!(field(&s, "thresholds"), "confirmed");

    let s = stdout(&run(dir.path(), &["pay", &data("two_bidders.json"), "--oracle", "maxvalue"]));
    let p = field(&s, "agent 0 payment");
    assert!(p.ends_with("(~3.000000)"), "{p}");

    let s = stdout(&run(dir.path(), &["pay", &data("sole_bidder.json"), "--oracle", "maxvalue"]));
    assert_eq!(field(&s, "agent 0 payment"), "0 (~0.000000)");
    assert_eq!(field(&s, "agent 0 loses_at_p_minus_delta"), "n/a (payment 0)");
}

#[test]
fn pay_rejects_unproven_allocators() {
    let dir = tempfile::tempdir().unwrap();
    let f = data("three_items.json");
    let out = run(dir.path(), &["pay", &f, "--oracle", "maxgreedy"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not monotone"));
    let out = run(dir.path(), &["pay", &f, "--allocator", "global"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(dir.path(), &["pay", &f, "--delta", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_monotone_corpus_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify", "--corpus", "7,200", "--property", "monotone"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert_eq!(field(&s, "verdict"), "PASS");
    assert_eq!(field(&s, "instances"), "200");
    assert!(!dir.path().join("witness.json").exists());
}

#[test]
fn verify_loser_fails_with_replayable_witness() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["counterexample", "--eps", "1/10"]);
    let out = run(
        dir.path(),
        &[
            "verify",
            "counterexample.json",
            "--property",
            "loser",
            "--level",
            "oracle",
            "--oracle",
            "maxgreedy",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(field(&stdout(&out), "verdict"), "FAIL");
    let text = std::fs::read_to_string(dir.path().join("witness.json")).unwrap();
    let w: WitnessFile = serde_json::from_str(&text).unwrap();
    assert_eq!(w.property, "loser_independent");
    assert_eq!(w.perturbation.agent, 3);
    // rebuild the perturbed instance and rerun the single-bin oracle
    let base = w.instance.to_instance().unwrap();
    let mut changed = w.instance.clone();
    changed.items[w.perturbation.agent] = w.perturbation.to.clone();
    let changed = changed.to_instance().unwrap();
    let target = packmech_core::verify::Target::Oracle(packmech_core::OracleKind::MaxGreedy);
    let bins = |i| packmech::format::bins_of(&target.evaluate(i).unwrap());
    assert_eq!(bins(&base), w.before);
    assert_eq!(bins(&changed), w.after);
    assert_ne!(w.before, w.after);
    assert!(!w.after[0].contains(&3));
}

#[test]
fn verify_ratio_reports_worst_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["verify", "--corpus", "7,150", "--property", "ratio"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert_eq!(field(&s, "bound"), "1/3 (~0.333333)");
    let worst = field(&s, "worst_ratio");
    let approx: f64 = worst.split("~").nth(1).unwrap().trim_end_matches(')').parse().unwrap();
    assert!(approx <= 3.0, "{worst}");
}

#[test]
fn verify_ratio_failure_writes_instance() {
    let dir = tempfile::tempdir().unwrap();
    // demanding exact optimality from half-greedy fails somewhere
    let out = run(
        dir.path(),
        &["verify", "--corpus", "7,100", "--kind", "knapsack", "--property", "ratio", "--bound", "1"],
    );
    assert_eq!(out.status.code(), Some(1));
    let text = std::fs::read_to_string(dir.path().join("witness.json")).unwrap();
    parse_instance(&text).unwrap();
}

#[test]
fn verify_bound_violation_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let items: Vec<String> = (0..11).map(|_| r#"{"value":1,"size":"1/4"}"#.to_string()).collect();
    let f = write(
        dir.path(),
        "big.json",
        &format!(r#"{{"bins":[{{"capacity":1}},{{"capacity":1}}],"items":[{}]}}"#, items.join(",")),
    );
    let out = run(dir.path(), &["verify", &f, "--property", "ratio"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exhaustive-search limit"));
}

#[test]
fn gm_seed_sets_default_corpus_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_env(dir.path(), &["verify", "--corpus", "30", "--property", "monotone"], Some("3"));
    let b = run(dir.path(), &["verify", "--corpus", "3,30", "--property", "monotone"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(dir.path(), &["verify", "--corpus", "30", "--property", "monotone"]);
    assert!(field(&stdout(&c), "source").contains("seed=7"));
    let bad = run_env(dir.path(), &["verify", "--corpus", "30", "--property", "monotone"], Some("x"));
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn simulate_reports_ratio_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["simulate", &data("two_slots.json"), "--trace", "t.json"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert_eq!(field(&s, "slot 1"), "present {0,1} chosen {0}");
    assert_eq!(field(&s, "slot 2"), "present {} chosen {}");
    assert_eq!(field(&s, "alg"), "5 (~5.000000)");
    assert_eq!(field(&s, "opt"), "8 (~8.000000)");
    assert_eq!(field(&s, "ratio"), "8/5 (~1.600000)");
    let trace: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    assert_eq!(trace.as_array().unwrap().len(), 2);

    let s = stdout(&run(dir.path(), &["simulate", &data("sole_bidder.json")]));
    assert_eq!(field(&s, "ratio"), "1 (~1.000000)");

    let f = write(
        dir.path(),
        "idle.json",
        r#"{"online":true,"bins":[{"capacity":1,"slot":1},{"capacity":1,"slot":2}],"items":[]}"#,
    );
    let s = stdout(&run(dir.path(), &["simulate", &f]));
    assert_eq!(field(&s, "slot 1"), "present {} chosen {}");
    assert_eq!(field(&s, "slot 2"), "present {} chosen {}");

    let out = run(dir.path(), &["simulate", &data("three_items.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn counterexample_eps_range() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["counterexample", "--eps", "1/8"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(field(&stdout(&out), "verdict"), "FAIL");
    assert_eq!(run(dir.path(), &["counterexample", "--eps", "1/5"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["counterexample", "--eps", "abc"]).status.code(), Some(2));
}

#[test]
fn malformed_input_is_exit_two_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "bad.json",
        "{\n  \"bins\": [{\"capacity\": 1}],\n  \"items\": [{\"value\": \"1/0\", \"size\": 1}]\n}\n",
    );
    let out = run(dir.path(), &["solve", &f]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3") && err.contains("items[0].value"), "{err}");
    assert_eq!(run(dir.path(), &["solve", "missing.json"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["solve", &f, "--oracle", "bogus"]).status.code(), Some(2));
    let online = data("two_slots.json");
    assert_eq!(
        run(dir.path(), &["solve", &online, "--allocator", "iterative"]).status.code(),
        Some(2)
    );
}

#[test]
fn corpus_files_round_trip() {
    for kind in [
        CorpusKind::Knapsack,
        CorpusKind::MultiKnapsack,
        CorpusKind::IdenticalBins,
        CorpusKind::Gap,
        CorpusKind::OnlineUnit,
        CorpusKind::OnlineMulti,
    ] {
        for inst in generate(&CorpusSpec::new(kind, 11, 25)) {
            let text = serialize_instance(&inst);
            let back = parse_instance(&text).unwrap();
            assert_eq!(back, inst);
            assert_eq!(serialize_instance(&back), text);
        }
    }
}
