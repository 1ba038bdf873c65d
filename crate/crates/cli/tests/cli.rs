use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

use hyperrank::hypergraph::{
    complete, hamilton_frame, random_hypergraph, star_deleted_graph, tightness_graph,
};
use hyperrank::{rank, Hypergraph, InclusionMatrix, RankMode};

fn run(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hyperrank"))
        .args(args)
        .env_remove("HYPERRANK_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    let mut pipe = child.stdin.take().unwrap();
    // commands that fail early never read their input
    let _ = pipe.write_all(stdin.unwrap_or_default());
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: Option<&[u8]>) -> Vec<u8> {
    let out = run(args, stdin);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out.stdout
}

fn json_out(args: &[&str]) -> Value {
    serde_json::from_slice(&ok(args, None)).unwrap()
}

#[test]
fn formula_n_matches_the_closed_form() {
    let doc = json_out(&["formula", "N", "--n", "10", "--t", "2", "--r", "3", "--s", "1"]);
    assert_eq!(doc["result"], json!("64"));
    assert_eq!(doc["config"]["command"], json!("formula N"));
    assert_eq!(
        doc["config"]["parameters"],
        json!({"n": 10, "t": 2, "r": 3, "s": 1})
    );
    assert_eq!(doc["config"]["seed"], json!(0));
    assert!(doc["tool"].as_str().unwrap().starts_with("hyperrank-cli "));
}

#[test]
fn census_reports_the_rex_table() {
    let doc = json_out(&["verify", "census", "--n", "6"]);
    assert_eq!(doc["result"]["verdict"], json!("pass"));
    assert_eq!(doc["result"]["stats"]["rex_table"], json!([10, 6, 4, 2, 1, 0]));
}

#[test]
fn failed_verdict_exits_one_with_witnesses() {
    // G(3,1,2,1) is the single edge {2,3}: rank 1, not C(3,1) - 1
    let out = run(
        &[
            "verify",
            "construction",
            "--n",
            "3",
            "--t",
            "1",
            "--r",
            "2",
            "--s",
            "1",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["verdict"], json!("fail"));
    assert!(!doc["result"]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["rank", "--bogus", "1"][..],
        &["formula", "N", "--n", "10"],
        &["construct", "complete", "--n", "x", "--r", "2"],
        &["cascade", "--m", "-3", "--k", "2"],
        &[
            "--threads",
            "0",
            "formula",
            "N",
            "--n",
            "4",
            "--t",
            "1",
            "--r",
            "2",
            "--s",
            "1",
        ],
        &[
            "--format", "csv", "formula", "N", "--n", "4", "--t", "1", "--r", "2", "--s", "1",
        ],
        &[
            "construct",
            "gts",
            "--n",
            "70",
            "--t",
            "1",
            "--r",
            "2",
            "--s",
            "1",
        ],
        &["rank", "--mode", "modular", "--s", "1"],
        &["rank", "--mode", "modular", "--p", "15", "--s", "1"],
    ] {
        let input: &[u8] = b"4 1 2\n1 2\n";
        let out = run(args, Some(input));
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = run(&["rank"], Some(b"4 1 2\n1 2\n"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--s"));
}

#[test]
fn construct_matrix_rank_pipeline_matches_in_process() {
    let cases: Vec<(Vec<&str>, Hypergraph, usize)> = vec![
        (
            vec!["construct", "complete", "--n", "6", "--r", "3"],
            complete(6, 3).unwrap(),
            2,
        ),
        (
            vec!["construct", "gts", "--n", "8", "--t", "2", "--r", "3", "--s", "1"],
            star_deleted_graph(8, 2, 3, 1).unwrap(),
            1,
        ),
        (
            vec!["construct", "R", "--n", "7", "--r", "3", "--s", "2"],
            tightness_graph(7, 3, 2).unwrap(),
            2,
        ),
        (
            vec!["construct", "hamilton", "--n", "9", "--r", "3"],
            hamilton_frame(9, 3).unwrap().graph(9, 3),
            1,
        ),
        (
            vec![
                "--seed",
                "5",
                "construct",
                "random",
                "--n",
                "8",
                "--r",
                "3",
                "--p",
                "0.3",
            ],
            random_hypergraph(8, 3, 0.3, 5).unwrap(),
            1,
        ),
    ];
    for (args, g, s) in cases {
        let text = ok(&args, None);
        let s_arg = s.to_string();
        let mm = ok(&["matrix", "--s", &s_arg], Some(&text));
        let m = InclusionMatrix::build(&g, s).unwrap();
        for (mode, in_process) in [
            ("exact", RankMode::Exact),
            ("certified", RankMode::Certified { seed: 0 }),
        ] {
            let doc: Value = serde_json::from_slice(&ok(&["rank", "--mode", mode], Some(&mm))).unwrap();
            let want = serde_json::to_value(rank(&m, in_process).unwrap()).unwrap();
            assert_eq!(doc["result"], want, "{args:?} {mode}");
        }
    }
}

#[test]
fn hypergraph_text_embeds_config_and_reads_back() {
    let text = String::from_utf8(ok(
        &["construct", "star", "--n", "5", "--t", "3", "--s", "2"],
        None,
    ))
    .unwrap();
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("# config: {\"command\":\"construct star\""));
    assert!(lines.next().unwrap().starts_with("# tool: hyperrank-cli"));
    assert_eq!(lines.collect::<Vec<_>>(), ["5 3 2", "1 2", "1 3", "1 4"]);
    let up = String::from_utf8(ok(
        &["shadow", "--p", "1", "--direction", "upper"],
        Some(text.as_bytes()),
    ))
    .unwrap();
    // N(5,3,3,2) = C(4,2) - C(1,2) = 6
    assert!(up.lines().any(|l| l == "5 6 3"));
}

#[test]
fn nullspace_of_the_four_cycle() {
    let doc = serde_json::from_slice::<Value>(&ok(
        &["nullspace", "--s", "1"],
        Some(b"4 4 2\n1 2\n2 3\n1 4\n3 4\n"),
    ))
    .unwrap();
    assert_eq!(doc["result"]["dimension"], json!(1));
    assert_eq!(doc["result"]["basis"][0]["alpha"], json!(["1", "-1", "1", "-1"]));
}

#[test]
fn output_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("hyperrank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    let stdout = ok(
        &[
            "--output",
            path.to_str().unwrap(),
            "cascade",
            "--m",
            "17",
            "--k",
            "3",
        ],
        None,
    );
    assert!(stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["config"]["output"], json!(path.to_str().unwrap()));
    assert_eq!(doc["result"]["terms"], json!([[5, 3], [4, 2], [1, 1]]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn sweep_csv_is_seed_reproducible() {
    let args = [
        "--seed",
        "3",
        "--format",
        "csv",
        "sweep",
        "--n",
        "8",
        "--r",
        "3",
        "--s",
        "1",
        "--trials",
        "10",
        "--p-grid",
        "0.05,0.2,0.6",
    ];
    let a = String::from_utf8(ok(&args, None)).unwrap();
    assert_eq!(a, String::from_utf8(ok(&args, None)).unwrap());
    let rows: Vec<&str> = a.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "p,full_rank_freq,no_zero_col_freq,trials");
    assert_eq!(rows.len(), 4);
}

#[test]
fn thread_count_is_recorded() {
    let doc = json_out(&["--threads", "2", "cascade", "--m", "4", "--k", "2"]);
    assert_eq!(doc["config"]["threads"], json!(2));
}
