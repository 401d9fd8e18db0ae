use std::path::Path;
use std::process::{Command, Output};

fn selforg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selforg"))
        .args(args)
        .output()
        .expect("running the selforg binary")
}

fn stdout_text(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn run_ok(args: &[&str]) -> String {
    let output = selforg(args);
    assert_eq!(
        output.status.code(),
        Some(0),
        "expected success for {args:?}, stderr: {}",
        stderr_text(&output)
    );
    stdout_text(&output)
}

fn run_err(args: &[&str]) -> String {
    let output = selforg(args);
    assert_eq!(
        output.status.code(),
        Some(2),
        "expected a usage error for {args:?}, stdout: {}",
        stdout_text(&output)
    );
    stderr_text(&output)
}

#[test]
fn generate_writes_the_reversal_for_type_ii() {
    let text = run_ok(&["generate", "--list-size", "3", "--class", "GROUP1/A/TYPE_II"]);
    assert_eq!(text, "# class=GROUP1/A/TYPE_II seed=0 l=3 n=3\n3 2 1\n");
}

#[test]
fn generate_repeats_a_single_element_for_type_iv() {
    let text = run_ok(&[
        "generate",
        "--list-size",
        "3",
        "--class",
        "GROUP1/B/TYPE_IV[p=2]",
        "--n",
        "4",
    ]);
    assert_eq!(text, "# class=GROUP1/B/TYPE_IV[p=2] seed=0 l=3 n=4\n2 2 2 2\n");
}

#[test]
fn generate_infers_the_length_from_a_block_multiplier() {
    let text = run_ok(&[
        "generate",
        "--list-size",
        "3",
        "--class",
        "GROUP2/C_a_i/TYPE_VI[m=2]",
    ]);
    assert_eq!(
        text,
        "# class=GROUP2/C_a_i/TYPE_VI[m=2] seed=0 l=3 n=6\n1 2 3 1 2 3\n"
    );
}

#[test]
fn generate_requires_a_seed_for_classes_with_many_members() {
    let text = run_err(&["generate", "--list-size", "3", "--class", "GROUP1/A/TYPE_III"]);
    assert!(text.contains("--seed"), "stderr: {text}");
}

#[test]
fn generate_is_reproducible_for_a_fixed_seed() {
    let args = [
        "generate",
        "--list-size",
        "6",
        "--class",
        "GROUP2/D",
        "--n",
        "9",
        "--seed",
        "31",
        "--count",
        "5",
    ];
    assert_eq!(run_ok(&args), run_ok(&args));
}

#[test]
fn simulate_reproduces_the_worked_trace() {
    let text = run_ok(&["simulate", "--list-size", "4", "--seq", "3 1 1 4 2"]);
    assert_eq!(
        text,
        "step,element,position,access_cost,list_after\n\
         1,3,3,3,3 1 2 4\n\
         2,1,2,2,1 3 2 4\n\
         3,1,1,1,1 3 2 4\n\
         4,4,4,4,4 1 3 2\n\
         5,2,4,4,2 4 1 3\n\
         total,,,14,2 4 1 3\n"
    );
}

#[test]
fn simulate_handles_a_single_element_list() {
    let text = run_ok(&["simulate", "--list-size", "1", "--seq", "1"]);
    assert_eq!(
        text,
        "step,element,position,access_cost,list_after\n1,1,1,1,1\ntotal,,,1,1\n"
    );
}

#[test]
fn simulate_totals_the_reversal_cost() {
    let text = run_ok(&["simulate", "--list-size", "3", "--seq", "3 2 1"]);
    assert!(text.ends_with("total,,,9,1 2 3\n"), "got: {text}");
}

#[test]
fn simulate_supports_the_partial_cost_model() {
    let text = run_ok(&[
        "simulate",
        "--list-size",
        "4",
        "--seq",
        "3 1 1 4 2",
        "--cost-model",
        "partial",
    ]);
    assert!(text.ends_with("total,,,9,2 4 1 3\n"), "got: {text}");
}

#[test]
fn simulate_rejects_foreign_elements() {
    let text = run_err(&["simulate", "--list-size", "3", "--seq", "1 9"]);
    assert!(text.contains("element 9"), "stderr: {text}");
}

#[test]
fn classify_labels_an_inline_sequence() {
    let text = run_ok(&["classify", "--list-size", "4", "--seq", "3 1 1 4 2"]);
    assert_eq!(text, "l,n,class\n4,5,GROUP2/D\n");
}

#[test]
fn classify_emits_json_when_asked() {
    let text = run_ok(&[
        "classify",
        "--list-size",
        "3",
        "--seq",
        "3 2 1",
        "--format",
        "json",
    ]);
    let rows: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
    assert_eq!(
        rows,
        serde_json::json!([{ "l": 3, "n": 3, "class": "GROUP1/A/TYPE_II" }])
    );
}

#[test]
fn classify_rejects_sequences_shorter_than_the_list() {
    let text = run_err(&["classify", "--list-size", "5", "--seq", "1 2"]);
    assert!(text.contains("shorter than the list"), "stderr: {text}");
}

#[test]
fn generated_files_round_trip_through_classify_and_simulate() {
    let dir = tempfile::tempdir().expect("temp dir");
    let seq_path = dir.path().join("seqs.txt");
    let seq_file = seq_path.to_str().expect("UTF-8 path");

    run_ok(&[
        "generate",
        "--list-size",
        "5",
        "--class",
        "GROUP2/C_b",
        "--n",
        "10",
        "--seed",
        "42",
        "--count",
        "3",
        "--out",
        seq_file,
    ]);

    let labels = run_ok(&["classify", "--list-size", "5", "--seq-file", seq_file]);
    assert_eq!(
        labels,
        "l,n,class\n5,10,GROUP2/C_b\n5,10,GROUP2/C_b\n5,10,GROUP2/C_b\n"
    );

    let trace = run_ok(&[
        "simulate",
        "--list-size",
        "5",
        "--seq-file",
        seq_file,
        "--line",
        "2",
    ]);
    assert!(trace.starts_with("step,element,position,access_cost,list_after\n"));
    assert_eq!(trace.lines().count(), 12, "10 steps, a header, and a total");
}

#[test]
fn simulate_needs_a_line_number_for_multi_sequence_files() {
    let dir = tempfile::tempdir().expect("temp dir");
    let seq_path = dir.path().join("seqs.txt");
    std::fs::write(&seq_path, "# two sequences\n1 2 3\n3 2 1\n").expect("writing");
    let seq_file = seq_path.to_str().expect("UTF-8 path");

    let text = run_err(&["simulate", "--list-size", "3", "--seq-file", seq_file]);
    assert!(text.contains("--line"), "stderr: {text}");

    let picked = run_ok(&[
        "simulate",
        "--list-size",
        "3",
        "--seq-file",
        seq_file,
        "--line",
        "2",
    ]);
    assert!(picked.ends_with("total,,,9,1 2 3\n"), "got: {picked}");
}

#[test]
fn list_files_override_the_numbered_default() {
    let dir = tempfile::tempdir().expect("temp dir");
    let list_path = dir.path().join("list.txt");
    std::fs::write(&list_path, "# custom ids\n7 3 9\n").expect("writing");
    let list_file = list_path.to_str().expect("UTF-8 path");

    let text = run_ok(&["generate", "--list-file", list_file, "--class", "GROUP1/A/TYPE_II"]);
    assert_eq!(text, "# class=GROUP1/A/TYPE_II seed=0 l=3 n=3\n9 3 7\n");
}

#[test]
fn verify_theorem_one_sweep_matches_everywhere() {
    let output = selforg(&["verify", "--theorem", "t1", "--l-min", "1", "--l-max", "10"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout_text(&output);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.iter().all(|row| row.ends_with(",MATCH")), "rows: {rows:#?}");
    assert_eq!(rows[9], "THEOREM_1,10,10,,55,,,55,MATCH");
}

#[test]
fn verify_corollary_one_walks_every_type_iii_permutation() {
    let text = run_ok(&["verify", "--theorem", "c1", "--l-min", "3", "--l-max", "3"]);
    assert_eq!(
        text,
        "theorem,l,n,params,predicted,lower,upper,simulated,status\n\
         COROLLARY_1,3,3,perm=1 3 2,,6,9,7,INSIDE\n\
         COROLLARY_1,3,3,perm=2 1 3,,6,9,7,INSIDE\n\
         COROLLARY_1,3,3,perm=2 3 1,,6,9,8,INSIDE\n\
         COROLLARY_1,3,3,perm=3 1 2,,6,9,8,INSIDE\n"
    );
}

#[test]
fn verify_covers_every_law_without_violations() {
    let output = selforg(&["verify", "--seed", "11", "--trials", "40"]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr_text(&output));
    let text = stdout_text(&output);
    for law in [
        "THEOREM_1",
        "THEOREM_2",
        "THEOREM_3",
        "THEOREM_4",
        "THEOREM_5",
        "COROLLARY_1",
        "COROLLARY_2",
    ] {
        assert!(text.contains(law), "missing rows for {law}");
    }
    assert!(!text.contains("VIOLATION"));
}

#[test]
fn bench_reports_the_known_deterministic_means() {
    let text = run_ok(&[
        "bench",
        "--class",
        "GROUP1/A/TYPE_I",
        "--list-size",
        "5",
        "--algo",
        "mtf",
        "--algo",
        "transpose",
        "--trials",
        "3",
    ]);
    assert_eq!(
        text,
        "class,algorithm,cost_model,trials,mean,min,max,seed\n\
         GROUP1/A/TYPE_I,MTF,FULL,3,15.0,15,15,0\n\
         GROUP1/A/TYPE_I,TRANSPOSE,FULL,3,15.0,15,15,0\n"
    );

    let reversal = run_ok(&[
        "bench",
        "--class",
        "GROUP1/A/TYPE_II",
        "--list-size",
        "5",
        "--algo",
        "mtf",
        "--trials",
        "3",
    ]);
    assert!(reversal.contains("GROUP1/A/TYPE_II,MTF,FULL,3,25.0,25,25,0"));

    let single = run_ok(&[
        "bench",
        "--class",
        "GROUP1/B/TYPE_IV[p=3]",
        "--list-size",
        "4",
        "--n",
        "8",
        "--algo",
        "mtf",
        "--trials",
        "3",
    ]);
    assert!(single.contains("GROUP1/B/TYPE_IV[p=3],MTF,FULL,3,10.0,10,10,0"));
}

#[test]
fn bench_compares_classes_under_a_shared_seed() {
    let text = run_ok(&[
        "bench",
        "--class",
        "GROUP1/A/TYPE_III",
        "--class",
        "GROUP1/B/TYPE_V",
        "--list-size",
        "4",
        "--algo",
        "fc",
        "--trials",
        "20",
        "--seed",
        "9",
    ]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("GROUP1/A/TYPE_III,FREQUENCY_COUNT,FULL,20,"));
    assert!(rows[1].starts_with("GROUP1/B/TYPE_V,FREQUENCY_COUNT,FULL,20,"));
    assert!(rows.iter().all(|row| row.ends_with(",9")), "rows: {rows:#?}");
}

#[test]
fn config_files_supply_defaults_that_flags_override() {
    let dir = tempfile::tempdir().expect("temp dir");
    let config_path = dir.path().join("run.toml");
    std::fs::write(
        &config_path,
        "list-size = 3\nalgo = \"transpose\"\nseq = \"3 2 1\"\n",
    )
    .expect("writing");
    let config = config_path.to_str().expect("UTF-8 path");

    let from_file = run_ok(&["simulate", "--config", config]);
    assert!(from_file.ends_with("total,,,7,1 2 3\n"), "got: {from_file}");

    let overridden = run_ok(&["simulate", "--config", config, "--algo", "mtf"]);
    assert!(overridden.ends_with("total,,,9,1 2 3\n"), "got: {overridden}");
}

#[test]
fn config_files_reject_unknown_keys() {
    let dir = tempfile::tempdir().expect("temp dir");
    let config_path = dir.path().join("run.toml");
    std::fs::write(&config_path, "list-sized = 3\n").expect("writing");
    let config = config_path.to_str().expect("UTF-8 path");

    let text = run_err(&["simulate", "--config", config, "--seq", "1"]);
    assert!(text.contains("list-sized"), "stderr: {text}");
}

#[test]
fn verify_runs_are_byte_identical_for_equal_seeds() {
    let dir = tempfile::tempdir().expect("temp dir");
    let first = dir.path().join("first.csv");
    let second = dir.path().join("second.csv");
    for path in [&first, &second] {
        run_ok(&[
            "verify",
            "--theorem",
            "t5",
            "--trials",
            "60",
            "--seed",
            "1234",
            "--out",
            path.to_str().expect("UTF-8 path"),
        ]);
    }
    assert_files_equal(&first, &second);
}

fn assert_files_equal(a: &Path, b: &Path) {
    let first = std::fs::read(a).expect("reading the first file");
    let second = std::fs::read(b).expect("reading the second file");
    assert_eq!(first, second, "outputs differ between identical runs");
}

#[test]
fn mutually_exclusive_sources_are_rejected() {
    let text = run_err(&[
        "simulate",
        "--list-size",
        "3",
        "--seq",
        "1 2 3",
        "--seq-file",
        "ignored.txt",
    ]);
    assert!(text.contains("mutually exclusive"), "stderr: {text}");
}
