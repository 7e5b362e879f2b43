use std::process::{Command, Output};

fn gracegraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gracegraph"))
        .args(args)
        .env_remove("GRACEGRAPH_BUDGET")
        .env_remove("GRACEGRAPH_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn gen_formats() {
    let out = gracegraph(&["gen", "h_join", "2", "2", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!((v["p"].as_u64(), v["q"].as_u64()), (Some(7), Some(14)));

    let out = gracegraph(&["gen", "complete", "3", "--format", "g6"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "Bw\n");

    let out = gracegraph(&["gen", "path", "3", "--format", "edges"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "3 2\n0 1\n1 2\n");

    let a = gracegraph(&["gen", "graphforest", "9", "cycle", "4", "--seed", "7", "--format", "g6"]);
    let b = gracegraph(&["gen", "graphforest", "9", "7", "cycle", "4", "--format", "g6"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn solve_and_exit_codes() {
    let out = gracegraph(&["solve", "Cl"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["verdict"], "graceful");

    let out = gracegraph(&["solve", "Dhc"]);
    assert_eq!(stdout_json(&out)["verdict"], "nongraceful_rosa_golomb");
    let out = gracegraph(&["solve", "Dhc", "--exhaustive"]);
    assert_eq!(stdout_json(&out)["verdict"], "nongraceful_exhausted");

    let out = gracegraph(&["solve", "Dhc", "--exhaustive", "--budget", "2"]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(gracegraph(&["solve", "not-a-graph"]).status.code(), Some(3));
    assert_eq!(gracegraph(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(gracegraph(&["gen", "cycle"]).status.code(), Some(3));
}

#[test]
fn flags_beat_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_gracegraph"));
        cmd.args(["solve", "Dhc", "--exhaustive"]);
        if let Some(b) = flag {
            cmd.args(["--budget", b]);
        }
        match env {
            Some(b) => cmd.env("GRACEGRAPH_BUDGET", b),
            None => cmd.env_remove("GRACEGRAPH_BUDGET"),
        };
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(Some("2"), None), Some(2));
    assert_eq!(run(Some("2"), Some("1000000")), Some(0));
}

#[test]
fn files_as_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.txt");
    std::fs::write(&path, "# a 4-cycle\n4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let out = gracegraph(&["classify", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["epsilon_class"], "epsilon_0");

    let out = gracegraph(&["enumerate", path.to_str().unwrap(), "--mode", "complement"]);
    let v = stdout_json(&out);
    assert_eq!(v["labelings"].as_array().unwrap().len(), 8);
}

#[test]
fn constructions() {
    let out = gracegraph(&["embed", "Dhc"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["verified"], true);

    let out = gracegraph(&["plant", "Bw", "--caterpillar", "0,1,0", "--format", "edges"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("6 6\n"));

    let out = gracegraph(&["closure", "Bg"]);
    assert_eq!(stdout_json(&out)["output"], "Cl");
    assert_eq!(gracegraph(&["closure", "Bw"]).status.code(), Some(3));
}

#[test]
fn suites_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dutch.json");
    let out = gracegraph(&["suite", "dutch", "--max", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["records"].as_array().unwrap().len(), 5);
    assert_eq!(v["summary"]["refuted"], 0);

    let out = gracegraph(&["suite", "h22n"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("COUNTEREXAMPLE"));

    let corpus = dir.path().join("corpus.g6");
    std::fs::write(&corpus, "Bw\n!!\nDhc\n").unwrap();
    let out = gracegraph(&["suite", "custom", "--corpus", corpus.to_str().unwrap(), "--workers", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr.clone()).unwrap().contains(":2: skipped"));
    assert_eq!(stdout_json(&out)["records"].as_array().unwrap().len(), 2);

    assert_eq!(gracegraph(&["suite", "nope"]).status.code(), Some(3));
    assert_eq!(gracegraph(&["suite", "trees", "--max", "40"]).status.code(), Some(3));
}
