use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nfact(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nfact"));
    cmd.args(args).env_remove("NFACT_DEEP").env_remove("NFACT_THREADS");
    match cache {
        Some(dir) => cmd.env("NFACT_CACHE_DIR", dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON object per line"))
        .collect()
}

#[test]
fn dim_of_two_one() {
    let out = nfact(&["dim", "--sigma", "2,1"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = &lines(&out)[0];
    assert_eq!(r["dim"], 6);
    assert_eq!(r["expected"], 6);
    assert_eq!(r["pass"], true);
    assert_eq!(
        r["bigraded"],
        serde_json::json!([[0, 0, 1], [0, 1, 2], [1, 0, 2], [1, 1, 1]])
    );
}

#[test]
fn charp_five_two() {
    let out = nfact(&["charp", "--n", "5", "--p", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    let r = &lines(&out)[0];
    assert_eq!(r["dim_divided"], 120);
    assert_eq!(r["conjecture_status"], "pass");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["dim", "--sigma", "1,0"][..],
        &["dim", "--sigma", "1,2"],
        &["dim", "--sigma", "x"],
        &["gr", "--p", "1", "--q", "1", "--r", "0"],
        &["gr", "--p", "2"],
        &["charp", "--n", "4", "--p", "4"],
        &["springer", "--sigma", "2", "--field", "fp:9"],
        &["dim", "--sigma", "3,3"],
        &["nilpair", "--n", "13"],
        &["frobnicate"],
    ] {
        assert_eq!(nfact(args, None).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["sign", "--max-n", "3"];
    let a = nfact(&args, None);
    let b = nfact(&args, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let seeded = ["charp", "--instance", "phi", "--n", "3", "--p", "2", "--seed", "17"];
    assert_eq!(nfact(&seeded, None).stdout, nfact(&seeded, None).stdout);
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["hilb", "--sigma", "3,1"];
    let fresh = nfact(&args, None);
    let first = nfact(&args, Some(dir.path()));
    assert_eq!(first.stdout, fresh.stdout);
    let entries: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(entries.len(), 1);
    let second = nfact(&args, Some(dir.path()));
    assert_eq!(second.stdout, fresh.stdout);

    // A tampered entry with a wrong key is ignored and overwritten.
    let body = std::fs::read_to_string(&entries[0]).unwrap();
    std::fs::write(
        &entries[0],
        body.replace("\"colength\":4", "\"colength\":99")
            .replace("\"cache_key\":\"", "\"cache_key\":\"x"),
    )
    .unwrap();
    assert_eq!(nfact(&args, Some(dir.path())).stdout, fresh.stdout);
    std::fs::write(&entries[0], "garbage").unwrap();
    assert_eq!(nfact(&args, Some(dir.path())).stdout, fresh.stdout);
    assert!(std::fs::read_to_string(&entries[0]).unwrap().contains("cache_key"));
}

#[test]
fn tsv_output() {
    let out = nfact(&["nilpair", "--n", "3", "--format", "tsv"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<_> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].split('\t').any(|c| c == "centralizer_dim"));
}

#[test]
fn timing_is_opt_in() {
    let plain = nfact(&["nilpair", "--sigma", "2,1"], None);
    assert!(!String::from_utf8_lossy(&plain.stdout).contains("elapsed_ms"));
    let timed = nfact(&["nilpair", "--sigma", "2,1", "--timing"], None);
    assert!(lines(&timed)[0]["elapsed_ms"].is_u64());
}

#[test]
fn verify_all_small() {
    let out = nfact(&["verify-all", "--max-n", "4", "--threads", "2"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rs = lines(&out);
    let mut tasks: Vec<String> = rs.iter().map(|r| r["task"].as_str().unwrap().to_string()).collect();
    assert!(tasks.windows(2).all(|w| w[0] <= w[1]), "canonical order");
    tasks.dedup();
    assert_eq!(
        tasks,
        ["charp", "dim", "gr", "hilb", "nilpair", "sign", "springer", "tsigma"]
    );
    assert!(rs.iter().all(|r| r["pass"] == true));
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 failed"));
}
