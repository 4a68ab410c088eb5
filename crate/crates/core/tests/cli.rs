use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn finrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finrank")).args(args).env_remove("FINRANK_BUDGET").output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = finrank(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    finrank(args).status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn count_subcommands() {
    assert_eq!(ok(&["count", "det", "--elements", "1,2", "-n", "2", "--d", "0"]), "6\n");
    assert_eq!(ok(&["count", "det", "--elements", "1,2", "-n", "3", "--d", "0"]), "248\n");
    assert_eq!(ok(&["count", "rank", "--elements", "1,2", "-m", "2", "-n", "2", "-r", "1"]), "6\n");
    assert_eq!(ok(&["count", "rank", "--elements", "1,2", "-m", "2", "-n", "2", "-r", "2", "--at-most"]), "16\n");
    assert_eq!(ok(&["count", "charpoly", "--elements", "1,2", "-n", "2", "--f", "0,-2"]), "1\n");
    // diagonal (1,1) and bc = 1
    assert_eq!(ok(&["count", "powersums", "--elements", "1,-1", "-n", "2", "--t1", "2", "--t2", "4"]), "2\n");
    assert_eq!(ok(&["count", "det", "--elements", "1,i", "--field", "Qi", "-n", "2", "--d", "0"]), "6\n");
}

#[test]
fn set_files() {
    let dir = tempfile::tempdir().unwrap();
    let explicit = write(dir.path(), "a.json", r#"{"field":"Q","elements":["1","2"]}"#);
    let family = write(dir.path(), "b.json", r#"{"family":{"variant":"geometric","base":"2","start":0,"stop":1}}"#);
    assert_eq!(ok(&["count", "det", "--set", &explicit, "-n", "2", "--d", "0"]), "6\n");
    assert_eq!(ok(&["count", "det", "--set", &family, "-n", "2", "--d", "0"]), "6\n");
    let shown: Value = serde_json::from_str(&ok(&["family", "show", "--set", &family])).unwrap();
    assert_eq!(shown["elements"], serde_json::json!(["1", "2"]));
    assert_eq!(code(&["count", "det", "--set", "/nonexistent.json", "-n", "2", "--d", "0"]), 1);
    assert_eq!(code(&["count", "det", "-n", "2", "--d", "0"]), 1);
}

#[test]
fn sweep_csv_and_shards() {
    let whole = ok(&["sweep", "--elements", "1,2,3", "-m", "2", "-n", "2"]);
    assert!(whole.starts_with("statistic,key,count\n"), "{whole}");
    assert!(whole.contains("total,,81\n"), "{whole}");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.csv");
    ok(&[
        "sweep",
        "--elements",
        "1,2,3",
        "-m",
        "2",
        "-n",
        "2",
        "--charpoly",
        "--powersums",
        "--out",
        path.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("charpoly,") && text.contains("powersums,"), "{text}");
    assert!(!text.contains("\nrank,"));

    // shard counts add up to the whole
    let rank_total = |csv: &str| -> u64 {
        csv.lines()
            .filter(|l| l.starts_with("rank,"))
            .map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap())
            .sum()
    };
    let mut sum = 0;
    for i in 0..3 {
        let part = ok(&["sweep", "--elements", "1,2,3", "-m", "2", "-n", "3", "--rank", "--shard", &format!("{i}/3")]);
        sum += rank_total(&part);
    }
    assert_eq!(sum, 3u64.pow(6));
    assert_eq!(code(&["sweep", "--elements", "1,2", "-m", "2", "-n", "2", "--shard", "3/3"]), 1);
    assert_eq!(code(&["sweep", "--elements", "1,2", "-m", "2", "-n", "3", "--det"]), 1);
}

#[test]
fn bound_tables() {
    let t = ok(&["bound", "trivial", "-n", "3", "-m", "3", "-r", "2"]);
    assert_eq!(t.lines().next(), Some("source\tregime\texponent"));
    assert!(t.contains("\t8\n") && t.contains("\t7\n"), "{t}");
    assert!(ok(&["bound", "det", "-n", "3"]).contains("det-lower\td = 0\t7"));
    assert!(ok(&["bound", "det", "-n", "3", "--nonzero"]).contains("\t7\n"));
    assert!(ok(&["bound", "rank", "-n", "4", "-m", "3", "-r", "2"]).contains("delta-max"));
    assert!(ok(&["bound", "charpoly2", "--d-zero", "--t-zero"]).contains("\t2\n"));
    let c = ok(&["bound", "charpoly", "-n", "5", "--c-top-zero", "--c-second-zero", "--real", "--constant-nonzero"]);
    assert!(c.lines().any(|l| l.starts_with("best\t")), "{c}");
    assert!(ok(&["bound", "charpoly", "-n", "4", "--half-relation", "--constant-zero"]).contains("best"));
    assert!(ok(&["bound", "table", "-n", "5"]).contains("alpha\tn = 5\t"));
    assert!(ok(&["bound", "equation", "-n", "5"]).contains("\t2\n"));
    let nd = ok(&["bound", "nondegenerate", "-n", "1", "--rho", "0"]);
    assert!(nd.contains("7.224719895935548685129733473388"), "{nd}");
    assert_eq!(code(&["bound", "rank", "-n", "2", "-m", "3", "-r", "1"]), 1);
    assert_eq!(code(&["bound", "charpoly", "-n", "4", "--constant-zero", "--constant-nonzero"]), 1);
}

#[test]
fn family_commands() {
    let g: Value =
        serde_json::from_str(&ok(&["family", "geometric", "--base", "1/2", "--start", "-1", "--stop", "1"])).unwrap();
    assert_eq!(g["elements"], serde_json::json!(["2", "1", "1/2"]));
    let s: Value = serde_json::from_str(&ok(&["family", "signed", "--base", "3", "--count", "2"])).unwrap();
    assert_eq!(s["elements"].as_array().unwrap().len(), 4);
    let gs: Value = serde_json::from_str(&ok(&["family", "gaussian", "--scales", "1,2"])).unwrap();
    assert_eq!(gs["elements"].as_array().unwrap().len(), 8);
    let args =
        ["family", "lattice", "--generators", "2,3", "--ranges", "0:3,-1:1", "--sample-size", "5", "--seed", "4"];
    let l1 = ok(&args);
    assert_eq!(l1, ok(&args));
    let lv: Value = serde_json::from_str(&l1).unwrap();
    assert_eq!(lv["elements"].as_array().unwrap().len(), 5);
    let t: Value = serde_json::from_str(&ok(&["family", "tight", "-n", "5"])).unwrap();
    assert_eq!(t["coeffs"], serde_json::json!(["1", "-1", "-1", "-1", "2"]));
    assert_eq!(code(&["family", "lattice", "--generators", "2", "--ranges", "0-3", "--sample-size", "2"]), 1);
}

#[test]
fn equation_commands() {
    let dir = tempfile::tempdir().unwrap();
    let eq = write(dir.path(), "eq.json", r#"{"field":"Q","coeffs":["1","1","-1"],"rhs":"0"}"#);
    assert_eq!(ok(&["equation", "count", "--elements", "1,2,4", "--eq", &eq]), "2\n");
    assert_eq!(ok(&["equation", "count", "--elements", "1,2,4", "--eq", &eq, "--max-entries", "1"]), "2\n");
    let classes = ok(&["equation", "classify", "--elements", "1,2,4", "--eq", &eq]);
    assert_eq!(classes, "subset,count\n\"{1,2,3}\",2\n");
    assert_eq!(ok(&["equation", "system", "--elements", "1,-1,i,-i", "--field", "Qi", "-n", "4"]), "24\n");
    let k: Value = serde_json::from_str(&ok(&["equation", "kappa", "-n", "10"])).unwrap();
    assert_eq!(k["kappa"], 4);
    assert_eq!(code(&["--budget", "3", "equation", "system", "--elements", "1,2,3", "-n", "4"]), 2);
}

#[test]
fn audit_commands() {
    let a: Value = serde_json::from_str(&ok(&[
        "audit",
        "minors",
        "--elements",
        "1,2,4,8",
        "-n",
        "3",
        "--trials",
        "300",
        "--seed",
        "5",
    ]))
    .unwrap();
    assert_eq!(a["trials"], 300);
    assert_eq!(a["passed"], true);
    let b: Value = serde_json::from_str(&ok(&[
        "audit",
        "minors",
        "--elements",
        "1,2,4,8",
        "-n",
        "3",
        "--trials",
        "50",
        "--nonsingular",
    ]))
    .unwrap();
    assert_eq!(b["nonsingular"], 50);
    let l: Value = serde_json::from_str(&ok(&[
        "audit",
        "laplace",
        "--elements",
        "1,2",
        "--matrix",
        "1,1,1;1,2,1;1,1,2",
        "--axis",
        "col",
        "--index",
        "2",
    ]))
    .unwrap();
    assert_eq!(l["det"], "1");
    assert_eq!(l["reconstruction"], "1");
    assert_eq!(l["axis"], "col");
    assert_eq!(code(&["audit", "laplace", "--elements", "1,2", "--matrix", "1,3;1,1"]), 1);
    assert_eq!(code(&["audit", "laplace", "--elements", "1,2", "--matrix", "1,1;1,1", "--axis", "diag"]), 1);
}

#[test]
fn growth_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "exp.json",
        r#"{"family":{"variant":"geometric","base":"2","start":1,"stop":"2*k"},"k_values":[4,6,8,10],
            "statistic":{"kind":"rank","m":2,"n":2,"r":1,"cumulative":true},"lower_bound":"3"}"#,
    );
    let out_dir = dir.path().join("run");
    let stdout = ok(&["growth", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);
    let report: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(report, serde_json::from_str::<Value>(&stdout).unwrap());
    assert_eq!(report["theoretical"], "3");
    assert_eq!(report["verdict"], "lower-achieved");
    let csv = fs::read_to_string(out_dir.join("points.csv")).unwrap();
    assert!(csv.starts_with("k,set_size,count,elapsed_us\n4,8,"), "{csv}");
    assert_eq!(csv.lines().count(), 5);

    // over budget: partial csv, exit 2
    let big = write(
        dir.path(),
        "big.json",
        r#"{"family":{"variant":"geometric","base":"2","start":1,"stop":"k"},"k_values":[2,3,30],
            "statistic":{"kind":"det","n":3,"target":"0"}}"#,
    );
    let part = dir.path().join("partial");
    let out = Command::new(env!("CARGO_BIN_EXE_finrank"))
        .args(["growth", "--config", &big, "--out", part.to_str().unwrap()])
        .env("FINRANK_BUDGET", "100000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(fs::read_to_string(part.join("points.csv")).unwrap().lines().count(), 3);
    assert!(!part.join("report.json").exists());
}

#[test]
fn usage_errors() {
    assert_eq!(code(&["count"]), 1);
    assert_eq!(code(&["count", "det", "--elements", "1,2", "-n", "2", "--d", "x"]), 1);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["count", "det", "--elements", "1,2", "--field", "R", "-n", "2", "--d", "0"]), 1);
}
