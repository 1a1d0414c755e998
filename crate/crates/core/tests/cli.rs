use std::path::Path;
use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use superroots::cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use superroots::shadow::{anchor, ClassState, HybridCase, HybridProfile};
use superroots::suite::random_tight_config;
use superroots::{AffineFamily, AlgebraParams};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn sr(args: &[&str]) -> Out {
    let mut argv = vec!["superroots"];
    argv.extend_from_slice(args);
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = run(argv, &mut o, &mut e);
    Out {
        code,
        stdout: String::from_utf8(o).unwrap(),
        stderr: String::from_utf8(e).unwrap(),
    }
}

fn json(o: &Out) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

fn write_config(dir: &Path, p: &AlgebraParams, seed: u64) -> std::path::PathBuf {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (cfg, _) = random_tight_config(p, &mut rng, 8, 500).expect("a tight config");
    let path = dir.join(format!("cfg-{seed}.json"));
    std::fs::write(&path, serde_json::to_string_pretty(&cfg.to_file()).unwrap()).unwrap();
    path
}

#[test]
fn roots_worked_example() {
    let o = sr(&[
        "roots", "--family", "a-even-2", "--k", "1", "--l", "1", "--mmax", "1", "--format", "json",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(v["count"], 33);
    assert_eq!(v["roots"].as_array().unwrap().len(), 33);
}

#[test]
fn roots_csv_and_tex() {
    let o = sr(&[
        "roots", "--family", "d-2", "--k", "1", "--l", "1", "--mmax", "0", "--format", "csv",
    ]);
    assert_eq!(o.code, EXIT_OK);
    let mut lines = o.stdout.lines();
    assert_eq!(lines.next(), Some("eps,del,dc,class,parity,placement"));
    assert!(
        lines.any(|l| l == "1,1,0,nonsingular,odd,odd_part"),
        "{}",
        o.stdout
    );
    let o = sr(&[
        "roots", "--family", "d-2", "--k", "1", "--l", "1", "--mmax", "0", "--format", "tex",
    ]);
    assert!(
        o.stdout.contains("\\begin{document}") && o.stdout.contains("\\varepsilon_{1}+\\delta_{1}")
    );
}

#[test]
fn invalid_params_name_the_constraint() {
    let o = sr(&["roots", "--family", "a-odd-2", "--k", "1", "--l", "1"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("(1, 1)"), "{}", o.stderr);
    let o = sr(&["tables", "--family", "d-2", "--k", "1", "--l", "0"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("l must be at least 1"), "{}", o.stderr);
    let o = sr(&["tables", "--family", "b-2", "--k", "1", "--l", "1"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("a-even-2"), "{}", o.stderr);
    assert_eq!(sr(&["frobnicate"]).code, EXIT_USAGE);
}

#[test]
fn tables_formats() {
    let o = sr(&[
        "tables", "--family", "a-4", "--k", "1", "--l", "1", "--format", "tex",
    ]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("4\\mathbb{Z}\\delta"));
    assert!(
        o.stdout.contains("\\documentclass") && o.stdout.trim_end().ends_with("\\end{document}")
    );
    let o = sr(&[
        "tables", "--family", "a-4", "--k", "1", "--l", "1", "--format", "csv",
    ]);
    assert!(o.stdout.starts_with("table,pattern,dot,mod,res\n"));
    let v = json(&sr(&["tables", "--family", "a-4", "--k", "1", "--l", "1"]));
    assert_eq!(v["family"], "a-4");
    assert_eq!(v["r"], 4);
}

#[test]
fn classify_reports() {
    let o = sr(&[
        "classify",
        "--family",
        "a-even-2",
        "--k",
        "1",
        "--l",
        "1",
        "--root",
        r#"{"eps":[2],"del":[0],"dc":1}"#,
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o);
    assert_eq!(v["info"]["class"], "real");
    assert_eq!(v["info"]["parity"], "even");
    assert_eq!(v["info"]["component"], "in_r0_2");
    let o = sr(&[
        "classify",
        "--family",
        "a-even-2",
        "--k",
        "1",
        "--l",
        "1",
        "--root",
        r#"{"eps":[2],"del":[0],"dc":0}"#,
    ]);
    assert_eq!(o.code, EXIT_FAILURE);
    assert_eq!(json(&o)["is_root"], false);
    let o = sr(&[
        "classify",
        "--family",
        "a-even-2",
        "--k",
        "1",
        "--l",
        "1",
        "--root",
        r#"{"eps":[2,1],"del":[0],"dc":0}"#,
    ]);
    assert_eq!(o.code, EXIT_USAGE);
    let o = sr(&[
        "classify", "--family", "a-even-2", "--k", "1", "--l", "1", "--root", "{eps",
    ]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("column"), "{}", o.stderr);
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = [
        "verify", "--family", "d-2", "--k", "2", "--l", "2", "--mmax", "8",
    ];
    let a = sr(&args);
    assert_eq!(a.code, EXIT_OK, "{}", a.stdout);
    let v = json(&a);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    assert!(v["checks_run"].as_u64().unwrap() > 100);
    assert!(v.get("wall_time").is_none());
    assert_eq!(sr(&args).stdout, a.stdout);
    let other = sr(&[
        "verify", "--family", "d-2", "--k", "2", "--l", "2", "--mmax", "8", "--seed", "7",
    ]);
    assert_eq!(other.code, EXIT_OK);
}

#[test]
fn shadow_commands() {
    let dir = tempfile::tempdir().unwrap();
    let p = AlgebraParams::new(AffineFamily::AEven2, 2, 2).unwrap();
    let cfg = write_config(dir.path(), &p, 11);
    let c = cfg.to_str().unwrap();
    let base = [
        "--family", "a-even-2", "--k", "2", "--l", "2", "--config", c,
    ];

    let o = sr(&[&["shadow-validate"], &base[..]].concat());
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);

    let o = sr(&[&["shadow-derive-p"], &base[..]].concat());
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    let v = json(&o);
    assert!(v["p_dot"].as_array().unwrap().iter().any(|r| r["dc"] == 0));

    let o = sr(&[&["parabolic-synth"], &base[..]].concat());
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    let v = json(&o);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert_eq!(v["extended"]["trivial"], false);
    assert_eq!(v["extended"]["zeta"]["delta"], "0/1");
}

#[test]
fn broken_configs() {
    let dir = tempfile::tempdir().unwrap();
    let p = AlgebraParams::new(AffineFamily::D2, 2, 2).unwrap();
    let good = write_config(dir.path(), &p, 3);
    let text = std::fs::read_to_string(&good).unwrap();
    let file: superroots::shadow::ConfigFile = serde_json::from_str(&text).unwrap();
    let cfg = superroots::shadow::ShadowConfig::from_json(p, &text).unwrap();

    // Make one full class hybrid while its negative stays full: the pair
    // rule must object.
    let root = file
        .classes
        .iter()
        .map(|e| e.root.clone())
        .find(|r| !cfg.state(r).unwrap().is_hybrid() && *r == anchor(r))
        .expect("a full class");
    let profile = HybridProfile::new(HybridCase::III, 0, 0).unwrap();
    let bad = cfg.with_state(&root, ClassState::Hybrid(profile));
    let bad_path = dir.path().join("bad.json");
    std::fs::write(&bad_path, serde_json::to_string(&bad.to_file()).unwrap()).unwrap();
    let args = [
        "--family",
        "d-2",
        "--k",
        "2",
        "--l",
        "2",
        "--config",
        bad_path.to_str().unwrap(),
    ];
    let v = sr(&[&["shadow-validate"], &args[..]].concat());
    let d = sr(&[&["shadow-derive-p"], &args[..]].concat());
    assert_eq!(v.code, EXIT_FAILURE, "{}", v.stdout);
    assert!(v.stdout.contains("HybridSymmetry"), "{}", v.stdout);
    assert!(d.code == EXIT_OK || d.code == EXIT_FAILURE);

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\n  \"classes\": [\n    {\"root\": 3}\n  ]\n}\n").unwrap();
    let o = sr(&[
        "shadow-validate",
        "--family",
        "d-2",
        "--k",
        "2",
        "--l",
        "2",
        "--config",
        broken.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);

    let wrong = dir.path().join("wrong.json");
    std::fs::write(&wrong, r#"{"family":"a-4","classes":[]}"#).unwrap();
    let o = sr(&[
        "shadow-validate",
        "--family",
        "d-2",
        "--k",
        "2",
        "--l",
        "2",
        "--config",
        wrong.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_USAGE);

    let o = sr(&[
        "shadow-validate",
        "--family",
        "d-2",
        "--k",
        "2",
        "--l",
        "2",
        "--config",
        "/nonexistent/x.json",
    ]);
    assert_eq!(o.code, EXIT_USAGE);
}

#[test]
fn phi_pi_and_decompose() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("zeta.json");
    std::fs::write(&f, r#"{"eps":["2"],"del":["1/1"],"delta":"0"}"#).unwrap();
    let fz = f.to_str().unwrap();
    let o = sr(&[
        "phi-pi",
        "--family",
        "a-even-2",
        "--k",
        "1",
        "--l",
        "1",
        "--functional",
        fz,
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    let v = json(&o);
    assert_eq!(v["sets"]["pi"].as_array().unwrap().len(), 4);
    assert_eq!(v["sets"]["r"], 2);

    let o = sr(&[
        "decompose",
        "--family",
        "a-even-2",
        "--k",
        "1",
        "--l",
        "1",
        "--functional",
        fz,
        "--root",
        r#"{"eps":[0],"del":[2],"dc":0}"#,
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    let v = json(&o);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["coeff"], 2);

    let o = sr(&[
        "decompose",
        "--family",
        "a-even-2",
        "--k",
        "1",
        "--l",
        "1",
        "--functional",
        fz,
        "--root",
        r#"{"eps":[-1],"del":[0],"dc":0}"#,
    ]);
    assert_eq!(o.code, EXIT_FAILURE);

    let g = dir.path().join("bad-delta.json");
    std::fs::write(&g, r#"{"eps":["1"],"del":["1"],"delta":"1"}"#).unwrap();
    let o = sr(&[
        "phi-pi",
        "--family",
        "a-even-2",
        "--k",
        "1",
        "--l",
        "1",
        "--functional",
        g.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_USAGE);

    let h = dir.path().join("short.json");
    std::fs::write(&h, r#"{"eps":[],"del":["1"],"delta":"0"}"#).unwrap();
    let o = sr(&[
        "phi-pi",
        "--family",
        "a-even-2",
        "--k",
        "1",
        "--l",
        "1",
        "--functional",
        h.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_USAGE);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = sr(&[
        "tables",
        "--family",
        "d-2",
        "--k",
        "1",
        "--l",
        "1",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("table,"));
}

#[test]
fn list_families() {
    let v = json(&sr(&["list-families"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows
        .iter()
        .any(|r| r["token"] == "a-odd-2" && r["constraints"].as_str().unwrap().contains("(1, 1)")));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_superroots");
    let ok = Command::new(bin)
        .args([
            "roots", "--family", "a-even-2", "--k", "1", "--l", "1", "--mmax", "1",
        ])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let again = Command::new(bin)
        .args([
            "roots", "--family", "a-even-2", "--k", "1", "--l", "1", "--mmax", "1",
        ])
        .output()
        .unwrap();
    assert_eq!(ok.stdout, again.stdout);
    let bad = Command::new(bin)
        .args(["roots", "--family", "a-odd-2", "--k", "1", "--l", "1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("CSV columns"));
}
