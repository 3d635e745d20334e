//! End-to-end runs of the command-line binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shadowcalc"))
        .arg("--out-dir")
        .arg(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const HOPF: &str = "X(1,3,2,4) X(3,1,4,2)\n";

#[test]
fn shadow_star_reports_the_hopf_gleams() {
    let tmp = tempfile::tempdir().unwrap();
    let pd = tmp.path().join("hopf.pd");
    std::fs::write(&pd, HOPF).unwrap();
    let out = run(tmp.path(), &["shadow", pd.to_str().unwrap(), "--star"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    let mut gleams: Vec<f64> = report["star"]["gleams"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["gleam"].as_f64().unwrap())
        .collect();
    gleams.sort_by(f64::total_cmp);
    assert_eq!(gleams, vec![-1.0, -1.0, 1.0]);
    assert!(tmp.path().join("star.spoly").exists());
    assert!(tmp.path().join("manifest.json").exists());
}

#[test]
fn shadow_reduced_reports_the_hopf_bigon_gleam() {
    let tmp = tempfile::tempdir().unwrap();
    let pd = tmp.path().join("hopf.pd");
    std::fs::write(&pd, HOPF).unwrap();
    let out = run(tmp.path(), &["shadow", pd.to_str().unwrap(), "--reduced"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    let gleams = report["reduced"]["gleams"].as_array().unwrap();
    assert_eq!(gleams.len(), 1);
    assert_eq!(gleams[0]["gleam"].as_f64().unwrap(), 1.0);
    assert!(tmp.path().join("reduced.spoly").exists());
}

#[test]
fn shadow_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.pd");
    std::fs::write(&bad, "X(1,2,1,2)\n").unwrap();
    let out = run(tmp.path(), &["shadow", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "diagram errors exit 2");
    let unknot = tmp.path().join("unknot.pd");
    std::fs::write(&unknot, "U()\n").unwrap();
    let out = run(tmp.path(), &["shadow", unknot.to_str().unwrap(), "--reduced"]);
    assert_eq!(out.status.code(), Some(3), "failed reduction precondition exits 3");
}

#[test]
fn classify_emits_five_entries_and_is_byte_stable() {
    let tmp1 = tempfile::tempdir().unwrap();
    let tmp2 = tempfile::tempdir().unwrap();
    let out1 = run(tmp1.path(), &["classify"]);
    let out2 = run(tmp2.path(), &["classify"]);
    assert!(out1.status.success());
    assert_eq!(out1.stdout, out2.stdout, "byte-identical reports");
    let report = stdout_json(&out1);
    let entries = report["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 5);
    for e in entries {
        assert_eq!(e["eliminated"], false);
        let file = tmp1.path().join("census").join(e["file"].as_str().unwrap());
        let t1 = std::fs::read(&file).unwrap();
        let t2 = std::fs::read(tmp2.path().join("census").join(e["file"].as_str().unwrap())).unwrap();
        assert_eq!(t1, t2, "census files byte-identical");
    }
}

#[test]
fn classify_keep_eliminated_documents_the_homology_obstruction() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["classify", "--keep-eliminated"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    let entries = report["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    let eliminated: Vec<_> = entries.iter().filter(|e| e["eliminated"] == true).collect();
    assert_eq!(eliminated.len(), 1);
    assert_eq!(eliminated[0]["label"], "1-(iv)");
    assert_eq!(eliminated[0]["certificate"]["status"], "not_simply_connectable");
    assert_ne!(eliminated[0]["certificate"]["sample_h1"], "0");
}

#[test]
fn classify_graph_type_three_is_empty() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["classify", "--graph-type", "3"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["entries"].as_array().unwrap().len(), 0);
}

#[test]
fn hyp_build_cover_solves_to_the_known_volume() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["hyp", "--build-cover"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["tetrahedra"], 10);
    assert!((report["volume"].as_f64().unwrap() - 10.149416064096533).abs() < 1e-6);
    assert_eq!(report["cusps"].as_array().unwrap().len(), 5);
    // The emitted triangulation file can be fed back in.
    let tri = tmp.path().join("triangulation.itri");
    let tmp2 = tempfile::tempdir().unwrap();
    let again = run(tmp2.path(), &["hyp", tri.to_str().unwrap()]);
    assert!(again.status.success());
    assert_eq!(stdout_json(&again)["volume"], report["volume"]);
}

#[test]
fn hyp_reglue_variants_keep_the_volume() {
    for i in 0..4 {
        let tmp = tempfile::tempdir().unwrap();
        let out = run(tmp.path(), &["hyp", "--reglue", &i.to_string()]);
        assert!(out.status.success(), "variant {i}");
        let report = stdout_json(&out);
        assert!((report["volume"].as_f64().unwrap() - 10.149416064096533).abs() < 1e-6);
        let cusps = report["cusps"].as_array().unwrap().len();
        assert!((4..=5).contains(&cusps));
    }
}

#[test]
fn hyp_rejects_corrupted_files() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.itri");
    std::fs::write(&bad, "not a triangulation\n").unwrap();
    let out = run(tmp.path(), &["hyp", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty(), "parse diagnostics on stderr");
}

#[test]
fn manifest_lists_every_emitted_file_with_digests() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["hyp", "--build-cover"]);
    assert!(out.status.success());
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["command"], "hyp");
    let outputs = manifest["outputs"].as_array().unwrap();
    assert_eq!(outputs.len(), 2);
    for o in outputs {
        let path = o["path"].as_str().unwrap();
        let bytes = std::fs::read(path).unwrap();
        let digest = format!("{:x}", {
            use sha2::Digest;
            sha2::Sha256::digest(&bytes)
        });
        assert_eq!(o["sha256"].as_str().unwrap(), digest, "digest of {path}");
    }
}

#[test]
fn poly_subcommands_round_trip_census_output() {
    let tmp = tempfile::tempdir().unwrap();
    let out = run(tmp.path(), &["classify"]);
    assert!(out.status.success());
    let file = tmp.path().join("census").join("1_i.spoly");
    let file = file.to_str().unwrap();
    let out = run(tmp.path(), &["poly", "validate", file]);
    assert!(out.status.success());
    let out = run(tmp.path(), &["poly", "homology", file]);
    assert!(out.status.success());
    let out = run(tmp.path(), &["poly", "branchings", file]);
    assert!(out.status.success());
    let first = String::from_utf8_lossy(&out.stdout);
    assert_eq!(first.lines().next(), Some("24"));
    let out = run(tmp.path(), &["poly", "iso", file, file]);
    assert!(out.status.success());
    let other = tmp.path().join("census").join("2_i.spoly");
    let out = run(tmp.path(), &["poly", "iso", file, other.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
