use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn gmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmd")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_string()
}

#[test]
fn separability_counterexample_prints_zero() {
    let out = gmd(&["gmd", &path("fig3_G.json"), &path("fig3_H.json"), "--cv", "1", "--ce", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0.000000000\n");
}

#[test]
fn rewired_triangle_ggd() {
    let out = gmd(&["ggd", &path("fig2_G.json"), &path("fig2_H.json"), "--cv", "1", "--ce", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4.000000000\n");
}

#[test]
fn self_distance_is_zero() {
    let a = path("letter_A.json");
    let out = gmd(&["gmd", &a, &a]);
    assert_eq!(stdout(&out), "0.000000000\n");
}

#[test]
fn output_formats() {
    let (g, h) = (path("fig1_G.json"), path("fig1_H.json"));
    let csv = gmd(&["gmd", &g, &h, "--cv", "1", "--ce", "1", "--format", "csv"]);
    assert_eq!(stdout(&csv), "gmd\n4.000000000\n");
    let json = gmd(&["ggd", &g, &h, "--cv", "1", "--ce", "1", "--format", "json"]);
    assert_eq!(stdout(&json), "{\"ggd\":3.000000000,\"matching\":[0,1,null]}\n");
}

#[test]
fn output_is_stable_across_runs() {
    let args = ["stability", "--trials", "10", "--seed", "4"];
    assert_eq!(stdout(&gmd(&args)), stdout(&gmd(&args)));
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(gmd(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gmd(&["gmd", &path("fig1_G.json"), &path("fig1_H.json"), "--cv=0"]).status.code(), Some(2));
    assert_eq!(gmd(&["gmd", &path("fig1_G.json"), &path("fig1_H.json"), "--bogus"]).status.code(), Some(2));
    let missing = gmd(&["gmd", "no-such-file.json", &path("fig1_H.json")]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("no-such-file.json"));
}

#[test]
fn ggd_rejects_large_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.json");
    let verts: Vec<String> = (0..8).map(|i| format!("[{i},0]")).collect();
    std::fs::write(&big, format!("{{\"d\":2,\"vertices\":[{}],\"edges\":[]}}", verts.join(","))).unwrap();
    let out = gmd(&["ggd", big.to_str().unwrap(), &path("fig2_H.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at most 7 vertices"));
}

#[test]
fn planarize_and_convert() {
    let dir = tempfile::tempdir().unwrap();
    let x = dir.path().join("x.json");
    std::fs::write(&x, r#"{"d":2,"vertices":[[0,0],[1,1],[0,1],[1,0]],"edges":[[0,1],[2,3]]}"#).unwrap();
    let out = gmd(&["planarize", x.to_str().unwrap()]);
    assert_eq!(
        stdout(&out),
        "{\"d\":2,\"vertices\":[[0.0,0.0],[1.0,1.0],[0.0,1.0],[1.0,0.0],[0.5,0.5]],\"edges\":[[0,4],[1,4],[2,4],[3,4]]}\n"
    );

    let gxl = dir.path().join("a.gxl");
    std::fs::write(
        &gxl,
        r#"<gxl><graph id="a" edgemode="undirected">
<node id="_0"><attr name="x"><float>0.5</float></attr><attr name="y"><float>1</float></attr></node>
<node id="_1"><attr name="x"><float>2</float></attr><attr name="y"><float>1</float></attr></node>
<edge from="_0" to="_1"/></graph></gxl>"#,
    )
    .unwrap();
    let converted = dir.path().join("a.json");
    let out = gmd(&["convert", gxl.to_str().unwrap(), "--out", converted.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read_to_string(&converted).unwrap(),
        "{\"d\":2,\"vertices\":[[0.5,1.0],[2.0,1.0]],\"edges\":[[0,1]]}\n"
    );
}

#[test]
fn classify_on_a_tiny_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let low = dir.path().join("LOW");
    std::fs::create_dir(&low).unwrap();
    // One drawing of an I: a single vertical stroke.
    std::fs::write(
        low.join("IP1_0001.gxl"),
        r#"<gxl><graph id="i" edgemode="undirected">
<node id="_0"><attr name="x"><float>1.5</float></attr><attr name="y"><float>0.5</float></attr></node>
<node id="_1"><attr name="x"><float>1.5</float></attr><attr name="y"><float>2.5</float></attr></node>
<edge from="_0" to="_1"/></graph></gxl>"#,
    )
    .unwrap();
    std::fs::write(low.join("test.cxl"), r#"<GraphCollection><print file="IP1_0001.gxl" class="I"/></GraphCollection>"#)
        .unwrap();
    let out_csv = dir.path().join("acc.csv");
    let out = gmd(&[
        "classify",
        dir.path().to_str().unwrap(),
        "--levels",
        "LOW",
        "--k",
        "1,15",
        "--format",
        "csv",
        "--jobs",
        "2",
        "--out",
        out_csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_csv).unwrap();
    assert!(text.starts_with("distortion,k,accuracy\nLOW,1,"), "{text}");
    assert!(text.ends_with("LOW,15,1.000000000\n"), "{text}");
    assert!(dir.path().join("acc_confusion_LOW.csv").exists());
}
