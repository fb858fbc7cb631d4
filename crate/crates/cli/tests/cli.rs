use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_heatcomp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Data rows of a CSV report, without comment lines and header.
fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

const DISC: &str = r#"{"space": "euclidean2", "shape": {"type": "disc", "center": [0, 0], "radius": 1.5}}"#;

#[test]
fn temp_on_a_disc_matches_the_closed_form() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "disc.json", DISC);
    let o = run(&["temp", "--domain", s(&d), "--point", "0,0", "--times", "0.05:2:3:log"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("# heatcomp temp seed=42"));
    let r = rows(&text);
    assert_eq!(r.len(), 3);
    for row in &r {
        let t: f64 = row[0].parse().unwrap();
        let f: f64 = row[3].parse().unwrap();
        let exact = 1.0 - (-2.25 / (4.0 * t)).exp();
        assert!((f - exact).abs() < 1e-10, "t={t}: {f} vs {exact}");
        assert_eq!(row[3].split('e').next().unwrap().replace(['-', '.'], "").len(), 17);
    }
}

#[test]
fn output_is_reproducible_and_can_go_to_a_file() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "disc.json", DISC);
    let out = dir.path().join("out.json");
    let args = ["temp", "--domain", s(&d), "--point", "0.3,0.1", "--grid", "3", "--times", "0.1:1:4:lin", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", s(&out)]);
    let c = run(&with_out);
    assert!(c.status.success() && c.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4 * 10);
}

#[test]
fn malformed_input_fails_with_a_location() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\n  \"space\": \"euclidean2\",\n  \"shape\": {\"type\": \"disc\" \"radius\": 1}\n}\n");
    let o = run(&["temp", "--domain", s(&bad), "--point", "0,0", "--times", "0.1:1:3"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let d = write(&dir, "disc.json", DISC);
    let empty = run(&["temp", "--domain", s(&d), "--point", "0,0", "--times", "0.1:1:0"]);
    assert!(!empty.status.success());
    assert!(stderr(&empty).contains("empty time grid"));
    let nopoint = run(&["temp", "--domain", s(&d), "--times", "0.1:1:2"]);
    assert!(!nopoint.status.success());
    let missing = run(&["temp", "--domain", s(&dir.path().join("nope.json")), "--point", "0,0", "--times", "0.1:1:2"]);
    assert!(!missing.status.success());
    let threads = bin()
        .env("HEATCOMP_THREADS", "many")
        .args(["temp", "--domain", s(&d), "--point", "0,0", "--times", "0.1:1:2"])
        .output()
        .unwrap();
    assert!(!threads.status.success());
    let one = bin()
        .env("HEATCOMP_THREADS", "1")
        .args(["temp", "--domain", s(&d), "--point", "0,0", "--times", "0.1:1:2"])
        .output()
        .unwrap();
    assert!(one.status.success());
}

fn verdicts(text: &str) -> Vec<(String, String)> {
    text.lines()
        .take_while(|l| !l.starts_with("# numeric trace"))
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            (it.next().unwrap().to_owned(), it.next().unwrap().to_owned())
        })
        .collect()
}

#[test]
fn compare_square_in_the_plane_against_the_hyperbolic_square() {
    let dir = TempDir::new().unwrap();
    let e = write(&dir, "e.json", r#"{"space": "euclidean2", "shape": {"type": "regular_polygon", "n": 4, "circumradius": 1}}"#);
    let h = write(&dir, "h.json", r#"{"space": "hyperbolic2", "shape": {"type": "regular_polygon", "n": 4, "circumradius": 1}}"#);
    let o = run(&["compare", "--domain", s(&e), "--domain2", s(&h), "--point", "0,0", "--times", "0.0009765625:0.125:8:log"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = verdicts(&stdout(&o));
    assert!(v.contains(&("distance_from_complement".into(), "first_strictly_hotter".into())), "{v:?}");
    assert!(v.contains(&("numeric_grid".into(), "first_strictly_hotter".into())), "{v:?}");
}

#[test]
fn compare_identical_triples_is_a_tie() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "disc.json", DISC);
    let o = run(&["compare", "--domain", s(&d), "--point", "0.2,0.1", "--times", "0.01:1:4", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let verdicts = v["verdicts"].as_array().unwrap();
    let numeric = verdicts.iter().find(|x| x["criterion"] == "numeric_grid").unwrap();
    assert_eq!(numeric["verdict"], "equal");
    let dist = verdicts.iter().find(|x| x["criterion"] == "distance_from_complement").unwrap();
    assert_eq!(dist["verdict"], "inconclusive");
}

#[test]
fn compare_strips_by_sphere_areas() {
    let dir = TempDir::new().unwrap();
    let wide = write(
        &dir,
        "wide.json",
        r#"{"space": "euclidean2", "shape": {"type": "polygon", "vertices": [[-3, -0.5], [3, -0.5], [3, 0.5], [-3, 0.5]]}}"#,
    );
    let narrowed = write(
        &dir,
        "narrowed.json",
        r#"{"space": "euclidean2", "shape": {"type": "polygon", "vertices":
            [[-3, -0.5], [0.3, -0.5], [0.3, -0.45], [3, -0.45], [3, 0.45], [0.3, 0.45], [0.3, 0.5], [-3, 0.5]]}}"#,
    );
    let o = run(&[
        "compare", "--domain", s(&wide), "--domain2", s(&narrowed), "--point", "0,0", "--radii", "0.55:0.6", "--times",
        "0.00125:0.02:5",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = verdicts(&stdout(&o));
    assert!(v.contains(&("sphere_areas".into(), "first_strictly_hotter".into())), "{v:?}");
    assert!(v.contains(&("numeric_grid".into(), "first_strictly_hotter".into())), "{v:?}");
    assert!(v.contains(&("distance_from_complement".into(), "inconclusive".into())), "{v:?}");
}

#[test]
fn hotspots_of_a_triangle_travel_from_incenter_to_centroid() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.json", r#"{"space": "euclidean2", "shape": {"type": "polygon", "vertices": [[0, 0], [4, 0], [0, 3]]}}"#);
    let o = run(&["hotspots", "--domain", s(&tri), "--times", "0.001:10:4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 4);
    let at = |row: &Vec<String>| (row[1].parse::<f64>().unwrap(), row[2].parse::<f64>().unwrap());
    let (x0, y0) = at(&r[0]);
    let (x1, y1) = at(&r[3]);
    assert!((x0 - 1.0).hypot(y0 - 1.0) < 0.01, "{x0} {y0}");
    assert!((x1 - 4.0 / 3.0).hypot(y1 - 1.0) < 0.01, "{x1} {y1}");
}

fn events(text: &str) -> Vec<(String, f64)> {
    text.lines()
        .skip_while(|l| !l.starts_with("# events"))
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.trim_start_matches("# ").split(',').collect();
            (f[0].to_owned(), f[1].parse().unwrap())
        })
        .collect()
}

#[test]
fn hotspots_of_the_dumbbell_merge_at_the_closed_form_time() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "db.json", r#"{"space": "euclidean2", "shape": {"type": "dumbbell", "a": 1, "b": 1, "c": 0}}"#);
    let t0 = 0.25 * (9.0f64 - 1.0) / 3f64.ln();
    let grid = format!("{}:{}:3:log", 0.6 * t0, 1.2 * t0);
    let o = run(&["hotspots", "--domain", s(&d), "--times", &grid]);
    assert!(o.status.success(), "{}", stderr(&o));
    let e = events(&stdout(&o));
    assert_eq!(e.len(), 1, "{e:?}");
    assert_eq!(e[0].0, "collapse");
    assert!((e[0].1 / t0 - 1.0).abs() < 1e-4, "{} vs {t0}", e[0].1);
}

#[test]
fn hotspots_of_an_annulus_record_the_collapse() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "ring.json", r#"{"space": "euclidean2", "shape": {"type": "annulus", "center": [0, 0], "inner": 0.3333333333333333, "outer": 1}}"#);
    let o = run(&["hotspots", "--domain", s(&d), "--times", "0.02:1:4", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ev = v["events"].as_array().unwrap();
    assert_eq!(ev.len(), 1, "{ev:?}");
    assert_eq!(ev[0]["kind"], "collapse");
    let t = ev[0]["t"].as_f64().unwrap();
    let (lo, hi) = (ev[0]["bracket"][0].as_f64().unwrap(), ev[0]["bracket"][1].as_f64().unwrap());
    assert!(lo < t && t < hi);
}

#[test]
fn verify_reports_and_exit_codes() {
    let o = run(&["verify", "kernel"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("[PASS]  1 kernel"), "{text}");
    assert!(text.contains("1 of 1 suites passed"));

    let unknown = run(&["verify", "nosuch"]);
    assert!(!unknown.status.success());
    assert!(stderr(&unknown).contains("unknown suite"));

    let all = run(&["verify", "all", "--format", "json"]);
    let v: Value = serde_json::from_slice(&all.stdout).unwrap();
    assert_eq!(v["total"], 12);
    assert_eq!(v["suites"].as_array().unwrap().len(), 12);
    assert_eq!(all.status.success(), v["passed"] == 12);
}
