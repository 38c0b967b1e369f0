use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn med(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_med"))
        .args(args)
        .output()
        .expect("run med")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(bytes: &[u8]) -> serde_json::Value {
    serde_json::from_slice(bytes).unwrap()
}

fn assert_error_line(out: &Output, code: i32, kind: &str) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(stderr.trim_end().lines().count(), 1, "{stderr}");
    assert_eq!(json(stderr.as_bytes())["error"], kind);
}

/// generate → layout → schedule, returning (layout, timeline) paths.
fn pipeline(dir: &TempDir, nodes: &str, m: &str) -> (PathBuf, PathBuf) {
    let (graph, layout, timeline) = (
        path(dir, "g.json"),
        path(dir, "l.json"),
        path(dir, "t.json"),
    );
    assert!(med(&[
        "generate",
        "--nodes",
        nodes,
        "--m",
        m,
        "--seed",
        "1",
        "--out",
        s(&graph)
    ])
    .status
    .success());
    assert!(med(&[
        "layout",
        "--in",
        s(&graph),
        "--seed",
        "1",
        "--out",
        s(&layout)
    ])
    .status
    .success());
    assert!(med(&[
        "schedule",
        "--in",
        s(&layout),
        "--delta",
        "0.25",
        "--out",
        s(&timeline)
    ])
    .status
    .success());
    (layout, timeline)
}

#[test]
fn paper_pipeline() {
    let dir = TempDir::new().unwrap();
    let (layout, timeline) = pipeline(&dir, "50", "3");

    let t = json(&std::fs::read(&timeline).unwrap());
    assert_eq!(t["params"]["delta"], 0.25);
    assert_eq!(t["params"]["eta"], 0.5);
    assert_eq!(t["params"]["min_travel_s"], 0.3);
    assert_eq!(t["tracks"].as_array().unwrap().len(), 144);

    let out = med(&["verify", "--layout", s(&layout), "--timeline", s(&timeline)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout)["ok"], true);

    let out = med(&["stats", "--layout", s(&layout), "--timeline", s(&timeline)]);
    assert!(out.status.success());
    let stats = json(&out.stdout);
    assert_eq!(stats["nodes"], 50);
    assert_eq!(stats["edges"], 144);
    assert!(stats["sequential_baseline_ratio"].as_f64().unwrap() <= 1.0);

    for format in ["svg-animated", "svg-static-ped", "svg-static-ced"] {
        let svg = path(&dir, &format!("{format}.svg"));
        let out = med(&[
            "render",
            "--layout",
            s(&layout),
            "--timeline",
            s(&timeline),
            "--format",
            format,
            "--highlight",
            "0,3",
            "--out",
            s(&svg),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let text = std::fs::read_to_string(&svg).unwrap();
        assert!(text.starts_with("<svg"));
        assert_eq!(text.contains("<animate"), format == "svg-animated");
    }
}

#[test]
fn two_node_pipeline() {
    let dir = TempDir::new().unwrap();
    let (layout, timeline) = pipeline(&dir, "2", "1");
    let t = json(&std::fs::read(&timeline).unwrap());
    assert_eq!(t["tracks"].as_array().unwrap().len(), 1);
    assert_eq!(t["tracks"][0]["t_s"], 0.0);
    let out = med(&["verify", "--layout", s(&layout), "--timeline", s(&timeline)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn stages_are_idempotent() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let (la, ta) = pipeline(&a, "30", "2");
    let (lb, tb) = pipeline(&b, "30", "2");
    assert_eq!(std::fs::read(la).unwrap(), std::fs::read(lb).unwrap());
    assert_eq!(std::fs::read(ta).unwrap(), std::fs::read(tb).unwrap());
    let g = med(&["generate", "--seed", "4"]);
    assert_eq!(g.stdout, med(&["generate", "--seed", "4"]).stdout);
}

#[test]
fn tampered_timeline_fails_verification() {
    let dir = TempDir::new().unwrap();
    let (layout, timeline) = pipeline(&dir, "50", "3");
    let mut t = json(&std::fs::read(&timeline).unwrap());
    for track in t["tracks"].as_array_mut().unwrap() {
        track["t_s"] = 0.0.into();
    }
    std::fs::write(&timeline, serde_json::to_vec(&t).unwrap()).unwrap();
    let out = med(&[
        "verify",
        "--layout",
        s(&layout),
        "--timeline",
        s(&timeline),
        "--dt-ms",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let report = json(&out.stdout);
    assert_eq!(report["ok"], false);
    assert!(report["first_violation"]["t"].is_number());
}

#[test]
fn invalid_inputs() {
    let dir = TempDir::new().unwrap();
    let (layout, _) = pipeline(&dir, "10", "2");

    let out = med(&["schedule", "--in", s(&layout), "--delta", "0.6"]);
    assert_error_line(&out, 1, "validation");

    let out = med(&["generate", "--nodes", "3", "--m", "3"]);
    assert_error_line(&out, 1, "validation");

    let out = med(&["schedule", "--in", s(&path(&dir, "missing.json"))]);
    assert_error_line(&out, 3, "io");

    let out = med(&["schedule", "--bogus"]);
    assert_error_line(&out, 1, "validation");

    let bad = path(&dir, "bad.json");
    std::fs::write(
        &bad,
        r#"{"nodes":[{"id":0,"x":0,"y":0},{"id":1,"x":0,"y":0}],"edges":[[0,1],[1,0]]}"#,
    )
    .unwrap();
    let out = med(&["schedule", "--in", s(&bad)]);
    assert_error_line(&out, 1, "validation");
    let msg = json(&out.stderr)["message"].as_str().unwrap().to_string();
    assert!(msg.contains("(1, 0)") && msg.contains("coincide"), "{msg}");

    let out = med(&["render", "--layout", s(&layout), "--format", "svg-animated"]);
    assert_error_line(&out, 1, "validation");
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = TempDir::new().unwrap();
    let (layout, _) = pipeline(&dir, "20", "2");
    let config = path(&dir, "med.toml");
    std::fs::write(
        &config,
        "[schedule]\ndelta = 0.2\neta = 0.45\nspeed = 150.0\nmin-travel-ms = 0\n",
    )
    .unwrap();

    let out = med(&["schedule", "--config", s(&config), "--in", s(&layout)]);
    assert!(out.status.success());
    let t = json(&out.stdout);
    assert_eq!(t["params"]["delta"], 0.2);
    assert_eq!(t["params"]["eta"], 0.45);
    assert_eq!(t["params"]["speed"], 150.0);
    assert_eq!(t["params"]["min_travel_s"], 0.0);

    let out = med(&[
        "schedule",
        "--config",
        s(&config),
        "--in",
        s(&layout),
        "--delta",
        "0.1",
    ]);
    assert_eq!(json(&out.stdout)["params"]["delta"], 0.1);

    std::fs::write(&config, "[schedule]\nunknown = 1\n").unwrap();
    let out = med(&["schedule", "--config", s(&config), "--in", s(&layout)]);
    assert_error_line(&out, 1, "validation");
}

#[test]
fn angular_speed_defaults() {
    let dir = TempDir::new().unwrap();
    let (layout, _) = pipeline(&dir, "10", "2");
    let out = med(&["schedule", "--in", s(&layout)]);
    let speed = json(&out.stdout)["params"]["speed"].as_f64().unwrap();
    assert!((speed - 266.606).abs() < 1e-3, "{speed}");
    let out = med(&[
        "schedule",
        "--in",
        s(&layout),
        "--angle",
        "10",
        "--distance",
        "40",
        "--density",
        "1",
    ]);
    let speed = json(&out.stdout)["params"]["speed"].as_f64().unwrap();
    assert!((speed - 7.053079).abs() < 1e-6);
}
