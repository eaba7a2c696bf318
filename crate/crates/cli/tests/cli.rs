use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_harmonic-atlas"));
    c.env_remove("HARMONIC_ATLAS_CONFIG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn expand_examples() {
    let o = run(&["expand", "koebe", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "h: 0, 1, 2, 3, 4, 5");

    let o = run(&["expand", "z/(1-z+z^2)", "7"]);
    assert_eq!(stdout(&o).trim(), "0, 1, 1, 0, -1, -1, 0, 1");

    let o = run(&["expand", "f3_cv1", "4"]);
    let out = stdout(&o);
    assert!(out.contains("h: 0, 1, 3/2, 2, 5/2"), "{out}");
    assert!(out.contains("g: 0, 0, 1/2, 1, 3/2"), "{out}");

    let o = run(&["--json", "expand", "f3_cv1", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["h"][2], "3/2");

    assert_eq!(run(&["expand", "z/(1-", "4"]).status.code(), Some(2));
}

#[test]
fn shear_examples() {
    let o = run(&["shear", "z/(1-z)", "+z", "real"]);
    let out = stdout(&o);
    assert!(o.status.success());
    assert!(out.contains("class: half_integer") && out.contains("matches: f3_cv1"), "{out}");

    let o = run(&["shear", "z-z^2/2", "-z", "real", "--order", "6"]);
    let out = stdout(&o);
    assert!(out.starts_with("h: 0, 1, -1, 2/3, -1/2, 2/5, -1/3"), "{out}");
    assert!(out.contains("class: neither"));

    let o = run(&["--json", "shear", "z", "+z", "imag", "--order", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["h"], serde_json::json!(["0", "1", "-1/2", "1/3", "-1/4", "1/5"]));
    assert_eq!(v["class"], "neither");

    assert_eq!(run(&["shear", "z", "2z", "real"]).status.code(), Some(2));
    assert_eq!(run(&["shear", "2z", "z", "real"]).status.code(), Some(2));
}

#[test]
fn list_and_classify() {
    let o = run(&["list", "--family", "T6"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = run(&["--json", "list"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 101);

    let o = run(&["classify", "harmonic_koebe"]);
    assert!(stdout(&o).starts_with("cv1_09: neither"));
    let o = run(&["--json", "classify", "z/(1-z)^2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "integer");
}

#[test]
fn render_examples() {
    let dir = tempfile::tempdir().unwrap();
    for id in ["f3_cv1", "harmonic_koebe"] {
        let out = dir.path().join(format!("{id}.svg"));
        let o = run(&["render", id, out.to_str().unwrap()]);
        assert!(o.status.success(), "{id}");
        let svg = std::fs::read_to_string(&out).unwrap();
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("class=\"boundary\""));
    }
    let out = dir.path().join("x.svg");
    assert_eq!(run(&["render", "unknown", out.to_str().unwrap()]).status.code(), Some(2));
    let bad = dir.path().join("missing").join("x.svg");
    assert_eq!(run(&["render", "f3_cv1", bad.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "T42"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "T41", "--order", "3"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "T41", "--order", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "T77"]).status.code(), Some(2));
}

#[test]
fn verify_json_is_deterministic() {
    let a = run(&["--json", "verify", "T41"]);
    let b = run(&["--json", "verify", "T41"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["summary"]["total"], 51);
    assert_eq!(v["summary"]["matched"], 51);
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("atlas.toml");
    std::fs::write(&cfg, "order = 3\n[grid]\nradii = 8\nangles = 32\n").unwrap();

    let o = bin().env("HARMONIC_ATLAS_CONFIG", &cfg).args(["--json", "verify", "T42"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["order"], 3);
    assert_eq!(v["config"]["grid_radii"], 8);

    // flags win over the file
    let o = bin()
        .env("HARMONIC_ATLAS_CONFIG", &cfg)
        .args(["--json", "verify", "T41", "--order", "64"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["order"], 64);

    let o = run(&["verify", "T31", "--config", cfg.to_str().unwrap(), "--order", "10"]);
    assert!(o.status.success());

    std::fs::write(&cfg, "orderr = 3\n").unwrap();
    assert_eq!(run(&["verify", "T31", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    let missing = dir.path().join("nope.toml");
    assert_eq!(run(&["verify", "T31", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}
