//! End-to-end checks of the command-line interface: exit codes, JSON shape,
//! determinism of seeded commands.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3twist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("k3twist-cli-{name}-{}", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

#[test]
fn invariants_of_builtin_lattices() {
    let out = run(&["lattice-invariants", "--builtin", "mukai"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["rank"], 24);
    assert_eq!(v["results"]["signature"][0], 4);
    assert_eq!(v["results"]["signature"][1], 20);
    assert_eq!(v["results"]["det"], "1");

    let out = run(&["lattice-invariants", "--builtin", "u"]);
    let v = stdout_json(&out);
    assert_eq!(v["results"]["signature"][0], 1);
    assert_eq!(v["results"]["det"], "-1");
}

#[test]
fn invariants_from_inline_and_file() {
    let out = run(&["lattice-invariants", "--inline", "[[0,-5],[-5,2]]"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["det"], "-25");
    assert_eq!(v["results"]["invariant_factors"][0], "25");

    let path = temp_file("gram", r#"{"gram": [[2,0],[0,2]]}"#);
    let out = run(&["lattice-invariants", "--gram", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["signature"][0], 2);
    std::fs::remove_file(path).ok();
}

#[test]
fn malformed_input_exits_2() {
    let out = run(&["lattice-invariants", "--inline", "not json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["lattice-invariants", "--inline", "[[0,1],[2,0]]"]);
    assert_eq!(out.status.code(), Some(2), "asymmetric gram is an input error");
}

#[test]
fn verify_fm_partners() {
    let out = run(&["verify", "fm-partners", "--n", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["passed"], true);
    assert_eq!(v["results"]["members"][0]["abs_disc"], "256");
}

#[test]
fn verify_gap_seeded_and_deterministic() {
    let a = run(&["verify", "gap", "--trials", "40", "--seed", "7"]);
    let b = run(&["verify", "gap", "--trials", "40", "--seed", "7"]);
    assert!(a.status.success());
    let (mut va, mut vb) = (stdout_json(&a), stdout_json(&b));
    va["timing_ms"] = 0.into();
    vb["timing_ms"] = 0.into();
    assert_eq!(va, vb, "identical invocations are byte-identical modulo timing");
}

#[test]
fn verify_example_counter_small_sweep() {
    let out = run(&["verify", "example-counter", "--z-max", "500"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["passed"], true);
    assert!(v["assertions"].as_array().unwrap().len() >= 10);
}

#[test]
fn match_twist_random_word() {
    let out = run(&["match-twist", "--random-word", "6", "--seed", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["assertions"][0]["passed"], true);
    // b entries are serialized as p/q strings
    let b0 = v["results"]["b"][0].as_str().unwrap();
    assert!(b0.contains('/'));
}

#[test]
fn match_twist_exp_isometry_echoes_b() {
    // exp(e1) as an explicit 24×24 matrix: u2 ↦ u2 + e1, e2 ↦ e2 + u1
    let mut m = vec![vec![0i64; 24]; 24];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m[1][0] = 1; // e1-component of the image of u2
    m[23][2] = 1; // u1-component of the image of e2
    let json = serde_json::to_string(&serde_json::json!({ "domain": "mukai", "matrix": m })).unwrap();
    let path = temp_file("iso", &json);
    let out = run(&["match-twist", "--isometry", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["b"][0], "1/1");
    assert_eq!(v["results"]["b_integral"], true);
    std::fs::remove_file(path).ok();
}

#[test]
fn match_twist_rejects_non_isometry() {
    let mut m = vec![vec![0i64; 24]; 24];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m[23][23] = 2;
    let json = serde_json::to_string(&serde_json::json!({ "matrix": m })).unwrap();
    let path = temp_file("noniso", &json);
    let out = run(&["match-twist", "--isometry", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("does not preserve the form"), "stderr names the violation: {err}");
    std::fs::remove_file(path).ok();
}

#[test]
fn brauer_enumerate_and_budget() {
    let out = run(&["brauer", "enumerate", "--builtin", "u", "--k", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["entries"].as_array().unwrap().len(), 4);
    assert_eq!(v["results"]["surjective"], 3);

    let out = run(&[
        "brauer",
        "enumerate",
        "--builtin",
        "k3",
        "--k",
        "7",
        "--budget",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(3), "budget overrun exits 3");
}

#[test]
fn brauer_order_of_counterexample_class() {
    let out = run(&["brauer", "order", "--b", "1/5,1/5"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["class"]["order"], "5");
    assert_eq!(v["results"]["order_disc"]["disc_t_alpha"], "25");
}

#[test]
fn orientation_command_verdicts() {
    // surface with period (e1+e2, f1+f2) and ω = g1+g2
    let surface = r#"{"x1": [1,1], "x2": [0,0,1,1], "omega": [0,0,0,0,1,1]}"#;
    let spath = temp_file("surface", surface);

    // j = −id on (u2, u1)
    let mut j = vec![vec![0i64; 24]; 24];
    for (i, row) in j.iter_mut().enumerate() {
        row[i] = if i == 0 || i == 23 { -1 } else { 1 };
    }
    let jpath = temp_file(
        "j",
        &serde_json::to_string(&serde_json::json!({ "matrix": j })).unwrap(),
    );
    let out = run(&[
        "orientation",
        "--isometry",
        jpath.to_str().unwrap(),
        "--src",
        spath.to_str().unwrap(),
        "--dst",
        spath.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["preserving"], false);

    // i: u2 ↦ −u1, u1 ↦ −u2; preserving, and the criterion applies (r ≠ 0)
    let mut i_m = vec![vec![0i64; 24]; 24];
    for (k, row) in i_m.iter_mut().enumerate() {
        if (1..=22).contains(&k) {
            row[k] = 1;
        }
    }
    i_m[23][0] = -1;
    i_m[0][23] = -1;
    let ipath = temp_file(
        "i",
        &serde_json::to_string(&serde_json::json!({ "matrix": i_m })).unwrap(),
    );
    let out = run(&[
        "orientation",
        "--isometry",
        ipath.to_str().unwrap(),
        "--src",
        spath.to_str().unwrap(),
        "--dst",
        spath.to_str().unwrap(),
        "--criterion",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["results"]["preserving"], true);
    assert_eq!(v["results"]["criterion_preserving"], true);

    // identity has r = 0: --criterion exits 4
    let mut id = vec![vec![0i64; 24]; 24];
    for (k, row) in id.iter_mut().enumerate() {
        row[k] = 1;
    }
    let idpath = temp_file(
        "id",
        &serde_json::to_string(&serde_json::json!({ "matrix": id })).unwrap(),
    );
    let out = run(&[
        "orientation",
        "--isometry",
        idpath.to_str().unwrap(),
        "--src",
        spath.to_str().unwrap(),
        "--dst",
        spath.to_str().unwrap(),
        "--criterion",
    ]);
    assert_eq!(out.status.code(), Some(4));

    for p in [spath, jpath, ipath, idpath] {
        std::fs::remove_file(p).ok();
    }
}
