//! End-to-end tests against the built binary: file formats, determinism,
//! exit codes, and the documented command examples.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ssrc"))
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ssrc-cli-test-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "command failed: {}\n{}",
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn state_fock_writes_basis_vector() {
    let dir = workdir("fock");
    let out = dir.join("s.json");
    assert_ok(&run(&[
        "state", "--family", "fock", "--N", "10", "--n", "0", "--out",
        out.to_str().unwrap(),
    ]));
    let v = read_json(&out);
    assert_eq!(v["N"], 10);
    assert_eq!(v["coeffs"][0][0], 1.0);
    assert_eq!(v["coeffs"][3][0], 0.0);
    assert_eq!(v["basis"], "z");
}

#[test]
fn state_spin_coherent_matches_binomial_form() {
    let dir = workdir("sc");
    let out = dir.join("s.json");
    assert_ok(&run(&[
        "state",
        "--family",
        "spin-coherent",
        "--N",
        "8",
        "--theta",
        "1.0471975512",
        "--phi",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]));
    let v = read_json(&out);
    // c_n = √C(8,n) cos^{8−n}(θ/2) sin^n(θ/2) with θ = π/3
    let (c, s) = ((std::f64::consts::PI / 6.0).cos(), (std::f64::consts::PI / 6.0).sin());
    let binom = [1.0f64, 8.0, 28.0, 56.0, 70.0, 56.0, 28.0, 8.0, 1.0];
    for n in 0..=8usize {
        let expect = binom[n].sqrt() * c.powi(8 - n as i32) * s.powi(n as i32);
        let got = v["coeffs"][n][0].as_f64().unwrap();
        assert!((got - expect).abs() < 1e-10, "coefficient {n}");
        assert!(v["coeffs"][n][1].as_f64().unwrap().abs() < 1e-15);
    }
}

#[test]
fn random_pure_is_deterministic() {
    let dir = workdir("rand");
    let out = dir.join("r.json");
    assert_ok(&run(&[
        "state", "--family", "random-pure", "--N", "6", "--seed", "7", "--out",
        out.to_str().unwrap(),
    ]));
    let first = fs::read(&out).unwrap();
    assert_ok(&run(&[
        "state", "--family", "random-pure", "--N", "6", "--seed", "7", "--out",
        out.to_str().unwrap(),
    ]));
    let second = fs::read(&out).unwrap();
    assert_eq!(first, second, "same manifest + seed must be byte-identical");
}

#[test]
fn state_file_round_trips_through_reader() {
    let dir = workdir("roundtrip");
    let out = dir.join("r.json");
    assert_ok(&run(&[
        "state", "--family", "random-pure", "--N", "12", "--seed", "3", "--out",
        out.to_str().unwrap(),
    ]));
    // feeding the state back through a wigner run exercises the validating
    // reader; 17-digit decimals reproduce every f64 exactly
    let csv = dir.join("t.csv");
    let v = read_json(&out);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 13);
    assert_ok(&run(&[
        "wigner", "torus", "--state", out.to_str().unwrap(), "--out",
        csv.to_str().unwrap(),
    ]));
}

#[test]
fn wigner_torus_basis_state_summary() {
    let dir = workdir("torus");
    let state = dir.join("q.json");
    assert_ok(&run(&[
        "state", "--family", "qudit-basis", "--N", "2", "--n", "0", "--out",
        state.to_str().unwrap(),
    ]));
    let csv = dir.join("w.csv");
    assert_ok(&run(&[
        "wigner", "torus", "--state", state.to_str().unwrap(), "--out",
        csv.to_str().unwrap(),
    ]));
    let summary = read_json(&dir.join("w.summary.json"));
    assert!(summary["negativity"].as_f64().unwrap() <= 1e-10);
    assert!((summary["normalization_check"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    // csv headers carry the manifest verbatim plus the geometry line
    let body = fs::read_to_string(&csv).unwrap();
    let header = body.lines().next().unwrap();
    assert!(header.starts_with("# {"));
    let manifest: serde_json::Value = serde_json::from_str(&header[2..]).unwrap();
    assert_eq!(manifest["conventions"]["weyl"], "symmetric-half");
    let geometry = body.lines().nth(1).unwrap();
    let geo: serde_json::Value = serde_json::from_str(&geometry[2..]).unwrap();
    assert_eq!(geo["d"], 3);
    assert_eq!(geo["convention"], "symmetric-half");
    assert_eq!(body.lines().nth(2).unwrap(), "n,m,value");
}

#[test]
fn wigner_sphere_uniform_state() {
    let dir = workdir("sphere");
    let state = dir.join("s.json");
    // N = 4 maximally-spread sanity through a spin-coherent equator state
    assert_ok(&run(&[
        "state", "--family", "fock", "--N", "4", "--n", "2", "--out",
        state.to_str().unwrap(),
    ]));
    let csv = dir.join("w.csv");
    assert_ok(&run(&[
        "wigner", "sphere", "--state", state.to_str().unwrap(), "--out",
        csv.to_str().unwrap(),
    ]));
    let summary = read_json(&dir.join("w.summary.json"));
    assert!((summary["normalization_check"].as_f64().unwrap() - 1.0).abs() < 1e-7);
}

#[test]
fn wigner_plane_fock_one_is_negative() {
    let dir = workdir("plane");
    let state = dir.join("f1.json");
    assert_ok(&run(&[
        "state", "--family", "fock", "--N", "12", "--n", "1", "--out",
        state.to_str().unwrap(),
    ]));
    let csv = dir.join("w.csv");
    assert_ok(&run(&[
        "wigner", "plane", "--state", state.to_str().unwrap(), "--points", "61",
        "--out", csv.to_str().unwrap(),
    ]));
    let summary = read_json(&dir.join("w.summary.json"));
    assert!(summary["negativity"].as_f64().unwrap() > 0.01);
}

#[test]
fn wigner_plane_thread_count_does_not_change_output() {
    let dir = workdir("threads");
    let state = dir.join("v.json");
    assert_ok(&run(&[
        "state", "--family", "fock", "--N", "10", "--n", "0", "--out",
        state.to_str().unwrap(),
    ]));
    let csv1 = dir.join("w1.csv");
    let csv4 = dir.join("w2.csv");
    assert_ok(&run(&[
        "wigner", "plane", "--state", state.to_str().unwrap(), "--points", "41",
        "--out", csv1.to_str().unwrap(),
    ]));
    let out4 = bin()
        .env("SSRC_THREADS", "4")
        .args([
            "wigner", "plane", "--state", state.to_str().unwrap(), "--points", "41",
            "--out", csv4.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out4.status.success());
    let strip = |p: &Path| -> Vec<String> {
        fs::read_to_string(p)
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(String::from)
            .collect()
    };
    assert_eq!(strip(&csv1), strip(&csv4));
}

#[test]
fn even_dimension_torus_exits_3() {
    let dir = workdir("evend");
    let state = dir.join("s.json");
    assert_ok(&run(&[
        "state", "--family", "fock", "--N", "3", "--n", "0", "--out",
        state.to_str().unwrap(),
    ]));
    let out = run(&[
        "wigner", "torus", "--state", state.to_str().unwrap(), "--out",
        dir.join("w.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_state_family_exits_2() {
    let dir = workdir("badfam");
    let out = run(&[
        "state", "--family", "squeezed-cat", "--N", "4", "--out",
        dir.join("s.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_state_file_exits_2() {
    let dir = workdir("corrupt");
    let state = dir.join("s.json");
    fs::write(
        &state,
        r#"{"N": 2, "coeffs": [[0.9, 0.0], [0.0, 0.0], [0.0, 0.0]], "basis": "z"}"#,
    )
    .unwrap();
    let out = run(&[
        "wigner", "torus", "--state", state.to_str().unwrap(), "--out",
        dir.join("w.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2), "unnormalized state must be rejected");
}

#[test]
fn encode_presets_and_kappa_classes() {
    let dir = workdir("encode");
    let out = dir.join("e.json");
    assert_ok(&run(&[
        "encode", "--N", "4", "--K", "identity", "--U", "identity", "--out",
        out.to_str().unwrap(),
    ]));
    let r = read_json(&out);
    assert_eq!(r["kappa_class"], "identity");
    assert!(r["hw_defect"].as_f64().unwrap() < 1e-9);

    assert_ok(&run(&[
        "encode", "--N", "4", "--K", "identity", "--U", "rot_pi_y", "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(read_json(&out)["kappa_class"], "rot_pi_y");

    assert_ok(&run(&[
        "encode", "--N", "6", "--K", "theta_z_half", "--U", "identity", "--out",
        out.to_str().unwrap(),
    ]));
    let r = read_json(&out);
    // the transformed frame's vacuum sits at |3⟩_a|3⟩_b
    assert_eq!(r["new_vacuum_peak"], 3);
    // basis file exists and has d states
    let basis = read_json(Path::new(r["basis_path"].as_str().unwrap()));
    assert_eq!(basis["states"].as_array().unwrap().len(), 7);
}

#[test]
fn encode_rejects_non_unitary_matrix_with_exit_4() {
    let dir = workdir("nonunitary");
    let matrix = dir.join("m.json");
    // 5×5 with a scaled first row: not unitary
    let mut entries = vec![];
    for i in 0..5 {
        for j in 0..5 {
            let v = if i == j { if i == 0 { 2.0 } else { 1.0 } } else { 0.0 };
            entries.push([v, 0.0]);
        }
    }
    fs::write(
        &matrix,
        serde_json::to_string(&serde_json::json!({"dim": 5, "entries": entries})).unwrap(),
    )
    .unwrap();
    let out = run(&[
        "encode",
        "--N",
        "4",
        "--K",
        "identity",
        "--U",
        &format!("@{}", matrix.display()),
        "--out",
        dir.join("e.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_suites_exit_zero() {
    assert_ok(&run(&["verify", "sw-axioms", "--N", "8"]));
    assert_ok(&run(&["verify", "hw-relations", "--d", "3,5,7"]));
    assert_ok(&run(&["verify", "hudson", "--d", "3,5,7"]));
}

#[test]
fn verify_appendices_quick_exits_zero() {
    let out = run(&["verify", "appendices", "--quick"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("report on stdout");
    assert_eq!(report["pass"], true);
    for chk in report["checks"].as_array().unwrap() {
        assert_eq!(chk["pass"], true, "check failed: {}", chk["name"]);
    }
}

#[test]
fn sweep_minimal_config() {
    let dir = workdir("sweep");
    let cfg = dir.join("cfg.json");
    fs::write(
        &cfg,
        r#"{"experiment": "coherent-limit", "N_list": [25, 100], "alphas": [[1.0, 0.0]]}"#,
    )
    .unwrap();
    let csv = dir.join("out.csv");
    assert_ok(&run(&[
        "sweep", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap(),
    ]));
    let body = fs::read_to_string(&csv).unwrap();
    let data: Vec<&str> = body
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("experiment"))
        .collect();
    assert_eq!(data.len(), 2);
    assert!(data.iter().all(|l| l.contains("monotone") || l.contains("true")));

    // byte-identical on re-run
    let first = fs::read(&csv).unwrap();
    assert_ok(&run(&[
        "sweep", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap(),
    ]));
    assert_eq!(first, fs::read(&csv).unwrap());
}

#[test]
fn sweep_isolates_invalid_points() {
    let dir = workdir("sweepfail");
    let cfg = dir.join("cfg.json");
    // |α|² = 9 > N = 4 at the first point: a failed row, not an abort
    fs::write(
        &cfg,
        r#"{"experiment": "coherent-limit", "N_list": [4, 100], "alphas": [[3.0, 0.0]]}"#,
    )
    .unwrap();
    let csv = dir.join("out.csv");
    let out = run(&[
        "sweep", "--config", cfg.to_str().unwrap(), "--out", csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "sweep must not abort on point failures");
    let body = fs::read_to_string(&csv).unwrap();
    let failed: Vec<&str> = body.lines().filter(|l| l.contains("too large")).collect();
    assert_eq!(failed.len(), 1);
}

#[test]
fn sweep_malformed_config_exits_2() {
    let dir = workdir("badcfg");
    let cfg = dir.join("cfg.json");
    fs::write(&cfg, r#"{"experiment": "coherent-limit""#).unwrap();
    let out = run(&[
        "sweep", "--config", cfg.to_str().unwrap(), "--out",
        dir.join("out.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convention_flag_is_mirrored_into_headers() {
    let dir = workdir("conv");
    let state = dir.join("q.json");
    assert_ok(&run(&[
        "state", "--family", "qudit-basis", "--N", "2", "--n", "1", "--out",
        state.to_str().unwrap(),
    ]));
    let csv = dir.join("w.csv");
    assert_ok(&run(&[
        "--convention",
        "weyl=paper-literal",
        "wigner",
        "torus",
        "--state",
        state.to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]));
    let header = fs::read_to_string(&csv)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string();
    assert!(header.contains("paper-literal"));
    let summary = read_json(&dir.join("w.summary.json"));
    assert_eq!(summary["manifest"]["conventions"]["weyl"], "paper-literal");
}
