//! CLI acceptance: a fixed command line and seed produce byte-identical
//! CSV/JSON (and SVG) outputs across repeated runs and across
//! PERCEPT_FUSION_THREADS settings of 1 and 4.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_percept-fusion");

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str], threads: &str) {
    let status = Command::new(BIN)
        .args(args)
        .env("PERCEPT_FUSION_THREADS", threads)
        .status()
        .expect("binary runs");
    assert!(status.success(), "command {args:?} failed");
}

fn dir_bytes(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        let name = entry.file_name().to_string_lossy().to_string();
        out.insert(name, fs::read(entry.path()).unwrap());
    }
    out
}

fn assert_identical(a: &Path, b: &Path, label: &str) -> bool {
    let (fa, fb) = (dir_bytes(a), dir_bytes(b));
    if fa.keys().collect::<Vec<_>>() != fb.keys().collect::<Vec<_>>() {
        eprintln!("  {label}: file sets differ: {:?} vs {:?}", fa.keys(), fb.keys());
        return false;
    }
    for (name, bytes) in &fa {
        if bytes != &fb[name] {
            eprintln!("  {label}: {name} differs");
            return false;
        }
    }
    true
}

const SIMULATE_CONFIG: &str = r#"{
  "schema_version": 1,
  "n_reps": 200,
  "observer": {
    "TemporalCapture": {
      "w_t": 0.6,
      "coupling_window_ms": 200.0,
      "featural_gating": true,
      "noise_sd_ms": 30.0,
      "simultaneity_band_ms": 25.0,
      "single_tone_band_inflation_ms": 0.0,
      "prior_entry_advantage_ms": 0.0,
      "attended": null,
      "motion_midpoint_ms": 500.0,
      "motion_anchor_soa_ms": 333.0,
      "motion_anchor_p": 0.9
    }
  },
  "trials": [
    { "paradigm": "toj", "first": "Left", "v_soa_ms": 30.0, "tones": null },
    {
      "paradigm": "toj",
      "first": "Left",
      "v_soa_ms": 30.0,
      "tones": { "Outside": { "lead_ms": 75.0, "lag_ms": 75.0 } }
    }
  ]
}"#;

#[test]
fn criterion_11_cli_determinism() {
    let root = tmp("determinism");
    let config_path = root.join("simulate.json");
    fs::write(&config_path, SIMULATE_CONFIG).unwrap();
    let config = config_path.to_str().unwrap();

    let mut pass = true;
    // (command label, argv builder as closures over the out dir)
    let commands: Vec<(&str, Vec<String>)> = vec![
        (
            "illusion",
            vec!["illusion", "fission", "--seed", "7", "--reps", "500"]
                .into_iter()
                .map(String::from)
                .collect(),
        ),
        (
            "simulate",
            vec!["simulate", "--config", config, "--seed", "11"]
                .into_iter()
                .map(String::from)
                .collect(),
        ),
        (
            "sweep",
            vec![
                "sweep",
                "--scenario",
                "fission",
                "--axis",
                "sigma_v:0.4:1.6:4",
                "--axis",
                "kappa:1:9:3",
                "--seed",
                "5",
                "--reps",
                "400",
            ]
            .into_iter()
            .map(String::from)
            .collect(),
        ),
    ];

    let mut fit_data: Option<PathBuf> = None;
    for (label, args) in &commands {
        let d1 = root.join(format!("{label}-t1a"));
        let d2 = root.join(format!("{label}-t1b"));
        let d4 = root.join(format!("{label}-t4"));
        for dir in [&d1, &d2, &d4] {
            let threads = if dir == &d4 { "4" } else { "1" };
            let mut argv: Vec<String> = args.clone();
            argv.push("--out-dir".into());
            argv.push(dir.to_string_lossy().into_owned());
            let argv_ref: Vec<&str> = argv.iter().map(|s| s.as_str()).collect();
            run(&argv_ref, threads);
        }
        pass &= assert_identical(&d1, &d2, &format!("{label} rerun"));
        pass &= assert_identical(&d1, &d4, &format!("{label} threads 1 vs 4"));
        if *label == "simulate" {
            fit_data = Some(d1.join("trials.csv"));
        }
    }

    // Fit determinism on the simulated data.
    let data = fit_data.expect("simulate ran");
    let f1 = root.join("fit-t1a");
    let f2 = root.join("fit-t1b");
    let f4 = root.join("fit-t4");
    for dir in [&f1, &f2, &f4] {
        let threads = if dir == &f4 { "4" } else { "1" };
        run(
            &[
                "fit",
                "--data",
                data.to_str().unwrap(),
                "--family",
                "temporal_capture",
                "--restarts",
                "3",
                "--seed",
                "9",
                "--out-dir",
                dir.to_str().unwrap(),
            ],
            threads,
        );
    }
    pass &= assert_identical(&f1, &f2, "fit rerun");
    pass &= assert_identical(&f1, &f4, "fit threads 1 vs 4");

    println!("ACCEPTANCE 11 (cli determinism across runs and thread counts): {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "acceptance criterion 11 failed");
}
