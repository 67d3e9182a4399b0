use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use cavity_sim::cli::{run, run_with_output};
use cavity_sim::io::{read_mask, read_scalar, write_mask};
use cavity_sim::phantom::{Phantom, PhantomFiles};
use cavity_sim::volume::{BinaryMask, Grid, Volume};

fn phantom_files(dir: &Path) -> PhantomFiles {
    Phantom::new(40, 2.5, 3)
        .unwrap()
        .write_to(dir, "subject")
        .unwrap()
}

fn simulate_args(files: &PhantomFiles, out: &Path, extra: &[&str]) -> Vec<String> {
    let mut args: Vec<String> = vec![
        "cavity-sim".into(),
        "simulate".into(),
        "--image".into(),
        files.image.display().to_string(),
        "--parcellation".into(),
        files.parcellation.display().to_string(),
        "--labelmap".into(),
        files.labelmap.display().to_string(),
        "--output-dir".into(),
        out.display().to_string(),
        "--volumes".into(),
        "2000,4000".into(),
    ];
    args.extend(extra.iter().map(|s| s.to_string()));
    args
}

fn dir_contents(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                fs::read(&p).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

fn run_bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cavity-sim"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn simulate_writes_triples_deterministically() {
    let tmp = tempfile::tempdir().unwrap();
    let files = phantom_files(tmp.path());
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert_eq!(
        run(simulate_args(
            &files,
            &a,
            &["--seed", "42", "--draws", "3", "--workers", "1"]
        )),
        0
    );
    assert_eq!(
        run(simulate_args(
            &files,
            &b,
            &["--seed", "42", "--draws", "3", "--workers", "3"]
        )),
        0
    );

    let ca = dir_contents(&a);
    assert_eq!(ca.len(), 9);
    for d in 0..3 {
        for suffix in ["resected.nii.gz", "label.nii.gz", "meta.json"] {
            let name = format!("subject_draw{d:03}_{suffix}");
            assert!(ca.iter().any(|(n, _)| *n == name), "missing {name}");
        }
    }
    assert_eq!(ca, dir_contents(&b), "worker count changed the outputs");

    let labels: Vec<BinaryMask> = (0..3)
        .map(|d| {
            read_mask(a.join(format!("subject_draw{d:03}_label.nii.gz")))
                .unwrap()
                .0
        })
        .collect();
    assert!(labels.iter().all(|l| l.count() > 0));
    assert!(labels[0] != labels[1] && labels[1] != labels[2] && labels[0] != labels[2]);

    let meta: serde_json::Value =
        serde_json::from_slice(&fs::read(a.join("subject_draw001_meta.json")).unwrap()).unwrap();
    assert_eq!(meta["master_seed"], 42);
    assert_eq!(meta["draw"], 1);
    assert_eq!(meta["image"]["sha256"].as_str().unwrap().len(), 64);
    assert!(meta["cavity_volume"].as_f64().unwrap() > 0.0);
    assert_eq!(
        meta["cavity_voxels"].as_u64().unwrap() as usize,
        labels[1].count()
    );
    let v = meta["params"]["volume"].as_f64().unwrap();
    assert!(v == 2000.0 || v == 4000.0);

    // A different seed moves the cavities.
    let c = tmp.path().join("c");
    assert_eq!(
        run(simulate_args(&files, &c, &["--seed", "43", "--draws", "1"])),
        0
    );
    assert_ne!(
        fs::read(c.join("subject_draw000_label.nii.gz")).unwrap(),
        fs::read(a.join("subject_draw000_label.nii.gz")).unwrap()
    );
}

#[test]
fn simulate_exports_meshes_and_reads_config() {
    let tmp = tempfile::tempdir().unwrap();
    let files = phantom_files(tmp.path());
    let out = tmp.path().join("out");
    let config = tmp.path().join("cfg.json");
    fs::write(
        &config,
        format!(
            r#"{{"seed": 7, "draws": 4, "labelmap": {:?},
               "distributions": {{"volume_mode": "exact-volume", "hemisphere": "left",
                                  "volume": {{"kind": "samples", "volumes": [3000]}}}}}}"#,
            files.labelmap.display().to_string()
        ),
    )
    .unwrap();
    let args: Vec<String> = vec![
        "cavity-sim".into(),
        "simulate".into(),
        "--config".into(),
        config.display().to_string(),
        "--image".into(),
        files.image.display().to_string(),
        "--parcellation".into(),
        files.parcellation.display().to_string(),
        "--output-dir".into(),
        out.display().to_string(),
        "--draws".into(),
        "2".into(),
        "--export-mesh".into(),
    ];
    assert_eq!(run(args), 0);
    let names: Vec<String> = dir_contents(&out).into_iter().map(|(n, _)| n).collect();
    assert_eq!(names.len(), 8, "{names:?}");
    assert!(names.contains(&"subject_draw001_mesh.ply".to_string()));
    let meta: serde_json::Value =
        serde_json::from_slice(&fs::read(out.join("subject_draw000_meta.json")).unwrap()).unwrap();
    assert_eq!(meta["master_seed"], 7);
    assert_eq!(meta["params"]["hemisphere"], "left");
    assert_eq!(meta["params"]["volume_mode"], "exact-volume");
    assert_eq!(meta["outputs"]["mesh"], "subject_draw000_mesh.ply");
}

#[test]
fn simulate_validation_failures() {
    let tmp = tempfile::tempdir().unwrap();
    let files = phantom_files(tmp.path());
    let out = tmp.path().join("out");
    let mut args = simulate_args(&files, &out, &[]);
    let (code, _, err) = run_bin(&args.iter().skip(1).map(String::as_str).collect::<Vec<_>>());
    assert_eq!(code, 1);
    assert!(err.contains("--seed"), "{err}");

    args.extend([
        "--seed".into(),
        "1".into(),
        "--volume-range".into(),
        "10".into(),
        "5".into(),
    ]);
    assert_eq!(run(args), 1);
    assert_eq!(
        run(simulate_args(
            &files,
            &out,
            &["--seed", "1", "--draws", "0"]
        )),
        1
    );

    let bad_cfg = tmp.path().join("bad.json");
    fs::write(&bad_cfg, "{\n  \"seed\": 1,\n  \"colour\": 3\n}").unwrap();
    let (code, _, err) = run_bin(&["simulate", "--config", bad_cfg.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("bad.json:3"), "{err}");
    fs::write(
        &bad_cfg,
        "{\"seed\": 1,\n \"distributions\": {\"volume-mode\": \"paper\"}}",
    )
    .unwrap();
    let (code, _, err) = run_bin(&["simulate", "--config", bad_cfg.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("volume-mode"), "{err}");

    assert_eq!(
        run([
            "cavity-sim",
            "simulate",
            "--seed",
            "1",
            "--image",
            "/nonexistent.nii",
            "--parcellation",
            "/x.nii",
            "--labelmap",
            "/m.json",
            "--output-dir",
            "/tmp/x"
        ]),
        1
    );
    assert_eq!(run(["cavity-sim", "frobnicate"]), 1);
}

#[test]
fn simulate_missing_ventricles_names_category() {
    let tmp = tempfile::tempdir().unwrap();
    let files = phantom_files(tmp.path());
    fs::write(
        &files.labelmap,
        r#"{"background": [0, 9], "brainstem": [7], "cerebellum": [8], "gm-left": [3],
            "gm-right": [4], "hemisphere-left": [1, 3, 5], "hemisphere-right": [2, 4, 6]}"#,
    )
    .unwrap();
    let out = tmp.path().join("out");
    let args = simulate_args(&files, &out, &["--seed", "42"]);
    let (code, _, err) = run_bin(&args.iter().skip(1).map(String::as_str).collect::<Vec<_>>());
    assert_ne!(code, 0);
    assert!(err.contains("\"ventricles\""), "{err}");
}

#[test]
fn simulate_grid_mismatch_names_files() {
    let tmp = tempfile::tempdir().unwrap();
    let files = phantom_files(tmp.path());
    let other = Phantom::new(32, 2.5, 3)
        .unwrap()
        .write_to(tmp.path().join(""), "small")
        .unwrap();
    let out = tmp.path().join("out");
    let args = [
        "simulate",
        "--seed",
        "1",
        "--image",
        files.image.to_str().unwrap(),
        "--parcellation",
        other.parcellation.to_str().unwrap(),
        "--labelmap",
        files.labelmap.to_str().unwrap(),
        "--output-dir",
        out.to_str().unwrap(),
    ];
    let (code, _, err) = run_bin(&args);
    assert_eq!(code, 1);
    assert!(err.contains("small_parcellation.nii.gz"), "{err}");
}

fn cube_mask(grid: Grid, lo: [usize; 3], hi: [usize; 3]) -> BinaryMask {
    Volume::from_fn(grid, |p| (0..3).all(|a| p[a] >= lo[a] && p[a] < hi[a]))
}

fn write_set(dir: &Path, masks: &[(&str, BinaryMask)]) {
    fs::create_dir_all(dir).unwrap();
    for (name, m) in masks {
        write_mask(dir.join(name), m, None).unwrap();
    }
}

#[test]
fn evaluate_reports_dice() {
    let tmp = tempfile::tempdir().unwrap();
    let g = Grid::with_dims([4, 4, 4]).unwrap();
    let left = cube_mask(g, [0, 0, 0], [2, 4, 4]);
    let middle = cube_mask(g, [1, 0, 0], [3, 4, 4]);
    let refs = tmp.path().join("refs");
    let preds = tmp.path().join("preds");
    write_set(
        &refs,
        &[("a.nii.gz", left.clone()), ("b.nii.gz", middle.clone())],
    );
    write_set(
        &preds,
        &[("a.nii.gz", middle.clone()), ("b.nii.gz", middle.clone())],
    );

    let out = tmp.path().join("eval");
    let mut stdout = Vec::new();
    let code = run_with_output(
        [
            "cavity-sim",
            "evaluate",
            "--reference",
            refs.to_str().unwrap(),
            "--prediction",
            preds.to_str().unwrap(),
            "--output-dir",
            out.to_str().unwrap(),
        ],
        &mut stdout,
    );
    assert_eq!(code, 0);
    let csv = fs::read_to_string(out.join("dice.csv")).unwrap();
    assert_eq!(
        csv,
        "name,dice,reference_voxels,prediction_voxels\na.nii.gz,0.5,32,32\nb.nii.gz,1.0,32,32\n"
    );
    let summary: serde_json::Value =
        serde_json::from_slice(&fs::read(out.join("dice_summary.json")).unwrap()).unwrap();
    assert_eq!(summary["pairs"], 2);
    assert_eq!(summary["dice"]["median"], 0.75);

    // A set against itself.
    let code = run([
        "cavity-sim",
        "evaluate",
        "--reference",
        refs.to_str().unwrap(),
        "--prediction",
        refs.to_str().unwrap(),
        "--output-dir",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let summary: serde_json::Value =
        serde_json::from_slice(&fs::read(out.join("dice_summary.json")).unwrap()).unwrap();
    assert_eq!(summary["dice"]["median"], 1.0);
    assert_eq!(summary["dice"]["iqr"], 0.0);
    let csv = fs::read_to_string(out.join("dice.csv")).unwrap();
    assert!(csv
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth(1) == Some("1.0")));
}

#[test]
fn evaluate_reports_orphans_and_empty_sets() {
    let tmp = tempfile::tempdir().unwrap();
    let empty_a = tmp.path().join("ea");
    let empty_b = tmp.path().join("eb");
    fs::create_dir_all(&empty_a).unwrap();
    fs::create_dir_all(&empty_b).unwrap();
    let out = tmp.path().join("o");
    let (code, _, err) = run_bin(&[
        "evaluate",
        "--reference",
        empty_a.to_str().unwrap(),
        "--prediction",
        empty_b.to_str().unwrap(),
        "--output-dir",
        out.to_str().unwrap(),
    ]);
    assert_ne!(code, 0);
    assert!(err.contains("no pairs found"), "{err}");

    let g = Grid::with_dims([3, 3, 3]).unwrap();
    write_set(
        &empty_a,
        &[
            ("x.nii.gz", cube_mask(g, [0; 3], [1; 3])),
            ("y.nii", cube_mask(g, [0; 3], [1; 3])),
        ],
    );
    write_set(
        &empty_b,
        &[
            ("x.nii.gz", cube_mask(g, [0; 3], [2; 3])),
            ("z.nii.gz", cube_mask(g, [0; 3], [2; 3])),
        ],
    );
    let (code, _, err) = run_bin(&[
        "evaluate",
        "--reference",
        empty_a.to_str().unwrap(),
        "--prediction",
        empty_b.to_str().unwrap(),
        "--output-dir",
        out.to_str().unwrap(),
    ]);
    assert_ne!(code, 0);
    assert!(err.contains("y.nii") && err.contains("z.nii.gz"), "{err}");
    assert!(!err.contains("x.nii.gz"), "{err}");
}

#[test]
fn consensus_modes() {
    let tmp = tempfile::tempdir().unwrap();
    let g = Grid::with_dims([12, 12, 12]).unwrap();
    let m = cube_mask(g, [2, 3, 4], [9, 8, 10]);
    let dir = tmp.path().join("raters");
    write_set(
        &dir,
        &[
            ("r1.nii.gz", m.clone()),
            ("r2.nii.gz", m.clone()),
            ("r3.nii.gz", m.clone()),
        ],
    );
    let paths: Vec<PathBuf> = ["r1", "r2", "r3"]
        .iter()
        .map(|r| dir.join(format!("{r}.nii.gz")))
        .collect();
    let p: Vec<&str> = paths.iter().map(|p| p.to_str().unwrap()).collect();

    let out = tmp.path().join("consensus.nii.gz");
    assert_eq!(
        run([
            "cavity-sim",
            "consensus",
            "--output",
            out.to_str().unwrap(),
            p[0],
            p[1],
            p[2]
        ]),
        0
    );
    assert!(read_mask(&out).unwrap().0.data() == m.data());

    let loo = tmp.path().join("loo");
    assert_eq!(
        run([
            "cavity-sim",
            "consensus",
            "--leave-one-out",
            "--output",
            loo.to_str().unwrap(),
            p[0],
            p[1],
            p[2]
        ]),
        0
    );
    let names: Vec<String> = dir_contents(&loo).into_iter().map(|(n, _)| n).collect();
    assert_eq!(
        names,
        [
            "consensus_without_r1.nii.gz",
            "consensus_without_r2.nii.gz",
            "consensus_without_r3.nii.gz"
        ]
    );

    let odd = tmp.path().join("odd.nii.gz");
    write_mask(
        &odd,
        &cube_mask(Grid::with_dims([10, 12, 12]).unwrap(), [0; 3], [2; 3]),
        None,
    )
    .unwrap();
    let (code, _, err) = run_bin(&[
        "consensus",
        "--output",
        out.to_str().unwrap(),
        p[0],
        odd.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("odd.nii.gz"), "{err}");

    assert_eq!(
        run([
            "cavity-sim",
            "consensus",
            "--output",
            out.to_str().unwrap(),
            p[0]
        ]),
        1
    );
}

fn stats_json(csv: &str, extra: &[&str]) -> (i32, serde_json::Value) {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("scores.csv");
    fs::write(&path, csv).unwrap();
    let mut args = vec![
        "cavity-sim",
        "stats",
        "--input",
        path.to_str().unwrap(),
        "--x",
        "a",
        "--y",
        "b",
        "--json",
    ];
    args.extend_from_slice(extra);
    let mut out = Vec::new();
    let code = run_with_output(args, &mut out);
    let value = serde_json::from_slice(&out).unwrap_or(serde_json::Value::Null);
    (code, value)
}

#[test]
fn stats_examples() {
    let (code, v) = stats_json("a,b\n0.8,0.8\n0.7,0.7\n0.9,0.9\n", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["reject"], false);

    let (_, v) = stats_json("a,b\n3,1\n4,2\n", &[]);
    assert!((v["p_value"].as_f64().unwrap() - 1.0 / 6.0).abs() < 1e-12);
    assert_eq!(v["u"], 4.0);
    assert_eq!(v["reject"], false);
    assert_eq!(v["method"], "exact");

    let (_, v) = stats_json("a,b\n3,1\n4,2\n", &["--alternative", "less"]);
    assert!((v["p_value"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let (_, v) = stats_json("a,b\n3,1\n4,2\n", &["--comparisons", "42"]);
    let t = v["adjusted_alpha"].as_f64().unwrap();
    assert!((t - 0.00119).abs() < 5e-6, "{t}");

    // Unequal column lengths via empty cells.
    let (code, v) = stats_json("a,b\n5,1\n6,\n7,2\n", &[]);
    assert_eq!(code, 0);
    assert_eq!(v["n_x"], 3);
    assert_eq!(v["n_y"], 2);
}

#[test]
fn stats_text_and_errors() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("s.csv");
    fs::write(&path, "a,b\n1,2\nx,3\n4,5\n6,n/a\n").unwrap();
    let (code, _, err) = run_bin(&[
        "stats",
        "--input",
        path.to_str().unwrap(),
        "--x",
        "a",
        "--y",
        "b",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("rows 3, 5"), "{err}");
    assert!(err.contains("s.csv:3"), "{err}");

    fs::write(&path, "a,b\n3,1\n4,2\n").unwrap();
    let (code, out, _) = run_bin(&[
        "stats",
        "--input",
        path.to_str().unwrap(),
        "--x",
        "a",
        "--y",
        "b",
        "--comparisons",
        "42",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("U = 4"), "{out}");
    assert!(out.contains("reject = false"), "{out}");
    assert!(
        out.contains("adjusted alpha = 0.05 / 42 = 0.00119"),
        "{out}"
    );

    let (code, _, err) = run_bin(&[
        "stats",
        "--input",
        path.to_str().unwrap(),
        "--x",
        "a",
        "--y",
        "c",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("no column \"c\""), "{err}");
}

#[test]
fn simulate_outputs_keep_input_geometry() {
    let tmp = tempfile::tempdir().unwrap();
    let files = phantom_files(tmp.path());
    let out = tmp.path().join("o");
    assert_eq!(run(simulate_args(&files, &out, &["--seed", "5"])), 0);
    let (input, _) = read_scalar(&files.image).unwrap();
    let (resected, h) = read_scalar(out.join("subject_draw000_resected.nii.gz")).unwrap();
    assert_eq!(input.grid(), resected.grid());
    assert_eq!(h.datatype, cavity_sim::io::Datatype::F32);
}
