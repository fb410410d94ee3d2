use slepian_cli::commands::{eigenvalue_rows, EIGENVALUE_HEADER};
use slepian_cli::io::{csv_string, read_matrix, write_matrix, Matrix};
use slepian_core::eigen::solve_fl;
use slepian_core::kernels::SpectralBand;
use slepian_core::regions::{AngularMask, Region};
use std::path::Path;
use std::process::{Command, Output};

const REGION: &str = "product:2,12,0.3,1.2";

fn slepian(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slepian")).current_dir(dir).args(args).output().expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = slepian(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn eigenvalues_match_library_exactly() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["eigen", "--P", "6", "--L", "5", "--region", REGION, "--out", "e", "--count", "4"]);
    let basis = solve_fl(&Region::product(2.0, 12.0, 0.3, 1.2).unwrap(), &SpectralBand::fourier_laguerre(6, 5).unwrap()).unwrap();
    let golden = csv_string(&EIGENVALUE_HEADER, eigenvalue_rows(&basis));
    assert_eq!(std::fs::read_to_string(dir.path().join("e/eigenvalues.csv")).unwrap(), golden);
    let vecs = read_matrix(&dir.path().join("e/eigenvectors.mat")).unwrap();
    assert_eq!((vecs.rows, vecs.cols), (4, 150));
    let v = vecs.to_complex();
    for alpha in 0..4 {
        assert_eq!(&v[alpha * 150..(alpha + 1) * 150], basis.eigenvector(alpha).unwrap().values());
    }
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        ok(
            dir.path(),
            &["eigen", "--P", "5", "--L", "6", "--region", REGION, "--out", out, "--order", "2", "--count", "3", "--grid", "6,5"],
        );
    }
    for f in ["eigenvalues.csv", "eigenvectors.mat", "shannon.json", "eigenfunctions/m2_rank3.csv"] {
        let a = std::fs::read(dir.path().join("a").join(f)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(f)).unwrap();
        assert_eq!(a, b, "{f}");
    }
}

#[test]
fn kernel_traces_agree_with_shannon() {
    let dir = tempfile::tempdir().unwrap();
    let region = "product:15,25,0.39269908169872414,1.1780972450961724";
    ok(dir.path(), &["kernel", "--P", "30", "--L", "20", "--region", region, "--out", "k"]);
    let out = ok(dir.path(), &["shannon", "--P", "30", "--L", "20", "--region", region, "--out", "s"]);
    let printed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let meta = json(&dir.path().join("k/meta.json"));
    let trace = meta["results"]["trace"].as_f64().unwrap();
    let shannon = printed["shannon"].as_f64().unwrap();
    assert!((trace - shannon).abs() < 1e-9 * shannon, "{trace} vs {shannon}");
    assert!((printed["angular"].as_f64().unwrap() - 108.23922002923938).abs() < 1e-9);
    assert_eq!(meta["config"]["M"], 70);
    for m in 0..20 {
        let g = read_matrix(&dir.path().join(format!("k/G_m{m}.mat"))).unwrap();
        assert_eq!((g.rows, g.cols), (20 - m, 20 - m));
    }
    assert_eq!(read_matrix(&dir.path().join("k/E.mat")).unwrap().rows, 30);
}

#[test]
fn validation_errors_exit_two_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let out = slepian(dir.path(), &["kernel", "--region", "product:25,15,0.39,1.18"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("region"));
    let out = slepian(dir.path(), &["shannon", "--domain", "fb", "--region", "fullball"]);
    assert_eq!(out.status.code(), Some(2));
    let out = slepian(dir.path(), &["project", "--P", "4", "--L", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("signal"));
    std::fs::write(dir.path().join("junk.mat"), b"not a matrix").unwrap();
    let out = slepian(dir.path(), &["project", "--P", "4", "--L", "3", "--signal", "junk.mat"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(slepian(dir.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn projecting_an_eigenfunction_gives_a_unit_vector() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["eigen", "--P", "5", "--L", "5", "--region", REGION, "--out", "e", "--count", "3"]);
    let vecs = read_matrix(&dir.path().join("e/eigenvectors.mat")).unwrap().to_complex();
    let f3 = vecs[2 * 125..3 * 125].to_vec();
    write_matrix(&dir.path().join("f3.mat"), &Matrix::complex(1, 125, f3)).unwrap();
    ok(dir.path(), &["project", "--P", "5", "--L", "5", "--region", REGION, "--signal", "f3.mat", "--out", "p"]);
    let h = read_matrix(&dir.path().join("p/slepian_coeffs.mat")).unwrap().to_complex();
    for (alpha, v) in h.iter().enumerate() {
        let want = if alpha == 2 { 1.0 } else { 0.0 };
        assert!((v.norm() - want).abs() < 1e-12, "alpha {alpha}: {v}");
    }
}

#[test]
fn synthetic_signal_projects_sparsely() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--P", "8", "--L", "8", "--region", REGION];
    ok(dir.path(), &[&["synth", "--out", "y", "--seed", "3"], &args[..]].concat());
    // Coefficients and analysis-grid samples describe the same signal.
    for signal in ["y/signal.mat", "y/samples.mat"] {
        let out = format!("p_{}", &signal[2..8]);
        ok(dir.path(), &[&["project", "--signal", signal, "--out", &out], &args[..]].concat());
    }
    let q = json(&dir.path().join("p_signal/q.json"));
    assert!(q["q_at_floor_shannon"].as_f64().unwrap() >= 0.99);
    let q2 = json(&dir.path().join("p_sample/q.json"));
    assert!((q["q_at_floor_shannon"].as_f64().unwrap() - q2["q_at_floor_shannon"].as_f64().unwrap()).abs() < 1e-10);
    let n = q["floor_shannon"].as_u64().unwrap() as usize;
    let decay = std::fs::read_to_string(dir.path().join("p_signal/decay.csv")).unwrap();
    let rows: Vec<Vec<f64>> = decay.lines().skip(1).map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 512);
    for row in &rows[n..2 * n] {
        assert!(row[2] < row[1], "index {}: slepian {} vs fl {}", row[0], row[2], row[1]);
    }
    let table = std::fs::read_to_string(dir.path().join("p_signal/q.csv")).unwrap();
    assert_eq!(table.lines().count(), 1 + 513);
}

#[test]
fn config_file_and_mask_regions() {
    let dir = tempfile::tempdir().unwrap();
    let mask = AngularMask::from_fn(6, |t, p| t < 1.0 && p < 3.0).unwrap();
    std::fs::create_dir(dir.path().join("cfg")).unwrap();
    std::fs::write(dir.path().join("cfg/cap.txt"), mask.to_pixel_text()).unwrap();
    std::fs::write(dir.path().join("cfg/run.cfg"), "P = 4\nL = 6\nregion = mask:cap.txt,1,8\nout = m\n").unwrap();
    ok(dir.path(), &["kernel", "--config", "cfg/run.cfg", "--P", "3"]);
    let meta = json(&dir.path().join("m/meta.json"));
    assert_eq!(meta["config"]["P"], 3);
    assert_eq!(meta["config"]["L"], 6);
    assert_eq!(meta["config"]["count"], 20);
    let g = read_matrix(&dir.path().join("m/G_mask.mat")).unwrap();
    assert_eq!((g.rows, g.cols), (36, 36));
    let trace = meta["results"]["trace"].as_f64().unwrap();
    let shannon = meta["results"]["shannon"].as_f64().unwrap();
    assert!((trace - shannon).abs() < 1e-9 * shannon);
    let out = slepian(dir.path(), &["kernel", "--config", "cfg/run.cfg", "--domain", "fb"]);
    assert_eq!(out.status.code(), Some(2));
}
