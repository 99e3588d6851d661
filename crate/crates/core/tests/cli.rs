//! The `latfourier` binary end to end, and every runnable example.

use std::path::Path;
use std::process::{Command, Output};

fn latfourier(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latfourier"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn verify_inequalities_passes_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = latfourier(
        &[
            "verify",
            "--lattice",
            "identity:2",
            "--N",
            "32",
            "--K",
            "8",
            "--suite",
            "inequalities",
            "--seed",
            "7",
        ],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = read(&dir.path().join("inequalities.csv"));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# schema=1"));
    assert_eq!(
        lines.next(),
        Some("name,d,N,K,p,b,beta,M_phi,lhs,rhs_scaffold,ratio,seed")
    );
    let mut hy_rows = 0;
    for row in lines.filter(|l| l.starts_with("hy,")) {
        let ratio: f64 = row.split(',').nth(10).unwrap().parse().unwrap();
        assert!(ratio <= 1.0 + 1e-9, "{row}");
        hy_rows += 1;
    }
    assert!(hy_rows > 0);
    assert!(dir.path().join("ratio_vs_p_hy.svg").exists());
}

#[test]
fn verify_hexagon_tiling() {
    let dir = tempfile::tempdir().unwrap();
    let out = latfourier(
        &[
            "verify",
            "--lattice",
            "a_d:2",
            "--suite",
            "tiling",
            "--samples",
            "10000",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = read(&dir.path().join("tiling.csv"));
    let row = csv
        .lines()
        .find(|l| l.starts_with("hex_a2,"))
        .expect("hexagon row");
    let fraction: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!(fraction >= 0.999, "{row}");
}

#[test]
fn malformed_matrix_file_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let matrix = dir.path().join("bad.txt");
    std::fs::write(&matrix, "2\n1 0\n0 x\n").unwrap();
    let lattice = format!("file:{}", matrix.display());
    let out = latfourier(&["transform-selftest", "--lattice", &lattice], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lattice"));
}

#[test]
fn band_too_wide_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = latfourier(&["multiplier", "--N", "8", "--K", "4"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("K"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# small run\nlattice = diag:2,1\nN = 16\nK = 4\ntrials = 4\nseed = 3\n",
    )
    .unwrap();
    let out = latfourier(
        &["report", "--config", cfg.to_str().unwrap(), "--K", "3"],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let summary = read(&dir.path().join("summary.txt"));
    assert!(summary.contains("[PASS] multiplier"));
    let csv = read(&dir.path().join("multiplier.csv"));
    let row: Vec<&str> = csv.lines().nth(2).unwrap().split(',').collect();
    assert_eq!((row[0], row[1], row[3]), ("gaussian", "2", "3"));
}

#[test]
fn unknown_suite_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = latfourier(&["verify", "--suite", "nope"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

macro_rules! example_runs {
    ($($name:ident),* $(,)?) => {$(
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example().expect(concat!(stringify!($name), " example should run"));
        }
    )*};
}

example_runs!(
    lattice_duality,
    hexagon_tiling,
    transform_roundtrip,
    inequality_scan,
    gaussian_multiplier,
);
