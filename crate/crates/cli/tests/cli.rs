use std::path::Path;
use std::process::{Command, Output};

fn revsurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revsurf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no {key:?} in {text}"))
        .trim()
        .parse()
        .unwrap()
}

fn solve_catenoid_like(out: &Path) -> Output {
    revsurf(&[
        "solve-mean",
        "--axis",
        "timelike",
        "--h-expr",
        "0",
        "--eta",
        "+1",
        "--consts",
        "2,1,0",
        "--range",
        "0:1",
        "--nodes",
        "2001",
        "--out",
        out.to_str().unwrap(),
    ])
}

#[test]
fn spacelike_moments_output() {
    let o = revsurf(&[
        "moments",
        "--k1",
        "2",
        "--k2",
        "4",
        "--surface",
        "spacelike",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!((field(&text, "mu ") - 3.0).abs() <= 1e-12);
    assert!((field(&text, "sigma ") - 0.5f64.sqrt()).abs() <= 1e-12);
    assert!((field(&text, "H ") + 3.0).abs() <= 1e-12);
    assert!((field(&text, "S ") - 2.0).abs() <= 1e-12);
}

#[test]
fn timelike_moments_quadrature_matches_closed_form() {
    let o = revsurf(&[
        "moments",
        "--k1",
        "2",
        "--k2",
        "4",
        "--surface",
        "timelike",
        "--a",
        "0.2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let (q, c) = (field(&text, "mu quadrature"), field(&text, "mu closed"));
    assert!((q - c).abs() <= 1e-10, "{q} {c}");
    assert_eq!(field(&text, "a->0 limit"), 2.0);
}

#[test]
fn solve_then_verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let o = solve_catenoid_like(&csv);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let o = revsurf(&[
        "verify",
        "--in",
        csv.to_str().unwrap(),
        "--which",
        "mean",
        "--expr",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(field(&stdout(&o), "max |H - H*|") <= 1e-5);
}

#[test]
fn wrong_profile_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    assert!(solve_catenoid_like(&csv).status.success());
    let o = revsurf(&[
        "verify",
        "--in",
        csv.to_str().unwrap(),
        "--which",
        "mean",
        "--expr",
        "0.01",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn skew_solve_writes_mesh_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("k.csv");
    let obj = dir.path().join("k.obj");
    let o = revsurf(&[
        "solve-skew",
        "--family",
        "s-xy",
        "--graph",
        "1",
        "--s-expr",
        "0.2 + 0.1*u",
        "--sign",
        "-",
        "--a0",
        "1",
        "--offset",
        "-0.5",
        "--range",
        "0.5:2",
        "--nodes",
        "801",
        "--out",
        csv.to_str().unwrap(),
        "--mesh",
        obj.to_str().unwrap(),
        "--theta",
        "-1:1:16",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let mesh = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(
        mesh.lines().filter(|l| l.starts_with("v ")).count(),
        801 * 16
    );
    assert_eq!(
        mesh.lines().filter(|l| l.starts_with("f ")).count(),
        2 * 800 * 15
    );
    let o = revsurf(&[
        "verify",
        "--in",
        csv.to_str().unwrap(),
        "--which",
        "skew",
        "--expr",
        "0.2 + 0.1*u",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn missing_constants_is_a_usage_error() {
    let o = revsurf(&[
        "solve-mean",
        "--axis",
        "timelike",
        "--h-expr",
        "0",
        "--range",
        "0:1",
        "--out",
        "x.csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn wrong_constant_count_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let o = revsurf(&[
        "solve-mean",
        "--axis",
        "lightlike",
        "--h-expr",
        "0",
        "--consts",
        "1,1,2",
        "--range",
        "0:1",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn radicand_touching_zero_is_a_domain_violation() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("d.csv");
    let o = revsurf(&[
        "solve-mean",
        "--axis",
        "spacelike-sp",
        "--h-expr",
        "0",
        "--consts",
        "0,0,0",
        "--range",
        "0:1",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!csv.exists());
}

#[test]
fn missing_input_file_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("absent.csv");
    let o = revsurf(&[
        "verify",
        "--in",
        csv.to_str().unwrap(),
        "--which",
        "mean",
        "--expr",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_expression_is_a_usage_error() {
    let o = revsurf(&[
        "solve-mean",
        "--axis",
        "timelike",
        "--h-expr",
        "sin(",
        "--consts",
        "2,1,0",
        "--range",
        "0:1",
        "--out",
        "x.csv",
    ]);
    assert_eq!(o.status.code(), Some(2));
}
