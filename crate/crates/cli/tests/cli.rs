use std::path::Path;
use std::process::{Command, Output};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

use invsemi::io::{FunctionFile, SpectrumFile};
use invsemi::{build, Basis, FamilySpec, FamilyTag, FunctionOnS};

fn invsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invsemi")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write_random(dir: &Path, name: &str, spec: &FamilySpec, seed: u64) -> String {
    let s = build(spec).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = FunctionOnS::random(Basis::Semigroup, s.size(), &mut rng);
    let path = dir.join(name);
    FunctionFile::from_function(&s, &f).unwrap().write(&path).unwrap();
    path.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn fft_on_r3_has_34_coefficients_and_inverts() {
    let dir = TempDir::new().unwrap();
    let input = write_random(dir.path(), "f.json", &FamilySpec::new(FamilyTag::Rook, 3), 1);
    let spec = path(&dir, "spec.json");
    let out = invsemi(&["fft", "--family", "rook", "--n", "3", "--in", &input, "--out", &spec]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let file = SpectrumFile::read(Path::new(&spec)).unwrap();
    assert_eq!(file.blocks.iter().map(|b| b.data.len()).sum::<usize>(), 34);

    let back = path(&dir, "back.json");
    assert_eq!(code(&invsemi(&["ifft", "--in", &spec, "--out", &back])), 0);
    let original = FunctionFile::read(Path::new(&input)).unwrap();
    let recovered = FunctionFile::read(Path::new(&back)).unwrap();
    assert_eq!(
        original.values.keys().collect::<Vec<_>>(),
        recovered.values.keys().collect::<Vec<_>>()
    );
    for (a, b) in original.values.values().zip(recovered.values.values()) {
        assert!((Complex64::new(a[0], a[1]) - Complex64::new(b[0], b[1])).norm() <= 1e-9);
    }
}

#[test]
fn verify_rotation_5_passes() {
    let dir = TempDir::new().unwrap();
    let report = path(&dir, "report.json");
    let out = invsemi(&[
        "verify", "--family", "rotation", "--n", "5", "--seed", "7", "--out", &report,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("result: pass"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    let suites = json["suites"].as_array().unwrap();
    let trip = suites.iter().find(|s| s["name"] == "round_trip").unwrap();
    assert!(trip["max_error"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn a_failed_check_exits_with_one() {
    let out = invsemi(&["verify", "--family", "rook", "--n", "3", "--tol", "0"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("result: fail"));
}

#[test]
fn convolving_with_the_identity_returns_g() {
    let dir = TempDir::new().unwrap();
    let spec = FamilySpec::new(FamilyTag::Rook, 3);
    let s = build(&spec).unwrap();
    let id = s.parse_element("1>1;2>2;3>3").unwrap();
    let unit = dir.path().join("unit.json");
    FunctionFile::from_function(&s, &FunctionOnS::delta(Basis::Semigroup, s.size(), id))
        .unwrap()
        .write(&unit)
        .unwrap();
    let g = write_random(dir.path(), "g.json", &spec, 2);
    let g_file = FunctionFile::read(Path::new(&g)).unwrap();

    let naive = path(&dir, "naive.json");
    let unit = unit.to_str().unwrap();
    assert_eq!(
        code(&invsemi(&[
            "convolve", "--in", unit, "--g-in", &g, "--out", &naive, "--method", "naive"
        ])),
        0
    );
    assert_eq!(FunctionFile::read(Path::new(&naive)).unwrap().values, g_file.values);

    let fast = path(&dir, "fast.json");
    assert_eq!(
        code(&invsemi(&["convolve", "--in", unit, "--g-in", &g, "--out", &fast])),
        0
    );
    let h = FunctionFile::read(Path::new(&fast)).unwrap();
    for (a, b) in h.values.values().zip(g_file.values.values()) {
        assert!((a[0] - b[0]).abs() <= 1e-12 && (a[1] - b[1]).abs() <= 1e-12);
    }
}

#[test]
fn outputs_do_not_depend_on_thread_count() {
    let dir = TempDir::new().unwrap();
    let input = write_random(dir.path(), "f.json", &FamilySpec::wreath(2, "Z3"), 3);
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let spec = path(&dir, &format!("spec{threads}.json"));
        let back = path(&dir, &format!("back{threads}.json"));
        assert_eq!(
            code(&invsemi(&["--threads", threads, "fft", "--in", &input, "--out", &spec])),
            0
        );
        assert_eq!(
            code(&invsemi(&["--threads", threads, "ifft", "--in", &spec, "--out", &back])),
            0
        );
        let report = invsemi(&[
            "--threads",
            threads,
            "verify",
            "--family",
            "rotation",
            "--n",
            "6",
            "--seed",
            "3",
        ]);
        outputs.push((
            std::fs::read(&spec).unwrap(),
            std::fs::read(&back).unwrap(),
            report.stdout,
        ));
    }
    assert!(outputs[0] == outputs[1]);
}

#[test]
fn errors_have_distinct_exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = path(&dir, "missing.json");
    assert_eq!(code(&invsemi(&["fft", "--in", &missing])), 3);
    assert_eq!(code(&invsemi(&["build", "--family", "klein", "--n", "2"])), 3);

    let input = write_random(dir.path(), "f.json", &FamilySpec::new(FamilyTag::Rook, 3), 4);
    let out = invsemi(&["fft", "--family", "rook", "--n", "2", "--in", &input]);
    assert_eq!(code(&out), 4);
    assert!(String::from_utf8_lossy(&out.stderr).contains("contract"));

    let out = invsemi(&["verify", "--family", "wreath_rook", "--n", "2", "--label-group", "S3"]);
    assert_eq!(code(&out), 5);
    assert_eq!(
        code(&invsemi(&["build", "--family", "rook", "--n", "8", "--cap", "1000"])),
        6
    );
    assert_eq!(code(&invsemi(&["build", "--family", "rotation", "--n", "0"])), 7);
    assert_eq!(code(&invsemi(&["build", "--family", "rook"])), 2);
}

#[test]
fn catalog_and_build_summary() {
    let out = invsemi(&["families", "--n", "4"]);
    let text = String::from_utf8_lossy(&out.stdout);
    for (name, size) in [
        ("rook", "209"),
        ("planar_rook", "70"),
        ("cyclic_shift", "141"),
        ("rotation", "61"),
    ] {
        assert!(
            text.lines()
                .any(|l| l.starts_with(name) && l.contains(&format!("n=4: {size}"))),
            "{name}"
        );
    }
    let out = invsemi(&["build", "--family", "rotation", "--n", "6"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["size"], 379);
    assert_eq!(json["classes"].as_array().unwrap().len(), 14);
}

#[test]
fn bench_writes_csv() {
    let out = invsemi(&["bench", "--family", "rotation", "--n", "4", "--n-max", "5"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "family,n,size,transform,additions,multiplications,wall_seconds"
    );
    assert_eq!(lines.len(), 1 + 2 * 4);
    assert!(lines[1].starts_with("rotation,4,61,zeta,"));
}
