use std::fs;
use std::path::Path;
use std::process::Command;

use durrmeyer::cli::table::Table;
use durrmeyer::operators::{apply_on_grid, preset};
use durrmeyer::{Grid, TargetFunction};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_durrmeyer"));
    c.env_remove("DURRMEYER_OUT");
    c
}

fn ok(cmd: &mut Command) -> String {
    let o = cmd.output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn polyline_count(path: &Path) -> usize {
    let text = fs::read_to_string(path).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    doc.descendants().filter(|n| n.has_tag_name("polyline")).count()
}

#[test]
fn approximate_csv_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    ok(bin()
        .args([
            "approximate",
            "--preset",
            "classical,m3-tilde",
            "--n",
            "12,24",
            "--f",
            "example3",
            "--grid",
            "41",
            "--svg",
        ])
        .arg("--out")
        .arg(dir.path()));
    let t = Table::read(&dir.path().join("example3_approx.csv")).unwrap();
    assert_eq!(t.rows(), 41);
    let g = Grid::uniform(41).unwrap();
    let f = TargetFunction::example3();
    for (name, n) in [("classical", 12), ("classical", 24), ("m3-tilde", 12), ("m3-tilde", 24)] {
        let col = t.column(&format!("{name}_n{n}")).unwrap();
        for ((_, v), c) in apply_on_grid(&preset(name, n).unwrap(), &f, &g).iter().zip(col) {
            assert!((v - c).abs() <= 1e-12 * v.abs().max(1.0));
        }
    }
    assert_eq!(polyline_count(&dir.path().join("example3_approx.svg")), 5);
}

#[test]
fn output_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        ok(bin()
            .args([
                "errors",
                "--preset",
                "m1-example2,m2-tilde",
                "--n",
                "10",
                "--f",
                "abs-half",
                "--svg",
            ])
            .arg("--out")
            .arg(d.path()));
    }
    for file in ["abs-half_errors.csv", "abs-half_errors.svg"] {
        assert_eq!(
            fs::read(a.path().join(file)).unwrap(),
            fs::read(b.path().join(file)).unwrap(),
            "{file}"
        );
    }
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        format!(
            "# rate study\npreset = classical, m2-tilde\nn = 16,32,64,128\nf = sin2pi\ngrid = 51\nout = {}\nname = fromfile\n",
            dir.path().display()
        ),
    )
    .unwrap();
    let stdout = ok(bin().arg("rate").arg("--config").arg(&cfg).args(["--name", "flagged"]));
    assert!(stdout.contains("rate classical: slope"));
    assert!(stdout.contains("rate m2-tilde: slope"));
    let t = Table::read(&dir.path().join("flagged_rate.csv")).unwrap();
    assert_eq!(t.column("n").unwrap(), &[16.0, 32.0, 64.0, 128.0]);
    assert!(t.column("m2-tilde").is_some());
    assert!(!dir.path().join("fromfile_rate.csv").exists());
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested");
    ok(bin()
        .env("DURRMEYER_OUT", &out)
        .args(["approximate", "--preset", "classical", "--f", "e2", "--n", "6"]));
    assert!(out.join("e2_approx.csv").exists());
}

#[test]
fn custom_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let stdout = ok(bin()
        .args(["errors", "--f", "e0", "--n", "8", "--a0", "(n-1)/(2n)", "--a1", "1/n"])
        .arg("--out")
        .arg(dir.path()));
    let line = stdout
        .lines()
        .find(|l| l.starts_with("sup-error m1-custom_n8"))
        .unwrap();
    let e: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(e < 1e-13, "{line}");
}

#[test]
fn reproduce_examples_emit_files() {
    let dir = tempfile::tempdir().unwrap();
    for ex in ["1", "2", "3"] {
        let stdout = ok(bin().args(["reproduce-example", ex]).arg("--out").arg(dir.path()));
        if ex != "2" {
            assert_eq!(stdout.matches("PASS").count(), 2, "{stdout}");
        }
    }
    for stem in [
        "example1_approx",
        "example1_errors",
        "example2_approx",
        "example2_errors",
        "example3_approx",
        "example3_errors",
        "example3_m3-tilde_errors",
    ] {
        for ext in ["csv", "svg"] {
            assert!(dir.path().join(format!("{stem}.{ext}")).exists(), "{stem}.{ext}");
        }
    }
    assert_eq!(polyline_count(&dir.path().join("example1_errors.svg")), 4);
    assert_eq!(polyline_count(&dir.path().join("example3_m2-tilde_errors.svg")), 3);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code().unwrap();
    assert_eq!(code(&["approximate", "--preset", "nope"]), 2);
    assert_eq!(code(&["approximate", "--grid", "3"]), 2);
    assert_eq!(code(&["moments", "--preset", "m3-tilde", "--raw", "9"]), 2);
    assert_eq!(code(&["reproduce-example", "4"]), 2);
    assert_eq!(code(&["--help"]), 0);
    let file = tempfile::NamedTempFile::new().unwrap();
    assert_eq!(
        code(&[
            "approximate",
            "--preset",
            "classical",
            "--f",
            "e1",
            "--out",
            file.path().to_str().unwrap()
        ]),
        4
    );
}
