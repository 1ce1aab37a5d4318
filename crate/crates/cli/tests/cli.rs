use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn inclined(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_inclined"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn structured_value(text: &str, key: &str) -> String {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no `{key}` in report"))
        .to_string()
}

/// Rows of a CSV export as (header, rows).
fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], name: &str) -> usize {
    header.iter().position(|h| h == name).unwrap()
}

#[test]
fn examples_lists_the_six_builtins() {
    let o = inclined(&["examples"]);
    assert_eq!(o.status.code(), Some(0));
    let names: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split_whitespace().next().unwrap().to_string())
        .collect();
    assert_eq!(names, ["example1", "example2", "helix3d", "cubic", "helix4d", "circle4d"]);
    let shown = stdout(&inclined(&["examples", "--show", "helix4d"]));
    let varphi: f64 = structured_value(&shown, "meta.varphi0").parse().unwrap();
    assert_eq!(varphi, std::f64::consts::FRAC_PI_3);
}

#[test]
fn detect_exit_codes_follow_the_verdict() {
    let o = inclined(&["detect", "example1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("varphi="));
    assert_eq!(inclined(&["detect", "cubic"]).status.code(), Some(1));
    let o = inclined(&["detect", "helix4d"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("axis=(0.000000, 0.000000, 0.000000, 1.000000)"));
}

#[test]
fn analyze_reports_constant_torsion_ratios() {
    for (name, ratio) in [("example1", -0.25), ("example2", -4.0 / 3.0)] {
        let o = inclined(&["analyze", name, "--format", "structured"]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert_eq!(structured_value(&text, "verdict.is_inclined"), "true");
        let m: f64 = structured_value(&text, "frenet.kappa2_over_kappa1.mean").parse().unwrap();
        assert!((m - ratio).abs() < 1e-6, "{name}: {m}");
    }
}

#[test]
fn analyze_exits_zero_whatever_the_verdict() {
    assert_eq!(inclined(&["analyze", "cubic"]).status.code(), Some(0));
}

#[test]
fn parse_errors_exit_two_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.spec");
    fs::write(
        &path,
        "name = bad\ndomain = 0, 1\ncomponent_1 = s\ncomponent_2 = cos(\ncomponent_3 = s\n",
    )
    .unwrap();
    let o = inclined(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("component_2"), "{err}");
    assert!(err.contains("offset 4"), "{err}");
    assert_eq!(inclined(&["detect", "no-such-curve"]).status.code(), Some(2));
}

#[test]
fn degenerate_curves_exit_three_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("line.spec");
    fs::write(
        &path,
        "name = line\ndomain = 0, 1\ncomponent_1 = s\ncomponent_2 = 2*s\ncomponent_3 = 0\n",
    )
    .unwrap();
    let o = inclined(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("at s ="), "{}", stderr(&o));
}

#[test]
fn pt_export_of_example_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pt.csv");
    let o = inclined(&["frames", "example1", "--frame", "pt", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (header, rows) = read_csv(&out);
    assert_eq!(header.len(), 1 + 3 + 9 + 2);
    let (s, k1) = (column(&header, "s"), column(&header, "k1"));
    let origin = rows.iter().find(|r| r[s].abs() < 1e-9).unwrap();
    assert!((origin[k1] - 1.0).abs() < 1e-5);
    let t = column(&header, "T1");
    for r in &rows {
        let norm = (r[t].powi(2) + r[t + 1].powi(2) + r[t + 2].powi(2)).sqrt();
        assert!((norm - 1.0).abs() < 1e-8);
    }
}

#[test]
fn frenet_export_of_example_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("frenet.csv");
    let args = ["frames", "example2", "--frame", "frenet", "--samples", "1801", "--out"];
    let o = inclined(&[&args[..], &[out.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (header, rows) = read_csv(&out);
    let (s, kappa) = (column(&header, "s"), column(&header, "kappa1"));
    let row = rows.iter().find(|r| (r[s] - 1.0).abs() < 1e-9).unwrap();
    assert!((row[kappa] - 1.2).abs() < 1e-4);
}

#[test]
fn bishop_angle_export_and_dimension_check() {
    let o = inclined(&["frames", "example2", "--frame", "bishop-angle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("s,x1,x2,x3,T1,T2,T3,M1_1"));
    assert_eq!(inclined(&["frames", "helix4d", "--frame", "bishop-angle"]).status.code(), Some(2));
}

#[test]
fn exported_positions_reproduce_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    for (name, code) in [("example1", 0), ("example2", 0), ("cubic", 1)] {
        let out = dir.path().join(format!("{name}.csv"));
        let o = inclined(&["frames", name, "--frame", "pt", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let o = inclined(&["detect", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(code), "{name}: {}{}", stdout(&o), stderr(&o));
    }
}

#[test]
fn batch_mode_analyses_every_file() {
    let dir = tempfile::tempdir().unwrap();
    let show = |name: &str| stdout(&inclined(&["examples", "--show", name]));
    fs::write(dir.path().join("a.spec"), show("helix3d")).unwrap();
    fs::write(dir.path().join("b.spec"), show("cubic")).unwrap();
    fs::write(dir.path().join("notes.md"), "ignored").unwrap();
    let o = inclined(&["analyze", "--batch", dir.path().to_str().unwrap(), "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("name = helix3d") && text.contains("name = cubic"));
    assert!(text.find("name = helix3d") < text.find("name = cubic"));
}

#[test]
fn flags_override_the_spec() {
    let o = inclined(&[
        "analyze", "helix3d", "--samples", "501", "--domain", "0,4", "--tol-residual", "1e-6",
        "--seed", "11", "--format", "structured",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(structured_value(&text, "samples"), "501");
    assert_eq!(structured_value(&text, "domain"), "0e0, 4e0");
    assert_eq!(structured_value(&text, "tol.residual"), "1e-6");
    assert_eq!(structured_value(&text, "pt.rotation_seed"), "11");
    assert_eq!(inclined(&["analyze", "helix3d", "--tol-residual", "-1"]).status.code(), Some(2));
}
