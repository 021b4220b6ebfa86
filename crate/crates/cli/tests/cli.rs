use std::fs;
use std::process::{Command, Output};

fn biot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn run_writes_summary_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = biot(&["run", "--example", "1", "--n", "4", "--T", "0.3", "--out", out, "--vtk"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("avg iterations:"));
    assert!(stdout(&o).contains("err_p_L2:"));
    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let mut lines = summary.lines();
    assert_eq!(lines.next(), Some("h,tau,err_p_L2,err_u_L2,order_p,avg_iters,max_iters"));
    assert!(lines.next().unwrap().starts_with("0.25,0.1,"));
    for level in 0..=3 {
        let vtk = fs::read_to_string(dir.path().join(format!("level_{level:04}.vtk"))).unwrap();
        assert!(vtk.starts_with("# vtk DataFile Version"));
        assert!(vtk.contains("POINTS 25 double"));
    }
}

#[test]
fn zero_case_has_zero_errors() {
    let o = biot(&["run", "--example", "custom", "--n", "3", "--T", "0.2", "--scheme", "monolithic"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("err_p_L2: 0.000000e0"), "{text}");
    assert!(text.contains("err_u_L2: 0.000000e0"), "{text}");
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# small run\nexample = 2\nn = 3\ntau = 0.1\nT = 0.3\nL = auto\neps-r = 1e-8\n").unwrap();
    let out = dir.path().join("o");
    let o = biot(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--n",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    assert!(summary.lines().nth(1).unwrap().starts_with("0.5,0.1,"));
}

#[test]
fn exit_codes_separate_config_solver_and_exhaustion() {
    // config errors
    assert_eq!(biot(&["run", "--n", "0"]).status.code(), Some(2));
    assert_eq!(biot(&["run", "--L", "-1"]).status.code(), Some(2));
    assert_eq!(biot(&["run", "--eps-r", "2"]).status.code(), Some(2));
    assert_eq!(biot(&["run", "--example", "2", "--tau", "0.1", "--T", "0.1"]).status.code(), Some(2));
    assert_eq!(biot(&["run", "--config", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(biot(&["run", "--scheme", "jacobi"]).status.code(), Some(2));
    // iteration exhaustion reports the failing level and increment
    let o = biot(&["run", "--n", "4", "--T", "0.3", "--max-iters", "2"]);
    assert_eq!(o.status.code(), Some(4));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("level 2") && err.contains("increment"), "{err}");
}

#[test]
fn convergence_table_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let args = |sub: &str| {
        vec![
            "convergence".to_string(),
            "--meshes".into(),
            "2,4".into(),
            "--T".into(),
            "0.3".into(),
            "--out".into(),
            dir.path().join(sub).to_str().unwrap().to_string(),
        ]
    };
    let a: Vec<String> = args("a");
    let b: Vec<String> = args("b");
    let oa = biot(&a.iter().map(String::as_str).collect::<Vec<_>>());
    let ob = biot(&b.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(oa.status.code(), Some(0));
    assert_eq!(ob.status.code(), Some(0));
    let ca = fs::read(dir.path().join("a/convergence.csv")).unwrap();
    let cb = fs::read(dir.path().join("b/convergence.csv")).unwrap();
    assert_eq!(ca, cb);
    let text = String::from_utf8(ca).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].contains(",,"), "first row has no order");
    assert!(!rows[2].split(',').nth(4).unwrap().is_empty());
}

#[test]
fn sweep_rows_follow_parameter_order() {
    let o = biot(&["sweep", "--n", "4", "--T", "0.3", "--values", "0.1,0.0,0.05"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let ls: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(text.lines().next(), Some("L,avg_iters,converged"));
    assert_eq!(ls, ["0.1", "0", "0.05"]);
}

#[test]
fn sweep_at_classical_value_matches_plain_run() {
    let run = biot(&["run", "--n", "4", "--T", "0.4", "--L", "auto"]);
    let avg = stdout(&run)
        .lines()
        .find_map(|l| l.strip_prefix("avg iterations: ").map(str::to_string))
        .unwrap();
    let sweep = biot(&["sweep", "--n", "4", "--T", "0.4", "--factors", "1"]);
    let row = stdout(&sweep).lines().nth(1).unwrap().to_string();
    assert_eq!(row.split(',').nth(1).unwrap(), avg);
    assert!(row.ends_with("true"));
}

#[test]
fn empty_sweep_gives_header_only() {
    let o = biot(&["sweep", "--n", "2", "--T", "0.2", "--values"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "L,avg_iters,converged\n");
}
