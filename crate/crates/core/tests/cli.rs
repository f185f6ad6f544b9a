use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fourier-lab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn meta(text: &str, key: &str) -> f64 {
    let prefix = format!("# {key}=");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
        .parse()
        .unwrap()
}

#[test]
fn sweep_csv_parses_back() {
    let o = lab(&[
        "sweep",
        "--func",
        "[0,1pi): 1 ; [1pi,2pi]: 0",
        "--x",
        "1/2pi",
        "--n-list",
        "1:200:1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["n", "value", "target", "abs_error"]);
    let rows: Vec<(u32, f64, f64, f64)> = reader.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 200);
    assert!(rows.iter().all(|r| r.2 == 1.0 && r.3 == (r.1 - r.2).abs()));
    assert!(rows[199].3 <= 0.01);
    assert!(text.contains("# method=series\n# x=1/2pi\n"));
    assert!(meta(&text, "fitted_rate").is_finite());
}

#[test]
fn coefficients_table() {
    let o = lab(&["coeffs", "--func", "x", "--max-k", "4", "--source", "closed-form"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,a_k,b_k"));
    assert_eq!(lines.next(), Some("0,6.283185307179586,0"));
    assert_eq!(text.lines().count(), 6);
    let q = lab(&["coeffs", "--func", "x", "--max-k", "4"]);
    assert!(q.status.success());
}

#[test]
fn partial_sum_methods() {
    for method in ["series", "kernel", "split", "periodic"] {
        let o = lab(&[
            "partial-sum",
            "--func",
            "exp(-x)",
            "--n",
            "40",
            "--x",
            "1",
            "--method",
            method,
        ]);
        assert!(o.status.success(), "{method}");
        let text = stdout(&o);
        let value: f64 = text.lines().nth(1).unwrap().split(',').nth(3).unwrap().parse().unwrap();
        assert!((value - (-1f64).exp()).abs() < 0.02, "{method}: {value}");
    }
}

#[test]
fn dirichlet_and_cot_windows() {
    let o = lab(&["dirichlet", "--func", "[0,2]: exp(-x)", "--range", "nodes:2"]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 9);
    assert!((meta(&text, "estimate") - 0.935547).abs() < 1e-2);
    let o = lab(&[
        "dirichlet",
        "--func",
        "1",
        "--range",
        "interior:1/2pi",
        "--N-start",
        "100",
        "--window",
        "4",
    ]);
    assert!((meta(&stdout(&o), "predicted") - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    let o = lab(&["cot", "--func", "exp(-x)", "--a", "1"]);
    assert!((meta(&stdout(&o), "estimate") - std::f64::consts::FRAC_PI_2).abs() < 1e-2);
}

#[test]
fn poisson_and_decay_tables() {
    let o = lab(&[
        "poisson",
        "--func",
        "[0,40]: exp(-x)",
        "--infinite",
        "--cut",
        "40",
        "--modes",
        "200",
    ]);
    let text = stdout(&o);
    let row: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    assert!((row[0] - 1.081977).abs() < 1e-6 && row[2] <= 5e-4);
    let o = lab(&["poisson", "--func", "[0,3]: x", "--m", "3", "--modes", "16"]);
    assert!(o.status.success());
    let o = lab(&[
        "rl-check",
        "--func",
        "[0,1pi]: x^2",
        "--a",
        "pi",
        "--N-list",
        "5,10,20,40",
    ]);
    assert!((meta(&stdout(&o), "fitted_exponent") + 2.0).abs() < 0.1);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("fourier-lab-{}.csv", std::process::id()));
    let o = lab(&["coeffs", "--func", "1", "--max-k", "2", "--out", path.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("k,a_k,b_k\n"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["sweep", "--func", "x", "--x", "1", "--bogus"][..],
        &["frobnicate"],
        &["sweep", "--func", "x(", "--x", "1"],
        &["dirichlet", "--func", "1", "--range", "sideways"],
        &["dirichlet", "--func", "1", "--range", "interior:4"],
        &["sweep", "--func", "x", "--x", "1", "--n-list", "5:1"],
        &["poisson", "--func", "[0,2]: exp(-x)"],
        &["poisson", "--func", "[0,2]: 1", "--m", "2", "--infinite"],
        &[
            "partial-sum",
            "--func",
            "x",
            "--n",
            "3",
            "--x",
            "7",
            "--method",
            "kernel",
        ],
    ] {
        let o = lab(args);
        assert_eq!(
            o.status.code(),
            Some(1),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(lab(&["--help"]).status.code(), Some(0));
}

#[test]
fn numerical_failures_exit_two_and_name_the_integral() {
    let o = lab(&[
        "partial-sum",
        "--func",
        "exp(1000*x)",
        "--n",
        "3",
        "--x",
        "1",
        "--method",
        "kernel",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("kernel_raw partial sum (n = 3"));
    let o = lab(&["coeffs", "--func", "exp(1000*x)", "--max-k", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a_0"));
}
