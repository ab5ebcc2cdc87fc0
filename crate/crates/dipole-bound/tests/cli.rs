//! End-to-end CLI checks that touch the filesystem and process environment.

use dipole_bound::cli::{run, CONFIG_ENV_VAR};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("dipole-bound".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scratch_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("dipole-bound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn env_var_names_default_config() {
    let dir = scratch_dir();
    let path = dir.join("env-constants.toml");
    std::fs::write(&path, "alpha_inverse = 137.0\n").unwrap();
    std::env::set_var(CONFIG_ENV_VAR, &path);
    let (code, out, err) = run_args(&[
        "--format",
        "csv",
        "masses",
        "--formula",
        "barut",
        "--max-n",
        "1",
    ]);
    std::env::remove_var(CONFIG_ENV_VAR);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(
        out.contains("barut,1,mu,206.5,"),
        "env config must apply: {out}"
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = scratch_dir();
    let path = dir.join("masses.csv");
    let (code, stdout, _) = run_args(&[
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
        "masses",
        "--formula",
        "double-binomial",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty(), "output must go to the file");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("formula,n,label,ratio"));
    assert!(text.contains("double-binomial,3,f,0,0,"), "{text}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn report_emits_all_sections() {
    let (code, out, err) = run_args(&["--format", "csv", "report"]);
    assert_eq!(code, 0, "stderr: {err}");
    assert!(out.contains("formula,n,label,ratio"));
    assert!(out.contains("g,m_q,form,rho_min,n_points,negative_count,lowest_e,converged"));
    // the standard sweep must see no bound state anywhere
    for line in out
        .lines()
        .filter(|l| l.contains(",far,") || l.contains(",ring,"))
    {
        let negative_count = line.split(',').nth(5).unwrap();
        assert_eq!(negative_count, "0", "{line}");
    }
}

#[test]
fn report_text_mentions_verdict() {
    let (code, out, _) = run_args(&["--format", "text", "report"]);
    assert_eq!(code, 0);
    assert!(out.contains("no bound state = true"), "{out}");
    assert!(out.contains("bound_state_possible = false"), "{out}");
}

#[test]
fn validate_json_is_well_formed() {
    let (code, out, _) = run_args(&["--format", "json", "validate"]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    let checks = parsed.as_array().unwrap();
    assert_eq!(checks.len(), 13);
    assert!(checks.iter().all(|c| c["passed"].as_bool().unwrap()));
}
