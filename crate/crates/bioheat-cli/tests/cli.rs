//! Harness-level behavior: capability matrix, CSV formats and round-trips,
//! determinism, config handling and process exit codes.

use bioheat_cli::{
    cmd_compare, cmd_power, cmd_simulate, cmd_steady, supports, CliError, Method, Scenario,
    SourceKind,
};

const ALL_METHODS: [Method; 3] = [Method::Xform, Method::Green, Method::Fdm];
const ALL_SOURCES: [SourceKind; 4] = [
    SourceKind::Point,
    SourceKind::Shell,
    SourceKind::Gaussian,
    SourceKind::Step,
];

fn run_simulate(method: Method, source: SourceKind) -> Result<String, CliError> {
    let scenario = Scenario::default();
    let mut buf = Vec::new();
    cmd_simulate(&scenario, method, source, &[5.0, 20.0], 0.02, 9, &mut buf)?;
    Ok(String::from_utf8(buf).expect("CSV is UTF-8"))
}

#[test]
fn capability_matrix_is_total() {
    // every pair either runs or yields the declared unsupported error
    for method in ALL_METHODS {
        for source in ALL_SOURCES {
            let result = run_simulate(method, source);
            match (supports(method, source), result) {
                (true, Ok(csv)) => assert!(csv.starts_with("r_m,"), "{method} {source}"),
                (true, Err(e)) => panic!("{method} {source} should run, got {e}"),
                (false, Err(CliError::Unsupported { .. })) => {}
                (false, other) => panic!("{method} {source} should be unsupported, got {other:?}"),
            }
        }
    }
}

#[test]
fn green_distributed_sources_unsupported() {
    for source in [SourceKind::Gaussian, SourceKind::Step] {
        let err = run_simulate(Method::Green, source).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }
}

#[test]
fn simulate_csv_shape_and_roundtrip() {
    let csv = run_simulate(Method::Xform, SourceKind::Shell).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "r_m,T_5s,T_20s");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    // re-parse and compare against a recomputation; the 9-significant-digit
    // format quantizes at half an ulp of the 9th digit, ~5e-10 relative
    let scenario = Scenario::default();
    let source = scenario.source_for(SourceKind::Shell);
    for row in rows {
        let fields: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
        assert_eq!(fields.len(), 3);
        let expect = bioheat::transform::temperature(
            &bioheat::transform::EvalRequest {
                source,
                tissue: scenario.tissue,
                r: fields[0],
                time: bioheat::transform::EvalTime::At(5.0),
            },
            &scenario.quad,
        )
        .unwrap();
        assert!(
            (fields[1] - expect).abs() <= 5e-9 * expect,
            "round-trip drift at r = {}",
            fields[0]
        );
    }
}

#[test]
fn simulate_point_grid_starts_off_center() {
    let csv = run_simulate(Method::Xform, SourceKind::Point).unwrap();
    let first_radius: f64 = csv
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(first_radius > 0.0);
}

#[test]
fn deterministic_output() {
    let a = run_simulate(Method::Fdm, SourceKind::Step).unwrap();
    let b = run_simulate(Method::Fdm, SourceKind::Step).unwrap();
    assert_eq!(a, b);
    let a = run_simulate(Method::Xform, SourceKind::Gaussian).unwrap();
    let b = run_simulate(Method::Xform, SourceKind::Gaussian).unwrap();
    assert_eq!(a, b);
}

#[test]
fn power_panels_have_ten_curves() {
    let scenario = Scenario::default();
    for (panel, tag) in [('a', "P_f_1000kHz"), ('b', "P_H0_10mT")] {
        let mut buf = Vec::new();
        cmd_power(&scenario, Some(panel), 10.0, 30.0, 21, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(header.split(',').count(), 11, "panel {panel}");
        assert!(header.ends_with(tag), "panel {panel}: {header}");
        assert_eq!(text.lines().count(), 22);
    }
}

#[test]
fn power_single_sweep_header() {
    let scenario = Scenario::default();
    let mut buf = Vec::new();
    cmd_power(&scenario, None, 10.0, 30.0, 5, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next().unwrap(), "D_nm,P_W_per_m3");
}

#[test]
fn power_rejects_degenerate_range() {
    let scenario = Scenario::default();
    let mut buf = Vec::new();
    let err = cmd_power(&scenario, None, 20.0, 20.0, 10, &mut buf).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    let err = cmd_power(&scenario, None, 10.0, 30.0, 1, &mut buf).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn compare_point_methods_agree() {
    let scenario = Scenario::default();
    let mut text = Vec::new();
    let mut csv = Vec::new();
    cmd_compare(
        &scenario,
        SourceKind::Point,
        Method::Xform,
        Method::Green,
        &[5.0, 10.0, 100.0],
        0.02,
        41,
        &mut text,
        Some(&mut csv),
    )
    .unwrap();
    let report = String::from_utf8(text).unwrap();
    assert!(report.contains("worst"));
    // parse the worst rel(T) from the CSV rows: every time's max_rel_diff
    let csv = String::from_utf8(csv).unwrap();
    for row in csv.lines().skip(1) {
        let rel: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
        assert!(rel < 1e-3, "rel {rel} too large: {row}");
    }
}

#[test]
fn compare_method_with_itself_is_exact() {
    let scenario = Scenario::default();
    let mut text = Vec::new();
    let mut csv = Vec::new();
    cmd_compare(
        &scenario,
        SourceKind::Step,
        Method::Fdm,
        Method::Fdm,
        &[5.0, 10.0],
        0.02,
        9,
        &mut text,
        Some(&mut csv),
    )
    .unwrap();
    let csv = String::from_utf8(csv).unwrap();
    for row in csv.lines().skip(1) {
        let max_abs: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(max_abs, 0.0, "{row}");
    }
}

#[test]
fn compare_step_fdm_aligns_on_snapped_times() {
    // the report must carry the actual step times, not the requested ones
    let scenario = Scenario::default();
    let mut text = Vec::new();
    cmd_compare(
        &scenario,
        SourceKind::Step,
        Method::Xform,
        Method::Fdm,
        &[10.0],
        0.03,
        121,
        &mut text,
        None,
    )
    .unwrap();
    let report = String::from_utf8(text).unwrap();
    assert!(report.contains("t = 10.262"), "report: {report}");
}

#[test]
fn steady_shell_columns_agree_to_identity() {
    let scenario = Scenario::default();
    let mut buf = Vec::new();
    cmd_steady(&scenario, SourceKind::Shell, 0.03, 61, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.lines().next().unwrap().starts_with("r_m,T_xform_k,T_green_k"));
    for row in text.lines().skip(1) {
        let fields: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(
            fields[3] <= 1e-14 * fields[1].abs() + 1e-12,
            "columns diverge: {row}"
        );
    }
}

#[test]
fn steady_point_profile_finite_and_decaying() {
    let scenario = Scenario::default();
    let mut buf = Vec::new();
    cmd_steady(&scenario, SourceKind::Point, 0.03, 61, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut last = f64::INFINITY;
    for row in text.lines().skip(1) {
        let fields: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(fields[1].is_finite() && fields[1] > 310.0);
        assert!(fields[1] < last, "not decaying: {row}");
        last = fields[1];
    }
}

#[test]
fn steady_step_quadrature_matches_closed_form_column() {
    let scenario = Scenario::default();
    let mut buf = Vec::new();
    cmd_steady(&scenario, SourceKind::Step, 0.03, 121, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text
        .lines()
        .next()
        .unwrap()
        .starts_with("r_m,T_quadrature_k,T_closed_form_k"));
    for row in text.lines().skip(1) {
        let fields: Vec<f64> = row.split(',').map(|v| v.parse().unwrap()).collect();
        let excess = (fields[2] - 310.0).max(1e-9);
        assert!(
            fields[3] <= 1e-6 * excess.max(1.0),
            "quadrature vs closed form: {row}"
        );
    }
}

// Subprocess checks: exit codes and stderr surface area.
mod process {
    use std::process::Command;

    fn bin() -> Command {
        Command::new(env!("CARGO_BIN_EXE_bioheat"))
    }

    #[test]
    fn unsupported_combination_exits_4() {
        let out = bin()
            .args(["simulate", "--method", "green", "--source", "gaussian"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(4));
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("unsupported"), "stderr: {err}");
    }

    #[test]
    fn bad_config_exits_2() {
        let dir = std::env::temp_dir();
        let path = dir.join(format!("bioheat-bad-{}.json", std::process::id()));
        std::fs::write(&path, r#"{ "tissue": { "bogus_key": 1.0 } }"#).unwrap();
        let out = bin()
            .args(["--config", path.to_str().unwrap(), "steady", "--source", "shell"])
            .output()
            .unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(out.status.code(), Some(2));
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("bogus_key"), "stderr: {err}");
    }

    #[test]
    fn missing_source_exits_2() {
        let out = bin().args(["simulate", "--method", "xform"]).output().unwrap();
        assert_eq!(out.status.code(), Some(2));
    }

    #[test]
    fn solver_nonconvergence_exits_3() {
        // a panel budget far below what the step steady integral needs
        let dir = std::env::temp_dir();
        let path = dir.join(format!("bioheat-tiny-panels-{}.json", std::process::id()));
        std::fs::write(&path, r#"{ "solver": { "max_panels": 4 } }"#).unwrap();
        let out = bin()
            .args(["--config", path.to_str().unwrap(), "steady", "--source", "step", "--nr", "8"])
            .output()
            .unwrap();
        std::fs::remove_file(&path).ok();
        assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    }

    #[test]
    fn power_panel_a_runs_clean() {
        let out = bin()
            .args(["power", "--panel", "a", "--d-min-nm", "10", "--d-max-nm", "30", "--points", "11"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert!(stdout.starts_with("D_nm,"));
    }

    #[test]
    fn thread_cap_env_respected() {
        let out = bin()
            .env("BIOHEAT_THREADS", "2")
            .args(["steady", "--source", "gaussian", "--nr", "11"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        // 0 means auto
        let out = bin()
            .env("BIOHEAT_THREADS", "0")
            .args(["steady", "--source", "gaussian", "--nr", "11"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        // junk is a config error
        let out = bin()
            .env("BIOHEAT_THREADS", "lots")
            .args(["steady", "--source", "gaussian", "--nr", "11"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2));
    }

    #[test]
    fn plot_script_requires_out() {
        let out = bin()
            .args(["simulate", "--method", "xform", "--source", "shell", "--nr", "5", "--plot-script", "/tmp/x.gp"])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2));
    }
}
