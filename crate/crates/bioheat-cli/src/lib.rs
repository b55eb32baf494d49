//! Command implementations behind the `bioheat` binary: power-sweep CSVs,
//! temperature profile runs per method, cross-method comparison reports and
//! steady-state tables.

pub mod config;
pub mod csv;

use std::io::Write;

use rayon::prelude::*;

use bioheat::compare::compare_profiles;
use bioheat::fdm::{CenterTreatment, FdmGrid};
use bioheat::power::{self, FieldSpec};
use bioheat::profile::RadialProfile;
use bioheat::transform;
use bioheat::{greens, A_PER_M_PER_MT};

pub use config::{Scenario, SourceKind};

/// Solution methods selectable from the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    /// Integral-transform solutions (all four sources).
    Xform,
    /// Green's-function convolutions (point and shell only).
    Green,
    /// Explicit finite differences (gaussian and step only).
    Fdm,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Xform => "xform",
            Method::Green => "green",
            Method::Fdm => "fdm",
        })
    }
}

/// Errors carrying the process exit code: 2 config, 3 solver, 4 unsupported.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Solver(bioheat::Error),
    Unsupported { method: Method, source: SourceKind },
    Io(std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Solver(e) => write!(f, "solver error: {e}"),
            CliError::Unsupported { method, source } => write!(
                f,
                "unsupported combination: method {method} cannot evaluate a {source} source"
            ),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Unsupported { .. } => 4,
        }
    }
}

impl From<bioheat::Error> for CliError {
    fn from(e: bioheat::Error) -> Self {
        match e {
            bioheat::Error::InvalidParameter { .. } => CliError::Config(e.to_string()),
            other => CliError::Solver(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Which (method, source) pairs can run; everything else is a declared
/// unsupported combination.
pub fn supports(method: Method, source: SourceKind) -> bool {
    match method {
        Method::Xform => true,
        Method::Green => matches!(source, SourceKind::Point | SourceKind::Shell),
        Method::Fdm => matches!(source, SourceKind::Gaussian | SourceKind::Step),
    }
}

fn require_support(method: Method, source: SourceKind) -> Result<(), CliError> {
    if supports(method, source) {
        Ok(())
    } else {
        Err(CliError::Unsupported { method, source })
    }
}

/// Radial grid for the non-FDM methods: `nr` points on [0, rmax], with the
/// r = 0 node dropped for the point source singularity.
fn evaluation_grid(rmax: f64, nr: usize, source: SourceKind) -> Result<Vec<f64>, CliError> {
    if !(rmax > 0.0 && rmax.is_finite()) {
        return Err(CliError::Config(format!("rmax must be > 0, got {rmax}")));
    }
    if nr < 2 {
        return Err(CliError::Config(format!("nr must be >= 2, got {nr}")));
    }
    let grid: Vec<f64> = (0..nr)
        .map(|i| rmax * i as f64 / (nr - 1) as f64)
        .collect();
    Ok(if source == SourceKind::Point {
        grid.into_iter().skip(1).collect()
    } else {
        grid
    })
}

/// Reference sample times per source shape (the figure scenarios).
pub fn default_times(source: SourceKind) -> Vec<f64> {
    match source {
        SourceKind::Point => vec![5.0, 10.0, 100.0],
        SourceKind::Shell => vec![10.0, 50.0, 100.0, 1000.0],
        SourceKind::Gaussian | SourceKind::Step => vec![10.0, 50.0, 100.0, 500.0],
    }
}

fn fdm_grid(scenario: &Scenario) -> Result<FdmGrid, CliError> {
    let grid = match scenario.fdm_dt {
        Some(dt) => FdmGrid::with_dt(&scenario.tissue, scenario.fdm_dr, scenario.fdm_outer_radius, dt)?,
        None => FdmGrid::new(&scenario.tissue, scenario.fdm_dr, scenario.fdm_outer_radius)?,
    };
    if scenario.fdm_center_lhopital {
        Ok(grid.with_center(CenterTreatment::LHopital)?)
    } else {
        Ok(grid)
    }
}

/// Green's-function profiles on an explicit grid.
fn green_profiles(
    scenario: &Scenario,
    source: SourceKind,
    times: &[f64],
    grid: &[f64],
) -> Result<Vec<RadialProfile>, CliError> {
    let tissue = scenario.tissue;
    let cfg = scenario.time_integral;
    let heat = scenario.source_for(source);
    times
        .iter()
        .map(|&t| {
            let temps: Result<Vec<f64>, bioheat::Error> = grid
                .par_iter()
                .map(|&r| match source {
                    SourceKind::Point => {
                        greens::point_temperature(&tissue, heat.amplitude(), r, t, &cfg)
                    }
                    SourceKind::Shell => greens::shell_temperature(
                        &tissue,
                        heat.amplitude(),
                        heat.radius().expect("shell has a radius"),
                        r,
                        t,
                        &cfg,
                    ),
                    _ => unreachable!("capability matrix excludes this pair"),
                })
                .collect();
            Ok(RadialProfile::new(t, grid.to_vec(), temps?)?)
        })
        .collect()
}

/// Profiles for any supported (method, source) pair on aligned grids.
pub fn method_profiles(
    scenario: &Scenario,
    method: Method,
    source: SourceKind,
    times: &[f64],
    rmax: f64,
    nr: usize,
) -> Result<Vec<RadialProfile>, CliError> {
    require_support(method, source)?;
    let heat = scenario.source_for(source);
    match method {
        Method::Xform => {
            let grid = evaluation_grid(rmax, nr, source)?;
            Ok(transform::radial_profile(
                &heat,
                &scenario.tissue,
                times,
                &grid,
                &scenario.quad,
            )?)
        }
        Method::Green => {
            let grid = evaluation_grid(rmax, nr, source)?;
            green_profiles(scenario, source, times, &grid)
        }
        Method::Fdm => {
            let grid = fdm_grid(scenario)?;
            let profiles = grid.run(&heat, &scenario.tissue, times)?;
            // keep the CSV within the requested window
            Ok(profiles
                .into_iter()
                .map(|p| truncate_profile(p, rmax))
                .collect())
        }
    }
}

fn truncate_profile(p: RadialProfile, rmax: f64) -> RadialProfile {
    let keep = p.radii.iter().take_while(|&&r| r <= rmax * (1.0 + 1e-12)).count();
    RadialProfile::new(
        p.time,
        p.radii[..keep].to_vec(),
        p.temperatures[..keep].to_vec(),
    )
    .expect("truncation preserves a valid profile")
}

/// `power`: D-vs-P sweep CSV. Panel `a` sweeps frequency at 5 mT, panel `b`
/// sweeps amplitude at 500 kHz, no panel gives a single curve at the
/// scenario's field.
pub fn cmd_power(
    scenario: &Scenario,
    panel: Option<char>,
    d_min_nm: f64,
    d_max_nm: f64,
    points: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if !(d_min_nm >= 1.0 && d_max_nm <= 100.0 && d_min_nm < d_max_nm) {
        return Err(CliError::Config(format!(
            "diameter range [{d_min_nm}, {d_max_nm}] nm must sit inside [1, 100] with min < max"
        )));
    }
    if points < 2 {
        return Err(CliError::Config(format!("points must be >= 2, got {points}")));
    }
    let d_range = (d_min_nm * 1e-9, d_max_nm * 1e-9);
    let sweep = |field: &FieldSpec| {
        power::sweep_diameter(&scenario.particle, field, &scenario.medium, d_range, points)
    };

    let (mut header, fields) = match panel {
        Some('a') => {
            let fields: Vec<FieldSpec> = (1..=10)
                .map(|k| FieldSpec {
                    amplitude: 5.0 * A_PER_M_PER_MT,
                    frequency: k as f64 * 100e3,
                })
                .collect();
            let header: Vec<String> = (1..=10).map(|k| format!("P_f_{}kHz", k * 100)).collect();
            (header, fields)
        }
        Some('b') => {
            let fields: Vec<FieldSpec> = (1..=10)
                .map(|k| FieldSpec {
                    amplitude: k as f64 * A_PER_M_PER_MT,
                    frequency: 500e3,
                })
                .collect();
            let header: Vec<String> = (1..=10).map(|k| format!("P_H0_{k}mT")).collect();
            (header, fields)
        }
        Some(other) => {
            return Err(CliError::Config(format!(
                "panel must be 'a' or 'b', got '{other}'"
            )))
        }
        None => (vec!["P_W_per_m3".to_string()], vec![scenario.field]),
    };
    header.insert(0, "D_nm".to_string());

    let curves: Result<Vec<Vec<(f64, f64)>>, bioheat::Error> =
        fields.iter().map(sweep).collect();
    let curves = curves?;

    writeln!(out, "{}", header.join(","))?;
    for i in 0..points {
        let mut row = vec![csv::sig6(curves[0][i].0 * 1e9)];
        for curve in &curves {
            row.push(csv::sig6(curve[i].1));
        }
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// `simulate`: temperature profile CSV for one method and source.
pub fn cmd_simulate(
    scenario: &Scenario,
    method: Method,
    source: SourceKind,
    times: &[f64],
    rmax: f64,
    nr: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    validate_times(times)?;
    let profiles = method_profiles(scenario, method, source, times, rmax, nr)?;
    csv::write_profiles(out, &profiles)?;
    Ok(())
}

/// `compare`: run two methods on aligned grids and report differences.
///
/// When the finite-difference method participates, the other method is
/// evaluated exactly on the FDM nodes at the FDM's snapped step times.
#[allow(clippy::too_many_arguments)]
pub fn cmd_compare(
    scenario: &Scenario,
    source: SourceKind,
    method_a: Method,
    method_b: Method,
    times: &[f64],
    rmax: f64,
    nr: usize,
    text_out: &mut dyn Write,
    csv_out: Option<&mut dyn Write>,
) -> Result<(), CliError> {
    validate_times(times)?;
    require_support(method_a, source)?;
    require_support(method_b, source)?;

    let (profiles_a, profiles_b) = if method_a == Method::Fdm || method_b == Method::Fdm {
        let fdm_method = if method_a == Method::Fdm { method_a } else { method_b };
        let other_method = if method_a == Method::Fdm { method_b } else { method_a };
        let fdm = method_profiles(scenario, fdm_method, source, times, rmax, nr)?;
        let other = if other_method == Method::Fdm {
            fdm.clone()
        } else {
            // align on the FDM nodes and snapped times
            let heat = scenario.source_for(source);
            let grid = fdm[0].radii.clone();
            fdm.iter()
                .map(|p| {
                    let profs = match other_method {
                        Method::Xform => transform::radial_profile(
                            &heat,
                            &scenario.tissue,
                            &[p.time],
                            &grid,
                            &scenario.quad,
                        )?,
                        Method::Green => green_profiles(scenario, source, &[p.time], &grid)?,
                        Method::Fdm => unreachable!(),
                    };
                    Ok(profs.into_iter().next().expect("one profile per time"))
                })
                .collect::<Result<Vec<_>, CliError>>()?
        };
        if method_a == Method::Fdm {
            (fdm, other)
        } else {
            (other, fdm)
        }
    } else {
        (
            method_profiles(scenario, method_a, source, times, rmax, nr)?,
            method_profiles(scenario, method_b, source, times, rmax, nr)?,
        )
    };

    let tc = scenario.tissue.core_temperature();
    let report = compare_profiles(&profiles_a, &profiles_b, tc)?;

    writeln!(
        text_out,
        "compare {source}: {method_a} (reference) vs {method_b}"
    )?;
    for t in &report.per_time {
        writeln!(
            text_out,
            "  t = {} s: max |dT| = {:.3e} K at r = {:.4} mm; rel(T) = {:.3e}; rel(peak excess) = {:.3e}",
            csv::trim_float(t.time),
            t.max_abs_diff,
            t.argmax_radius * 1e3,
            t.max_rel_diff,
            t.max_rel_diff_excess,
        )?;
    }
    writeln!(
        text_out,
        "  worst: rel(T) = {:.3e} (|dT| = {:.3e} K) at t = {} s, r = {:.4} mm",
        report.worst_rel_diff,
        report.worst_abs_diff,
        csv::trim_float(report.worst_time),
        report.worst_radius * 1e3,
    )?;

    if let Some(csv_out) = csv_out {
        writeln!(
            csv_out,
            "t_s,max_abs_diff_k,max_rel_diff,argmax_r_m,max_rel_diff_peak_excess"
        )?;
        for t in &report.per_time {
            writeln!(
                csv_out,
                "{},{},{},{},{}",
                csv::sig9(t.time),
                csv::sig9(t.max_abs_diff),
                csv::sig9(t.max_rel_diff),
                csv::sig9(t.argmax_radius),
                csv::sig9(t.max_rel_diff_excess),
            )?;
        }
    }
    Ok(())
}

/// `steady`: steady-state profile CSV. Point and shell carry the
/// Green's-method closed forms as a second column with the difference;
/// the step source carries the independently derived closed form against
/// its quadrature value.
pub fn cmd_steady(
    scenario: &Scenario,
    source: SourceKind,
    rmax: f64,
    nr: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let grid = evaluation_grid(rmax, nr, source)?;
    let tissue = scenario.tissue;
    let heat = scenario.source_for(source);
    let quad = scenario.quad;

    let steady: Result<Vec<f64>, bioheat::Error> = grid
        .par_iter()
        .map(|&r| transform::steady_temperature(&heat, &tissue, r, &quad))
        .collect();
    let steady = steady?;

    match source {
        SourceKind::Point | SourceKind::Shell => {
            let reference: Vec<f64> = grid
                .iter()
                .map(|&r| match source {
                    SourceKind::Point => greens::steady_point(&tissue, heat.amplitude(), r),
                    SourceKind::Shell => Ok(greens::steady_shell(
                        &tissue,
                        heat.amplitude(),
                        heat.radius().expect("shell has a radius"),
                        r,
                    )),
                    _ => unreachable!(),
                })
                .collect::<Result<_, _>>()?;
            writeln!(out, "r_m,T_xform_k,T_green_k,abs_diff_k")?;
            for ((r, a), b) in grid.iter().zip(&steady).zip(&reference) {
                writeln!(
                    out,
                    "{},{},{},{}",
                    csv::sig9(*r),
                    csv::sig9(*a),
                    csv::sig9(*b),
                    csv::sig9((a - b).abs())
                )?;
            }
        }
        SourceKind::Step => {
            let r0 = heat.radius().expect("step has a radius");
            writeln!(out, "r_m,T_quadrature_k,T_closed_form_k,abs_diff_k")?;
            for (r, a) in grid.iter().zip(&steady) {
                let closed =
                    transform::steady_step_closed_form(&tissue, heat.amplitude(), r0, *r);
                writeln!(
                    out,
                    "{},{},{},{}",
                    csv::sig9(*r),
                    csv::sig9(*a),
                    csv::sig9(closed),
                    csv::sig9((a - closed).abs())
                )?;
            }
        }
        SourceKind::Gaussian => {
            writeln!(out, "r_m,T_steady_k")?;
            for (r, a) in grid.iter().zip(&steady) {
                writeln!(out, "{},{}", csv::sig9(*r), csv::sig9(*a))?;
            }
        }
    }
    Ok(())
}

fn validate_times(times: &[f64]) -> Result<(), CliError> {
    if times.is_empty() {
        return Err(CliError::Config("times list is empty".into()));
    }
    if times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(CliError::Config("times must be finite and >= 0".into()));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(CliError::Config("times must be sorted ascending".into()));
    }
    Ok(())
}

/// Parse a comma-separated time list.
pub fn parse_times(text: &str) -> Result<Vec<f64>, CliError> {
    let times: Result<Vec<f64>, _> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect();
    let times = times.map_err(|e| CliError::Config(format!("bad times list '{text}': {e}")))?;
    validate_times(&times)?;
    Ok(times)
}

/// A minimal gnuplot script that plots every temperature column of a
/// profile CSV against radius.
pub fn plot_script(csv_path: &str, columns: usize) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator \",\"\n");
    s.push_str("set xlabel \"r (m)\"\n");
    s.push_str("set ylabel \"T (K)\"\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str("plot ");
    let plots: Vec<String> = (2..=columns)
        .map(|c| format!("\"{csv_path}\" using 1:{c} with lines"))
        .collect();
    s.push_str(&plots.join(", \\\n     "));
    s.push('\n');
    s
}
