//! Fixed-format numeric CSV emission: deterministic output, `.` decimal
//! separator, mandatory header row.

use std::io::Write;

use bioheat::profile::RadialProfile;

/// 9 significant digits, scientific.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// 6 significant digits, scientific; used by the power sweeps.
pub fn sig6(x: f64) -> String {
    format!("{x:.5e}")
}

/// Compact time tag for headers and report lines: up to six decimals with
/// trailing zeros trimmed.
pub fn trim_float(t: f64) -> String {
    let mut s = format!("{t:.6}");
    while s.contains('.') && (s.ends_with('0') || s.ends_with('.')) {
        s.pop();
    }
    s
}

/// Profile table `r_m, T_<t1>s, T_<t2>s, …`, one row per radius.
pub fn write_profiles(out: &mut dyn Write, profiles: &[RadialProfile]) -> std::io::Result<()> {
    let header: Vec<String> = std::iter::once("r_m".to_string())
        .chain(profiles.iter().map(|p| format!("T_{}s", trim_float(p.time))))
        .collect();
    writeln!(out, "{}", header.join(","))?;
    let n = profiles[0].radii.len();
    for i in 0..n {
        let mut row = vec![sig9(profiles[0].radii[i])];
        for p in profiles {
            row.push(sig9(p.temperatures[i]));
        }
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
