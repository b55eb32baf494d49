//! Scenario configuration: a JSON tree with SI-unit-named keys, every
//! section optional and defaulting to the reference scenario (muscle-like
//! tissue, magnetite particles, 5 mT / 500 kHz field, aqueous carrier).

use std::path::Path;

use serde::Deserialize;

use bioheat::greens::TimeIntegralConfig;
use bioheat::power::{FieldSpec, MediumSpec, ParticleSpec};
use bioheat::{HeatSource, QuadratureConfig, TissueProperties, A_PER_M_PER_MT};

use crate::CliError;

/// Heat source shapes selectable from the CLI and config.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Point,
    Shell,
    Gaussian,
    Step,
}

impl std::fmt::Display for SourceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            SourceKind::Point => "point",
            SourceKind::Shell => "shell",
            SourceKind::Gaussian => "gaussian",
            SourceKind::Step => "step",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TissueSection {
    kappa_w_per_m_k: Option<f64>,
    rho_kg_per_m3: Option<f64>,
    cp_j_per_kg_k: Option<f64>,
    rho_b_kg_per_m3: Option<f64>,
    cp_b_j_per_kg_k: Option<f64>,
    omega_b_per_s: Option<f64>,
    ta_k: Option<f64>,
    qmet_w_per_m3: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParticleSection {
    diameter_m: Option<f64>,
    anisotropy_j_per_m3: Option<f64>,
    domain_magnetization_a_per_m: Option<f64>,
    tau0_s: Option<f64>,
    surfactant_thickness_m: Option<f64>,
    volume_fraction: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSection {
    amplitude_a_per_m: Option<f64>,
    amplitude_mt: Option<f64>,
    frequency_hz: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct MediumSection {
    viscosity_pa_s: Option<f64>,
    temperature_k: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceSection {
    kind: Option<SourceKind>,
    p0_w: Option<f64>,
    p0_w_per_m3: Option<f64>,
    r0_m: Option<f64>,
    shell_width_m: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolverSection {
    rel_tol: Option<f64>,
    abs_tol_k: Option<f64>,
    max_panels: Option<usize>,
    panel_order: Option<usize>,
    time_rel_tol: Option<f64>,
    graded_exponent: Option<f64>,
    max_subdivisions: Option<usize>,
    fdm_dr_m: Option<f64>,
    fdm_outer_radius_m: Option<f64>,
    fdm_dt_s: Option<f64>,
    fdm_center_lhopital: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    tissue: Option<TissueSection>,
    particle: Option<ParticleSection>,
    field: Option<FieldSection>,
    medium: Option<MediumSection>,
    source: Option<SourceSection>,
    solver: Option<SolverSection>,
}

/// Fully resolved scenario: config values merged onto the reference preset.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub tissue: TissueProperties,
    pub particle: ParticleSpec,
    pub field: FieldSpec,
    pub medium: MediumSpec,
    pub source_kind: Option<SourceKind>,
    pub p0_w: Option<f64>,
    pub p0_w_per_m3: Option<f64>,
    pub r0: f64,
    pub shell_width: f64,
    pub quad: QuadratureConfig,
    pub time_integral: TimeIntegralConfig,
    pub fdm_dr: f64,
    pub fdm_outer_radius: f64,
    pub fdm_dt: Option<f64>,
    pub fdm_center_lhopital: bool,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            tissue: TissueProperties::body_preset(),
            particle: ParticleSpec::magnetite(19e-9),
            field: FieldSpec {
                amplitude: 5.0 * A_PER_M_PER_MT,
                frequency: 500e3,
            },
            medium: MediumSpec::aqueous_at_body_temperature(),
            source_kind: None,
            p0_w: None,
            p0_w_per_m3: None,
            r0: 5e-3,
            shell_width: 1e-3,
            quad: QuadratureConfig::default(),
            time_integral: TimeIntegralConfig::default(),
            fdm_dr: 0.3e-3,
            fdm_outer_radius: 0.15,
            fdm_dt: None,
            fdm_center_lhopital: false,
        }
    }
}

impl Scenario {
    /// Load and merge a config file; `None` yields the reference preset.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let mut scenario = Scenario::default();
        let Some(path) = path else {
            return Ok(scenario);
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let file: ConfigFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;

        if let Some(t) = file.tissue {
            let d = &mut scenario.tissue;
            set(&mut d.kappa, t.kappa_w_per_m_k);
            set(&mut d.rho, t.rho_kg_per_m3);
            set(&mut d.cp, t.cp_j_per_kg_k);
            set(&mut d.rho_b, t.rho_b_kg_per_m3);
            set(&mut d.cp_b, t.cp_b_j_per_kg_k);
            set(&mut d.omega_b, t.omega_b_per_s);
            set(&mut d.ta, t.ta_k);
            set(&mut d.qmet, t.qmet_w_per_m3);
            d.validate()
                .map_err(|e| CliError::Config(format!("tissue section: {e}")))?;
        }
        if let Some(p) = file.particle {
            let d = &mut scenario.particle;
            set(&mut d.diameter, p.diameter_m);
            set(&mut d.anisotropy, p.anisotropy_j_per_m3);
            set(&mut d.domain_magnetization, p.domain_magnetization_a_per_m);
            set(&mut d.tau0, p.tau0_s);
            set(&mut d.surfactant_thickness, p.surfactant_thickness_m);
            set(&mut d.volume_fraction, p.volume_fraction);
            d.validate()
                .map_err(|e| CliError::Config(format!("particle section: {e}")))?;
        }
        if let Some(f) = file.field {
            if f.amplitude_a_per_m.is_some() && f.amplitude_mt.is_some() {
                return Err(CliError::Config(
                    "field section: give amplitude_a_per_m or amplitude_mt, not both".into(),
                ));
            }
            if let Some(a) = f.amplitude_a_per_m {
                scenario.field.amplitude = a;
            }
            if let Some(mt) = f.amplitude_mt {
                scenario.field.amplitude = mt * A_PER_M_PER_MT;
            }
            set(&mut scenario.field.frequency, f.frequency_hz);
            scenario
                .field
                .validate()
                .map_err(|e| CliError::Config(format!("field section: {e}")))?;
        }
        if let Some(m) = file.medium {
            set(&mut scenario.medium.viscosity, m.viscosity_pa_s);
            set(&mut scenario.medium.temperature, m.temperature_k);
            scenario
                .medium
                .validate()
                .map_err(|e| CliError::Config(format!("medium section: {e}")))?;
        }
        if let Some(s) = file.source {
            scenario.source_kind = s.kind;
            scenario.p0_w = s.p0_w;
            scenario.p0_w_per_m3 = s.p0_w_per_m3;
            set(&mut scenario.r0, s.r0_m);
            set(&mut scenario.shell_width, s.shell_width_m);
        }
        if let Some(s) = file.solver {
            set(&mut scenario.quad.rel_tol, s.rel_tol);
            set(&mut scenario.quad.abs_tol, s.abs_tol_k);
            set(&mut scenario.quad.max_panels, s.max_panels);
            set(&mut scenario.quad.panel_order, s.panel_order);
            scenario
                .quad
                .validate()
                .map_err(|e| CliError::Config(format!("solver section: {e}")))?;
            set(&mut scenario.time_integral.rel_tol, s.time_rel_tol);
            set(&mut scenario.time_integral.graded_exponent, s.graded_exponent);
            set(&mut scenario.time_integral.max_subdivisions, s.max_subdivisions);
            scenario
                .time_integral
                .validate()
                .map_err(|e| CliError::Config(format!("solver section: {e}")))?;
            set(&mut scenario.fdm_dr, s.fdm_dr_m);
            set(&mut scenario.fdm_outer_radius, s.fdm_outer_radius_m);
            if s.fdm_dt_s.is_some() {
                scenario.fdm_dt = s.fdm_dt_s;
            }
            set(&mut scenario.fdm_center_lhopital, s.fdm_center_lhopital);
        }
        Ok(scenario)
    }

    /// The heat source for a shape, with the reference amplitudes
    /// (0.0096 W point, 0.72 W shell, 2.28 MW/m³ distributed) unless the
    /// config gave one.
    pub fn source_for(&self, kind: SourceKind) -> HeatSource {
        match kind {
            SourceKind::Point => HeatSource::Point {
                p0: self.p0_w.unwrap_or(0.0096),
            },
            SourceKind::Shell => HeatSource::Shell {
                p0: self.p0_w.unwrap_or(0.72),
                r0: self.r0,
                shell_width: self.shell_width,
            },
            SourceKind::Gaussian => HeatSource::Gaussian {
                p0: self.p0_w_per_m3.unwrap_or(2.28e6),
                r0: self.r0,
            },
            SourceKind::Step => HeatSource::Step {
                p0: self.p0_w_per_m3.unwrap_or(2.28e6),
                r0: self.r0,
            },
        }
    }

    /// Source kind resolution: CLI flag wins, then the config, else an error.
    pub fn resolve_kind(&self, flag: Option<SourceKind>) -> Result<SourceKind, CliError> {
        flag.or(self.source_kind).ok_or_else(|| {
            CliError::Config("no source given: pass --source or set source.kind".into())
        })
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}
