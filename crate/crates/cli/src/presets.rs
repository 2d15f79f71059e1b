//! Named sweep configurations.
//!
//! All presets share `F = 0.5`, `ω_c = 5`, `α = 0.1`, `Δ̄ = 0` unless the
//! figure sweeps them. Where a figure has several curves or panels, the
//! preset exposes them through `--panel`.

use std::f64::consts::{FRAC_PI_2, PI};

use qbatt_core::liouville::EquationKind;
use qbatt_core::reservoir::Statistics;

use crate::config::{Axis, Param, StateKind, SweepConfig};
use crate::error::CliError;

/// Points per axis for one-dimensional sweeps.
pub const LINE_POINTS: usize = 121;
/// Points per axis for two-dimensional maps.
pub const MAP_POINTS: usize = 61;

pub struct PresetInfo {
    pub name: &'static str,
    pub summary: &'static str,
    /// Parameter set by `--panel`, if any.
    pub panel_param: Option<Param>,
    /// Available panel values; the first is the default.
    pub panels: &'static [f64],
}

pub const PRESETS: &[PresetInfo] = &[
    PresetInfo { name: "fig2a", summary: "Liouvillian gap vs Δ, boson, T̄ = 1", panel_param: Some(Param::DT), panels: &[0.0, 1.0, -1.0] },
    PresetInfo {
        name: "fig2b",
        summary: "Liouvillian gap vs Δ, fermion, T = 1, μ̄ = 2",
        panel_param: Some(Param::DMu),
        panels: &[0.0, 1.0, -1.0],
    },
    PresetInfo {
        name: "fig3",
        summary: "tomogram and concurrence vs Δ, boson, initial |eg⟩",
        panel_param: Some(Param::DT),
        panels: &[1.0, 0.0, -1.0],
    },
    PresetInfo {
        name: "fig3s",
        summary: "tomogram and concurrence vs Δ, boson, symmetric initial state",
        panel_param: Some(Param::DT),
        panels: &[1.0, 0.0, -1.0],
    },
    PresetInfo {
        name: "fig4",
        summary: "concurrence vs Δ, fermion, symmetric initial state",
        panel_param: Some(Param::DMu),
        panels: &[0.0, 1.0, -1.0],
    },
    PresetInfo { name: "fig5", summary: "efficiency over (θ, φ), resonant, equilibrium boson", panel_param: None, panels: &[] },
    PresetInfo {
        name: "fig6a",
        summary: "efficiency and concurrence vs ΔT, Redfield, resonant",
        panel_param: Some(Param::Phi),
        panels: &[0.0, FRAC_PI_2],
    },
    PresetInfo {
        name: "fig6b",
        summary: "efficiency and concurrence vs ΔT, Lindblad, resonant",
        panel_param: Some(Param::Phi),
        panels: &[0.0, FRAC_PI_2],
    },
    PresetInfo {
        name: "fig6x",
        summary: "efficiency and concurrence vs φ, Redfield, resonant",
        panel_param: Some(Param::DT),
        panels: &[0.0, 1.0, -1.0],
    },
    PresetInfo { name: "fig7a", summary: "efficiency vs T, equilibrium boson, resonant", panel_param: None, panels: &[] },
    PresetInfo {
        name: "fig7b",
        summary: "efficiency vs μ, equilibrium fermion, resonant",
        panel_param: Some(Param::T),
        panels: &[1.0, 2.0, 3.0],
    },
    PresetInfo {
        name: "fig8",
        summary: "efficiency over (F, Δ), equilibrium boson",
        panel_param: Some(Param::T),
        panels: &[1.0, 2.0, 3.0],
    },
    PresetInfo { name: "fig9", summary: "efficiency over (Δ, ΔT), boson", panel_param: Some(Param::TBar), panels: &[1.0, 2.0] },
    PresetInfo {
        name: "fig10",
        summary: "efficiency over (F, Δ), equilibrium fermion, T = 1",
        panel_param: Some(Param::Mu),
        panels: &[3.0, 6.0, -3.0, -6.0],
    },
    PresetInfo {
        name: "fig11",
        summary: "efficiency over (Δ, Δμ), fermion, T = 1",
        panel_param: Some(Param::MuBar),
        panels: &[0.0, 3.0, 6.0, -6.0],
    },
];

pub fn info(name: &str) -> Option<&'static PresetInfo> {
    PRESETS.iter().find(|p| p.name == name)
}

fn base(name: &str, statistics: Statistics, state: StateKind, axes: Vec<Axis>) -> SweepConfig {
    SweepConfig { name: Some(name.to_string()), statistics, state, axes, ..SweepConfig::default() }
}

fn line(param: Param, min: f64, max: f64) -> Axis {
    Axis::new(param, min, max, LINE_POINTS)
}

fn map(param: Param, min: f64, max: f64) -> Axis {
    Axis::new(param, min, max, MAP_POINTS)
}

/// The named preset, with `panel` selecting a curve or panel value.
pub fn preset(name: &str, panel: Option<f64>) -> Result<SweepConfig, CliError> {
    use Param::*;
    use StateKind::*;
    use Statistics::{Boson, Fermion};

    let info = info(name).ok_or_else(|| CliError::UnknownPreset(name.to_string()))?;
    let mut cfg = match name {
        "fig2a" => base(name, Boson, Eg, vec![line(Delta, -3.0, 3.0)]),
        "fig2b" => {
            let mut c = base(name, Fermion, Eg, vec![line(Delta, -3.0, 3.0)]);
            c.fixed.insert(MuBar, 2.0);
            c
        }
        "fig3" => base(name, Boson, Eg, vec![line(Delta, -3.0, 3.0)]),
        "fig3s" => {
            let mut c = base(name, Boson, Bloch, vec![line(Delta, -3.0, 3.0)]);
            c.fixed.insert(Theta, PI / 4.0);
            c
        }
        "fig4" => {
            let mut c = base(name, Fermion, Bloch, vec![line(Delta, -3.0, 3.0)]);
            c.fixed.insert(Theta, PI / 4.0);
            c.fixed.insert(MuBar, 2.0);
            c
        }
        "fig5" => base(name, Boson, Bloch, vec![map(Theta, 0.0, PI), map(Phi, 0.0, 2.0 * PI)]),
        "fig6a" | "fig6b" => {
            let mut c = base(name, Boson, Bloch, vec![line(DT, -1.8, 1.8)]);
            c.fixed.insert(Theta, PI / 4.0);
            if name == "fig6b" {
                c.equation = EquationKind::LindbladPheno;
            }
            c
        }
        "fig6x" => {
            let mut c = base(name, Boson, Bloch, vec![line(Phi, 0.0, 2.0 * PI)]);
            c.fixed.insert(Theta, PI / 4.0);
            c
        }
        "fig7a" => {
            let mut c = base(name, Boson, Bloch, vec![line(T, 0.1, 5.0)]);
            c.fixed.insert(Theta, PI / 4.0);
            c
        }
        "fig7b" => {
            let mut c = base(name, Fermion, Bloch, vec![line(Mu, -8.0, 8.0)]);
            c.fixed.insert(Theta, PI / 4.0);
            c
        }
        "fig8" => base(name, Boson, Eg, vec![map(F, 0.1, 3.0), map(Delta, -3.5, 3.5)]),
        "fig9" => base(name, Boson, Eg, vec![map(Delta, -3.5, 3.5), map(DT, -1.8, 1.8)]),
        "fig10" => base(name, Fermion, Eg, vec![map(F, 0.1, 3.0), map(Delta, -3.5, 3.5)]),
        "fig11" => base(name, Fermion, Eg, vec![map(Delta, -3.5, 3.5), map(DMu, -4.0, 4.0)]),
        _ => return Err(CliError::UnknownPreset(name.to_string())),
    };

    if let Some(param) = info.panel_param {
        let value = panel.unwrap_or(info.panels[0]);
        cfg.fixed.insert(param, value);
        cfg.panel = Some(format!("{}={}", param.as_str(), value));
    } else if panel.is_some() {
        return Err(CliError::Config(format!("preset {name} has no panels")));
    }
    cfg.validate()?;
    Ok(cfg)
}
