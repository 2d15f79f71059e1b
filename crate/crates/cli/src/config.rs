//! Sweep configuration and its flat `key = value` text form.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use qbatt_core::liouville::{EquationKind, LindbladJumps};
use qbatt_core::matcore::C64;
use qbatt_core::reservoir::Statistics;
use qbatt_core::spectra::{DEFAULT_GAP_TOL, DEFAULT_TAU};

use crate::error::CliError;

/// Parameters that may be fixed or swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Delta,
    DeltaBar,
    F,
    TBar,
    DT,
    T,
    MuBar,
    DMu,
    Mu,
    Theta,
    Phi,
}

impl Param {
    pub const ALL: [Param; 11] = [
        Param::Delta,
        Param::DeltaBar,
        Param::F,
        Param::TBar,
        Param::DT,
        Param::T,
        Param::MuBar,
        Param::DMu,
        Param::Mu,
        Param::Theta,
        Param::Phi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Param::Delta => "delta",
            Param::DeltaBar => "delta_bar",
            Param::F => "F",
            Param::TBar => "T_bar",
            Param::DT => "dT",
            Param::T => "T",
            Param::MuBar => "mu_bar",
            Param::DMu => "dmu",
            Param::Mu => "mu",
            Param::Theta => "theta",
            Param::Phi => "phi",
        }
    }

    /// `T` and `mu` set both bath temperatures (chemical potentials) at once.
    pub fn is_alias(self) -> bool {
        matches!(self, Param::T | Param::Mu)
    }
}

impl FromStr for Param {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Param::ALL.into_iter().find(|p| p.as_str() == s).ok_or_else(|| CliError::Config(format!("unknown parameter '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(param: Param, min: f64, max: f64, points: usize) -> Self {
        Self { param, min, max, points }
    }

    /// Grid value `i`, computed so that symmetric ranges hit zero exactly.
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            return self.max;
        }
        self.min + (self.max - self.min) * i as f64 / (self.points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }

    fn parse(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(CliError::Config(format!("axis '{s}' must read name:min:max:points")));
        }
        let axis = Axis {
            param: parts[0].parse()?,
            min: parse_f64("axis min", parts[1])?,
            max: parse_f64("axis max", parts[2])?,
            points: parts[3].parse().map_err(|_| CliError::Config(format!("axis points '{}' is not a count", parts[3])))?,
        };
        if axis.points < 2 {
            return Err(CliError::Config(format!("axis {} needs at least 2 points", parts[0])));
        }
        if !(axis.max > axis.min) {
            return Err(CliError::Config(format!("axis {} needs max > min", parts[0])));
        }
        Ok(axis)
    }

    fn to_text(self) -> String {
        format!("{}:{}:{}:{}", self.param.as_str(), self.min, self.max, self.points)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Eg,
    Ge,
    /// `cos θ|eg⟩ + sin θ·e^{iφ}|ge⟩` with θ, φ taken from the parameters.
    Bloch,
    Explicit,
}

impl StateKind {
    fn as_str(self) -> &'static str {
        match self {
            StateKind::Eg => "eg",
            StateKind::Ge => "ge",
            StateKind::Bloch => "bloch",
            StateKind::Explicit => "explicit",
        }
    }
}

impl FromStr for StateKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "eg" => Ok(StateKind::Eg),
            "ge" => Ok(StateKind::Ge),
            "bloch" => Ok(StateKind::Bloch),
            "explicit" => Ok(StateKind::Explicit),
            other => Err(CliError::Config(format!("unknown state '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Preset name, informational.
    pub name: Option<String>,
    pub panel: Option<String>,
    pub equation: EquationKind,
    pub statistics: Statistics,
    pub state: StateKind,
    pub amplitudes: Option<[C64; 4]>,
    pub lindblad_jumps: LindbladJumps,
    pub fixed: BTreeMap<Param, f64>,
    pub axes: Vec<Axis>,
    pub alpha: f64,
    pub cutoff: f64,
    pub omega_d: f64,
    pub omega: f64,
    pub tau: f64,
    pub gap_tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let fixed = [
            (Param::Delta, 0.0),
            (Param::DeltaBar, 0.0),
            (Param::F, 0.5),
            (Param::TBar, 1.0),
            (Param::DT, 0.0),
            (Param::MuBar, 0.0),
            (Param::DMu, 0.0),
            (Param::Theta, 0.0),
            (Param::Phi, 0.0),
        ]
        .into_iter()
        .collect();
        Self {
            name: None,
            panel: None,
            equation: EquationKind::RedfieldGeneral,
            statistics: Statistics::Boson,
            state: StateKind::Eg,
            amplitudes: None,
            lindblad_jumps: LindbladJumps::Exchanged,
            fixed,
            axes: Vec::new(),
            alpha: 0.1,
            cutoff: 5.0,
            omega_d: 5.0,
            omega: 1.0,
            tau: DEFAULT_TAU,
            gap_tol: DEFAULT_GAP_TOL,
        }
    }
}

fn parse_f64(what: &str, s: &str) -> Result<f64, CliError> {
    let v: f64 = s.trim().parse().map_err(|_| CliError::Config(format!("{what}: '{s}' is not a number")))?;
    if !v.is_finite() {
        return Err(CliError::Config(format!("{what}: '{s}' is not finite")));
    }
    Ok(v)
}

fn parse_amplitudes(s: &str) -> Result<[C64; 4], CliError> {
    let parts: Vec<&str> = s.split(';').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(CliError::Config("amplitudes need four 're,im' entries separated by ';'".into()));
    }
    let mut out = [C64::new(0.0, 0.0); 4];
    for (slot, p) in out.iter_mut().zip(parts) {
        let (re, im) = p.split_once(',').ok_or_else(|| CliError::Config(format!("amplitude '{p}' must read re,im")))?;
        *slot = C64::new(parse_f64("amplitude", re)?, parse_f64("amplitude", im)?);
    }
    Ok(out)
}

impl SweepConfig {
    /// Parses config text. If any `# meta:` lines are present only those are
    /// read, so a CSV produced by a sweep is itself a valid config.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        const META: &str = "# meta:";
        let has_meta = text.lines().any(|l| l.trim_start().starts_with(META));
        let mut cfg = SweepConfig::default();
        let mut axes: BTreeMap<usize, Axis> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = if has_meta {
                match raw.trim_start().strip_prefix(META) {
                    Some(rest) => rest,
                    None => continue,
                }
            } else {
                raw.split('#').next().unwrap_or("")
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) =
                line.split_once('=').ok_or_else(|| CliError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if let Some(n) = key.strip_prefix("axis") {
                let idx: usize = n.parse().map_err(|_| CliError::Config(format!("bad axis key '{key}'")))?;
                if idx != 1 && idx != 2 {
                    return Err(CliError::Config(format!("only axis1 and axis2 are supported, got '{key}'")));
                }
                axes.insert(idx, Axis::parse(value)?);
                continue;
            }
            cfg.set(key, value)?;
        }
        cfg.axes = axes.into_values().collect();
        cfg.validate()?;
        Ok(cfg)
    }

    /// Applies one `key = value` setting (axes excluded).
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let cfg_err = |e: qbatt_core::Error| CliError::Config(e.to_string());
        match key {
            "name" => self.name = Some(value.to_string()),
            "panel" => self.panel = Some(value.to_string()),
            "version" => {}
            "equation" => self.equation = value.parse().map_err(cfg_err)?,
            "statistics" => self.statistics = value.parse().map_err(cfg_err)?,
            "state" => self.state = value.parse()?,
            "amplitudes" => self.amplitudes = Some(parse_amplitudes(value)?),
            "lindblad_jumps" => self.lindblad_jumps = value.parse().map_err(cfg_err)?,
            "alpha" => self.alpha = parse_f64(key, value)?,
            "cutoff" => self.cutoff = parse_f64(key, value)?,
            "omega_d" => self.omega_d = parse_f64(key, value)?,
            "omega" => self.omega = parse_f64(key, value)?,
            "tau" => self.tau = parse_f64(key, value)?,
            "gap_tol" => self.gap_tol = parse_f64(key, value)?,
            other => {
                let p: Param = other.parse()?;
                self.fixed.insert(p, parse_f64(other, value)?);
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.axes.is_empty() {
            return Err(CliError::Config("at least one axis is required".into()));
        }
        if self.axes.len() == 2 && self.axes[0].param == self.axes[1].param {
            return Err(CliError::Config("the two axes must sweep different parameters".into()));
        }
        if self.state == StateKind::Explicit && self.amplitudes.is_none() {
            return Err(CliError::Config("state = explicit needs an amplitudes line".into()));
        }
        if !(self.tau >= 0.0) {
            return Err(CliError::Config("tau must be ≥ 0".into()));
        }
        if !(self.gap_tol >= 0.0) {
            return Err(CliError::Config("gap_tol must be ≥ 0".into()));
        }
        if !(self.alpha >= 0.0) || !(self.cutoff > 0.0) {
            return Err(CliError::Config("alpha must be ≥ 0 and cutoff > 0".into()));
        }
        for p in [Param::TBar, Param::T] {
            let fixed = self.fixed.get(&p).copied();
            let swept = self.axes.iter().find(|a| a.param == p).map(|a| a.min);
            if let Some(t) = swept.or(fixed).filter(|t| !(*t > 0.0)) {
                return Err(CliError::Config(format!("{} must be > 0, got {t}", p.as_str())));
            }
        }
        Ok(())
    }

    pub fn grid_len(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    /// Axis values of flat grid index `k`; the last axis varies fastest.
    pub fn grid_point(&self, k: usize) -> Vec<(Param, f64)> {
        let mut rem = k;
        let mut out = vec![(Param::Delta, 0.0); self.axes.len()];
        for (slot, axis) in out.iter_mut().zip(&self.axes).rev() {
            *slot = (axis.param, axis.value(rem % axis.points));
            rem /= axis.points;
        }
        out
    }

    /// Canonical text form; parsing it returns an equal config.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(s, "{k} = {v}");
        };
        if let Some(n) = &self.name {
            line("name", n);
        }
        if let Some(p) = &self.panel {
            line("panel", p);
        }
        line("equation", &self.equation.as_str());
        line("statistics", &self.statistics.as_str());
        line("state", &self.state.as_str());
        if let Some(a) = &self.amplitudes {
            let txt: Vec<String> = a.iter().map(|z| format!("{},{}", z.re, z.im)).collect();
            line("amplitudes", &txt.join(";"));
        }
        line("lindblad_jumps", &self.lindblad_jumps.as_str());
        for (p, v) in &self.fixed {
            line(p.as_str(), v);
        }
        line("alpha", &self.alpha);
        line("cutoff", &self.cutoff);
        line("omega_d", &self.omega_d);
        line("omega", &self.omega);
        line("tau", &self.tau);
        line("gap_tol", &self.gap_tol);
        for (i, a) in self.axes.iter().enumerate() {
            line(&format!("axis{}", i + 1), &a.to_text());
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal() {
        let cfg = SweepConfig::parse("# comment\nequation = lindblad\nF = 0.7 # trailing\naxis1 = delta:-3:3:121\n").unwrap();
        assert_eq!(cfg.equation, EquationKind::LindbladPheno);
        assert_eq!(cfg.fixed[&Param::F], 0.7);
        assert_eq!(cfg.axes, vec![Axis::new(Param::Delta, -3.0, 3.0, 121)]);
        assert_eq!(cfg.axes[0].value(60), 0.0);
        assert_eq!(cfg.axes[0].value(120), 3.0);
    }

    #[test]
    fn round_trip() {
        let mut cfg = SweepConfig::parse(
            "state = explicit\namplitudes = 0,0;0.6,0;0,0.8;0,0\naxis1 = T:0.2:5:7\naxis2 = phi:0:6.283185307179586:5\n",
        )
        .unwrap();
        cfg.name = Some("x".into());
        cfg.fixed.insert(Param::Phi, std::f64::consts::FRAC_PI_2);
        let again = SweepConfig::parse(&cfg.to_text()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn meta_lines_take_precedence() {
        let text = "# meta: equation = lindblad\n# meta: axis1 = dT:-1:1:3\ndT,gap\n1,2\n";
        let cfg = SweepConfig::parse(text).unwrap();
        assert_eq!(cfg.equation, EquationKind::LindbladPheno);
        assert_eq!(cfg.axes[0].param, Param::DT);
    }

    #[test]
    fn grid_order_is_row_major() {
        let cfg = SweepConfig::parse("axis1 = delta:0:1:2\naxis2 = dT:0:2:3\n").unwrap();
        assert_eq!(cfg.grid_len(), 6);
        assert_eq!(cfg.grid_point(0), vec![(Param::Delta, 0.0), (Param::DT, 0.0)]);
        assert_eq!(cfg.grid_point(1), vec![(Param::Delta, 0.0), (Param::DT, 1.0)]);
        assert_eq!(cfg.grid_point(5), vec![(Param::Delta, 1.0), (Param::DT, 2.0)]);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "axis1 = delta:0:1:1",
            "axis1 = delta:1:0:5",
            "axis1 = omega:0:1:5",
            "axis1 = delta:0:1:5\nbogus = 1",
            "axis1 = delta:0:1:5\nF = abc",
            "axis1 = delta:0:1:5\naxis3 = dT:0:1:5",
            "F = 1",
            "axis1 = delta:0:1:5\nstate = explicit",
            "axis1 = delta:0:1:5\naxis2 = delta:0:1:5",
        ] {
            assert!(matches!(SweepConfig::parse(bad), Err(CliError::Config(_))), "{bad}");
        }
    }
}
