//! Line-oriented `key = value` run configuration.
//!
//! ```text
//! [mode]
//! mode = quench
//! [params]
//! lambda = 3
//! alpha = 1
//! [scheme]
//! grid = 141
//! ```
//!
//! Unknown sections or keys are errors. Absent keys take their defaults.

use std::fmt::Write as _;

use crate::evolve::SchemeConfig;
use crate::params::{Geometry, ProblemParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Bifurcate,
    Bounds,
    Simulate,
    Quench,
    Eigen,
    Sweep,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Bifurcate => "bifurcate",
            Mode::Bounds => "bounds",
            Mode::Simulate => "simulate",
            Mode::Quench => "quench",
            Mode::Eigen => "eigen",
            Mode::Sweep => "sweep",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "bifurcate" => Mode::Bifurcate,
            "bounds" => Mode::Bounds,
            "simulate" => Mode::Simulate,
            "quench" => Mode::Quench,
            "eigen" => Mode::Eigen,
            "sweep" => Mode::Sweep,
            other => return Err(Error::Config(format!("unknown mode '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Lambda,
    Alpha,
    Beta,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::Lambda => "lambda",
            SweepParameter::Alpha => "alpha",
            SweepParameter::Beta => "beta",
        }
    }

    pub fn apply(self, params: &ProblemParams, value: f64) -> ProblemParams {
        let mut p = *params;
        match self {
            SweepParameter::Lambda => p.lambda = value,
            SweepParameter::Alpha => p.alpha = value,
            SweepParameter::Beta => p.beta = value,
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    /// Mode of every sub-run; anything but `sweep`.
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub params: ProblemParams,
    pub scheme: SchemeConfig,
    /// Number of cells M.
    pub grid: usize,
    /// Points on the traced branch.
    pub branch_points: usize,
    pub sweep: Option<SweepAxis>,
    pub output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Simulate,
            params: ProblemParams::interval(1.0, 0.0, 1.0),
            scheme: SchemeConfig::default(),
            grid: 141,
            branch_points: 400,
            sweep: None,
            output: None,
        }
    }
}

fn num(key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>()
        .map_err(|_| Error::Config(format!("{key}: '{v}' is not a number")))
}

fn count(key: &str, v: &str) -> Result<usize> {
    v.parse::<usize>()
        .map_err(|_| Error::Config(format!("{key}: '{v}' is not a nonnegative integer")))
}

fn flag(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::Config(format!("{key}: expected true or false, got '{v}'"))),
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut mode = None;
        let mut geometry = "interval".to_string();
        let mut radius = 1.0;
        let mut sweep_param = None;
        let mut sweep_values = None;
        let mut sweep_mode = None;
        let mut section = String::new();
        let mut seen = std::collections::HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = name.trim();
                if !["mode", "params", "scheme", "sweep"].contains(&name) {
                    return Err(Error::Config(format!("line {}: unknown section [{name}]", lineno + 1)));
                }
                section = name.to_string();
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            if section.is_empty() {
                return Err(Error::Config(format!("line {}: key outside a section", lineno + 1)));
            }
            if !seen.insert(format!("{section}.{key}")) {
                return Err(Error::Config(format!("line {}: duplicate key {key}", lineno + 1)));
            }
            let s = &mut cfg.scheme;
            match (section.as_str(), key) {
                ("mode", "mode") => mode = Some(Mode::parse(value)?),
                ("mode", "output") => cfg.output = Some(value.to_string()),
                ("params", "lambda") => cfg.params.lambda = num(key, value)?,
                ("params", "alpha") => cfg.params.alpha = num(key, value)?,
                ("params", "beta") => cfg.params.beta = num(key, value)?,
                ("params", "dim") => cfg.params.dim = count(key, value)?,
                ("params", "geometry") => geometry = value.to_string(),
                ("params", "radius") => radius = num(key, value)?,
                ("scheme", "grid") => cfg.grid = count(key, value)?,
                ("scheme", "branch_points") => cfg.branch_points = count(key, value)?,
                ("scheme", "epsilon") => s.epsilon = num(key, value)?,
                ("scheme", "dtau") => s.dtau = num(key, value)?,
                ("scheme", "dtau_max") => s.dtau_max = num(key, value)?,
                ("scheme", "monitor_floor") => s.monitor_floor = num(key, value)?,
                ("scheme", "smoothing") => s.smoothing = flag(key, value)?,
                ("scheme", "quench_guard") => s.quench_guard = num(key, value)?,
                ("scheme", "steady_tol") => s.steady_tol = num(key, value)?,
                ("scheme", "t_final") => s.t_final = num(key, value)?,
                ("scheme", "max_steps") => s.max_steps = count(key, value)?,
                ("scheme", "snapshot_every") => s.snapshot_every = count(key, value)?,
                ("scheme", "frozen_mesh") => s.frozen_mesh = flag(key, value)?,
                ("scheme", "du_abs") => s.du_abs = num(key, value)?,
                ("scheme", "du_rel") => s.du_rel = num(key, value)?,
                ("sweep", "parameter") => {
                    sweep_param = Some(match value {
                        "lambda" => SweepParameter::Lambda,
                        "alpha" => SweepParameter::Alpha,
                        "beta" => SweepParameter::Beta,
                        other => return Err(Error::Config(format!("cannot sweep '{other}'"))),
                    })
                }
                ("sweep", "values") => {
                    sweep_values = Some(
                        value
                            .split(',')
                            .map(|v| num(key, v.trim()))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                ("sweep", "mode") => sweep_mode = Some(Mode::parse(value)?),
                _ => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key '{key}' in [{section}]",
                        lineno + 1
                    )))
                }
            }
        }
        cfg.mode = mode.ok_or_else(|| Error::Config("missing mode".into()))?;
        cfg.params.geometry = match geometry.as_str() {
            "interval" => {
                if seen.contains("params.radius") {
                    return Err(Error::Config("radius applies to the ball only".into()));
                }
                Geometry::Interval
            }
            "ball" => Geometry::Ball { radius },
            other => return Err(Error::Config(format!("unknown geometry '{other}'"))),
        };
        let any_sweep = sweep_param.is_some() || sweep_values.is_some() || sweep_mode.is_some();
        if cfg.mode == Mode::Sweep {
            let axis = SweepAxis {
                parameter: sweep_param.ok_or_else(|| Error::Config("sweep needs a parameter".into()))?,
                values: sweep_values.ok_or_else(|| Error::Config("sweep needs values".into()))?,
                mode: sweep_mode.unwrap_or(Mode::Quench),
            };
            if axis.mode == Mode::Sweep {
                return Err(Error::Config("a sweep cannot nest sweeps".into()));
            }
            if axis.values.is_empty() {
                return Err(Error::Config("sweep values are empty".into()));
            }
            cfg.sweep = Some(axis);
        } else if any_sweep {
            return Err(Error::Config("[sweep] keys need mode = sweep".into()));
        }
        cfg.params
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        cfg.scheme.validate().map_err(|e| Error::Config(e.to_string()))?;
        if cfg.grid < 8 {
            return Err(Error::Config("grid needs at least 8 cells".into()));
        }
        if cfg.branch_points < 50 {
            return Err(Error::Config("branch_points needs at least 50".into()));
        }
        Ok(cfg)
    }

    /// The config text a manifest opens with, everything before `[manifest]`.
    pub fn from_manifest(text: &str) -> Result<Self> {
        let cut = text
            .lines()
            .position(|l| l.trim() == "[manifest]")
            .unwrap_or(usize::MAX);
        let head: Vec<&str> = text.lines().take(cut).collect();
        Self::parse(&head.join("\n"))
    }

    /// Canonical text form; parsing it gives back an equal config.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        let s = &self.scheme;
        let _ = writeln!(out, "[mode]\nmode = {}", self.mode.name());
        if let Some(o) = &self.output {
            let _ = writeln!(out, "output = {o}");
        }
        let _ = writeln!(out, "[params]");
        let _ = writeln!(out, "lambda = {:?}\nalpha = {:?}\nbeta = {:?}\ndim = {}", p.lambda, p.alpha, p.beta, p.dim);
        match p.geometry {
            Geometry::Interval => {
                let _ = writeln!(out, "geometry = interval");
            }
            Geometry::Ball { radius } => {
                let _ = writeln!(out, "geometry = ball\nradius = {radius:?}");
            }
        }
        let _ = writeln!(out, "[scheme]");
        let _ = writeln!(out, "grid = {}\nbranch_points = {}", self.grid, self.branch_points);
        let _ = writeln!(
            out,
            "epsilon = {:?}\ndtau = {:?}\ndtau_max = {:?}\nmonitor_floor = {:?}\nsmoothing = {}",
            s.epsilon, s.dtau, s.dtau_max, s.monitor_floor, s.smoothing
        );
        let _ = writeln!(
            out,
            "quench_guard = {:?}\nsteady_tol = {:?}\nt_final = {:?}\nmax_steps = {}\nsnapshot_every = {}",
            s.quench_guard, s.steady_tol, s.t_final, s.max_steps, s.snapshot_every
        );
        let _ = writeln!(
            out,
            "frozen_mesh = {}\ndu_abs = {:?}\ndu_rel = {:?}",
            s.frozen_mesh, s.du_abs, s.du_rel
        );
        if let Some(axis) = &self.sweep {
            let values: Vec<String> = axis.values.iter().map(|v| format!("{v:?}")).collect();
            let _ = writeln!(
                out,
                "[sweep]\nparameter = {}\nvalues = {}\nmode = {}",
                axis.parameter.name(),
                values.join(", "),
                axis.mode.name()
            );
        }
        out
    }
}
