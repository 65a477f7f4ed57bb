//! Mode dispatch and file emission.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use super::config::{Mode, RunConfig};
use crate::evolve::{integrate, Trajectory, TrajectoryStatus};
use crate::params::{Geometry, InitialProfile, ProblemParams};
use crate::quench::detect_and_extrapolate;
use crate::steady::{
    bounds_report, principal_eigenpair, trace_branch, trace_radial_branch, branch_m_grid,
};
use crate::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Formats a number with 17 significant digits.
pub fn fmt_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Writes a header line and one comma-separated line per record.
pub fn emit_plotdata(path: &Path, header: &str, rows: &[Vec<f64>]) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no records for {}",
            path.display()
        )));
    }
    let mut out = String::with_capacity(rows.len() * rows[0].len() * 24);
    out.push_str(header);
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| fmt_num(v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    write_file(path, &out)
}

/// Key/value table with a `quantity,value` header.
fn emit_table(path: &Path, entries: &[(&str, String)]) -> Result<()> {
    let mut out = String::from("quantity,value\n");
    for (k, v) in entries {
        let _ = writeln!(out, "{k},{v}");
    }
    write_file(path, &out)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Outcome of one run: status label, headline numbers, and whether any part
/// failed numerically.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub status: String,
    pub headline: Vec<(String, String)>,
    pub failed: Option<String>,
}

impl RunSummary {
    fn ok(status: &str, headline: Vec<(String, String)>) -> Self {
        Self {
            status: status.into(),
            headline,
            failed: None,
        }
    }
}

fn head(k: &str, v: f64) -> (String, String) {
    (k.to_string(), fmt_num(v))
}

fn run_bifurcate(cfg: &RunConfig, params: &ProblemParams, out: &Path) -> Result<RunSummary> {
    let header = "M,m,lambda,mu";
    let fold_header = "M,m,lambda,mu,on_boundary,grid_lambda";
    match params.geometry {
        Geometry::Interval => {
            let b = trace_branch(params.alpha, params.beta, &branch_m_grid(params.beta, cfg.branch_points))?;
            let rows: Vec<Vec<f64>> = b
                .points
                .iter()
                .map(|p| vec![p.gap_max, p.gap_min, p.lambda, p.mu])
                .collect();
            emit_plotdata(&out.join("branch.csv"), header, &rows)?;
            let f = b.fold;
            emit_plotdata(
                &out.join("fold.csv"),
                fold_header,
                &[vec![
                    f.gap_max,
                    f.gap_min,
                    f.lambda,
                    f.mu,
                    if b.fold_on_boundary { 1.0 } else { 0.0 },
                    b.grid_fold.lambda,
                ]],
            )?;
            Ok(RunSummary::ok(
                if b.fold_on_boundary { "fold_on_boundary" } else { "ok" },
                vec![head("lambda_star", f.lambda), head("M_star", f.gap_max)],
            ))
        }
        Geometry::Ball { radius } => {
            let b = trace_radial_branch(params.alpha, params.beta, params.dim, radius, 8.0, cfg.branch_points)?;
            let rows: Vec<Vec<f64>> = b
                .points
                .iter()
                .map(|p| vec![p.gap_max, p.gap_min, p.lambda, p.mu])
                .collect();
            emit_plotdata(&out.join("branch.csv"), header, &rows)?;
            let f = b.fold;
            emit_plotdata(
                &out.join("fold.csv"),
                fold_header,
                &[vec![f.gap_max, f.gap_min, f.lambda, f.mu, 0.0, f.lambda]],
            )?;
            Ok(RunSummary::ok(
                "ok",
                vec![head("lambda_star", f.lambda), head("M_star", f.gap_max)],
            ))
        }
    }
}

fn run_bounds(params: &ProblemParams, out: &Path) -> Result<RunSummary> {
    let b = bounds_report(params)?;
    let opt = |v: Option<f64>| v.map(fmt_num).unwrap_or_else(|| "not_applicable".into());
    let (lt, q, a) = match b.lambda_tilde {
        Some(t) => (
            t.lambda_tilde.map(fmt_num).unwrap_or_else(|| "vacuous".into()),
            fmt_num(t.q_alpha),
            fmt_num(t.a_alpha),
        ),
        None => ("not_applicable".into(), "not_applicable".into(), "not_applicable".into()),
    };
    emit_table(
        &out.join("bounds.csv"),
        &[
            ("pohozaev_lower", opt(b.pohozaev_lower)),
            ("upper", fmt_num(b.upper)),
            ("mu_star_lower", fmt_num(b.mu_star_lower)),
            ("lambda_tilde", lt),
            ("q_alpha", q),
            ("a_alpha", a),
            ("lambda1", fmt_num(b.lambda1)),
            ("m1", fmt_num(b.m1)),
        ],
    )?;
    Ok(RunSummary::ok(
        "ok",
        vec![head("upper", b.upper), head("mu_star_lower", b.mu_star_lower)],
    ))
}

fn run_eigen(params: &ProblemParams, out: &Path) -> Result<RunSummary> {
    let e = principal_eigenpair(params.geometry, params.beta, params.dim)?;
    emit_plotdata(&out.join("eigenvalue.csv"), "lambda1,m1,root", &[vec![e.lambda1, e.m1, e.root]])?;
    let rows: Vec<Vec<f64>> = e.x.iter().zip(&e.phi).map(|(&x, &p)| vec![x, p]).collect();
    emit_plotdata(&out.join("eigen.csv"), "x,phi", &rows)?;
    Ok(RunSummary::ok("ok", vec![head("lambda1", e.lambda1), head("m1", e.m1)]))
}

fn emit_trajectory(tr: &Trajectory, out: &Path) -> Result<()> {
    let rows: Vec<Vec<f64>> = tr
        .rows
        .iter()
        .map(|r| vec![r.t, r.umax, r.energy, r.k, r.g, r.dtau])
        .collect();
    emit_plotdata(&out.join("ledger.csv"), "t,umax,E,K,g,dtau", &rows)?;
    let dir = out.join("snapshots");
    fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    for (i, s) in tr.snapshots.iter().enumerate() {
        let rows: Vec<Vec<f64>> = s.x.iter().zip(&s.u).map(|(&x, &u)| vec![x, u]).collect();
        emit_plotdata(&dir.join(format!("{i:04}.csv")), "x,u", &rows)?;
    }
    Ok(())
}

fn simulate(cfg: &RunConfig, params: &ProblemParams, out: &Path) -> Result<Trajectory> {
    let tr = integrate(params, &cfg.scheme, cfg.grid, &InitialProfile::Zero)?;
    emit_trajectory(&tr, out)?;
    Ok(tr)
}

fn trajectory_summary(tr: &Trajectory) -> RunSummary {
    let last = tr.last();
    RunSummary {
        status: tr.status.label().into(),
        headline: vec![head("t_end", last.t), head("umax", last.umax)],
        failed: match &tr.status {
            TrajectoryStatus::Failed(reason) => Some(reason.clone()),
            _ => None,
        },
    }
}

fn run_simulate(cfg: &RunConfig, params: &ProblemParams, out: &Path) -> Result<RunSummary> {
    Ok(trajectory_summary(&simulate(cfg, params, out)?))
}

fn run_quench(cfg: &RunConfig, params: &ProblemParams, out: &Path) -> Result<RunSummary> {
    let tr = simulate(cfg, params, out)?;
    let mut summary = trajectory_summary(&tr);
    if tr.status != TrajectoryStatus::Quenched {
        emit_table(
            &out.join("quench.csv"),
            &[("status", tr.status.label().into()), ("Tq", fmt_num(f64::INFINITY))],
        )?;
        summary.headline.push(head("Tq", f64::INFINITY));
        return Ok(summary);
    }
    let r = detect_and_extrapolate(&tr)?;
    emit_table(
        &out.join("quench.csv"),
        &[
            ("status", "quenched".into()),
            ("Tq", fmt_num(r.tq)),
            ("x_star", fmt_num(r.x_star)),
            ("gamma", fmt_num(r.rate_exponent)),
            ("C", fmt_num(r.rate_constant)),
            ("C_star", fmt_num(r.profile_constant)),
            ("profile_residual", fmt_num(r.profile_residual)),
            ("window_start", fmt_num(r.fit_window.0)),
            ("window_end", fmt_num(r.fit_window.1)),
            ("r_squared", fmt_num(r.r_squared)),
            ("poor_fit", r.poor_fit.to_string()),
            ("K_final", fmt_num(r.terminal_k)),
        ],
    )?;
    summary.headline.push(head("Tq", r.tq));
    summary.headline.push(head("gamma", r.rate_exponent));
    Ok(summary)
}

fn run_single(cfg: &RunConfig, mode: Mode, params: &ProblemParams, out: &Path) -> Result<RunSummary> {
    fs::create_dir_all(out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    match mode {
        Mode::Bifurcate => run_bifurcate(cfg, params, out),
        Mode::Bounds => run_bounds(params, out),
        Mode::Eigen => run_eigen(params, out),
        Mode::Simulate => run_simulate(cfg, params, out),
        Mode::Quench => run_quench(cfg, params, out),
        Mode::Sweep => Err(Error::Config("a sweep cannot nest sweeps".into())),
    }
}

fn numerical_failure(e: &Error) -> bool {
    !matches!(e, Error::Config(_) | Error::Io(_))
}

fn run_sweep(cfg: &RunConfig, out: &Path, workers: Option<usize>) -> Result<RunSummary> {
    let axis = cfg.sweep.as_ref().expect("sweep mode carries an axis");
    let mut order: Vec<usize> = (0..axis.values.len()).collect();
    order.sort_by(|&a, &b| axis.values[a].total_cmp(&axis.values[b]));
    let values: Vec<f64> = order.iter().map(|&i| axis.values[i]).collect();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        pool = pool.num_threads(w.max(1));
    }
    let pool = pool
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let results: Vec<(f64, Result<RunSummary>)> = pool.install(|| {
        values
            .par_iter()
            .enumerate()
            .map(|(i, &v)| {
                let params = axis.parameter.apply(&cfg.params, v);
                let dir = out.join(format!("{i:03}_{}", axis.parameter.name()));
                let r = params
                    .validate()
                    .map_err(|e| Error::Config(e.to_string()))
                    .and_then(|p| run_single(cfg, axis.mode, &p, &dir));
                (v, r)
            })
            .collect()
    });
    let mut text = String::new();
    let mut failed = None;
    let columns: Vec<String> = results
        .iter()
        .find_map(|(_, r)| r.as_ref().ok())
        .map(|s| s.headline.iter().map(|(k, _)| k.clone()).collect())
        .unwrap_or_default();
    let _ = writeln!(text, "{},status{}", axis.parameter.name(), columns.iter().map(|c| format!(",{c}")).collect::<String>());
    for (v, r) in &results {
        match r {
            Ok(s) => {
                let cells: Vec<String> = columns
                    .iter()
                    .map(|c| {
                        s.headline
                            .iter()
                            .find(|(k, _)| k == c)
                            .map(|(_, v)| v.clone())
                            .unwrap_or_else(|| "nan".into())
                    })
                    .collect();
                let _ = writeln!(text, "{},{}{}", fmt_num(*v), s.status, cells.iter().map(|c| format!(",{c}")).collect::<String>());
                if let Some(f) = &s.failed {
                    failed.get_or_insert_with(|| format!("{} = {v}: {f}", axis.parameter.name()));
                }
            }
            Err(e) => {
                if !numerical_failure(e) {
                    return Err(e.clone());
                }
                let _ = writeln!(text, "{},failed{}", fmt_num(*v), ",nan".repeat(columns.len()));
                failed.get_or_insert_with(|| format!("{} = {v}: {e}", axis.parameter.name()));
            }
        }
    }
    write_file(&out.join("sweep.csv"), &text)?;
    Ok(RunSummary {
        status: if failed.is_some() { "failed".into() } else { "ok".into() },
        headline: vec![("runs".into(), results.len().to_string())],
        failed,
    })
}

/// Executes a parsed configuration into `out`, writing the manifest last.
pub fn execute(cfg: &RunConfig, source: &str, out: &Path, workers: Option<usize>) -> Result<RunSummary> {
    let start = Instant::now();
    fs::create_dir_all(out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    let result = if cfg.mode == Mode::Sweep {
        run_sweep(cfg, out, workers)
    } else {
        run_single(cfg, cfg.mode, &cfg.params, out)
    };
    let summary = match result {
        Ok(s) => s,
        Err(e) if numerical_failure(&e) => RunSummary {
            status: "failed".into(),
            headline: Vec::new(),
            failed: Some(e.to_string()),
        },
        Err(e) => return Err(e),
    };
    let mut manifest = source.trim_end().to_string();
    manifest.push_str("\n\n[manifest]\n");
    let _ = writeln!(manifest, "version = {VERSION}");
    let _ = writeln!(manifest, "wall_clock_s = {:.3}", start.elapsed().as_secs_f64());
    let _ = writeln!(manifest, "status = {}", summary.status);
    for (k, v) in &summary.headline {
        let _ = writeln!(manifest, "{k} = {v}");
    }
    if let Some(f) = &summary.failed {
        let _ = writeln!(manifest, "failure = {}", f.replace('\n', " "));
    }
    write_file(&out.join("manifest.txt"), &manifest)?;
    Ok(summary)
}

/// Reads the config at `path` and executes it. `out` overrides the config's
/// output directory.
pub fn run(path: &Path, out: Option<&Path>, workers: Option<usize>) -> Result<RunSummary> {
    let source = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let cfg = RunConfig::parse(&source)?;
    let dir: PathBuf = match (out, &cfg.output) {
        (Some(o), _) => o.to_path_buf(),
        (None, Some(o)) => PathBuf::from(o),
        (None, None) => PathBuf::from("memsq-out"),
    };
    execute(&cfg, &source, &dir, workers)
}
