//! The four subcommands. Each writes its files under the output directory
//! and returns the summary lines for stdout.

use std::fmt;
use std::path::{Path, PathBuf};

use fkpp_core::kernel::green_surface;
use fkpp_core::oracle::{compare_fields, solve_fd, Coefficients, TimeWindow};
use fkpp_core::successive::{collapse_audit, FunctionalSequence};
use fkpp_core::zeroth::{padding_factor, synthesize_surface, SurfaceMethod};
use fkpp_core::SpatialField;

use crate::claims::{self, LINEAR_WINDOW_START, R_SWEEP, SWEEP_WINDOW_START};
use crate::config::{ConfigError, RunConfig};
use crate::output::{write_atomic, Table};
use crate::report::ClaimReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// Tolerance for the `linear_match` flag of `surface`.
pub const LINEAR_MATCH_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum CommandError {
    /// Bad configuration, arguments or output location.
    Usage(String),
    /// Pole, divergence or unresolved quadrature.
    Numerical(String),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Usage(_) => EXIT_USAGE,
            CommandError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl fmt::Display for CommandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommandError::Usage(m) => write!(f, "usage error: {m}"),
            CommandError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<fkpp_core::Error> for CommandError {
    fn from(e: fkpp_core::Error) -> Self {
        if e.is_numerical() {
            CommandError::Numerical(e.to_string())
        } else {
            CommandError::Usage(e.to_string())
        }
    }
}

impl From<ConfigError> for CommandError {
    fn from(e: ConfigError) -> Self {
        CommandError::Usage(format!("config: {e}"))
    }
}

/// What a command printed and how it ended. A nonzero `exit_code` with
/// written files means partial output.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub lines: Vec<String>,
    pub files: Vec<PathBuf>,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok() -> Self {
        Self { lines: Vec::new(), files: Vec::new(), exit_code: EXIT_OK }
    }

    fn write_table(&mut self, out: &Path, name: &str, table: &Table) -> Result<(), CommandError> {
        let path = out.join(name);
        table.write(&path).map_err(CommandError::Usage)?;
        self.files.push(path);
        Ok(())
    }

    fn write_text(&mut self, out: &Path, name: &str, text: &str) -> Result<(), CommandError> {
        let path = out.join(name);
        write_atomic(&path, text.as_bytes()).map_err(CommandError::Usage)?;
        self.files.push(path);
        Ok(())
    }
}

fn num(v: f64) -> String {
    format!("{v:.6e}")
}

/// `x,t,u` rows, time outer and space inner.
pub fn surface_table(u: &SpatialField) -> Table {
    let g = u.grid();
    let mut t = Table::new(&["x", "t", "u"]);
    for (it, tv) in g.t().points().enumerate() {
        for (ix, x) in g.x().points().enumerate() {
            t.push(vec![x, tv, u.get(ix, it)]);
        }
    }
    t
}

/// Per-slice `t,min,max,mass`.
pub fn slice_summary(u: &SpatialField) -> Table {
    let mut t = Table::new(&["t", "min", "max", "mass"]);
    for (it, tv) in u.grid().t().points().enumerate() {
        let s = u.slice(it);
        let lo = s.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = s.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        t.push(vec![tv, lo, hi, u.mass(it)]);
    }
    t
}

/// Largest `|a - b|` over slices with `t >= start`.
fn max_diff_from(a: &SpatialField, b: &SpatialField, start: f64) -> f64 {
    let g = a.grid();
    let mut worst = 0.0_f64;
    for (it, t) in g.t().points().enumerate() {
        if t >= start {
            for (x, y) in a.slice(it).iter().zip(b.slice(it)) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    worst
}

pub fn cmd_surface(cfg: &RunConfig, method: SurfaceMethod, out: &Path) -> Result<CommandOutput, CommandError> {
    let params = cfg.params();
    let grid = cfg.grid()?;
    let u = synthesize_surface(&params, &grid, method)?;
    let mut res = CommandOutput::ok();
    res.write_table(out, &format!("surface_{}.csv", method.name()), &surface_table(&u))?;
    res.write_table(out, &format!("surface_{}_summary.csv", method.name()), &slice_summary(&u))?;

    let (lo, hi) = u.values().iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(*v), h.max(*v)));
    let mut line = format!(
        "surface method={} rows={} padding={} min={} max={}",
        method.name(),
        grid.nx() * grid.nt(),
        padding_factor(&params, &grid, method),
        num(lo),
        num(hi)
    );
    if params.is_linear() {
        let d = max_diff_from(&u, &green_surface(&params, &grid), LINEAR_WINDOW_START);
        line.push_str(&format!(" linear_match={} linear_max_diff={}", d <= LINEAR_MATCH_TOL, num(d)));
    } else {
        line.push_str(" linear_match=n/a");
    }
    res.lines.push(line);

    if method == SurfaceMethod::ClosedFormSpatial {
        let reference = synthesize_surface(&params, &grid, SurfaceMethod::FirstOrderSpectral)?;
        let mut diff = Table::new(&["t", "max_abs_diff"]);
        for (it, t) in grid.t().points().enumerate() {
            let d = u.slice(it).iter().zip(reference.slice(it)).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
            diff.push(vec![t, d]);
        }
        res.write_table(out, "surface_closed_form_spatial_diff.csv", &diff)?;
        res.lines.push(format!(
            "diff closed_form_spatial vs first_order_spectral max_abs={}",
            num(max_diff_from(&u, &reference, f64::MIN_POSITIVE))
        ));
    }
    Ok(res)
}

pub fn cmd_iterate(cfg: &RunConfig, out: &Path) -> Result<CommandOutput, CommandError> {
    let grid = cfg.grid()?;
    let mut seq = FunctionalSequence::new(cfg.params(), grid)?;
    let report = collapse_audit(&mut seq, cfg.max_n, &cfg.probe_times, claims::collapse_thresholds(cfg))?;
    let mut spectral = Table::new(&["n", "t", "max_abs_P"]);
    let mut spatial = Table::new(&["n", "t", "max_abs_p"]);
    for row in &report.table {
        spectral.push(vec![row.n as f64, row.t, row.max_abs_p]);
        spatial.push(vec![row.n as f64, row.t, row.spatial_peak]);
    }
    let mut res = CommandOutput::ok();
    res.write_table(out, "decay.csv", &spectral)?;
    res.write_table(out, "decay_spatial.csv", &spatial)?;
    res.lines.push(format!(
        "iterate verdict={} members={} worst_ratio={} origin_drift={}",
        report.verdict_label(),
        report.completed,
        num(report.decay.max_violation),
        num(report.origin.max_violation)
    ));
    if let Some(e) = &report.error {
        res.lines.push(format!("iterate stopped early: {e}"));
        res.exit_code = EXIT_NUMERICAL;
    }
    Ok(res)
}

pub fn cmd_audit(cfg: &RunConfig, out: &Path) -> Result<CommandOutput, CommandError> {
    let report = ClaimReport::new(cfg, claims::run_registry(cfg)?);
    let mut res = CommandOutput::ok();
    res.write_text(out, "report.txt", &report.to_text())?;
    res.write_text(out, "report.jsonl", &report.to_jsonl())?;
    res.write_text(out, "timings.csv", &report.timings())?;
    res.lines.push(format!(
        "audit claims={} holds={} fails={} not_applicable={}",
        report.outcomes.len(),
        report.count(fkpp_core::Status::Holds),
        report.count(fkpp_core::Status::Fails),
        report.count(fkpp_core::Status::NotApplicable)
    ));
    Ok(res)
}

pub fn cmd_compare(cfg: &RunConfig, method: SurfaceMethod, out: &Path) -> Result<CommandOutput, CommandError> {
    let params = cfg.params();
    let grid = cfg.grid()?;
    let solver = cfg.solver();
    let analytic = |r: f64| synthesize_surface(&params.with_r(r)?, &grid, method);
    let oracle = |r: f64| solve_fd(&Coefficients::from(params.with_r(r)?), &solver).map(|s| s.field);

    let window = TimeWindow::default_for(&grid);
    let summary = compare_fields(&analytic(params.r())?, &oracle(params.r())?, window)?;
    let mut slices = Table::new(&["t", "max_abs", "l2"]);
    for s in &summary.slices {
        slices.push(vec![s.t, s.max_abs, s.l2]);
    }

    let sweep_window = TimeWindow::new(SWEEP_WINDOW_START, grid.t_max());
    let mut sweep = Table::new(&["r", "max_abs", "l2"]);
    let mut l2 = Vec::new();
    for r in R_SWEEP {
        let e = compare_fields(&analytic(r)?, &oracle(r)?, sweep_window)?;
        sweep.push(vec![r, e.max_abs, e.l2]);
        l2.push(e.l2);
    }
    let monotone = l2.windows(2).all(|w| w[0] <= w[1]);

    let mut res = CommandOutput::ok();
    res.write_table(out, "compare.csv", &slices)?;
    res.write_table(out, "compare_sweep.csv", &sweep)?;
    res.lines.push(format!(
        "compare method={} window_start={} max_abs={} l2={}",
        method.name(),
        num(window.start),
        num(summary.max_abs),
        num(summary.l2)
    ));
    res.lines.push(format!("compare sweep_monotone={monotone}"));
    Ok(res)
}
