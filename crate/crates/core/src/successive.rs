//! Successive approximations `u = g f_1 f_2 ... f_n` in the frequency domain.
//!
//! Each new factor solves the Bernoulli equation `f' = p (f + f^2)` with
//! `p = r g f_1 ... f_n`, i.e.
//!
//! ```text
//! f_{n+1} = exp(I) / (C_{n+1} - integral_0^t p exp(I) dt'),   I = integral_0^t p dt'
//! ```
//!
//! All primitives vanish at `t = 0`. `C_1 = 1 - r/alpha` and `C_k = 1` for
//! `k >= 2`, so every later factor starts at one.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{ModelParams, SpaceTimeGrid, SpectralField};
use crate::math::exp;
use crate::quadrature::{cumulative_exp_trapezoid, richardson_estimate};
use crate::spectral::Transform;
use crate::verdict::{AuditVerdict, Counterexample};
use crate::zeroth::{integration_constant, zeroth_factor, POLE_GUARD};

/// Default bound on the Richardson estimate of the time quadrature.
pub const QUADRATURE_TOL: f64 = 1e-6;

/// `f_1 = 1 / (C_1 - r K)`, the zeroth-approximation factor.
pub fn f1_spectral(params: &ModelParams, s: f64, t: f64) -> Result<f64> {
    zeroth_factor(params, s, t)
}

/// One newly computed factor together with its cached primitive.
#[derive(Debug, Clone)]
pub struct NextFunctional {
    pub field: SpectralField,
    /// `I_n(s, t) = integral_0^t r g f_1 ... f_n`, time-major like the fields.
    pub inner: Vec<f64>,
    /// Richardson estimate of the quadrature error in the new factor.
    pub quadrature_estimate: f64,
}

/// Append-only sequence `f_1, ..., f_n` on a spectral grid starting at
/// `t = 0`.
#[derive(Debug, Clone)]
pub struct FunctionalSequence {
    params: ModelParams,
    grid: SpaceTimeGrid,
    freqs: Vec<f64>,
    members: Vec<SpectralField>,
    constants: Vec<Vec<f64>>,
    inner: Vec<Vec<f64>>,
    // f_1 ... f_n, time-major
    running: Vec<f64>,
    quadrature_tol: f64,
    quadrature_estimate: f64,
}

impl FunctionalSequence {
    /// Starts the sequence with `f_1`.
    pub fn new(params: ModelParams, grid: SpaceTimeGrid) -> Result<Self> {
        if grid.t_min() != 0.0 {
            return Err(Error::contract("successive approximations need a time grid starting at 0"));
        }
        let freqs = grid.frequencies();
        let mut f1 = Vec::with_capacity(grid.nx() * grid.nt());
        for t in grid.t().points() {
            for &s in &freqs {
                f1.push(f1_spectral(&params, s, t).map_err(|e| with_iteration(e, 1))?);
            }
        }
        let constants = vec![freqs.iter().map(|&s| integration_constant(&params, s)).collect()];
        Ok(Self {
            params,
            grid,
            members: vec![SpectralField::from_real(grid, f1.clone())],
            freqs,
            constants,
            inner: Vec::new(),
            running: f1,
            quadrature_tol: QUADRATURE_TOL,
            quadrature_estimate: 0.0,
        })
    }

    pub fn with_quadrature_tolerance(mut self, tol: f64) -> Self {
        self.quadrature_tol = tol;
        self
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn grid(&self) -> &SpaceTimeGrid {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `f_1, ..., f_n`.
    pub fn members(&self) -> &[SpectralField] {
        &self.members
    }

    /// `C_k(s)` for each member, FFT order.
    pub fn constants(&self) -> &[Vec<f64>] {
        &self.constants
    }

    /// `I_k = integral_0^t r g f_1 ... f_k` for `k = 1 .. n-1`.
    pub fn inner_integrals(&self) -> &[Vec<f64>] {
        &self.inner
    }

    /// Largest quadrature estimate over the members computed so far.
    pub fn quadrature_estimate(&self) -> f64 {
        self.quadrature_estimate
    }

    /// The constants `C_k = 1` used for `k >= 2`.
    pub fn unit_constants(&self) -> Vec<f64> {
        vec![1.0; self.grid.nx()]
    }

    /// Computes `f_{n+1}` for the given constant without appending it.
    pub fn next_functional(&self, c_next: &[f64]) -> Result<NextFunctional> {
        let (nx, nt) = (self.grid.nx(), self.grid.nt());
        if c_next.len() != nx {
            return Err(Error::contract(format!("constant has {} samples, grid has {nx} frequencies", c_next.len())));
        }
        let iteration = self.len() + 1;
        let r = self.params.r();
        let h = self.grid.dt();
        let times: Vec<f64> = self.grid.t().points().collect();
        let mut out = vec![0.0; nx * nt];
        let mut inner = vec![0.0; nx * nt];
        let mut estimate = 0.0_f64;
        let mut q = vec![0.0; nt];
        let mut w = vec![0.0; nt];
        for ks in 0..nx {
            let a = self.params.alpha(self.freqs[ks]);
            for (it, qv) in q.iter_mut().enumerate() {
                *qv = r * self.running[it * nx + ks];
            }
            let rule = |v: &[f64], step: f64| cumulative_exp_trapezoid(a, v, step, 0.0);
            let i_n = rule(&q, h);
            for it in 0..nt {
                w[it] = q[it] * exp(i_n[it]);
            }
            let j_n = rule(&w, h);
            let est_i = richardson_estimate(&q, h, rule);
            let est_j = richardson_estimate(&w, h, rule);
            let mut f_max = 0.0_f64;
            for it in 0..nt {
                let den = c_next[ks] - j_n[it];
                if !(den.abs() >= POLE_GUARD) {
                    return Err(Error::Pole {
                        iteration: Some(iteration),
                        s: self.freqs[ks],
                        t: times[it],
                        magnitude: den.abs(),
                    });
                }
                let f = exp(i_n[it]) / den;
                out[it * nx + ks] = f;
                inner[it * nx + ks] = i_n[it];
                f_max = f_max.max(f.abs());
            }
            estimate = estimate.max(f_max * est_i + f_max * f_max * est_j);
        }
        if !(estimate <= self.quadrature_tol) {
            return Err(Error::QuadratureUnresolved { estimate, tolerance: self.quadrature_tol });
        }
        Ok(NextFunctional { field: SpectralField::from_real(self.grid, out), inner, quadrature_estimate: estimate })
    }

    /// Computes `f_{n+1}` and appends it.
    pub fn push(&mut self, c_next: &[f64]) -> Result<&SpectralField> {
        let next = self.next_functional(c_next)?;
        for (p, f) in self.running.iter_mut().zip(next.field.values()) {
            *p *= f.re;
        }
        self.quadrature_estimate = self.quadrature_estimate.max(next.quadrature_estimate);
        self.constants.push(c_next.to_vec());
        self.inner.push(next.inner);
        self.members.push(next.field);
        Ok(self.members.last().expect("just pushed"))
    }

    /// Appends `f_{n+1}` with `C_{n+1} = 1`.
    pub fn push_unit(&mut self) -> Result<&SpectralField> {
        let c = self.unit_constants();
        self.push(&c)
    }

    /// `P_n = g f_1 ... f_n`.
    pub fn product_field(&self) -> SpectralField {
        let nx = self.grid.nx();
        let values = self
            .grid
            .t()
            .points()
            .enumerate()
            .flat_map(|(it, t)| {
                let row = &self.running[it * nx..(it + 1) * nx];
                self.freqs.iter().zip(row).map(move |(&s, p)| exp(-self.params.alpha(s) * t) * p).collect::<Vec<_>>()
            })
            .collect();
        SpectralField::from_real(self.grid, values)
    }
}

fn with_iteration(e: Error, n: usize) -> Error {
    match e {
        Error::Pole { s, t, magnitude, .. } => Error::Pole { iteration: Some(n), s, t, magnitude },
        other => other,
    }
}

/// `max_s |P(s, t)|` with `P` linear in time between grid samples.
pub fn spectral_peak(product: &SpectralField, t: f64) -> Result<f64> {
    slice_at(product, t, |row| row.iter().fold(0.0_f64, |m, v| m.max(v.norm())))
}

/// `max_x |p(x, t)|` of the inverse transform of `P` at time `t`.
pub fn spatial_peak(product: &SpectralField, t: f64) -> Result<f64> {
    let transform = Transform::new(*product.grid().x())?;
    let (it, w) = bracket(product.grid(), t)?;
    let lo = transform.inverse_complex(product.slice(it))?;
    let hi = if w > 0.0 { transform.inverse_complex(product.slice(it + 1))? } else { lo.clone() };
    Ok(lo.iter().zip(&hi).fold(0.0_f64, |m, (a, b)| m.max(((1.0 - w) * a.re + w * b.re).abs())))
}

fn bracket(grid: &SpaceTimeGrid, t: f64) -> Result<(usize, f64)> {
    let axis = grid.t();
    if let Some(i) = axis.index_of(t) {
        return Ok((i, 0.0));
    }
    if !(t >= grid.t_min() && t <= grid.t_max()) {
        return Err(Error::contract(format!("probe time {t} outside [{}, {}]", grid.t_min(), grid.t_max())));
    }
    let pos = (t - grid.t_min()) / grid.dt();
    let i = (pos as usize).min(axis.len() - 2);
    Ok((i, pos - i as f64))
}

fn slice_at(product: &SpectralField, t: f64, reduce: impl Fn(&[Complex64]) -> f64) -> Result<f64> {
    let (it, w) = bracket(product.grid(), t)?;
    if w == 0.0 {
        return Ok(reduce(product.slice(it)));
    }
    let mixed: Vec<Complex64> =
        product.slice(it).iter().zip(product.slice(it + 1)).map(|(a, b)| a * (1.0 - w) + b * w).collect();
    Ok(reduce(&mixed))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseThresholds {
    /// Allowed drift of `M_n(0)` away from `M_1(0)`.
    pub origin_drift: f64,
    /// Relative decrease per iteration that counts as strict decay.
    pub min_decay: f64,
}

impl Default for CollapseThresholds {
    fn default() -> Self {
        Self { origin_drift: 1e-9, min_decay: 1e-12 }
    }
}

pub const DEFAULT_PROBE_TIMES: [f64; 5] = [0.0, 0.1, 0.5, 1.0, 2.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRow {
    pub n: usize,
    pub t: f64,
    /// `max_s |P_n(s, t)|`
    pub max_abs_p: f64,
    /// `max_x |p_n(x, t)|` of the spatial view.
    pub spatial_peak: f64,
}

#[derive(Debug, Clone)]
pub struct CollapseReport {
    pub table: Vec<DecayRow>,
    /// Strict decrease of `M_n(t)` in `n` at every positive probe time.
    pub decay: AuditVerdict,
    /// `M_n(0)` pinned to `M_1(0)`.
    pub origin: AuditVerdict,
    /// Members completed before stopping.
    pub completed: usize,
    /// Numerical failure that stopped the iteration early.
    pub error: Option<Error>,
}

impl CollapseReport {
    pub fn collapse_observed(&self) -> bool {
        self.decay.holds() && (self.origin.holds() || !self.origin.is_applicable())
    }

    pub fn verdict_label(&self) -> &'static str {
        if self.collapse_observed() {
            "collapse_observed"
        } else {
            "no_collapse"
        }
    }
}

/// Extends `seq` with unit constants up to `max_n` members and tabulates
/// `M_n(t)` at `probe_times`. A pole or unresolved quadrature stops the
/// iteration; the table then covers the completed members and the error is
/// recorded in the report.
pub fn collapse_audit(
    seq: &mut FunctionalSequence,
    max_n: usize,
    probe_times: &[f64],
    thresholds: CollapseThresholds,
) -> Result<CollapseReport> {
    if max_n < 2 {
        return Err(Error::contract("collapse audit needs max_n >= 2"));
    }
    if probe_times.is_empty() {
        return Err(Error::contract("collapse audit needs probe times"));
    }
    for &t in probe_times {
        bracket(seq.grid(), t)?;
    }
    let mut peaks: Vec<Vec<f64>> = Vec::new();
    let mut table = Vec::new();
    let mut record = |seq: &FunctionalSequence, peaks: &mut Vec<Vec<f64>>| -> Result<()> {
        let p = seq.product_field();
        let mut row = Vec::with_capacity(probe_times.len());
        for &t in probe_times {
            let m = spectral_peak(&p, t)?;
            table.push(DecayRow { n: seq.len(), t, max_abs_p: m, spatial_peak: spatial_peak(&p, t)? });
            row.push(m);
        }
        peaks.push(row);
        Ok(())
    };
    record(seq, &mut peaks)?;
    let mut error = None;
    while seq.len() < max_n {
        match seq.push_unit() {
            Ok(_) => record(seq, &mut peaks)?,
            Err(e) if e.is_numerical() => {
                error = Some(e);
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let mut worst_ratio = f64::NEG_INFINITY;
    let mut worst_at = Counterexample::default();
    for (j, &t) in probe_times.iter().enumerate() {
        if t <= 0.0 {
            continue;
        }
        for n in 1..peaks.len() {
            let ratio = peaks[n][j] / peaks[n - 1][j];
            if !(ratio <= worst_ratio) {
                worst_ratio = ratio;
                worst_at = Counterexample::at(&[("n", (n + 1) as f64), ("t", t)])
                    .value("M_prev", peaks[n - 1][j])
                    .value("M_next", peaks[n][j]);
            }
        }
    }
    let note = match &error {
        Some(e) => format!("stopped after {} members: {e}", peaks.len()),
        None => String::new(),
    };
    let decay = if peaks.len() < 2 || worst_ratio == f64::NEG_INFINITY {
        AuditVerdict::not_applicable("successive_time_collapse", "fewer than two members or no positive probe time")
    } else {
        AuditVerdict::measure("successive_time_collapse", worst_ratio, 1.0 - thresholds.min_decay, worst_at)
            .with_note(note.clone())
    };
    let origin = match probe_times.iter().position(|&t| t == 0.0) {
        None => AuditVerdict::not_applicable("successive_origin_invariance", "t = 0 is not a probe time"),
        Some(j) => {
            let mut worst = 0.0_f64;
            let mut at = Counterexample::default();
            for (n, row) in peaks.iter().enumerate() {
                let d = (row[j] - peaks[0][j]).abs();
                if d > worst {
                    worst = d;
                    at = Counterexample::at(&[("n", (n + 1) as f64), ("t", 0.0)])
                        .value("M_1", peaks[0][j])
                        .value("M_n", row[j]);
                }
            }
            AuditVerdict::measure("successive_origin_invariance", worst, thresholds.origin_drift, at).with_note(note)
        }
    };
    Ok(CollapseReport { table, decay, origin, completed: peaks.len(), error })
}
