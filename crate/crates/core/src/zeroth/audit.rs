use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::closed_form::{closed_form_term, decaying_resolvent, Term};
use crate::error::Result;
use crate::kernel::{Axis, ModelParams};
use crate::math::{exp, sqrt, PI};
use crate::spectral::Transform;
use crate::verdict::{AuditVerdict, Counterexample};

/// Alias folds used when sampling spectra for the pair audit.
pub const PAIR_FOLDS: usize = 64;
pub const PAIR_TOLERANCE: f64 = 1e-4;
pub const PAIR_TIMES: [f64; 4] = [0.25, 0.5, 1.0, 2.0];

/// One audited transform pair.
#[derive(Debug, Clone)]
pub struct PairAudit {
    pub verdict: AuditVerdict,
    /// A-priori bound on the spectrum discarded beyond the folded band.
    pub tail_bound: f64,
    /// The numerical side cannot reach the tolerance on this grid.
    pub grid_limited: bool,
}

/// Spectral mass beyond `|s| > cut` for the quoted spectral side, maximized
/// over `times`.
fn tail_bound(term: Option<Term>, params: &ModelParams, cut: f64, times: &[f64]) -> f64 {
    let k = 4.0 * PI * PI * params.d();
    let algebraic = 2.0 / (k * cut);
    let gaussian = |t: f64| 2.0 * exp(-k * t * cut * cut) / (2.0 * k * t * cut);
    let worst = |f: &dyn Fn(f64) -> f64| times.iter().fold(0.0_f64, |m, &t| m.max(f(t)));
    match term {
        None | Some(Term::Gauss) => worst(&gaussian),
        Some(Term::Resolvent) => algebraic,
        Some(Term::MixedSingle) => worst(&|t| algebraic.min(gaussian(t) / params.b())),
        Some(Term::MixedDouble) => worst(&|t| algebraic.min(gaussian(2.0 * t) / params.b())),
    }
}

struct Discrepancy {
    max: f64,
    x: f64,
    t: f64,
    quoted: f64,
    numeric: f64,
}

fn compare(
    transform: &Transform,
    times: &[f64],
    spectrum: impl Fn(f64, f64) -> f64,
    spatial: impl Fn(f64, f64) -> Result<f64>,
) -> Result<Discrepancy> {
    let axis = *transform.axis();
    let mut worst = Discrepancy { max: 0.0, x: 0.0, t: 0.0, quoted: 0.0, numeric: 0.0 };
    for &t in times {
        let sampled = transform.sample_spectrum(|s| Complex64::new(spectrum(s, t), 0.0), PAIR_FOLDS);
        let numeric = transform.inverse(&sampled)?;
        for (i, x) in axis.points().enumerate() {
            let quoted = spatial(x, t)?;
            let d = (quoted - numeric[i]).abs();
            if !(d <= worst.max) {
                worst = Discrepancy { max: d, x, t, quoted, numeric: numeric[i] };
            }
        }
    }
    Ok(worst)
}

fn pair_verdict(id: &str, d: &Discrepancy, tail: f64, tolerance: f64) -> PairAudit {
    let ce = Counterexample::at(&[("x", d.x), ("t", d.t)]).value("quoted", d.quoted).value("numerical", d.numeric);
    let grid_limited = tail > tolerance;
    let mut verdict = AuditVerdict::measure(id, d.max, tolerance, ce);
    if grid_limited {
        verdict = verdict.with_note(format!("grid-limited: spectral tail bound {tail:.3e}"));
    }
    PairAudit { verdict, tail_bound: tail, grid_limited }
}

/// Compares each quoted closed form with the inverse transform of its quoted
/// spectral side on `axis` at `times` (only the first time is used for the
/// time-independent resolvent).
///
/// Returns the four term pairs followed by the Green's function pair taken
/// without its `exp(-bt)` factor. Mixed-term notes carry the discrepancy of
/// the two-sided erfc form of the same inverse for comparison.
pub fn audit_transform_pairs(
    params: &ModelParams,
    axis: &Axis,
    times: &[f64],
    tolerance: f64,
) -> Result<Vec<PairAudit>> {
    let transform = Transform::new(*axis)?;
    let cut = (PAIR_FOLDS as f64 + 0.5) / axis.step();
    let mut out = Vec::new();
    for term in Term::ALL {
        let ts: &[f64] = if term.depends_on_time() { times } else { &times[..1.min(times.len())] };
        let d =
            compare(&transform, ts, |s, t| term.spectral(params, s, t), |x, t| closed_form_term(term, params, x, t))?;
        let mut audit = pair_verdict(
            &format!("transform_pair_{}", term.name()),
            &d,
            tail_bound(Some(term), params, cut, ts),
            tolerance,
        );
        let lag = match term {
            Term::MixedSingle => Some(1.0),
            Term::MixedDouble => Some(2.0),
            _ => None,
        };
        if let Some(lag) = lag {
            let exact = compare(
                &transform,
                ts,
                |s, t| term.spectral(params, s, t),
                |x, t| decaying_resolvent(params, x, lag * t),
            )?;
            let note = format!("two-sided erfc form without exp(bt) differs by {:.3e}", exact.max);
            audit.verdict.note =
                if audit.verdict.note.is_empty() { note } else { format!("{}; {note}", audit.verdict.note) };
        }
        out.push(audit);
    }
    let d = compare(
        &transform,
        times,
        |s, t| exp(-params.alpha(s) * t),
        |x, t| {
            let four_dt = 4.0 * params.d() * t;
            Ok(exp(-x * x / four_dt) / sqrt(PI * four_dt))
        },
    )?;
    out.push(pair_verdict("transform_pair_green_without_decay", &d, tail_bound(None, params, cut, times), tolerance));
    Ok(out)
}
