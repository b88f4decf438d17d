//! Claim reports: a human-readable table and line-delimited JSON records.

use fkpp_core::{AuditVerdict, Status};
use serde_json::{json, Map, Value};

use crate::claims::ClaimOutcome;
use crate::config::RunConfig;

/// Verdicts in registry order plus run metadata.
#[derive(Debug, Clone)]
pub struct ClaimReport {
    pub config_hash: String,
    pub version: &'static str,
    pub outcomes: Vec<ClaimOutcome>,
}

impl ClaimReport {
    pub fn new(cfg: &RunConfig, outcomes: Vec<ClaimOutcome>) -> Self {
        Self { config_hash: cfg.hash(), version: env!("CARGO_PKG_VERSION"), outcomes }
    }

    pub fn verdicts(&self) -> impl Iterator<Item = &AuditVerdict> {
        self.outcomes.iter().map(|o| &o.verdict)
    }

    pub fn count(&self, status: Status) -> usize {
        self.verdicts().filter(|v| v.status == status).count()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "fkpp audit report\nconfig_hash: {}\nversion: {}\nclaims: {} (holds {}, fails {}, not_applicable {})\n\n",
            self.config_hash,
            self.version,
            self.outcomes.len(),
            self.count(Status::Holds),
            self.count(Status::Fails),
            self.count(Status::NotApplicable),
        );
        s.push_str(&format!("{:<36} {:<15} {:>13} {:>13}\n", "claim_id", "status", "max_violation", "tolerance"));
        for v in self.verdicts() {
            s.push_str(&format!(
                "{:<36} {:<15} {:>13} {:>13}\n",
                v.claim_id,
                v.status.as_str(),
                sci(v.max_violation),
                sci(v.tolerance)
            ));
            if let Some(ce) = &v.counterexample {
                let pairs = |list: &[(&str, f64)]| {
                    list.iter().map(|(k, x)| format!("{k}={}", sci(*x))).collect::<Vec<_>>().join(", ")
                };
                s.push_str(&format!("    at: {}", pairs(&ce.coordinates)));
                if !ce.values.is_empty() {
                    s.push_str(&format!("; {}", pairs(&ce.values)));
                }
                s.push('\n');
            }
            if !v.note.is_empty() {
                s.push_str(&format!("    note: {}\n", v.note));
            }
        }
        s
    }

    /// One JSON object per claim, newline terminated.
    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for v in self.verdicts() {
            s.push_str(&record(v, &self.config_hash).to_string());
            s.push('\n');
        }
        s
    }

    /// Wall time per claim. Kept apart from the reports, which must be
    /// byte-identical across runs.
    pub fn timings(&self) -> String {
        let mut s = String::from("claim_id,seconds\n");
        for o in &self.outcomes {
            s.push_str(&format!("{},{:.3}\n", o.verdict.claim_id, o.seconds));
        }
        s
    }
}

fn sci(v: f64) -> String {
    if v.is_nan() {
        "-".to_owned()
    } else {
        format!("{v:.3e}")
    }
}

fn number(v: f64) -> Value {
    // JSON has no NaN or infinities
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn object(list: &[(&'static str, f64)]) -> Value {
    Value::Object(list.iter().map(|(k, v)| ((*k).to_owned(), number(*v))).collect::<Map<_, _>>())
}

fn record(v: &AuditVerdict, config_hash: &str) -> Value {
    let empty = Vec::new();
    let (coords, values) = v.counterexample.as_ref().map_or((&empty, &empty), |ce| (&ce.coordinates, &ce.values));
    json!({
        "claim_id": v.claim_id,
        "status": v.status.as_str(),
        "holds": v.holds(),
        "max_violation": number(v.max_violation),
        "tolerance": number(v.tolerance),
        "coordinates": object(coords),
        "values": object(values),
        "note": v.note,
        "config_hash": config_hash,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use fkpp_core::Counterexample;

    fn report() -> ClaimReport {
        let outcomes = vec![
            ClaimOutcome { verdict: AuditVerdict::measure("a", 0.5, 1.0, Counterexample::default()), seconds: 0.25 },
            ClaimOutcome {
                verdict: AuditVerdict::measure("b", 2.0, 1.0, Counterexample::at(&[("x", 1.5)]).value("u", 3.0))
                    .with_note("why"),
                seconds: 1.0,
            },
            ClaimOutcome { verdict: AuditVerdict::not_applicable("c", "linear"), seconds: 0.0 },
        ];
        ClaimReport::new(&RunConfig::default(), outcomes)
    }

    #[test]
    fn jsonl_records() {
        let text = report().to_jsonl();
        let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0]["holds"], true);
        assert_eq!(lines[1]["holds"], false);
        assert_eq!(lines[1]["coordinates"]["x"], 1.5);
        assert_eq!(lines[1]["values"]["u"], 3.0);
        assert_eq!(lines[2]["status"], "not_applicable");
        assert!(lines[2]["max_violation"].is_null());
    }

    #[test]
    fn text_lists_every_claim() {
        let text = report().to_text();
        assert!(text.contains("claims: 3 (holds 1, fails 1, not_applicable 1)"));
        assert!(text.contains("    at: x=1.500e0; u=3.000e0"));
        assert!(text.contains("    note: why"));
        assert!(!text.contains("seconds"));
    }
}
