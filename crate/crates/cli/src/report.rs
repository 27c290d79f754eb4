//! Report assembly and rendering (text and JSON).

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use nccb_core::identities::{Status, VerificationResult};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub struct Report {
    pub version: String,
    pub config: BTreeMap<String, String>,
    pub results: Vec<VerificationResult>,
    /// None suppresses both the timestamp and the per-result timings so that
    /// identical configurations produce byte-identical reports.
    pub timestamp: Option<u64>,
}

impl Report {
    pub fn new(
        config: BTreeMap<String, String>,
        mut results: Vec<VerificationResult>,
        with_timestamp: bool,
    ) -> Self {
        results.sort_by(|a, b| {
            (&a.identity, &a.params)
                .cmp(&(&b.identity, &b.params))
        });
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            results,
            timestamp: with_timestamp.then(|| {
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0)
            }),
        }
    }

    pub fn overall(&self) -> Status {
        if self.results.iter().all(VerificationResult::passed) {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .results
            .iter()
            .map(|r| {
                json!({
                    "identity": r.identity,
                    "params": r.params,
                    "status": r.status.to_string(),
                    "lhs_terms": r.lhs_terms,
                    "rhs_terms": r.rhs_terms,
                    "first_discrepancy": r.first_discrepancy,
                    "elapsed_ms": if self.timestamp.is_some() {
                        r.elapsed.as_millis() as u64
                    } else {
                        0
                    },
                })
            })
            .collect();
        let mut root = json!({
            "version": self.version,
            "config": self.config,
            "results": results,
            "overall": self.overall().to_string(),
        });
        if let Some(ts) = self.timestamp {
            root["timestamp"] = json!(ts);
        }
        root
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let params = r
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            let timing = if self.timestamp.is_some() {
                format!(" ({} ms)", r.elapsed.as_millis())
            } else {
                String::new()
            };
            out.push_str(&format!(
                "{} {:<28} {}{}\n",
                match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                },
                r.identity,
                params,
                timing
            ));
            if let Some(d) = &r.first_discrepancy {
                out.push_str(&format!("     first discrepancy: {d}\n"));
            }
        }
        out.push_str(&format!(
            "overall: {} ({} checks)\n",
            self.overall(),
            self.results.len()
        ));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => format!("{:#}\n", self.to_json()),
        }
    }
}
