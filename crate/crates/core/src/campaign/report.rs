use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{SweepConfig, SweepKind};
use crate::arith::PrecisionPolicy;
use crate::equation::SolutionTriple;
use crate::reduction::{CaseVerdict, Status};
use crate::ENGINE_VERSION;

/// One line of a report. Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub p: u64,
    pub n: u64,
    pub case_tag: String,
    pub status: Status,
    pub method: String,
    pub convergents_checked: u64,
    pub q_max: u64,
    pub precision_bits: u32,
    pub elapsed_ms: u64,
    pub witness: Option<SolutionTriple>,
    pub engine_version: String,
    pub config_hash: String,
}

impl CaseRecord {
    pub fn from_verdict(v: &CaseVerdict, config_hash: &str) -> Self {
        CaseRecord {
            p: v.p,
            n: v.n,
            case_tag: v.tag.as_str().to_string(),
            status: v.status,
            method: v.method.clone(),
            convergents_checked: v.convergents_checked() as u64,
            q_max: v.q_max,
            precision_bits: v.precision_bits,
            elapsed_ms: v.elapsed_ms,
            witness: v.witness,
            engine_version: ENGINE_VERSION.to_string(),
            config_hash: config_hash.to_string(),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCount {
    pub status: Status,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub config_hash: String,
    pub engine_version: String,
    pub p_max: Option<u64>,
    pub n_max: u64,
    pub smoke: bool,
    pub precision: PrecisionPolicy,
    pub threads: usize,
    pub cases_planned: u64,
    pub cases_completed: u64,
    pub skipped_out_of_scope: u64,
    pub counts: Vec<StatusCount>,
    /// Every record whose status is not an elimination.
    pub non_eliminated: Vec<CaseRecord>,
    pub interrupted: bool,
    pub aborted: bool,
    pub resumed_from: Option<u64>,
    pub total_ms: u64,
    /// Comparisons decided on overlapping intervals during this run.
    pub straddle_decisions: u64,
    pub details: serde_json::Value,
    #[serde(skip)]
    pub records: Vec<CaseRecord>,
}

impl SweepReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        kind: SweepKind,
        config_hash: String,
        p_max: Option<u64>,
        n_max: u64,
        cfg: &SweepConfig,
        cases_planned: u64,
        skipped_out_of_scope: u64,
        records: Vec<CaseRecord>,
        interrupted: bool,
        aborted: bool,
        resumed_from: Option<u64>,
        total_ms: u64,
        straddle_decisions: u64,
        details: serde_json::Value,
    ) -> Self {
        let counts = Status::ALL
            .iter()
            .map(|&s| StatusCount {
                status: s,
                count: records.iter().filter(|r| r.status == s).count() as u64,
            })
            .collect();
        SweepReport {
            kind,
            config_hash,
            engine_version: ENGINE_VERSION.to_string(),
            p_max,
            n_max,
            smoke: cfg.smoke,
            precision: cfg.policy,
            threads: cfg.threads,
            cases_planned,
            cases_completed: records.len() as u64,
            skipped_out_of_scope,
            counts,
            non_eliminated: records
                .iter()
                .filter(|r| !r.status.is_eliminated())
                .cloned()
                .collect(),
            interrupted,
            aborted,
            resumed_from,
            total_ms,
            straddle_decisions,
            details,
            records,
        }
    }

    pub fn count(&self, status: Status) -> u64 {
        self.counts
            .iter()
            .find(|c| c.status == status)
            .map_or(0, |c| c.count)
    }

    /// Every planned case completed and none has a solution beyond `(1, 1, 2)`.
    pub fn succeeded(&self) -> bool {
        !self.interrupted
            && !self.aborted
            && self.cases_completed == self.cases_planned
            && self.straddle_decisions == 0
            && self.non_eliminated.iter().all(|r| r.status == Status::SolutionOnly112)
    }

    /// `0` success, `1` solution or survivor, `3` precision failure.
    pub fn exit_code(&self) -> i32 {
        if self.count(Status::PrecisionFailure) > 0 {
            3
        } else if self.succeeded() || self.interrupted {
            0
        } else {
            1
        }
    }

    /// The records as line-delimited JSON; `timings = false` zeroes `elapsed_ms`.
    pub fn render_body(&self, timings: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            if timings {
                out.push_str(&r.to_line());
            } else {
                out.push_str(
                    &CaseRecord {
                        elapsed_ms: 0,
                        ..r.clone()
                    }
                    .to_line(),
                );
            }
            out.push('\n');
        }
        out
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} sweep, config {}", self.kind.as_str(), self.config_hash);
        match self.p_max {
            Some(p) => {
                let _ = writeln!(s, "range: 3 < p < {p}, 1 ≤ n ≤ {}", self.n_max);
            }
            None => {
                let _ = writeln!(s, "range: 5 | n, n ≤ {}", self.n_max);
            }
        }
        let _ = writeln!(
            s,
            "cases: {}/{} completed, {} outside the hypothesis skipped",
            self.cases_completed, self.cases_planned, self.skipped_out_of_scope
        );
        for c in self.counts.iter().filter(|c| c.count > 0) {
            let _ = writeln!(s, "  {:<22} {}", c.status.as_str(), c.count);
        }
        for r in self.non_eliminated.iter().filter(|r| r.status != Status::SolutionOnly112) {
            let _ = writeln!(s, "  ! p = {}, n = {}: {} ({})", r.p, r.n, r.status, r.method);
        }
        let _ = writeln!(s, "straddle decisions: {}", self.straddle_decisions);
        let _ = writeln!(s, "runtime: {} ms", self.total_ms);
        let state = if self.interrupted {
            "interrupted; resume with the same checkpoint"
        } else if self.succeeded() {
            "complete, no solution beyond (1, 1, 2)"
        } else {
            "FAILED"
        };
        let _ = write!(s, "result: {state}");
        s
    }
}
