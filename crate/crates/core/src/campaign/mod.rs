//! The two sweeps: every admissible `(p, n)` of the theorem, and every
//! `n` with `5 | n` for the companion equation.
//!
//! Cases are checked in parallel chunks; records are written in case order
//! by a single writer, so reports do not depend on the worker count. After
//! each chunk the report file is flushed and the checkpoint is replaced
//! atomically.

pub mod checkpoint;
pub mod corollary;
pub mod report;
pub mod theorem;

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::rigor::audit;
use crate::arith::PrecisionPolicy;
use crate::error::{Error, Result};
use crate::reduction::Status;
use crate::ENGINE_VERSION;

pub use checkpoint::Checkpoint;
pub use corollary::{congruence_pairs, corollary_case, corollary_sweep, CorollaryCase};
pub use report::{CaseRecord, StatusCount, SweepReport};
pub use theorem::{theorem_plan, theorem_sweep, TheoremPlan};

/// Cases handed to the pool at a time; also the checkpoint granularity.
pub const CHUNK: usize = 64;

pub const SMOKE_P_MAX: u64 = 100;
pub const SMOKE_N_MAX: u64 = 20;
pub const SMOKE_COROLLARY_N_MAX: u64 = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepKind {
    Theorem,
    Corollary,
}

impl SweepKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepKind::Theorem => "theorem",
            SweepKind::Corollary => "corollary",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    /// Exclusive bound on `p`; theorem sweep only.
    pub p_max: Option<u64>,
    /// Inclusive bound on `n`.
    pub n_max: Option<u64>,
    pub policy: PrecisionPolicy,
    /// Worker threads, `0` for rayon's default.
    pub threads: usize,
    pub checkpoint: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub smoke: bool,
    /// Stop after at least this many cases, as if interrupted.
    pub stop_after: Option<u64>,
    /// Record per-case wall time; off gives reproducible `elapsed_ms`.
    pub timings: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            p_max: None,
            n_max: None,
            policy: PrecisionPolicy::default(),
            threads: 0,
            checkpoint: None,
            out: None,
            smoke: false,
            stop_after: None,
            timings: true,
        }
    }
}

impl SweepConfig {
    pub fn smoke() -> Self {
        SweepConfig {
            smoke: true,
            ..SweepConfig::default()
        }
    }
}

/// Applies an override that may only shrink `default`.
fn shrink(name: &str, default: u64, over: Option<u64>) -> Result<u64> {
    match over {
        None => Ok(default),
        Some(v) if v > default => Err(Error::Config(format!(
            "{name} = {v} exceeds the derived range {default}; overrides may only shrink it"
        ))),
        Some(v) => Ok(v),
    }
}

/// Everything that determines the report body, hashed into `config_hash`.
#[derive(Serialize)]
struct HashInput<'a> {
    kind: &'a str,
    p_max: Option<u64>,
    n_max: u64,
    start_bits: u32,
    ceiling_bits: u32,
    smoke: bool,
    engine_version: &'a str,
}

pub fn config_hash(kind: SweepKind, p_max: Option<u64>, n_max: u64, cfg: &SweepConfig) -> String {
    let input = HashInput {
        kind: kind.as_str(),
        p_max,
        n_max,
        start_bits: cfg.policy.start_bits,
        ceiling_bits: cfg.policy.ceiling_bits,
        smoke: cfg.smoke,
        engine_version: ENGINE_VERSION,
    };
    let text = serde_json::to_string(&input).expect("hash input serializes");
    Sha256::digest(text.as_bytes())[..8]
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// A planned sweep: resolved ranges and the ordered work units.
pub(crate) struct Plan<C> {
    pub kind: SweepKind,
    pub p_max: Option<u64>,
    pub n_max: u64,
    pub cases: Vec<C>,
    pub skipped_out_of_scope: u64,
    pub details: serde_json::Value,
}

fn read_records(path: &PathBuf, count: usize) -> Result<Vec<CaseRecord>> {
    let file = File::open(path).map_err(|e| {
        Error::Checkpoint(format!("cannot read report {}: {e}", path.display()))
    })?;
    let mut out = Vec::with_capacity(count);
    for line in BufReader::new(file).lines().take(count) {
        out.push(serde_json::from_str(&line?)?);
    }
    if out.len() < count {
        return Err(Error::Checkpoint(format!(
            "report holds {} records, checkpoint claims {count}",
            out.len()
        )));
    }
    Ok(out)
}

/// Runs `work` over the plan's cases in order-preserving parallel chunks.
pub(crate) fn run<C: Sync>(
    plan: Plan<C>,
    cfg: &SweepConfig,
    work: impl Fn(&C, &str) -> Result<CaseRecord> + Sync,
) -> Result<SweepReport> {
    let start = Instant::now();
    let audit_before = audit();
    let hash = config_hash(plan.kind, plan.p_max, plan.n_max, cfg);
    if cfg.checkpoint.is_some() && cfg.out.is_none() {
        return Err(Error::Config("a checkpoint needs an output path".into()));
    }

    let mut records: Vec<CaseRecord> = Vec::new();
    let mut resumed_from = None;
    if let Some(cp_path) = &cfg.checkpoint {
        if let Some(cp) = checkpoint::load(cp_path)? {
            if cp.config_hash != hash {
                return Err(Error::Checkpoint(format!(
                    "checkpoint config hash {} does not match {hash}",
                    cp.config_hash
                )));
            }
            let done = cp.last_completed_index as usize + 1;
            if done > plan.cases.len() {
                return Err(Error::Checkpoint(format!(
                    "checkpoint index {} is beyond the {} planned cases",
                    cp.last_completed_index,
                    plan.cases.len()
                )));
            }
            records = read_records(cfg.out.as_ref().expect("checked above"), done)?;
            resumed_from = Some(done as u64);
        }
    }

    let mut writer = match &cfg.out {
        Some(path) => {
            let mut f = BufWriter::new(
                OpenOptions::new().create(true).write(true).truncate(true).open(path)?,
            );
            for r in &records {
                writeln!(f, "{}", r.to_line())?;
            }
            f.flush()?;
            Some(f)
        }
        None => None,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;

    let mut interrupted = false;
    let mut aborted = false;
    let first = records.len();
    for chunk in plan.cases[first..].chunks(CHUNK) {
        let done: Vec<CaseRecord> = pool.install(|| {
            chunk
                .par_iter()
                .map(|c| {
                    let mut r = work(c, &hash)?;
                    if !cfg.timings {
                        r.elapsed_ms = 0;
                    }
                    Ok(r)
                })
                .collect::<Result<Vec<_>>>()
        })?;
        if let Some(f) = writer.as_mut() {
            for r in &done {
                writeln!(f, "{}", r.to_line())?;
            }
            f.flush()?;
        }
        aborted = done
            .iter()
            .any(|r| matches!(r.status, Status::UnexpectedSolution | Status::PrecisionFailure));
        records.extend(done);
        if let Some(cp_path) = &cfg.checkpoint {
            checkpoint::store(
                cp_path,
                &Checkpoint {
                    config_hash: hash.clone(),
                    last_completed_index: records.len() as u64 - 1,
                },
            )?;
        }
        if aborted {
            break;
        }
        if cfg.stop_after.is_some_and(|k| (records.len() - first) as u64 >= k)
            && records.len() < plan.cases.len()
        {
            interrupted = true;
            break;
        }
    }

    let after = audit();
    Ok(SweepReport::assemble(
        plan.kind,
        hash,
        plan.p_max,
        plan.n_max,
        cfg,
        plan.cases.len() as u64,
        plan.skipped_out_of_scope,
        records,
        interrupted,
        aborted,
        resumed_from,
        start.elapsed().as_millis() as u64,
        after.straddle_decisions - audit_before.straddle_decisions,
        plan.details,
    ))
}
