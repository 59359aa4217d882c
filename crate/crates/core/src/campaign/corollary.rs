//! Search of `(35n² − 1)^x + (14n² + 1)^y = (7n)^z` for `5 | n`.
//!
//! `z ≤ 3` is settled directly. For `z ≥ 4` a solution forces `x` odd and
//! `35x + 14y ≡ 0 (mod n²)`, so the pairs `(x, y)` are enumerated along that
//! congruence. Given `(x, y)`, `z·log w` lies in `(m, m + log 2]` with
//! `m = max(x log u, y log v)`, which leaves at most one integer `z`.

use std::time::Instant;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::report::CaseRecord;
use super::{run, shrink, Plan, SweepConfig, SweepKind, SweepReport, SMOKE_COROLLARY_N_MAX};
use crate::arith::{log_interval, PrecisionPolicy};
use crate::bounds::{corollary_bounds, corollary_n_ceiling, large_n_report, CorollaryBounds};
use crate::equation::{
    check_solution, make_instance, small_z_solutions, PowerTables, SolutionTriple, SIEVE_PRIMES,
};
use crate::error::{Error, Result};
use crate::reduction::Status;
use crate::ENGINE_VERSION;

/// Every `(x, y)` with `x` odd, `1 ≤ x, y ≤ bound` and `35x + 14y ≡ 0 (mod n²)`,
/// ordered by `x` then `y`.
pub fn congruence_pairs(n: u64, bound: u64) -> impl Iterator<Item = (u64, u64)> {
    let m = n * n;
    let g = 14u64.gcd(&m);
    let step = m / g;
    let a = (14 / g) % step;
    let inv = if step == 1 {
        0
    } else {
        let e = (a as i64).extended_gcd(&(step as i64));
        e.x.rem_euclid(step as i64) as u64
    };
    (1..=bound)
        .step_by(2)
        .filter(move |&x| (35 * x) % g == 0)
        .flat_map(move |x| {
            let c = ((m - (35 * x) % m) % m) / g;
            let y0 = ((c as u128 * inv as u128) % step as u128) as u64;
            let y0 = if y0 == 0 { step } else { y0 };
            (y0..=bound).step_by(step as usize).map(move |y| (x, y))
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryCase {
    pub n: u64,
    pub bounds: CorollaryBounds,
    /// All solutions with `z ≤ 3`, `(1, 1, 2)` included.
    pub small_z: Vec<SolutionTriple>,
    pub pairs: u64,
    /// Integers `z` inside a certified window and within the bounds.
    pub z_candidates: u64,
    /// Candidates passing the three-prime modular test.
    pub modular_survivors: u64,
    /// Exact solutions with `z ≥ 4`.
    pub solutions: Vec<SolutionTriple>,
}

impl CorollaryCase {
    pub fn only_trivial(&self) -> bool {
        self.solutions.is_empty() && self.small_z.iter().all(|s| s.is_trivial())
    }
}

pub fn corollary_case(n: u64, policy: &PrecisionPolicy) -> Result<CorollaryCase> {
    let bounds = corollary_bounds(n, policy)?;
    let inst = make_instance(7, n)?;
    let small_z = small_z_solutions(&inst);
    let bits = bounds.precision;
    let (lu_lo, lu_hi) = log_interval(inst.u(), bits)?.to_f64_bounds();
    let (lv_lo, lv_hi) = log_interval(inst.v(), bits)?.to_f64_bounds();
    let (lw_lo, lw_hi) = log_interval(inst.w(), bits)?.to_f64_bounds();
    // relative slack for the handful of f64 operations below
    const SLACK: f64 = 1e-12;
    let ln2_hi = std::f64::consts::LN_2 * (1.0 + SLACK);

    let tables = PowerTables::new(&inst, &SIEVE_PRIMES, bounds.n_upper, bounds.n_upper, bounds.z_upper);
    let mut case = CorollaryCase {
        n,
        bounds,
        small_z,
        pairs: 0,
        z_candidates: 0,
        modular_survivors: 0,
        solutions: Vec::new(),
    };
    for (x, y) in congruence_pairs(n, bounds.n_upper) {
        case.pairs += 1;
        let (xf, yf) = (x as f64, y as f64);
        let lo = (xf * lu_lo).max(yf * lv_lo) / lw_hi * (1.0 - SLACK);
        let hi = ((xf * lu_hi).max(yf * lv_hi) + ln2_hi) / lw_lo * (1.0 + SLACK);
        let z_lo = (lo.ceil() as u64).max(4).max(x.max(y));
        let z_hi = (hi.floor() as u64).min(bounds.z_upper);
        for z in z_lo..=z_hi {
            case.z_candidates += 1;
            if !tables.matches(x, y, z) {
                continue;
            }
            case.modular_survivors += 1;
            let s = SolutionTriple::new(x, y, z)?;
            if check_solution(&inst, s)? {
                case.solutions.push(s);
            }
        }
    }
    Ok(case)
}

fn corollary_record(n: u64, cfg: &SweepConfig, hash: &str) -> Result<CaseRecord> {
    let start = Instant::now();
    let base = CaseRecord {
        p: 7,
        n,
        case_tag: "FiveDividesN".into(),
        status: Status::SolutionOnly112,
        method: "congruence-pair-sieve".into(),
        convergents_checked: 0,
        q_max: 0,
        precision_bits: 0,
        elapsed_ms: 0,
        witness: None,
        engine_version: ENGINE_VERSION.to_string(),
        config_hash: hash.to_string(),
    };
    let case = match corollary_case(n, &cfg.policy) {
        Ok(c) => c,
        Err(Error::PrecisionExhausted { ceiling_bits, .. }) => {
            return Ok(CaseRecord {
                status: Status::PrecisionFailure,
                method: "precision-exhausted".into(),
                precision_bits: ceiling_bits,
                ..base
            })
        }
        Err(e) => return Err(e),
    };
    let witness = case
        .small_z
        .iter()
        .find(|s| !s.is_trivial())
        .or(case.solutions.first())
        .copied();
    Ok(CaseRecord {
        status: if witness.is_some() {
            Status::UnexpectedSolution
        } else {
            Status::SolutionOnly112
        },
        convergents_checked: case.pairs,
        q_max: case.bounds.n_upper,
        precision_bits: case.bounds.precision,
        elapsed_ms: start.elapsed().as_millis() as u64,
        witness,
        ..base
    })
}

/// Every `n ≤ n_max` with `5 | n`; the default `n_max` is the certified
/// ceiling on `n`.
pub fn corollary_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    if cfg.p_max.is_some() {
        return Err(Error::Config("p_max does not apply to the corollary sweep".into()));
    }
    let ceiling = corollary_n_ceiling(&cfg.policy)?;
    let large = large_n_report(&cfg.policy)?;
    let default = if cfg.smoke {
        SMOKE_COROLLARY_N_MAX
    } else {
        ceiling.n_max()
    };
    let n_max = shrink("n_max", default, cfg.n_max)?;
    let details = json!({ "n_ceiling": ceiling, "large_n": large });
    run(
        Plan {
            kind: SweepKind::Corollary,
            p_max: None,
            n_max,
            cases: (5..=n_max).step_by(5).collect(),
            skipped_out_of_scope: 0,
            details,
        },
        cfg,
        |&n, hash| corollary_record(n, cfg, hash),
    )
}
