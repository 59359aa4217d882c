use serde_json::json;

use super::report::CaseRecord;
use super::{run, shrink, Plan, SweepConfig, SweepKind, SweepReport, SMOKE_N_MAX, SMOKE_P_MAX};
use crate::arith::prime::primes_below;
use crate::equation::{classify, make_instance, CaseTag};
use crate::error::{Error, Result};
use crate::reduction::{check_case_with, CaseCeilings, Status};
use crate::ENGINE_VERSION;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremPlan {
    /// Exclusive.
    pub p_max: u64,
    pub n_max: u64,
    /// `(p, n)` in sweep order, out-of-hypothesis pairs removed.
    pub cases: Vec<(u64, u64)>,
    pub skipped_out_of_scope: u64,
    pub ceilings: CaseCeilings,
}

/// Resolves the ranges and enumerates the cases: primes `3 < p < p_max`
/// with `p ≡ 3 (mod 4)`, then `1 ≤ n ≤ n_max`.
pub fn theorem_plan(cfg: &SweepConfig) -> Result<TheoremPlan> {
    if cfg.p_max == Some(0) {
        return Err(Error::Config("p_max must be positive".into()));
    }
    let ceilings = CaseCeilings::derive(&cfg.policy)?;
    let (p_default, n_default) = if cfg.smoke {
        (SMOKE_P_MAX, SMOKE_N_MAX)
    } else {
        (
            ceilings.n1_mod4.0.max(ceilings.n3_mod4.0),
            ceilings.n1_mod4.1.max(ceilings.n3_mod4.1),
        )
    };
    let p_max = shrink("p_max", p_default, cfg.p_max)?;
    let n_max = shrink("n_max", n_default, cfg.n_max)?;
    let mut cases = Vec::new();
    let mut skipped = 0;
    for p in primes_below(p_max).into_iter().filter(|&p| p > 3 && p % 4 == 3) {
        for n in 1..=n_max {
            if classify(&make_instance(p, n)?).tag == CaseTag::OutOfScope {
                skipped += 1;
            } else {
                cases.push((p, n));
            }
        }
    }
    Ok(TheoremPlan {
        p_max,
        n_max,
        cases,
        skipped_out_of_scope: skipped,
        ceilings,
    })
}

fn theorem_case(
    (p, n): (u64, u64),
    cfg: &SweepConfig,
    ceilings: &CaseCeilings,
    hash: &str,
) -> Result<CaseRecord> {
    let inst = make_instance(p, n)?;
    match check_case_with(&inst, &cfg.policy, ceilings) {
        Ok(v) => Ok(CaseRecord::from_verdict(&v, hash)),
        Err(Error::PrecisionExhausted { ceiling_bits, .. }) => Ok(CaseRecord {
            p,
            n,
            case_tag: classify(&inst).tag.as_str().to_string(),
            status: Status::PrecisionFailure,
            method: "precision-exhausted".into(),
            convergents_checked: 0,
            q_max: 0,
            precision_bits: ceiling_bits,
            elapsed_ms: 0,
            witness: None,
            engine_version: ENGINE_VERSION.to_string(),
            config_hash: hash.to_string(),
        }),
        Err(e) => Err(e),
    }
}

pub fn theorem_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    let plan = theorem_plan(cfg)?;
    let ceilings = plan.ceilings;
    let details = json!({
        "ceilings": {
            "n_1_mod_4": { "p_below": ceilings.n1_mod4.0, "n_at_most": ceilings.n1_mod4.1 },
            "n_3_mod_4": { "p_below": ceilings.n3_mod4.0, "n_at_most": ceilings.n3_mod4.1 },
        }
    });
    run(
        Plan {
            kind: SweepKind::Theorem,
            p_max: Some(plan.p_max),
            n_max: plan.n_max,
            cases: plan.cases,
            skipped_out_of_scope: plan.skipped_out_of_scope,
            details,
        },
        cfg,
        |&case, hash| theorem_case(case, cfg, &ceilings, hash),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let plan = theorem_plan(&SweepConfig::smoke()).unwrap();
        assert_eq!((plan.p_max, plan.n_max), (100, 20));
        assert_eq!(plan.cases.first(), Some(&(7, 2)));
        let cfg = SweepConfig {
            p_max: Some(0),
            ..SweepConfig::smoke()
        };
        assert!(matches!(theorem_plan(&cfg), Err(Error::Config(_))));
        let cfg = SweepConfig {
            p_max: Some(101),
            ..SweepConfig::smoke()
        };
        assert!(matches!(theorem_plan(&cfg), Err(Error::Config(_))));
        let full = theorem_plan(&SweepConfig::default()).unwrap();
        assert_eq!((full.p_max, full.n_max), (12610, 192));
    }

    #[test]
    fn empty_n_range() {
        let cfg = SweepConfig {
            n_max: Some(0),
            ..SweepConfig::smoke()
        };
        let r = theorem_sweep(&cfg).unwrap();
        assert_eq!(r.cases_planned, 0);
        assert!(r.counts.iter().all(|c| c.count == 0));
        assert!(r.succeeded());
    }
}
