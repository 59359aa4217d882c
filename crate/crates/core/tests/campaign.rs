use std::collections::BTreeSet;

use pillai_core::arith::PrecisionPolicy;
use pillai_core::bounds::corollary_bounds;
use pillai_core::campaign::{
    congruence_pairs, corollary_case, corollary_sweep, theorem_plan, theorem_sweep, SweepConfig,
};
use pillai_core::equation::{brute_force, make_instance, SolutionTriple};
use pillai_core::reduction::Status;
use pillai_core::Error;

fn trial_prime(m: u64) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

/// Admissible pairs straight from the definitions: `p` prime, `3 < p`,
/// `p ≡ 3 (mod 4)`, and either `n` even or `pn ≡ ±1 (mod 5)`.
fn reference_cases(p_max: u64, n_max: u64) -> BTreeSet<(u64, u64)> {
    let mut out = BTreeSet::new();
    for p in 4..p_max {
        if !trial_prime(p) || p % 4 != 3 {
            continue;
        }
        for n in 1..=n_max {
            let r = (p * n) % 5;
            if n % 2 == 0 || r == 1 || r == 4 {
                out.insert((p, n));
            }
        }
    }
    out
}

fn quiet(cfg: SweepConfig) -> SweepConfig {
    SweepConfig {
        timings: false,
        ..cfg
    }
}

#[test]
fn smoke_enumeration_is_exhaustive() {
    let plan = theorem_plan(&SweepConfig::smoke()).unwrap();
    let got: BTreeSet<_> = plan.cases.iter().copied().collect();
    assert_eq!(got.len(), plan.cases.len());
    assert_eq!(got, reference_cases(100, 20));
    let odd_out = (4..100u64)
        .filter(|&p| trial_prime(p) && p % 4 == 3)
        .flat_map(|p| (1..=20u64).map(move |n| (p, n)))
        .filter(|&(p, n)| n % 2 == 1 && !matches!((p * n) % 5, 1 | 4))
        .count() as u64;
    assert_eq!(plan.skipped_out_of_scope, odd_out);
}

#[test]
fn smoke_sweep_accounts_for_every_case() {
    let r = theorem_sweep(&SweepConfig::smoke()).unwrap();
    assert!(r.succeeded());
    assert_eq!(r.cases_planned as usize, reference_cases(100, 20).len());
    assert_eq!(r.counts.iter().map(|c| c.count).sum::<u64>(), r.cases_completed);
    assert!(r.records.iter().all(|x| x.status.is_eliminated()));
    assert!(r.non_eliminated.is_empty());
    let order: Vec<_> = r.records.iter().map(|x| (x.p, x.n)).collect();
    let mut sorted = order.clone();
    sorted.sort();
    assert_eq!(order, sorted);
}

#[test]
fn corollary_pair_count_at_five() {
    let n_upper = corollary_bounds(5, &PrecisionPolicy::default()).unwrap().n_upper;
    let mut direct = 0u64;
    for x in (1..=n_upper).step_by(2) {
        for y in 1..=n_upper {
            if (10 * x + 14 * y) % 25 == 0 {
                direct += 1;
            }
        }
    }
    assert_eq!(congruence_pairs(5, n_upper).count() as u64, direct);
    let case = corollary_case(5, &PrecisionPolicy::default()).unwrap();
    assert_eq!(case.pairs, direct);
    assert!(case.only_trivial());
}

#[test]
fn corollary_pairs_match_double_loop() {
    for n in [15u64, 20, 25, 35, 45] {
        let bound = 3000;
        let m = n * n;
        let direct: Vec<(u64, u64)> = (1..=bound)
            .step_by(2)
            .flat_map(|x| (1..=bound).map(move |y| (x, y)))
            .filter(|&(x, y)| (35 * x + 14 * y) % m == 0)
            .collect();
        assert_eq!(congruence_pairs(n, bound).collect::<Vec<_>>(), direct, "n = {n}");
    }
}

#[test]
fn corollary_agrees_with_brute_force() {
    for n in [5u64, 10] {
        let inst = make_instance(7, n).unwrap();
        assert_eq!(brute_force(&inst, 20, 20, 20).unwrap(), vec![SolutionTriple::TRIVIAL]);
        assert!(corollary_case(n, &PrecisionPolicy::default()).unwrap().only_trivial());
    }
}

#[test]
fn corollary_smoke_and_ranges() {
    let r = corollary_sweep(&SweepConfig::smoke()).unwrap();
    assert!(r.succeeded());
    assert_eq!(r.cases_planned, 20);
    assert_eq!(r.count(Status::SolutionOnly112), 20);
    let bad = SweepConfig {
        n_max: Some(5000),
        ..SweepConfig::default()
    };
    assert!(matches!(corollary_sweep(&bad), Err(Error::Config(_))));
    let bad = SweepConfig {
        p_max: Some(50),
        ..SweepConfig::smoke()
    };
    assert!(matches!(corollary_sweep(&bad), Err(Error::Config(_))));
}

#[test]
fn empty_range_report() {
    let r = theorem_sweep(&SweepConfig {
        n_max: Some(0),
        ..SweepConfig::default()
    })
    .unwrap();
    assert_eq!((r.cases_planned, r.cases_completed), (0, 0));
    assert!(r.counts.iter().all(|c| c.count == 0));
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn interrupted_run_resumes_to_the_same_body() {
    let dir = tempfile::tempdir().unwrap();
    let base = quiet(SweepConfig {
        out: Some(dir.path().join("report.jsonl")),
        checkpoint: Some(dir.path().join("cp.json")),
        ..SweepConfig::smoke()
    });
    let total = theorem_plan(&base).unwrap().cases.len() as u64;

    let first = theorem_sweep(&SweepConfig {
        stop_after: Some(total / 2),
        ..base.clone()
    })
    .unwrap();
    assert!(first.interrupted);
    assert_eq!(first.resumed_from, None);
    assert!(first.cases_completed >= total / 2 && first.cases_completed < total);
    assert_eq!(first.exit_code(), 0);

    let resumed = theorem_sweep(&base).unwrap();
    assert_eq!(resumed.resumed_from, Some(first.cases_completed));
    assert!(resumed.succeeded());

    let fresh = theorem_sweep(&quiet(SweepConfig::smoke())).unwrap();
    assert_eq!(resumed.render_body(false), fresh.render_body(false));
    let on_disk = std::fs::read_to_string(base.out.as_ref().unwrap()).unwrap();
    assert_eq!(on_disk, fresh.render_body(false));
}

#[test]
fn resume_with_changed_range_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let base = quiet(SweepConfig {
        out: Some(dir.path().join("report.jsonl")),
        checkpoint: Some(dir.path().join("cp.json")),
        stop_after: Some(1),
        ..SweepConfig::smoke()
    });
    theorem_sweep(&base).unwrap();
    let changed = SweepConfig {
        p_max: Some(50),
        ..base
    };
    assert!(matches!(theorem_sweep(&changed), Err(Error::Checkpoint(_))));
}

#[test]
fn fresh_checkpointed_run_starts_at_first_case() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = quiet(SweepConfig {
        out: Some(dir.path().join("report.jsonl")),
        checkpoint: Some(dir.path().join("cp.json")),
        n_max: Some(4),
        ..SweepConfig::smoke()
    });
    let r = theorem_sweep(&cfg).unwrap();
    assert_eq!(r.resumed_from, None);
    assert_eq!((r.records[0].p, r.records[0].n), (7, 2));
    assert!(dir.path().join("cp.json").exists());
}

#[test]
fn checkpoint_requires_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = SweepConfig {
        checkpoint: Some(dir.path().join("cp.json")),
        ..SweepConfig::smoke()
    };
    assert!(matches!(theorem_sweep(&cfg), Err(Error::Config(_))));
}

#[test]
fn worker_count_does_not_change_the_body() {
    let one = theorem_sweep(&quiet(SweepConfig {
        threads: 1,
        ..SweepConfig::smoke()
    }))
    .unwrap();
    let eight = theorem_sweep(&quiet(SweepConfig {
        threads: 8,
        ..SweepConfig::smoke()
    }))
    .unwrap();
    assert_eq!(one.render_body(false), eight.render_body(false));
    assert_eq!(one.config_hash, eight.config_hash);
}

#[test]
fn record_key_order() {
    let r = theorem_sweep(&quiet(SweepConfig {
        n_max: Some(3),
        ..SweepConfig::smoke()
    }))
    .unwrap();
    let line = r.render_body(false).lines().next().unwrap().to_string();
    let keys = [
        "p", "n", "case_tag", "status", "method", "convergents_checked", "q_max",
        "precision_bits", "elapsed_ms", "witness", "engine_version", "config_hash",
    ];
    let mut at = 0;
    for k in keys {
        let pos = line[at..].find(&format!("\"{k}\":")).unwrap_or_else(|| panic!("{k} in {line}"));
        at += pos + 1;
    }
}
