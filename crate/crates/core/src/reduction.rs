//! Per-case elimination: with `x = 1` the equation becomes `w^z − v^y = u`,
//! any solution with `y ≥ 3` makes `z/y` a convergent of `log v / log w`, and
//! the partial quotient following that convergent must then exceed
//! `v^y·log w/(u·y) − 2`. Convergents where it does not are eliminated;
//! every other convergent is searched exactly.

use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::cf::small;
use crate::arith::{cf_expand, log_interval, IntervalReal, PrecisionPolicy};
use crate::bounds::{n_upper, p_upper, y_bounds, BoundSet};
use crate::equation::{
    check_solution, classify, small_y_solutions, small_z_solutions, CaseClassification, CaseTag,
    EquationInstance, SolutionTriple, SIEVE_PRIMES,
};
use crate::arith::prime::pow_mod;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Status {
    EliminatedByLemma,
    EliminatedByBounds,
    EliminatedByReduction,
    EliminatedByFallback,
    SolutionOnly112,
    UnexpectedSolution,
    PrecisionFailure,
}

impl Status {
    pub const ALL: [Status; 7] = [
        Status::EliminatedByLemma,
        Status::EliminatedByBounds,
        Status::EliminatedByReduction,
        Status::EliminatedByFallback,
        Status::SolutionOnly112,
        Status::UnexpectedSolution,
        Status::PrecisionFailure,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::EliminatedByLemma => "EliminatedByLemma",
            Status::EliminatedByBounds => "EliminatedByBounds",
            Status::EliminatedByReduction => "EliminatedByReduction",
            Status::EliminatedByFallback => "EliminatedByFallback",
            Status::SolutionOnly112 => "SolutionOnly112",
            Status::UnexpectedSolution => "UnexpectedSolution",
            Status::PrecisionFailure => "PrecisionFailure",
        }
    }

    pub fn is_eliminated(&self) -> bool {
        matches!(
            self,
            Status::EliminatedByLemma
                | Status::EliminatedByBounds
                | Status::EliminatedByReduction
                | Status::EliminatedByFallback
        )
    }

    /// The case is settled with no solution other than `(1, 1, 2)`.
    pub fn is_success(&self) -> bool {
        self.is_eliminated() || *self == Status::SolutionOnly112
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One convergent `p_r/q_r` with `q_r ≤ q_max` and the comparison made on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergentEvidence {
    pub r: usize,
    pub p_r: u64,
    pub q_r: u64,
    /// `a_{r+1}` in decimal; absent when the expansion ended at `r`.
    pub next_quotient: Option<String>,
    pub y_eff: u64,
    /// Upper end of `log(a_{r+1} + 2)`.
    pub lhs_hi: f64,
    /// Lower end of `y_eff·log v + log log w − log u − log y_eff`.
    pub rhs_lo: f64,
    pub eliminated: bool,
    /// Outcome with `y_eff = q_r`, when that comparison was decided.
    pub literal_eliminated: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseVerdict {
    pub p: u64,
    pub n: u64,
    pub tag: CaseTag,
    pub status: Status,
    pub method: String,
    pub witness: Option<SolutionTriple>,
    pub q_max: u64,
    pub precision_bits: u32,
    pub elapsed_ms: u64,
    pub evidence: Vec<ConvergentEvidence>,
    /// Convergents `(p_r, q_r)` handed to the exact fallback search.
    pub survivors: Vec<(u64, u64)>,
}

impl CaseVerdict {
    fn new(inst: &EquationInstance, tag: CaseTag, status: Status, method: &str) -> Self {
        CaseVerdict {
            p: inst.p(),
            n: inst.n(),
            tag,
            status,
            method: method.to_string(),
            witness: None,
            q_max: 0,
            precision_bits: 0,
            elapsed_ms: 0,
            evidence: Vec::new(),
            survivors: Vec::new(),
        }
    }

    pub fn convergents_checked(&self) -> usize {
        self.evidence.len()
    }

    /// Every convergent was eliminated by the literal form as well.
    pub fn literal_form_suffices(&self) -> Option<bool> {
        self.evidence
            .iter()
            .map(|e| e.literal_eliminated)
            .try_fold(true, |acc, e| e.map(|v| acc && v))
    }
}

fn require_min_y(y_min: u64) -> Result<()> {
    if y_min < 3 {
        return Err(Error::InvalidArgument(format!(
            "the convergent criterion needs y ≥ 3, got {y_min}"
        )));
    }
    Ok(())
}

/// Whether `u/(y·v^y·log w) < 1/(2y²)` holds at `y = y_min`, checked as
/// `log(2·y·u) < y·log v + log log w`. Since the right side grows faster in
/// `y`, it then holds for every `y ≥ y_min`.
pub fn legendre_gate(inst: &EquationInstance, y_min: u64, policy: &PrecisionPolicy) -> Result<bool> {
    require_min_y(y_min)?;
    let (ok, _) = policy.escalate("convergent criterion", |bits| {
        let lhs = log_interval(BigUint::from(2 * y_min as u128) * inst.u(), bits)?;
        let rhs = IntervalReal::from_integer(y_min, bits) * log_interval(inst.v(), bits)?
            + log_interval(inst.w(), bits)?.ln()?;
        Ok(lhs.lt(&rhs).decided())
    })?;
    Ok(ok)
}

fn check_tag(cls: &CaseClassification) -> Result<()> {
    match cls.tag {
        CaseTag::OddN1Mod4 | CaseTag::OddN3Mod4 => Ok(()),
        t => Err(Error::InvalidArgument(format!(
            "reduction applies to the odd cases only, got {t}"
        ))),
    }
}

struct Logs {
    u: IntervalReal,
    v: IntervalReal,
    w: IntervalReal,
    log_w: IntervalReal,
}

impl Logs {
    fn new(inst: &EquationInstance, bits: u32) -> Result<Self> {
        let w = log_interval(inst.w(), bits)?;
        Ok(Logs {
            u: log_interval(inst.u(), bits)?,
            v: log_interval(inst.v(), bits)?,
            log_w: w.ln()?,
            w,
        })
    }

    /// `y·log v + log log w − log u − log y`.
    fn rhs(&self, y: u64, bits: u32) -> Result<IntervalReal> {
        Ok(IntervalReal::from_integer(y, bits) * &self.v + &self.log_w
            - &self.u
            - log_interval(y, bits)?)
    }
}

fn as_u64(q: &BigUint) -> Result<u64> {
    small(q).ok_or_else(|| Error::InvalidArgument(format!("convergent term {q} exceeds 64 bits")))
}

/// Evidence for every convergent with `q_r ≤ q_max` at one precision, or
/// `None` if a comparison stayed undecided.
fn convergent_evidence(
    inst: &EquationInstance,
    bounds: &BoundSet,
    bits: u32,
) -> Result<Option<Vec<ConvergentEvidence>>> {
    let logs = Logs::new(inst, bits)?;
    let cf = cf_expand(&logs.v, &logs.w, bounds.q_max)?;
    let y_floor = bounds.y_floor();
    let mut out = Vec::new();
    for r in cf.indices_up_to(bounds.q_max) {
        let c = &cf.convergents()[r];
        let (p_r, q_r) = (as_u64(&c.p)?, as_u64(&c.q)?);
        let y_eff = y_floor.max(q_r);
        let Some(a) = cf.next_quotient(r) else {
            // log v / log w = p_r/q_r exactly would force w^z = v^y and u = 0
            out.push(ConvergentEvidence {
                r,
                p_r,
                q_r,
                next_quotient: None,
                y_eff,
                lhs_hi: f64::NEG_INFINITY,
                rhs_lo: f64::INFINITY,
                eliminated: true,
                literal_eliminated: Some(true),
            });
            continue;
        };
        let lhs = log_interval(a + 2u32, bits)?;
        let rhs = logs.rhs(y_eff, bits)?;
        let eliminated = match lhs.lt(&rhs).decided() {
            Some(e) => e,
            None => return Ok(None),
        };
        let literal_eliminated = lhs.lt(&logs.rhs(q_r, bits)?).decided();
        out.push(ConvergentEvidence {
            r,
            p_r,
            q_r,
            next_quotient: Some(a.to_string()),
            y_eff,
            lhs_hi: lhs.to_f64_bounds().1,
            rhs_lo: rhs.to_f64_bounds().0,
            eliminated,
            literal_eliminated,
        });
    }
    Ok(Some(out))
}

/// `w^z − v^y = u` by three modular tests, then exactly.
fn pillai_holds(inst: &EquationInstance, y: u64, z: u64) -> Result<bool> {
    let modular = SIEVE_PRIMES.iter().all(|&m| {
        let r = |b: u128, e: u64| pow_mod((b % m as u128) as u64, e, m);
        (r(inst.u(), 1) + r(inst.v(), y)) % m == r(inst.w(), z)
    });
    if !modular {
        return Ok(false);
    }
    check_solution(inst, SolutionTriple { x: 1, y, z })
}

/// Candidates `(y, z) = (t·q_r, t·p_r)` in the admissible `y` range that
/// pass the case's parity constraints.
pub fn fallback_candidates(
    convergent: (u64, u64),
    bounds: &BoundSet,
    cls: &CaseClassification,
) -> Vec<(u64, u64)> {
    let (p_r, q_r) = convergent;
    if q_r == 0 {
        return Vec::new();
    }
    let t_min = bounds.y_floor().div_ceil(q_r).max(1);
    let t_max = bounds.y_upper / q_r;
    (t_min..=t_max)
        .map(|t| (t * q_r, t * p_r))
        .filter(|&(y, z)| cls.constraints.admits(y, z))
        .collect()
}

/// Exact search over the multiples of one surviving convergent.
pub fn fallback_check(
    inst: &EquationInstance,
    convergent: (u64, u64),
    bounds: &BoundSet,
    cls: &CaseClassification,
) -> Result<CaseVerdict> {
    let start = Instant::now();
    let mut verdict = CaseVerdict::new(inst, cls.tag, Status::EliminatedByFallback, "convergent-multiples");
    verdict.q_max = bounds.q_max;
    verdict.survivors.push(convergent);
    for (y, z) in fallback_candidates(convergent, bounds, cls) {
        if pillai_holds(inst, y, z)? {
            verdict.status = Status::UnexpectedSolution;
            verdict.witness = Some(SolutionTriple { x: 1, y, z });
            break;
        }
    }
    verdict.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(verdict)
}

/// Integers `z` with `y·log v < z·log w < y·log v + log 2`, from outward
/// `f64` enclosures of `log v/log w` and `log 2/log w`.
pub fn z_window(y: u64, ratio: (f64, f64), log2_over: f64) -> std::ops::RangeInclusive<u64> {
    let lo = (y as f64 * ratio.0).next_down();
    let hi = (y as f64 * ratio.1).next_up() + log2_over;
    let hi = hi.next_up();
    (lo.floor() as u64 + 1)..=(hi.floor() as u64)
}

/// Search of every admissible `y` when the convergent criterion is not
/// available.
pub fn exhaustive_check(
    inst: &EquationInstance,
    bounds: &BoundSet,
    cls: &CaseClassification,
    policy: &PrecisionPolicy,
) -> Result<Option<SolutionTriple>> {
    let bits = policy.start_bits;
    let lw = log_interval(inst.w(), bits)?;
    let ratio = log_interval(inst.v(), bits)?.div(&lw)?.to_f64_bounds();
    let log2_over = log_interval(2u32, bits)?.div(&lw)?.to_f64_bounds().1;
    for y in bounds.y_floor()..=bounds.y_upper {
        for z in z_window(y, (ratio.0, ratio.1), log2_over) {
            if cls.constraints.admits(y, z) && pillai_holds(inst, y, z)? {
                return Ok(Some(SolutionTriple { x: 1, y, z }));
            }
        }
    }
    Ok(None)
}

/// Convergent elimination for one odd case with `x = 1`.
pub fn eliminate_case(
    inst: &EquationInstance,
    bounds: &BoundSet,
    cls: &CaseClassification,
    policy: &PrecisionPolicy,
) -> Result<CaseVerdict> {
    check_tag(cls)?;
    let start = Instant::now();
    let mut verdict = CaseVerdict::new(inst, cls.tag, Status::EliminatedByReduction, "cf-reduction");
    verdict.q_max = bounds.q_max;
    if bounds.is_vacuous() {
        verdict.status = Status::EliminatedByBounds;
        verdict.method = "empty-y-range".into();
        return Ok(verdict);
    }
    let gate = match legendre_gate(inst, bounds.y_floor(), policy) {
        Ok(g) => g,
        Err(Error::PrecisionExhausted { .. }) => false,
        Err(e) => return Err(e),
    };
    if !gate {
        verdict.method = "exhaustive-y-search".into();
        match exhaustive_check(inst, bounds, cls, policy)? {
            Some(s) => {
                verdict.status = Status::UnexpectedSolution;
                verdict.witness = Some(s);
            }
            None => verdict.status = Status::EliminatedByFallback,
        }
        verdict.elapsed_ms = start.elapsed().as_millis() as u64;
        return Ok(verdict);
    }
    match policy.escalate("convergent elimination", |bits| convergent_evidence(inst, bounds, bits)) {
        Ok((evidence, bits)) => {
            verdict.precision_bits = bits;
            verdict.evidence = evidence;
        }
        Err(Error::PrecisionExhausted { ceiling_bits, .. }) => {
            verdict.status = Status::PrecisionFailure;
            verdict.precision_bits = ceiling_bits;
            verdict.elapsed_ms = start.elapsed().as_millis() as u64;
            return Ok(verdict);
        }
        Err(e) => return Err(e),
    }
    let survivors: Vec<(u64, u64)> = verdict
        .evidence
        .iter()
        .filter(|e| !e.eliminated)
        .map(|e| (e.p_r, e.q_r))
        .collect();
    if !survivors.is_empty() {
        verdict.status = Status::EliminatedByFallback;
        verdict.method = "cf-reduction+fallback".into();
        for &c in &survivors {
            let fb = fallback_check(inst, c, bounds, cls)?;
            if fb.status == Status::UnexpectedSolution {
                verdict.status = Status::UnexpectedSolution;
                verdict.witness = fb.witness;
                break;
            }
        }
        verdict.survivors = survivors;
    }
    verdict.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(verdict)
}

/// Re-checks a reduction verdict at its recorded precision: the same
/// convergents, the same partial quotients and the same comparison outcomes.
pub fn replay(inst: &EquationInstance, verdict: &CaseVerdict) -> Result<bool> {
    if verdict.evidence.is_empty() {
        return Ok(true);
    }
    let bounds = y_bounds(inst, &PrecisionPolicy::default())?;
    if bounds.q_max != verdict.q_max {
        return Ok(false);
    }
    Ok(convergent_evidence(inst, &bounds, verdict.precision_bits)?
        .map(|fresh| {
            fresh.len() == verdict.evidence.len()
                && fresh.iter().zip(&verdict.evidence).all(|(a, b)| {
                    (a.r, a.p_r, a.q_r, &a.next_quotient, a.y_eff, a.eliminated)
                        == (b.r, b.p_r, b.q_r, &b.next_quotient, b.y_eff, b.eliminated)
                })
        })
        .unwrap_or(false))
}

/// Exclusive prime ceiling and inclusive `n` ceiling of each odd case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseCeilings {
    pub n1_mod4: (u64, u64),
    pub n3_mod4: (u64, u64),
}

impl CaseCeilings {
    pub fn derive(policy: &PrecisionPolicy) -> Result<Self> {
        let one = p_upper(CaseTag::OddN1Mod4)?.bound;
        let three = p_upper(CaseTag::OddN3Mod4)?.bound;
        Ok(CaseCeilings {
            n1_mod4: (one, n_upper(one, policy)?),
            n3_mod4: (three, n_upper(three, policy)?),
        })
    }

    pub fn for_tag(&self, tag: CaseTag) -> Option<(u64, u64)> {
        match tag {
            CaseTag::OddN1Mod4 => Some(self.n1_mod4),
            CaseTag::OddN3Mod4 => Some(self.n3_mod4),
            _ => None,
        }
    }

    /// Whether the ceilings for the case's tag already exclude it.
    pub fn excludes(&self, inst: &EquationInstance, tag: CaseTag) -> bool {
        self.for_tag(tag)
            .map(|(p_bound, n_bound)| inst.p() >= p_bound || inst.n() > n_bound)
            .unwrap_or(false)
    }
}

/// Settles one in-scope case: classification, small exponents, bounds and
/// the convergent elimination.
pub fn check_case(inst: &EquationInstance, policy: &PrecisionPolicy) -> Result<CaseVerdict> {
    check_case_with(inst, policy, &CaseCeilings::derive(policy)?)
}

pub fn check_case_with(
    inst: &EquationInstance,
    policy: &PrecisionPolicy,
    ceilings: &CaseCeilings,
) -> Result<CaseVerdict> {
    let start = Instant::now();
    let cls = classify(inst);
    if cls.tag == CaseTag::OutOfScope {
        return Err(Error::InvalidInstance {
            p: inst.p(),
            n: inst.n(),
            reason: "pn ≢ ±1 (mod 5)".into(),
        });
    }
    let small: Vec<SolutionTriple> = small_z_solutions(inst)
        .into_iter()
        .chain(small_y_solutions(inst))
        .filter(|s| !s.is_trivial())
        .collect();
    let mut verdict = if let Some(&s) = small.first() {
        let mut v = CaseVerdict::new(inst, cls.tag, Status::UnexpectedSolution, "small-exponent-search");
        v.witness = Some(s);
        v
    } else if cls.tag == CaseTag::EvenN {
        CaseVerdict::new(inst, cls.tag, Status::EliminatedByLemma, "even-n-congruence")
    } else if ceilings.excludes(inst, cls.tag) {
        CaseVerdict::new(inst, cls.tag, Status::EliminatedByBounds, "case-ceilings")
    } else {
        let bounds = y_bounds(inst, policy)?;
        eliminate_case(inst, &bounds, &cls, policy)?
    };
    verdict.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(verdict)
}
