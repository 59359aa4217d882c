//! Certified solver for self-referential bounds of the form
//!
//! ```text
//! t  <  g(t)      or      t  ≤  g(t),
//! g(t) = A + C · M(t)² · Π log(a_i t + b_i),
//! M(t) = max{log(α t + β) + s, c_1, …, c_k}.
//! ```
//!
//! The solver returns the largest integer `B` satisfying the relation and a
//! certificate that it fails for every `t > B`: the relation certifiably holds
//! at `B`, fails at each integer of `B+1..=T`, and at `T` the logarithmic
//! derivative of `g` is certifiably below 1. That derivative is bounded by
//!
//! ```text
//! E(T) = 2τ / M(T) + Σ τ_i / log(a_i T + b_i),   τ = max{1, αT/(αT + β)},
//! ```
//!
//! which is non-increasing in `T`, so `g(t)/t` decreases on `[T, ∞)` and the
//! failure at `T` propagates to every larger `t`.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{Certified, IntervalReal, PrecisionPolicy};
use crate::error::{Error, Result};

/// Integers scanned one by one past the guess before giving up.
pub const MAX_CERTIFY_STEPS: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Strict,
    NonStrict,
}

/// `log(scale·t + offset)`.
#[derive(Debug, Clone)]
pub struct LogTerm {
    scale: IntervalReal,
    offset: IntervalReal,
}

impl LogTerm {
    pub fn new(scale: IntervalReal, offset: IntervalReal) -> Self {
        LogTerm { scale, offset }
    }

    fn argument(&self, t: &IntervalReal) -> IntervalReal {
        &self.scale * t + &self.offset
    }

    fn eval(&self, t: &IntervalReal) -> Result<IntervalReal> {
        self.argument(t).ln()
    }

    /// `max{1, a t/(a t + b)}`, an upper bound for the same ratio at any
    /// larger `t`.
    fn tau(&self, t: &IntervalReal) -> Result<IntervalReal> {
        let at = &self.scale * t;
        let ratio = at.div(&(&at + &self.offset))?;
        Ok(ratio.max(&IntervalReal::from_integer(1, t.precision())))
    }

    fn eval_f64(&self, t: f64) -> f64 {
        (self.scale.to_f64() * t + self.offset.to_f64()).ln()
    }

    fn tau_f64(&self, t: f64) -> f64 {
        let at = self.scale.to_f64() * t;
        (at / (at + self.offset.to_f64())).max(1.0)
    }
}

#[derive(Debug, Clone)]
pub struct GrowthForm {
    additive: IntervalReal,
    coeff: IntervalReal,
    growth: Option<(LogTerm, IntervalReal)>,
    floors: Vec<IntervalReal>,
    factors: Vec<LogTerm>,
    relation: Relation,
}

impl GrowthForm {
    pub fn new(
        additive: IntervalReal,
        coeff: IntervalReal,
        growth: Option<(LogTerm, IntervalReal)>,
        floors: Vec<IntervalReal>,
        factors: Vec<LogTerm>,
        relation: Relation,
    ) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if additive.lo().is_negative() || coeff.lo().is_negative() {
            return bad("growth form needs A ≥ 0 and C ≥ 0");
        }
        if growth.is_none() && floors.is_empty() {
            return bad("growth form needs at least one branch in the maximum");
        }
        if let Some((g, _)) = &growth {
            if !g.scale.lo().is_positive() {
                return bad("growth branch needs α > 0");
            }
        }
        if factors.iter().any(|f| !f.scale.lo().is_positive()) {
            return bad("log factors need positive slopes");
        }
        Ok(GrowthForm {
            additive,
            coeff,
            growth,
            floors,
            factors,
            relation,
        })
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    fn precision(&self) -> u32 {
        self.coeff.precision()
    }

    fn point(&self, t: u64) -> IntervalReal {
        IntervalReal::from_integer(t, self.precision())
    }

    pub fn max_term(&self, t: u64) -> Result<IntervalReal> {
        let tt = self.point(t);
        let mut m: Option<IntervalReal> = None;
        if let Some((g, shift)) = &self.growth {
            m = Some(g.eval(&tt)? + shift);
        }
        for f in &self.floors {
            m = Some(match m {
                Some(cur) => cur.max(f),
                None => f.clone(),
            });
        }
        Ok(m.expect("checked non-empty"))
    }

    /// `g(t)` as a certified interval.
    pub fn eval(&self, t: u64) -> Result<IntervalReal> {
        let tt = self.point(t);
        let mut prod = &self.coeff * &self.max_term(t)?.square();
        for f in &self.factors {
            prod = prod * f.eval(&tt)?;
        }
        Ok(&self.additive + &prod)
    }

    /// Whether the relation holds at `t`.
    pub fn holds(&self, t: u64) -> Result<Certified> {
        let tt = self.point(t);
        let g = self.eval(t)?;
        Ok(match self.relation {
            Relation::Strict => tt.lt(&g),
            Relation::NonStrict => tt.le(&g),
        })
    }

    /// Certified upper enclosure of the elasticity bound `E(t)`, or `None`
    /// when some logarithm in it is not yet certifiably positive.
    pub fn elasticity(&self, t: u64) -> Result<Option<IntervalReal>> {
        let tt = self.point(t);
        let bits = self.precision();
        let mut e = IntervalReal::from_integer(0, bits);
        if let Some((g, _)) = &self.growth {
            let m = self.max_term(t)?;
            if !m.lo().is_positive() {
                return Ok(None);
            }
            let two_tau = IntervalReal::from_integer(2, bits) * g.tau(&tt)?;
            e = e + two_tau.div(&m)?;
        }
        for f in &self.factors {
            let l = f.eval(&tt)?;
            if !l.lo().is_positive() {
                return Ok(None);
            }
            e = e + f.tau(&tt)?.div(&l)?;
        }
        Ok(Some(e))
    }

    fn elasticity_below_one(&self, t: u64) -> Result<Certified> {
        Ok(match self.elasticity(t)? {
            Some(e) => e.lt(&IntervalReal::from_integer(1, self.precision())),
            None => Certified::Undecided,
        })
    }

    /// Whether the relation fails for every integer `t ≥ t0`, shown by a
    /// failure at `t0` and elasticity below 1 there.
    pub fn fails_from(&self, t0: u64) -> Result<Certified> {
        Ok(self.holds(t0)?.not().and(self.elasticity_below_one(t0)?))
    }

    fn eval_f64(&self, t: f64) -> f64 {
        let mut m = f64::NEG_INFINITY;
        if let Some((g, shift)) = &self.growth {
            m = g.eval_f64(t) + shift.to_f64();
        }
        for f in &self.floors {
            m = m.max(f.to_f64());
        }
        let mut prod = self.coeff.to_f64() * m * m;
        for f in &self.factors {
            prod *= f.eval_f64(t);
        }
        self.additive.to_f64() + prod
    }

    fn holds_f64(&self, t: u64) -> bool {
        let g = self.eval_f64(t as f64);
        match self.relation {
            Relation::Strict => (t as f64) < g,
            Relation::NonStrict => (t as f64) <= g,
        }
    }

    fn elasticity_f64(&self, t: f64) -> f64 {
        let mut e = 0.0;
        if let Some((g, shift)) = &self.growth {
            let mut m = g.eval_f64(t) + shift.to_f64();
            for f in &self.floors {
                m = m.max(f.to_f64());
            }
            if m <= 0.0 {
                return f64::INFINITY;
            }
            e += 2.0 * g.tau_f64(t) / m;
        }
        for f in &self.factors {
            let l = f.eval_f64(t);
            if l <= 0.0 || l.is_nan() {
                return f64::INFINITY;
            }
            e += f.tau_f64(t) / l;
        }
        if e.is_nan() {
            f64::INFINITY
        } else {
            e
        }
    }
}

/// Outcome of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoint {
    /// Largest integer `≥ start` satisfying the relation, or `start − 1`
    /// when there is none.
    pub bound: u64,
    /// The relation certifiably fails for every integer `t ≥ tail_from`,
    /// and at each integer of `bound+1..tail_from`.
    pub tail_from: u64,
    /// Precision (bits) that certified every comparison.
    pub precision: u32,
}

fn guess(form: &GrowthForm, start: u64) -> Result<u64> {
    let mut t_e = start.max(1);
    while form.elasticity_f64(t_e as f64) >= 0.9 {
        t_e = t_e.checked_mul(2).filter(|&t| t < 1 << 60).ok_or_else(|| {
            Error::FixedPointUncertified("elasticity never drops below 1".into())
        })?;
    }
    if form.holds_f64(t_e) {
        let (mut lo, mut hi) = (t_e, t_e * 2);
        while form.holds_f64(hi) {
            lo = hi;
            hi = hi.checked_mul(2).filter(|&t| t < 1 << 60).ok_or_else(|| {
                Error::FixedPointUncertified("relation holds without bound".into())
            })?;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if form.holds_f64(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    } else {
        let mut t = t_e;
        while t > start {
            t -= 1;
            if form.holds_f64(t) {
                return Ok(t);
            }
        }
        Ok(start - 1)
    }
}

fn certify(form: &GrowthForm, mut bound: u64, start: u64) -> Result<Option<FixedPoint>> {
    while bound >= start {
        match form.holds(bound)? {
            Certified::True => break,
            Certified::False => bound -= 1,
            Certified::Undecided => return Ok(None),
        }
    }
    let mut t = bound + 1;
    let mut steps = 0;
    loop {
        match form.holds(t)? {
            Certified::True => bound = t,
            Certified::Undecided => return Ok(None),
            Certified::False => match form.elasticity_below_one(t)? {
                Certified::True => {
                    return Ok(Some(FixedPoint {
                        bound,
                        tail_from: t,
                        precision: form.precision(),
                    }))
                }
                Certified::False | Certified::Undecided => {}
            },
        }
        t += 1;
        steps += 1;
        if steps > MAX_CERTIFY_STEPS {
            return Err(Error::FixedPointUncertified(format!(
                "no tail certificate within {MAX_CERTIFY_STEPS} integers of {bound}"
            )));
        }
    }
}

/// Largest integer `t ≥ start` satisfying the relation, certified as
/// described in the module documentation. `build(bits)` must produce the
/// same form at any precision.
pub fn solve(
    build: impl Fn(u32) -> Result<GrowthForm>,
    start: u64,
    policy: &PrecisionPolicy,
) -> Result<FixedPoint> {
    if start == 0 {
        return Err(Error::InvalidArgument("fixed-point search starts at 1".into()));
    }
    let approx = guess(&build(policy.start_bits)?, start)?;
    let (fp, _) = policy.escalate("fixed-point certificate", |bits| {
        certify(&build(bits)?, approx, start)
    })?;
    Ok(fp)
}

/// `floor(g(t))` from the upper endpoint of its enclosure.
pub fn floor_upper(form: &GrowthForm, t: u64) -> Result<BigInt> {
    let g = form.eval(t)?;
    if g.hi().is_negative() {
        return Err(Error::InvalidArgument("bound evaluated below zero".into()));
    }
    Ok(g.floor_hi())
}
