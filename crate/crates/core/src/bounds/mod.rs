//! Every numeric ceiling of the argument, re-derived with certified
//! comparisons: the `y` bounds, the prime and `n` ceilings of the two odd
//! cases, and the bounds of the `5 | n` search.

pub mod fixed_point;
pub mod linear_forms;

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, log_interval, ratio, Certified, IntervalReal, PrecisionPolicy};
use crate::equation::{CaseTag, EquationInstance};
use crate::error::{Error, Result};

pub use fixed_point::{solve, FixedPoint, GrowthForm, LogTerm, Relation};
pub use linear_forms::{
    bugeaud_upper_bound, laurent_lower_bound, padic_valuation, LinearFormParams, PadicParams,
};

/// Lower edge of the large-`n` regime of the `5 | n` search.
pub const LARGE_N_THRESHOLD: u64 = 173_356;

fn to_u64(v: &BigInt, what: &str) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("{what} does not fit in 64 bits: {v}")))
}

/// Result of solving `N < 1 + C₂·max{log(2N + 1) + 0.38, 10}²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NConstant {
    /// Every admissible `N` is below this value.
    pub value: u64,
    pub largest_admissible: u64,
    /// `log(2·value + 1) + 0.38 < 10` was certified, i.e. the constant
    /// branch is the active one at the bound.
    pub constant_branch_active: bool,
    pub precision: u32,
}

fn constant_form(c2: &BigRational, bits: u32) -> Result<GrowthForm> {
    GrowthForm::new(
        IntervalReal::from_integer(1, bits),
        IntervalReal::exact(c2.clone(), bits),
        Some((
            LogTerm::new(IntervalReal::from_integer(2, bits), IntervalReal::from_integer(1, bits)),
            IntervalReal::exact(linear_forms::laurent_shift(), bits),
        )),
        vec![IntervalReal::from_integer(linear_forms::LAURENT_FLOOR, bits)],
        Vec::new(),
        Relation::Strict,
    )
}

pub fn derive_n_constant_with(c2: BigRational, policy: &PrecisionPolicy) -> Result<NConstant> {
    let fp = solve(|bits| constant_form(&c2, bits), 1, policy)?;
    let value = fp.bound + 1;
    let bits = fp.precision;
    let branch = log_interval(2 * value + 1, bits)?
        + IntervalReal::exact(linear_forms::laurent_shift(), bits);
    let floor = IntervalReal::from_integer(linear_forms::LAURENT_FLOOR, bits);
    Ok(NConstant {
        value,
        largest_admissible: fp.bound,
        constant_branch_active: branch.lt(&floor).is_true(),
        precision: bits,
    })
}

pub fn derive_n_constant(policy: &PrecisionPolicy) -> Result<NConstant> {
    derive_n_constant_with(linear_forms::laurent_c2(), policy)
}

/// The derived constant `K` in `y < K·log w`, computed once per process.
pub fn n_constant() -> u64 {
    static K: OnceLock<u64> = OnceLock::new();
    *K.get_or_init(|| {
        derive_n_constant(&PrecisionPolicy::default())
            .expect("the y-bound constant is certifiable at default precision")
            .value
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSet {
    /// `floor(K·log w)`.
    pub y_upper: u64,
    /// `n² − 1` (at least 1).
    pub y_lower: u64,
    /// Continued fractions are searched up to this denominator.
    pub q_max: u64,
    /// `ceil((pn² − 5)/(p − 5))`.
    pub y_lower_sharp: u64,
    /// Largest `y` allowed by the per-instance form of the same estimate,
    /// without the `log w > 1` and `log u < log v·log w` simplifications.
    pub y_upper_tight: u64,
    pub n_upper: Option<u64>,
    pub z_upper: Option<u64>,
    pub precision: u32,
}

impl BoundSet {
    /// `max(3, n² − 1, ceil((pn² − 5)/(p − 5)))`: every admissible `y` is at
    /// least this large once `y ≤ 2` is handled separately.
    pub fn y_floor(&self) -> u64 {
        3.max(self.y_lower).max(self.y_lower_sharp)
    }

    /// No `y` fits between the lower and upper bounds.
    pub fn is_vacuous(&self) -> bool {
        self.y_floor() > self.y_upper
    }
}

/// `floor(K·log w)` with a certified floor.
pub fn y_upper_from_constant(w: u128, k: u64, policy: &PrecisionPolicy) -> Result<(u64, u32)> {
    let (floor, bits) = policy.escalate("floor of K·log w", |bits| {
        let v = IntervalReal::from_integer(k, bits) * log_interval(w, bits)?;
        Ok(v.certified_floor())
    })?;
    Ok((to_u64(&floor, "y upper bound")?, bits))
}

fn tight_y_form(inst: &EquationInstance, bits: u32) -> Result<GrowthForm> {
    let (lu, lv, lw) = (
        log_interval(inst.u(), bits)?,
        log_interval(inst.v(), bits)?,
        log_interval(inst.w(), bits)?,
    );
    let inv_lw = lw.recip()?;
    GrowthForm::new(
        lu.div(&lv)?,
        IntervalReal::exact(linear_forms::laurent_c2(), bits) * &lw,
        Some((
            LogTerm::new(IntervalReal::from_integer(2, bits) * &inv_lw, inv_lw),
            IntervalReal::exact(linear_forms::laurent_shift(), bits),
        )),
        vec![IntervalReal::from_integer(linear_forms::LAURENT_FLOOR, bits)],
        Vec::new(),
        Relation::Strict,
    )
}

/// Largest `y` with `y < log u/log v + 25.2·log w·max{log((2y+1)/log w) + 0.38, 10}²`.
pub fn y_upper_tight(inst: &EquationInstance, policy: &PrecisionPolicy) -> Result<u64> {
    Ok(solve(|bits| tight_y_form(inst, bits), 1, policy)?.bound)
}

pub fn y_bounds(inst: &EquationInstance, policy: &PrecisionPolicy) -> Result<BoundSet> {
    let (y_upper, precision) = y_upper_from_constant(inst.w(), n_constant(), policy)?;
    let (p, n) = (inst.p() as u128, inst.n() as u128);
    let sharp = (p * n * n - 5).div_ceil(p - 5);
    Ok(BoundSet {
        y_upper,
        y_lower: (n * n - 1).max(1) as u64,
        q_max: y_upper,
        y_lower_sharp: sharp as u64,
        y_upper_tight: y_upper_tight(inst, policy)?,
        n_upper: None,
        z_upper: None,
        precision,
    })
}

/// Ceiling on `p` in one of the odd cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCeiling {
    pub tag: CaseTag,
    /// `p < threshold` is the exact rational consequence of the gap argument.
    pub threshold_num: u64,
    pub threshold_den: u64,
    /// Exclusive ceiling for primes: every prime below the threshold is
    /// below this value.
    pub bound: u64,
}

impl PrimeCeiling {
    pub fn threshold(&self) -> BigRational {
        ratio(self.threshold_num as i64, self.threshold_den as i64)
    }
}

/// `g/K < 5/(p − 5)` with gap `g = 2` (`n ≡ 1 mod 4`) or `g = 1`
/// (`n ≡ 3 mod 4`), solved exactly as `p < 5 + 5K/g`.
pub fn p_upper(tag: CaseTag) -> Result<PrimeCeiling> {
    let gap: i64 = match tag {
        CaseTag::OddN1Mod4 => 2,
        CaseTag::OddN3Mod4 => 1,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "prime ceiling applies to the odd cases only, got {tag}"
            )))
        }
    };
    let k = n_constant() as i64;
    let threshold = ratio(5, 1) + ratio(5 * k, gap);
    let mut bound = threshold.ceil().to_integer();
    if !threshold.is_integer() {
        let below = &bound - BigInt::one();
        if !is_prime(below.to_u128().expect("small"))? {
            bound = below;
        }
    }
    Ok(PrimeCeiling {
        tag,
        threshold_num: to_u64(threshold.numer(), "threshold")?,
        threshold_den: to_u64(threshold.denom(), "threshold")?,
        bound: to_u64(&bound, "prime ceiling")?,
    })
}

/// Largest `n` with `n² − 2 < K·log(p_bound·n)`.
///
/// The scan stops at the first failure `n_f` with `2n_f² > K`; past that
/// point `K·log(p n) − n²` is decreasing, so no larger `n` qualifies.
pub fn n_upper(p_bound: u64, policy: &PrecisionPolicy) -> Result<u64> {
    if p_bound < 7 {
        return Err(Error::InvalidArgument(format!(
            "prime bound must be at least 7, got {p_bound}"
        )));
    }
    let k = n_constant();
    let (last, _) = policy.escalate("n ceiling scan", |bits| {
        let kk = IntervalReal::from_integer(k, bits);
        let mut last = 0u64;
        for n in 1u64.. {
            let lhs = IntervalReal::from_integer(BigInt::from(n) * n - 2, bits);
            let rhs = &kk * &log_interval(p_bound as u128 * n as u128, bits)?;
            match lhs.lt(&rhs) {
                Certified::True => last = n,
                Certified::False if 2 * (n as u128) * (n as u128) > k as u128 => break,
                Certified::False => {}
                Certified::Undecided => return Ok(None),
            }
        }
        Ok(Some(last))
    })?;
    Ok(last)
}

/// `(N_upper, z_upper)` for one `n` with `5 | n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryBounds {
    pub n: u64,
    /// Bound on `N = max{x, y}`.
    pub n_upper: u64,
    /// Bound on `z`; every solution also has `z ≥ N`.
    pub z_upper: u64,
    pub precision: u32,
}

fn corollary_params(n: u64, bits: u32) -> Result<PadicParams> {
    let n2 = BigInt::from(n) * n;
    let d1: BigInt = BigInt::from(14) * &n2 + 1;
    let d2 = BigInt::one() - BigInt::from(35) * &n2;
    PadicParams::new(
        5,
        d1.clone(),
        d2.clone(),
        BigRational::from_integer(BigInt::from(2)),
        1u32,
        1u32,
        d1.magnitude().clone(),
        d2.magnitude().clone(),
        bits,
    )
}

/// `N ≤ C·(max{log(N/log n) + log(2 log 5) + 0.4, 12 log 5, 5})²·log(14n²+1)·log(35n²−1)`,
/// with `b' ≤ N/log n`.
pub fn corollary_form(n: u64, bits: u32) -> Result<GrowthForm> {
    let alpha = log_interval(n, bits)?.recip()?;
    corollary_params(n, bits)?.growth_form(alpha, Relation::NonStrict)
}

/// The same bound with heights taken at `n_heights` and `α = 1/log n_alpha`;
/// for `n_alpha ≤ n ≤ n_heights` it dominates the bound for `n`. The
/// constants do not depend on `n`, so they are read off the `n = 5` instance.
fn corollary_envelope(n_heights: u64, n_alpha: u64, bits: u32) -> Result<GrowthForm> {
    let reference = corollary_params(5, bits)?;
    let n2 = n_heights as u128 * n_heights as u128;
    let coeff = reference.leading_coefficient()?
        * log_interval(14 * n2 + 1, bits)?
        * log_interval(35 * n2 - 1, bits)?;
    GrowthForm::new(
        IntervalReal::from_integer(0, bits),
        coeff,
        Some((
            LogTerm::new(log_interval(n_alpha, bits)?.recip()?, IntervalReal::from_integer(0, bits)),
            reference.shift()?,
        )),
        reference.floors()?.to_vec(),
        Vec::new(),
        Relation::NonStrict,
    )
}

pub fn corollary_bounds(n: u64, policy: &PrecisionPolicy) -> Result<CorollaryBounds> {
    if n == 0 || n % 5 != 0 {
        return Err(Error::InvalidArgument(format!(
            "corollary bounds need a positive multiple of 5, got {n}"
        )));
    }
    let fp = solve(|bits| corollary_form(n, bits), 1, policy)?;
    let z = fixed_point::floor_upper(&corollary_form(n, fp.precision)?, fp.bound)?;
    Ok(CorollaryBounds {
        n,
        n_upper: fp.bound,
        z_upper: to_u64(&z, "z bound")?,
        precision: fp.precision,
    })
}

/// `C·(12 log 5)²`, with `C = 36.1/(8 (log 5)⁴)`.
pub fn corollary_ceiling_constant(bits: u32) -> Result<IntervalReal> {
    let params = corollary_params(5, bits)?;
    let [six_f, _] = params.floors()?;
    Ok(params.leading_coefficient()? * six_f.square())
}

/// `s ≤ 49·c·log(14s + 1)·log(35s − 1)` in `s = n²`.
fn ceiling_form(c: &IntervalReal, bits: u32) -> Result<GrowthForm> {
    GrowthForm::new(
        IntervalReal::from_integer(0, bits),
        IntervalReal::from_integer(49, bits) * c,
        None,
        vec![IntervalReal::from_integer(1, bits)],
        vec![
            LogTerm::new(IntervalReal::from_integer(14, bits), IntervalReal::from_integer(1, bits)),
            LogTerm::new(IntervalReal::from_integer(35, bits), IntervalReal::from_integer(-1, bits)),
        ],
        Relation::NonStrict,
    )
}

/// Largest `n` with `n²/49 ≤ c·log(14n²+1)·log(35n²−1)`.
pub fn n_ceiling_for_constant(
    c: impl Fn(u32) -> Result<IntervalReal>,
    policy: &PrecisionPolicy,
) -> Result<u64> {
    let fp = solve(|bits| ceiling_form(&c(bits)?, bits), 1, policy)?;
    let (n, _) = policy.escalate("n ceiling", |bits| {
        let form = ceiling_form(&c(bits)?, bits)?;
        let mut n = fp.bound.sqrt();
        while n > 0 {
            match form.holds(n * n)? {
                Certified::True => return Ok(Some(n)),
                Certified::False => n -= 1,
                Certified::Undecided => return Ok(None),
            }
        }
        Ok(Some(0))
    })?;
    Ok(n)
}

/// Whether every `n` in `[n1, n2]` is excluded: no `N ≥ n1²/49` satisfies
/// the bound built from the largest heights and the smallest `log n`.
fn block_excluded(n1: u64, n2: u64, bits: u32) -> Result<Certified> {
    let t0 = (n1 as u128 * n1 as u128).div_ceil(49) as u64;
    corollary_envelope(n2, n1, bits)?.fails_from(t0)
}

/// Covers `[from, to]` with blocks, each certified by [`block_excluded`].
/// Returns the number of blocks used.
pub fn certify_middle_range(from: u64, to: u64, policy: &PrecisionPolicy) -> Result<usize> {
    let mut n1 = from;
    let mut size = 1u64;
    let mut blocks = 0;
    while n1 <= to {
        let n2 = (n1 + size - 1).min(to);
        let verdict = policy.escalate("corollary block", |bits| {
            Ok(match block_excluded(n1, n2, bits)? {
                Certified::True => Some(true),
                Certified::False => Some(false),
                Certified::Undecided => None,
            })
        });
        match verdict {
            Ok((true, _)) => {
                blocks += 1;
                n1 = n2 + 1;
                size = size.saturating_mul(2);
            }
            Ok((false, _)) | Err(Error::PrecisionExhausted { .. }) if size > 1 => size /= 2,
            Ok((false, _)) => {
                return Err(Error::FixedPointUncertified(format!(
                    "cannot exclude n = {n1}"
                )))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(blocks)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryCeiling {
    /// With the rounded constant `250.8`.
    pub rounded: u64,
    /// With `C·(12 log 5)²` evaluated exactly.
    pub exact: u64,
    /// `250.8` lies below the exact constant.
    pub rounded_below_exact: bool,
    /// `[from, to]` excluded block by block with the full maximum.
    pub middle_range: (u64, u64),
    pub middle_blocks: usize,
}

impl CorollaryCeiling {
    pub fn n_max(&self) -> u64 {
        self.rounded.max(self.exact)
    }
}

pub fn corollary_n_ceiling(policy: &PrecisionPolicy) -> Result<CorollaryCeiling> {
    let rounded = n_ceiling_for_constant(|bits| Ok(IntervalReal::from_ratio(2508, 10, bits)), policy)?;
    let exact = n_ceiling_for_constant(corollary_ceiling_constant, policy)?;
    let c = corollary_ceiling_constant(policy.start_bits)?;
    let rounded_below_exact = IntervalReal::from_ratio(2508, 10, policy.start_bits)
        .lt(&c)
        .is_true();
    let from = rounded.max(exact) + 1;
    let to = LARGE_N_THRESHOLD - 1;
    let middle_blocks = certify_middle_range(from, to, policy)?;
    Ok(CorollaryCeiling {
        rounded,
        exact,
        rounded_below_exact,
        middle_range: (from, to),
        middle_blocks,
    })
}

/// The `n ≥ 173356` branch: three instantiations of the bound on `N` after
/// substituting `n² ≤ 49N`, each far below `n²/49`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargeNReport {
    /// Rounded constants `0.68` and `1.57`, growth branch only.
    pub rounded_chain: u64,
    /// Exact constants, growth branch only.
    pub exact_chain: u64,
    /// Exact constants with the full three-way maximum; needs no branch
    /// argument.
    pub full_max: u64,
    /// `floor(173356²/49)`.
    pub min_n_from_congruence: u64,
    /// `0.68 > C` and `1.57 > log(2 log 5) + 0.4`.
    pub rounding_is_conservative: bool,
    /// At `n = 173356`, `N = n²/49`: `log(N/log n) + log(2 log 5) + 0.4 > 12 log 5`.
    pub growth_branch_active: bool,
    pub contradiction: bool,
}

fn large_n_form(
    coeff: IntervalReal,
    shift: IntervalReal,
    floors: Vec<IntervalReal>,
    bits: u32,
) -> Result<GrowthForm> {
    let alpha = log_interval(LARGE_N_THRESHOLD, bits)?.recip()?;
    GrowthForm::new(
        IntervalReal::from_integer(0, bits),
        coeff,
        Some((LogTerm::new(alpha, IntervalReal::from_integer(0, bits)), shift)),
        floors,
        vec![
            LogTerm::new(IntervalReal::from_integer(686, bits), IntervalReal::from_integer(1, bits)),
            LogTerm::new(IntervalReal::from_integer(1715, bits), IntervalReal::from_integer(-1, bits)),
        ],
        Relation::NonStrict,
    )
}

pub fn large_n_report(policy: &PrecisionPolicy) -> Result<LargeNReport> {
    let rounded = solve(
        |bits| {
            large_n_form(
                IntervalReal::from_ratio(68, 100, bits),
                IntervalReal::from_ratio(157, 100, bits),
                Vec::new(),
                bits,
            )
        },
        1,
        policy,
    )?;
    let exact = solve(
        |bits| {
            let p = corollary_params(5, bits)?;
            large_n_form(p.leading_coefficient()?, p.shift()?, Vec::new(), bits)
        },
        1,
        policy,
    )?;
    let full = solve(
        |bits| {
            let p = corollary_params(5, bits)?;
            large_n_form(p.leading_coefficient()?, p.shift()?, p.floors()?.to_vec(), bits)
        },
        1,
        policy,
    )?;
    let bits = policy.start_bits;
    let params = corollary_params(5, bits)?;
    let rounding_is_conservative = IntervalReal::from_ratio(68, 100, bits)
        .gt(&params.leading_coefficient()?)
        .and(IntervalReal::from_ratio(157, 100, bits).gt(&params.shift()?))
        .is_true();
    let n_sq = BigInt::from(LARGE_N_THRESHOLD) * LARGE_N_THRESHOLD;
    let n_over = IntervalReal::exact(BigRational::new(n_sq.clone(), BigInt::from(49)), bits);
    let branch = n_over.div(&log_interval(LARGE_N_THRESHOLD, bits)?)?.ln()? + params.shift()?;
    let [six_f, _] = params.floors()?;
    let min_n = n_sq.div_floor(&BigInt::from(49));
    let min_n = to_u64(&min_n, "n²/49")?;
    let largest = rounded.bound.max(exact.bound).max(full.bound);
    Ok(LargeNReport {
        rounded_chain: rounded.bound,
        exact_chain: exact.bound,
        full_max: full.bound,
        min_n_from_congruence: min_n,
        rounding_is_conservative,
        growth_branch_active: branch.gt(&six_f).is_true(),
        contradiction: largest < min_n,
    })
}

/// `n²/49` at the large-`n` threshold as an exact rational.
pub fn large_n_min_ratio() -> BigRational {
    let n = BigInt::from(LARGE_N_THRESHOLD);
    BigRational::new(&n * &n, BigInt::from(49))
}

/// Exact `y` candidates, `ceil((pn² − 5)/(p − 5))` and up, with
/// `5 + (p − 5)y ≡ 0 (mod pn²)`.
pub fn sharp_y_residue(inst: &EquationInstance) -> Option<(BigUint, BigUint)> {
    let (p, n) = (BigInt::from(inst.p()), BigInt::from(inst.n()));
    let m = &p * &n * &n;
    let a = (&p - BigInt::from(5)).mod_floor(&m);
    let g = a.gcd(&m);
    let minus5 = (BigInt::from(-5)).mod_floor(&m);
    if !(&minus5 % &g).is_zero() {
        return None;
    }
    let (a, b, m2) = (&a / &g, &minus5 / &g, &m / &g);
    let inv = a.extended_gcd(&m2).x.mod_floor(&m2);
    let y0 = (b * inv).mod_floor(&m2);
    Some((y0.magnitude().clone(), m2.magnitude().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equation::make_instance;

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::default()
    }

    #[test]
    fn n_constant_value() {
        let k = derive_n_constant(&policy()).unwrap();
        assert_eq!(k.value, 2521);
        assert_eq!(k.largest_admissible, 2520);
        assert!(k.constant_branch_active);
        assert_eq!(n_constant(), 2521);
        let zero = derive_n_constant_with(BigRational::zero(), &policy()).unwrap();
        assert_eq!(zero.value, 1);
    }

    #[test]
    fn y_bound_examples() {
        let b = y_bounds(&make_instance(11, 1).unwrap(), &policy()).unwrap();
        assert_eq!(b.y_upper, 6045);
        assert_eq!(b.q_max, 6045);
        assert!(b.y_upper_tight <= b.y_upper);
        let b = y_bounds(&make_instance(11, 13).unwrap(), &policy()).unwrap();
        assert_eq!(b.y_lower, 168);
        let b = y_bounds(&make_instance(7, 1).unwrap(), &policy()).unwrap();
        assert_eq!(b.y_lower_sharp, 1);
        assert_eq!(b.y_floor(), 3);
    }

    #[test]
    fn prime_ceilings() {
        let a = p_upper(CaseTag::OddN1Mod4).unwrap();
        assert_eq!(a.threshold(), ratio(12615, 2));
        assert_eq!(a.bound, 6307);
        let b = p_upper(CaseTag::OddN3Mod4).unwrap();
        assert_eq!(b.threshold(), ratio(12610, 1));
        assert_eq!(b.bound, 12610);
        assert!(p_upper(CaseTag::EvenN).is_err());
        assert!(p_upper(CaseTag::OutOfScope).is_err());
    }

    #[test]
    fn n_ceilings() {
        assert_eq!(n_upper(23, &policy()).unwrap(), 142);
        assert!(n_upper(5, &policy()).is_err());
    }

    #[test]
    fn corollary_small_n() {
        let b = corollary_bounds(5, &policy()).unwrap();
        // 250.86·log(351)·log(874) ≈ 9958.6
        assert_eq!(b.n_upper, 9958);
        assert!(b.z_upper >= b.n_upper);
        assert!(corollary_bounds(7, &policy()).is_err());
        assert!(corollary_bounds(0, &policy()).is_err());
    }

    #[test]
    fn ceiling_constant_value() {
        let c = corollary_ceiling_constant(128).unwrap();
        assert!((c.to_f64() - 250.8599).abs() < 1e-3);
    }

    #[test]
    fn sharp_residue() {
        let inst = make_instance(7, 3).unwrap();
        let (y0, m) = sharp_y_residue(&inst).unwrap();
        assert_eq!((y0, m), (BigUint::from(29u32), BigUint::from(63u32)));
    }

    #[test]
    fn case_ceilings_on_n() {
        assert_eq!(n_upper(6307, &policy()).unwrap(), 187);
        assert_eq!(n_upper(12610, &policy()).unwrap(), 192);
    }

    #[test]
    fn corollary_chain() {
        let c = corollary_n_ceiling(&policy()).unwrap();
        assert_eq!((c.rounded, c.exact), (2031, 2031));
        assert!(c.rounded_below_exact);
        assert_eq!(c.middle_range, (2032, LARGE_N_THRESHOLD - 1));
        let l = large_n_report(&policy()).unwrap();
        assert_eq!(l.rounded_chain, 13732);
        assert_eq!(l.exact_chain, 13495);
        assert_eq!(l.full_max, 84237);
        assert_eq!(l.min_n_from_congruence, 613_312_300);
        assert!(l.rounding_is_conservative && l.growth_branch_active && l.contradiction);
    }
}
