//! Certified continued-fraction expansion of interval-valued reals.
//!
//! A partial quotient is emitted only when it is the same for every real in
//! the current remainder interval (`floor(lo) == floor(hi)`). Endpoints are
//! carried as exact rationals, so the only source of ambiguity is the width
//! of the input; callers that can recompute the input at higher precision
//! use [`cf_expand_with`], which doubles precision until every needed
//! quotient is certified.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{log_interval, IntervalReal};
use super::rigor::PrecisionPolicy;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convergent {
    pub p: BigUint,
    pub q: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFractionExpansion {
    quotients: Vec<BigUint>,
    convergents: Vec<Convergent>,
    precision: u32,
    terminated: bool,
}

impl ContinuedFractionExpansion {
    /// `a_0, a_1, …, a_R`.
    pub fn quotients(&self) -> &[BigUint] {
        &self.quotients
    }

    /// `p_r / q_r` for `r = 0..=R`.
    pub fn convergents(&self) -> &[Convergent] {
        &self.convergents
    }

    /// Precision (bits) of the input that certified every quotient.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// True when the input was an exact rational whose expansion ended.
    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    /// `a_{r+1}`, if it was certified.
    pub fn next_quotient(&self, r: usize) -> Option<&BigUint> {
        self.quotients.get(r + 1)
    }

    /// Indices `r` with `q_r ≤ q_max`.
    pub fn indices_up_to(&self, q_max: u64) -> impl Iterator<Item = usize> + '_ {
        let bound = BigUint::from(q_max);
        self.convergents
            .iter()
            .enumerate()
            .take_while(move |(_, c)| c.q <= bound)
            .map(|(r, _)| r)
    }

    /// `p_r·q_{r−1} − p_{r−1}·q_r = (−1)^{r−1}` for every `r ≥ 1`.
    pub fn determinant_identity_holds(&self) -> bool {
        self.convergents.windows(2).enumerate().all(|(i, w)| {
            let r = i + 1;
            let lhs = BigInt::from(w[1].p.clone()) * BigInt::from(w[0].q.clone())
                - BigInt::from(w[0].p.clone()) * BigInt::from(w[1].q.clone());
            let expected = if (r - 1) % 2 == 0 { 1 } else { -1 };
            lhs == BigInt::from(expected)
        })
    }
}

fn push_convergent(convergents: &mut Vec<Convergent>, a: &BigUint) {
    let n = convergents.len();
    let (p1, q1) = match n {
        0 => (BigUint::one(), BigUint::zero()),
        _ => (convergents[n - 1].p.clone(), convergents[n - 1].q.clone()),
    };
    let (p2, q2) = match n {
        0 => (BigUint::zero(), BigUint::one()),
        1 => (BigUint::one(), BigUint::zero()),
        _ => (convergents[n - 2].p.clone(), convergents[n - 2].q.clone()),
    };
    convergents.push(Convergent {
        p: a * &p1 + p2,
        q: a * &q1 + q2,
    });
}

fn expand_exact(
    mut lo: BigRational,
    mut hi: BigRational,
    q_max: u64,
    precision: u32,
) -> Result<ContinuedFractionExpansion> {
    if lo.is_negative() {
        return Err(Error::InvalidArgument(
            "continued fraction input must be non-negative".into(),
        ));
    }
    let bound = BigUint::from(q_max);
    let mut quotients = Vec::new();
    let mut convergents = Vec::new();
    let mut terminated = false;
    loop {
        let index = quotients.len();
        let a = lo.floor().to_integer();
        if a != hi.floor().to_integer() {
            return Err(Error::QuotientAmbiguous { index });
        }
        let a_big = a.to_biguint().expect("non-negative quotient");
        push_convergent(&mut convergents, &a_big);
        quotients.push(a_big);
        if convergents.last().map(|c| c.q > bound).unwrap_or(false) {
            break;
        }
        let a = BigRational::from_integer(a);
        let (flo, fhi) = (&lo - &a, &hi - &a);
        if fhi.is_zero() {
            terminated = true;
            break;
        }
        if flo.is_zero() {
            return Err(Error::QuotientAmbiguous { index: index + 1 });
        }
        lo = fhi.recip();
        hi = flo.recip();
    }
    Ok(ContinuedFractionExpansion {
        quotients,
        convergents,
        precision,
        terminated,
    })
}

/// Expansion of `num/den` covering every convergent with `q_r ≤ q_max`,
/// plus the first convergent beyond it.
///
/// Requires `den > 0` and `num/den > 1`. Fails with
/// [`Error::QuotientAmbiguous`] when the inputs are too wide.
pub fn cf_expand(
    num: &IntervalReal,
    den: &IntervalReal,
    q_max: u64,
) -> Result<ContinuedFractionExpansion> {
    if q_max == 0 {
        return Err(Error::InvalidArgument("q_max must be at least 1".into()));
    }
    if !den.lo().is_positive() {
        return Err(Error::InvalidArgument(
            "continued fraction denominator must be positive".into(),
        ));
    }
    if num.lo() <= den.hi() {
        return Err(Error::InvalidArgument(
            "continued fraction input must exceed 1".into(),
        ));
    }
    let lo = num.lo() / den.hi();
    let hi = num.hi() / den.lo();
    expand_exact(lo, hi, q_max, num.precision().min(den.precision()))
}

/// [`cf_expand`] over a recomputable source, doubling precision until every
/// quotient up to `q_max` is certified.
pub fn cf_expand_with(
    source: impl Fn(u32) -> Result<(IntervalReal, IntervalReal)>,
    q_max: u64,
    policy: &PrecisionPolicy,
) -> Result<ContinuedFractionExpansion> {
    let (cf, _) = policy.escalate("continued fraction quotient", |bits| {
        let (num, den) = source(bits)?;
        cf_expand(&num, &den, q_max).map(Some)
    })?;
    Ok(cf)
}

/// Euclidean expansion of a positive rational.
pub fn cf_of_rational(num: &BigUint, den: &BigUint) -> Vec<BigUint> {
    let (mut a, mut b) = (num.clone(), den.clone());
    let mut out = Vec::new();
    while !b.is_zero() {
        let (q, r) = a.div_rem(&b);
        out.push(q);
        a = b;
        b = r;
    }
    out
}

/// If `a = c^s` and `b = c^t` for a common base `c`, returns `(s, t)`, so
/// that `log a / log b = s/t` exactly. Both inputs must be at least 2.
pub fn log_ratio_exact(a: u128, b: u128) -> Option<(u32, u32)> {
    if a < 2 || b < 2 {
        return None;
    }
    let (mut x, mut y) = (a, b);
    let base = loop {
        if x == y {
            break x;
        }
        if x < y {
            std::mem::swap(&mut x, &mut y);
        }
        if x % y != 0 {
            return None;
        }
        x /= y;
    };
    let log_base = |mut m: u128| {
        let mut k = 0;
        while m > 1 {
            m /= base;
            k += 1;
        }
        k
    };
    Some((log_base(a), log_base(b)))
}

/// Expansion of `log a / log b`, using the exact rational ratio when `a`
/// and `b` are powers of a common base.
pub fn cf_expand_log_ratio(
    a: u128,
    b: u128,
    q_max: u64,
    policy: &PrecisionPolicy,
) -> Result<ContinuedFractionExpansion> {
    if a < 2 || b < 2 {
        return Err(Error::InvalidArgument(format!(
            "log ratio needs both arguments ≥ 2, got {a} and {b}"
        )));
    }
    if let Some((s, t)) = log_ratio_exact(a, b) {
        let r = IntervalReal::from_ratio(i64::from(s), i64::from(t), policy.start_bits);
        let one = IntervalReal::from_integer(1, policy.start_bits);
        return cf_expand(&r, &one, q_max);
    }
    cf_expand_with(
        |bits| Ok((log_interval(a, bits)?, log_interval(b, bits)?)),
        q_max,
        policy,
    )
}

/// `q_r` as a machine integer, when it fits.
pub fn small(q: &BigUint) -> Option<u64> {
    q.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn exact_ratio_shortcut() {
        assert_eq!(log_ratio_exact(49, 7), Some((2, 1)));
        assert_eq!(log_ratio_exact(8, 4), Some((3, 2)));
        assert_eq!(log_ratio_exact(12, 6), None);
        let cf = cf_expand_log_ratio(49, 7, 10, &PrecisionPolicy::default()).unwrap();
        assert_eq!(cf.quotients(), &[u(2)]);
        assert_eq!(cf.convergents(), &[Convergent { p: u(2), q: u(1) }]);
        assert!(cf.is_terminated());
    }

    #[test]
    fn log67_over_log11() {
        let cf = cf_expand_log_ratio(67, 11, 69, &PrecisionPolicy::default()).unwrap();
        let q: Vec<u64> = cf.quotients().iter().map(|x| small(x).unwrap()).collect();
        assert_eq!(&q[..4], &[1, 1, 3, 17]);
        let pq: Vec<(u64, u64)> = cf
            .convergents()
            .iter()
            .map(|c| (small(&c.p).unwrap(), small(&c.q).unwrap()))
            .collect();
        assert_eq!(&pq[..4], &[(1, 1), (2, 1), (7, 4), (121, 69)]);
        // first convergent beyond q_max = 69 is included
        assert!(cf.convergents().last().unwrap().q > u(69));
        assert!(cf.determinant_identity_holds());
    }

    #[test]
    fn wide_input_is_ambiguous() {
        let num = IntervalReal::from_bounds(
            BigRational::new(3.into(), 1.into()),
            BigRational::new(4.into(), 1.into()),
            8,
        )
        .unwrap();
        let den = IntervalReal::from_integer(1, 8);
        assert_eq!(
            cf_expand(&num, &den, 100),
            Err(Error::QuotientAmbiguous { index: 0 })
        );
    }

    #[test]
    fn preconditions() {
        let one = IntervalReal::from_integer(1, 8);
        let two = IntervalReal::from_integer(2, 8);
        assert!(cf_expand(&two, &one, 0).is_err());
        assert!(cf_expand(&one, &two, 5).is_err());
        assert!(cf_expand(&two, &IntervalReal::from_integer(0, 8), 5).is_err());
    }

    #[test]
    fn rational_expansion_terminates() {
        let cf = cf_expand(
            &IntervalReal::from_integer(415, 8),
            &IntervalReal::from_integer(93, 8),
            1_000,
        )
        .unwrap();
        assert!(cf.is_terminated());
        assert_eq!(cf.quotients(), cf_of_rational(&u(415), &u(93)).as_slice());
        assert_eq!(cf.quotients(), &[u(4), u(2), u(6), u(7)]);
    }

    #[test]
    fn indices_up_to_bound() {
        let cf = cf_expand_log_ratio(67, 11, 69, &PrecisionPolicy::default()).unwrap();
        let idx: Vec<usize> = cf.indices_up_to(69).collect();
        assert_eq!(idx, vec![0, 1, 2, 3]);
        assert_eq!(small(cf.next_quotient(3).unwrap()), Some(1));
    }
}
