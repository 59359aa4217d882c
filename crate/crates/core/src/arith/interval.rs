use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::log::ln_fixed;
use super::rigor::{self, Certified};
use crate::error::{Error, Result};

/// Extra bits kept below the working precision when an endpoint has to be
/// rounded. Endpoints with small denominators (such as `126/5`) are never
/// rounded at all.
pub const ROUNDING_SLACK_BITS: u32 = 32;

/// Largest working precision the logarithm backend accepts.
pub const MAX_SUPPORTED_BITS: u32 = 1 << 20;

/// A closed real interval `[lo, hi]` with exact rational endpoints.
///
/// Every operation rounds outward, so the exact real result of the same
/// expression is always contained in the returned interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalReal {
    lo: BigRational,
    hi: BigRational,
    precision: u32,
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn round_down(r: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let scaled = r * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.floor().to_integer(), scale)
}

fn round_up(r: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let scaled = r * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.ceil().to_integer(), scale)
}

fn min_max(values: [BigRational; 4]) -> (BigRational, BigRational) {
    let mut lo = values[0].clone();
    let mut hi = values[0].clone();
    for v in &values[1..] {
        if *v < lo {
            lo = v.clone();
        }
        if *v > hi {
            hi = v.clone();
        }
    }
    (lo, hi)
}

impl IntervalReal {
    pub fn exact(value: BigRational, precision: u32) -> Self {
        IntervalReal {
            lo: value.clone(),
            hi: value,
            precision,
        }
    }

    pub fn from_integer<T: Into<BigInt>>(value: T, precision: u32) -> Self {
        Self::exact(BigRational::from_integer(value.into()), precision)
    }

    pub fn from_ratio(num: i64, den: i64, precision: u32) -> Self {
        Self::exact(ratio(num, den), precision)
    }

    pub fn from_bounds(lo: BigRational, hi: BigRational, precision: u32) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval bounds out of order: {lo} > {hi}"
            )));
        }
        Ok(IntervalReal { lo, hi, precision })
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(mut self, precision: u32) -> Self {
        self.precision = precision;
        self
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, value: &BigRational) -> bool {
        self.lo <= *value && *value <= self.hi
    }

    /// Rounds endpoints outward once their denominators grow past the
    /// working precision.
    fn settle(mut self) -> Self {
        let limit = u64::from(self.precision + ROUNDING_SLACK_BITS);
        if self.lo.denom().bits() > limit {
            self.lo = round_down(&self.lo, self.precision + ROUNDING_SLACK_BITS);
        }
        if self.hi.denom().bits() > limit {
            self.hi = round_up(&self.hi, self.precision + ROUNDING_SLACK_BITS);
        }
        self
    }

    pub fn recip(&self) -> Result<Self> {
        if self.lo.is_positive() || self.hi.is_negative() {
            Ok(IntervalReal {
                lo: self.hi.recip(),
                hi: self.lo.recip(),
                precision: self.precision,
            }
            .settle())
        } else {
            Err(Error::DivisionByZeroInterval)
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn square(&self) -> Self {
        let (lo, hi) = if !self.lo.is_negative() {
            (&self.lo * &self.lo, &self.hi * &self.hi)
        } else if !self.hi.is_positive() {
            (&self.hi * &self.hi, &self.lo * &self.lo)
        } else {
            let m = if self.lo.abs() > self.hi.abs() {
                self.lo.abs()
            } else {
                self.hi.clone()
            };
            (BigRational::zero(), &m * &m)
        };
        IntervalReal {
            lo,
            hi,
            precision: self.precision,
        }
        .settle()
    }

    /// Interval extension of `max`: exact when one operand dominates.
    pub fn max(&self, other: &Self) -> Self {
        IntervalReal {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            precision: self.precision.min(other.precision),
        }
    }

    pub fn min(&self, other: &Self) -> Self {
        IntervalReal {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
            precision: self.precision.min(other.precision),
        }
    }

    /// Natural logarithm, certified at this interval's precision.
    pub fn ln(&self) -> Result<Self> {
        if !self.lo.is_positive() {
            return Err(Error::LogOfNonPositive);
        }
        let bits = self.precision;
        let endpoint = |r: &BigRational, lower: bool| -> Result<BigRational> {
            if r.is_one() {
                return Ok(BigRational::zero());
            }
            let (num, den) = (r.numer().magnitude(), r.denom().magnitude());
            let (lo, hi, scale) = ln_fixed(num, den, bits)?;
            let pick = if lower { lo } else { hi };
            Ok(BigRational::new(pick, pow2(scale)))
        };
        let lo = endpoint(&self.lo, true)?;
        let hi = if self.is_point() && self.lo.is_one() {
            BigRational::zero()
        } else {
            endpoint(&self.hi, false)?
        };
        Ok(IntervalReal {
            lo,
            hi,
            precision: bits,
        })
    }

    pub fn floor_lo(&self) -> BigInt {
        self.lo.floor().to_integer()
    }

    pub fn floor_hi(&self) -> BigInt {
        self.hi.floor().to_integer()
    }

    /// `floor` of every point of the interval, when it is the same integer.
    pub fn certified_floor(&self) -> Option<BigInt> {
        let a = self.floor_lo();
        (a == self.floor_hi()).then_some(a)
    }

    pub fn to_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }

    /// Outward `f64` enclosure (two ulps of slack on each side).
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        let lo = self.lo.to_f64().unwrap_or(f64::NEG_INFINITY);
        let hi = self.hi.to_f64().unwrap_or(f64::INFINITY);
        (lo.next_down().next_down(), hi.next_up().next_up())
    }

    fn audited(&self, other: &Self, outcome: Certified) -> Certified {
        let inner_lo = (&self.lo).max(&other.lo);
        let inner_hi = (&self.hi).min(&other.hi);
        rigor::record(outcome, inner_lo >= inner_hi);
        outcome
    }

    /// `self < other` for every pair of points.
    pub fn lt(&self, other: &Self) -> Certified {
        let outcome = if self.hi < other.lo {
            Certified::True
        } else if self.lo >= other.hi {
            Certified::False
        } else {
            Certified::Undecided
        };
        self.audited(other, outcome)
    }

    /// `self <= other` for every pair of points.
    pub fn le(&self, other: &Self) -> Certified {
        let outcome = if self.hi <= other.lo {
            Certified::True
        } else if self.lo > other.hi {
            Certified::False
        } else {
            Certified::Undecided
        };
        self.audited(other, outcome)
    }

    pub fn gt(&self, other: &Self) -> Certified {
        other.lt(self)
    }

    pub fn ge(&self, other: &Self) -> Certified {
        other.le(self)
    }

    /// Ordering of two separated intervals, `None` when they overlap.
    pub fn certified_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.lt(other) {
            Certified::True => Some(Ordering::Less),
            Certified::False => match self.gt(other) {
                Certified::True => Some(Ordering::Greater),
                _ => (self.is_point() && other.is_point() && self.lo == other.lo)
                    .then_some(Ordering::Equal),
            },
            Certified::Undecided => None,
        }
    }
}

impl fmt::Display for IntervalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = (
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN),
        );
        if self.is_point() {
            write!(f, "{lo}")
        } else {
            write!(f, "[{lo:e}, {hi:e}]")
        }
    }
}

impl Add for &IntervalReal {
    type Output = IntervalReal;
    fn add(self, rhs: &IntervalReal) -> IntervalReal {
        IntervalReal {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
            precision: self.precision.min(rhs.precision),
        }
        .settle()
    }
}

impl Sub for &IntervalReal {
    type Output = IntervalReal;
    fn sub(self, rhs: &IntervalReal) -> IntervalReal {
        IntervalReal {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
            precision: self.precision.min(rhs.precision),
        }
        .settle()
    }
}

impl Mul for &IntervalReal {
    type Output = IntervalReal;
    fn mul(self, rhs: &IntervalReal) -> IntervalReal {
        let (lo, hi) = if !self.lo.is_negative() && !rhs.lo.is_negative() {
            (&self.lo * &rhs.lo, &self.hi * &rhs.hi)
        } else {
            min_max([
                &self.lo * &rhs.lo,
                &self.lo * &rhs.hi,
                &self.hi * &rhs.lo,
                &self.hi * &rhs.hi,
            ])
        };
        IntervalReal {
            lo,
            hi,
            precision: self.precision.min(rhs.precision),
        }
        .settle()
    }
}

impl Neg for &IntervalReal {
    type Output = IntervalReal;
    fn neg(self) -> IntervalReal {
        IntervalReal {
            lo: -&self.hi,
            hi: -&self.lo,
            precision: self.precision,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for IntervalReal {
            type Output = IntervalReal;
            fn $m(self, rhs: IntervalReal) -> IntervalReal {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntervalReal> for IntervalReal {
            type Output = IntervalReal;
            fn $m(self, rhs: &IntervalReal) -> IntervalReal {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

/// Certified natural logarithm of a positive integer.
///
/// The returned interval has width at most `2^-precision`; the backend uses
/// an internal guard of `LOG_GUARD_BITS + bitlen(k)` extra bits, where `k`
/// is the binary exponent of `m`.
pub fn log_interval<T: Into<BigUint>>(m: T, precision: u32) -> Result<IntervalReal> {
    let m: BigUint = m.into();
    if m.is_zero() {
        return Err(Error::LogOfNonPositive);
    }
    IntervalReal::from_integer(BigInt::from(m), precision).ln()
}

/// `ceil(a / b)` for positive integers.
pub fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_ceil(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> IntervalReal {
        IntervalReal::from_bounds(ratio(lo, 1), ratio(hi, 1), 64).unwrap()
    }

    #[test]
    fn log_of_one_is_exact_zero() {
        let l = log_interval(1u32, 64).unwrap();
        assert!(l.is_point());
        assert!(l.lo().is_zero());
    }

    #[test]
    fn log_of_eleven_is_tight() {
        let l = log_interval(11u32, 64).unwrap();
        // ln 11 = 2.397895272798370544061943577965...
        let reference = BigRational::new(
            BigInt::from(2_397_895_272_798_370_544u64),
            BigInt::from(10u64).pow(18),
        );
        let eps = BigRational::new(BigInt::one(), BigInt::from(10u64).pow(18));
        assert!(l.lo() <= &(&reference + &eps));
        assert!(l.hi() >= &(&reference - &eps));
        assert!(l.width() < BigRational::new(BigInt::one(), pow2(60)));
    }

    #[test]
    fn log_is_strictly_monotone_on_integers() {
        let a = log_interval(66u32, 64).unwrap();
        let b = log_interval(67u32, 64).unwrap();
        assert!(b.lo() > a.hi());
        assert_eq!(a.lt(&b), Certified::True);
    }

    #[test]
    fn log_of_zero_rejected() {
        assert_eq!(log_interval(0u32, 64), Err(Error::LogOfNonPositive));
        assert!(iv(-1, 2).ln().is_err());
    }

    #[test]
    fn log_of_fraction_is_negative() {
        let half = IntervalReal::from_ratio(1, 2, 128);
        let l = half.ln().unwrap();
        let l2 = log_interval(2u32, 128).unwrap();
        assert!((&l + &l2).contains(&BigRational::zero()));
        assert!(l.hi().is_negative());
    }

    #[test]
    fn comparisons_are_three_valued() {
        assert_eq!(iv(1, 2).lt(&iv(3, 4)), Certified::True);
        assert_eq!(iv(3, 4).lt(&iv(1, 2)), Certified::False);
        assert_eq!(iv(1, 3).lt(&iv(2, 4)), Certified::Undecided);
        assert_eq!(iv(2, 2).le(&iv(2, 2)), Certified::True);
        assert_eq!(iv(2, 2).lt(&iv(2, 2)), Certified::False);
        assert_eq!(iv(1, 2).certified_cmp(&iv(2, 2)), None);
        assert_eq!(iv(2, 2).certified_cmp(&iv(2, 2)), Some(Ordering::Equal));
    }

    #[test]
    fn exact_rationals_survive_arithmetic() {
        let c = IntervalReal::from_ratio(126, 5, 64);
        let hundred = IntervalReal::from_integer(100, 64);
        let prod = &c * &hundred;
        assert!(prod.is_point());
        assert_eq!(prod.lo(), &ratio(2520, 1));
    }

    #[test]
    fn division_by_straddling_interval_fails() {
        assert_eq!(iv(1, 2).div(&iv(-1, 1)), Err(Error::DivisionByZeroInterval));
        let q = iv(1, 2).div(&iv(4, 8)).unwrap();
        assert_eq!(q.lo(), &ratio(1, 8));
        assert_eq!(q.hi(), &ratio(1, 2));
    }

    #[test]
    fn square_of_straddling_interval() {
        let s = iv(-3, 2).square();
        assert_eq!(s.lo(), &ratio(0, 1));
        assert_eq!(s.hi(), &ratio(9, 1));
    }

    #[test]
    fn max_takes_dominant_branch_exactly() {
        let a = log_interval(5043u32, 64).unwrap() + IntervalReal::from_ratio(38, 100, 64);
        let ten = IntervalReal::from_integer(10, 64);
        let m = a.max(&ten);
        assert!(m.is_point());
        assert_eq!(m.lo(), &ratio(10, 1));
    }

    #[test]
    fn width_shrinks_with_precision() {
        let mut last: Option<BigRational> = None;
        for bits in [64, 128, 256, 512] {
            let w = (log_interval(67u32, bits).unwrap().div(&log_interval(11u32, bits).unwrap()))
                .unwrap()
                .width();
            if let Some(prev) = last {
                assert!(w < prev);
            }
            last = Some(w);
        }
    }
}
