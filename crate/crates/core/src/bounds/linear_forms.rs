//! Explicit bounds for linear forms in two logarithms: Laurent's archimedean
//! lower bound and Bugeaud's p-adic upper bound, evaluated over intervals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::fixed_point::{GrowthForm, LogTerm, Relation};
use crate::arith::{is_prime, log_interval, ratio, IntervalReal};
use crate::error::{Error, Result};

/// `C₂ = 25.2` in Laurent's bound with `m = 10`.
pub fn laurent_c2() -> BigRational {
    ratio(126, 5)
}

pub fn laurent_shift() -> BigRational {
    ratio(19, 50)
}

pub const LAURENT_FLOOR: i64 = 10;

#[derive(Debug, Clone)]
pub struct LinearFormParams {
    b1: BigUint,
    b2: BigUint,
    log_b1: IntervalReal,
    log_b2: IntervalReal,
    degree: u32,
}

impl LinearFormParams {
    pub fn new(
        b1: impl Into<BigUint>,
        b2: impl Into<BigUint>,
        log_b1: IntervalReal,
        log_b2: IntervalReal,
        degree: u32,
    ) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidArgument("field degree must be at least 1".into()));
        }
        let (b1, b2) = (b1.into(), b2.into());
        if b1.is_zero() || b2.is_zero() {
            return Err(Error::InvalidArgument("b1 and b2 must be positive".into()));
        }
        let floor = BigRational::new(BigInt::one(), BigInt::from(degree));
        if *log_b1.lo() < floor || *log_b2.lo() < floor {
            return Err(Error::InvalidArgument(
                "log B1 and log B2 must be at least 1/D".into(),
            ));
        }
        Ok(LinearFormParams {
            b1,
            b2,
            log_b1,
            log_b2,
            degree,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `b' = b1/(D log B2) + b2/(D log B1)`.
    pub fn b_prime(&self) -> Result<IntervalReal> {
        let bits = self.log_b1.precision().min(self.log_b2.precision());
        let d = IntervalReal::from_integer(self.degree, bits);
        let t1 = IntervalReal::from_integer(BigInt::from(self.b1.clone()), bits)
            .div(&(&d * &self.log_b2))?;
        let t2 = IntervalReal::from_integer(BigInt::from(self.b2.clone()), bits)
            .div(&(&d * &self.log_b1))?;
        Ok(t1 + t2)
    }
}

/// `−25.2·D⁴·(max{log b' + 0.38, 10/D})²·log B1·log B2`.
///
/// The lower endpoint of the result is the certified lower bound for
/// `log |Ω|`; the maximum is taken pessimistically when `b'` straddles the
/// branch point.
pub fn laurent_lower_bound(params: &LinearFormParams) -> Result<IntervalReal> {
    let bits = params.log_b1.precision().min(params.log_b2.precision());
    let d = params.degree as i64;
    let branch = params.b_prime()?.ln()? + IntervalReal::exact(laurent_shift(), bits);
    let floor = IntervalReal::from_ratio(LAURENT_FLOOR, d, bits);
    let m = branch.max(&floor);
    let c = IntervalReal::exact(laurent_c2() * BigRational::from_integer(BigInt::from(d.pow(4))), bits);
    let magnitude = c * m.square() * &params.log_b1 * &params.log_b2;
    Ok(-&magnitude)
}

/// `36.1` in Bugeaud's bound.
pub fn bugeaud_c() -> BigRational {
    ratio(361, 10)
}

pub fn bugeaud_shift() -> BigRational {
    ratio(2, 5)
}

pub const BUGEAUD_FLOOR: i64 = 5;

/// Parameters of the p-adic bound for `υ_p(δ1^b1 − δ2^b2)`.
#[derive(Debug, Clone)]
pub struct PadicParams {
    prime: u64,
    delta1: BigInt,
    delta2: BigInt,
    h: u64,
    f: BigRational,
    b1: BigUint,
    b2: BigUint,
    log_b1: IntervalReal,
    log_b2: IntervalReal,
    precision: u32,
}

fn valuation(value: &BigInt, prime: u64) -> Option<u64> {
    if value.is_zero() {
        return None;
    }
    let p = BigInt::from(prime);
    let mut v = value.clone();
    let mut k = 0;
    while (&v % &p).is_zero() {
        v /= &p;
        k += 1;
    }
    Some(k)
}

impl PadicParams {
    /// Validates the hypotheses and computes `h`. The heights `B1, B2` are
    /// integers with `B_i ≥ |δ_i|` and `B_i ≥ p^F`, so the logarithmic
    /// conditions are checked exactly.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        prime: u64,
        delta1: BigInt,
        delta2: BigInt,
        f: BigRational,
        b1: impl Into<BigUint>,
        b2: impl Into<BigUint>,
        height1: BigUint,
        height2: BigUint,
        precision: u32,
    ) -> Result<Self> {
        let bad = |m: &str| Error::InvalidArgument(m.to_string());
        if !is_prime(prime as u128)? {
            return Err(bad("valuation base must be prime"));
        }
        let p = BigInt::from(prime);
        for d in [&delta1, &delta2] {
            if d.is_zero() || d.gcd(&p) != BigInt::one() {
                return Err(bad("δ1 and δ2 must be non-zero and prime to p"));
            }
        }
        if f <= BigRational::new(BigInt::one(), BigInt::from(prime - 1)) {
            return Err(bad("F must exceed 1/(p − 1)"));
        }
        let h = (1..prime)
            .find(|&h| {
                let e = h as u32;
                [&delta1, &delta2]
                    .iter()
                    .all(|d| ((*d).pow(e) - BigInt::one()).mod_floor(&p).is_zero())
            })
            .expect("Fermat's little theorem bounds h by p − 1");
        let v1 = valuation(&(delta1.clone().pow(h as u32) - BigInt::one()), prime)
            .ok_or_else(|| bad("δ1^h = 1 has no finite valuation"))?;
        if BigRational::from_integer(BigInt::from(v1)) < f {
            return Err(bad("υ_p(δ1^h − 1) must be at least F"));
        }
        let (b1, b2) = (b1.into(), b2.into());
        if b1.is_zero() || b2.is_zero() {
            return Err(bad("b1 and b2 must be positive"));
        }
        for (height, delta) in [(&height1, &delta1), (&height2, &delta2)] {
            if height <= &BigUint::one() || *height < delta.magnitude().clone() {
                return Err(bad("B_i must exceed 1 and be at least |δ_i|"));
            }
            // B ≥ p^F  ⇔  B^den ≥ p^num
            let den = f.denom().magnitude().clone();
            let num = f.numer().magnitude().clone();
            let den_e: u32 = den.try_into().map_err(|_| bad("F denominator too large"))?;
            let num_e: u32 = num.try_into().map_err(|_| bad("F numerator too large"))?;
            if height.pow(den_e) < BigUint::from(prime).pow(num_e) {
                return Err(bad("B_i must be at least p^F"));
            }
        }
        Ok(PadicParams {
            prime,
            delta1,
            delta2,
            h,
            f,
            b1,
            b2,
            log_b1: log_interval(height1, precision)?,
            log_b2: log_interval(height2, precision)?,
            precision,
        })
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn deltas(&self) -> (&BigInt, &BigInt) {
        (&self.delta1, &self.delta2)
    }

    pub fn log_heights(&self) -> (&IntervalReal, &IntervalReal) {
        (&self.log_b1, &self.log_b2)
    }

    fn f_interval(&self) -> IntervalReal {
        IntervalReal::exact(self.f.clone(), self.precision)
    }

    fn log_p(&self) -> Result<IntervalReal> {
        log_interval(self.prime, self.precision)
    }

    /// `36.1·h / (F³ (log p)⁴)`.
    pub fn leading_coefficient(&self) -> Result<IntervalReal> {
        let lp2 = self.log_p()?.square();
        let f = self.f_interval();
        let num = IntervalReal::exact(
            bugeaud_c() * BigRational::from_integer(BigInt::from(self.h)),
            self.precision,
        );
        num.div(&(&f * &f * f * lp2.square()))
    }

    /// `log(F log p) + 0.4`.
    pub fn shift(&self) -> Result<IntervalReal> {
        Ok((self.f_interval() * self.log_p()?).ln()?
            + IntervalReal::exact(bugeaud_shift(), self.precision))
    }

    /// The constant branches `6F log p` and `5` of the maximum.
    pub fn floors(&self) -> Result<[IntervalReal; 2]> {
        let six_f = IntervalReal::exact(
            BigRational::from_integer(BigInt::from(6)) * &self.f,
            self.precision,
        );
        Ok([
            six_f * self.log_p()?,
            IntervalReal::from_integer(BUGEAUD_FLOOR, self.precision),
        ])
    }

    /// `b' = b1/log B2 + b2/log B1`.
    pub fn b_prime(&self) -> Result<IntervalReal> {
        let bits = self.precision;
        let t1 = IntervalReal::from_integer(BigInt::from(self.b1.clone()), bits).div(&self.log_b2)?;
        let t2 = IntervalReal::from_integer(BigInt::from(self.b2.clone()), bits).div(&self.log_b1)?;
        Ok(t1 + t2)
    }

    /// The bound as a function of `t`, where `b' ≤ α·t`: the form
    /// `C·(max{log(α t) + log(F log p) + 0.4, 6F log p, 5})²·log B1·log B2`.
    pub fn growth_form(&self, alpha: IntervalReal, relation: Relation) -> Result<GrowthForm> {
        let bits = self.precision;
        let coeff = self.leading_coefficient()? * &self.log_b1 * &self.log_b2;
        GrowthForm::new(
            IntervalReal::from_integer(0, bits),
            coeff,
            Some((
                LogTerm::new(alpha, IntervalReal::from_integer(0, bits)),
                self.shift()?,
            )),
            self.floors()?.to_vec(),
            Vec::new(),
            relation,
        )
    }
}

/// Upper bound for `υ_p(δ1^b1 − δ2^b2)`; use the upper endpoint.
pub fn bugeaud_upper_bound(params: &PadicParams) -> Result<IntervalReal> {
    let branch = params.b_prime()?.ln()? + params.shift()?;
    let [six, five] = params.floors()?;
    let m = branch.max(&six).max(&five);
    Ok(params.leading_coefficient()? * m.square() * &params.log_b1 * &params.log_b2)
}

/// `v_p(m)` for a non-zero integer.
pub fn padic_valuation(value: &BigInt, prime: u64) -> Result<u64> {
    valuation(value, prime).ok_or_else(|| Error::InvalidArgument("valuation of zero".into()))
}
