//! Fixed-point natural logarithm with a rigorous error bound.
//!
//! `ln x = k·ln 2 + 2·atanh(s)` with `x = 2^k·r`, `r ∈ [1/√2, √2]` and
//! `s = (r − 1)/(r + 1)`, so `|s| < 0.1716`. The atanh series is summed in
//! truncating fixed point; every truncation errs downward, which gives a
//! one-sided error that is bounded explicitly below.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::interval::MAX_SUPPORTED_BITS;
use crate::error::{Error, Result};

/// Guard bits added on top of `bitlen(|k|)` to absorb truncation error.
pub const LOG_GUARD_BITS: u32 = 32;

/// `atanh(a/b)·2^scale ∈ [sum, sum + err]` for `0 ≤ a/b ≤ 1/2`.
///
/// With `P_i` the exact scaled power `s^(2i+1)·2^scale` and `pow_i` its
/// truncated counterpart, `0 ≤ P_i − pow_i ≤ i + 1`. Each divided term loses
/// at most two more units, and once `pow_I = 0` the tail is at most
/// `(I + 1)/(1 − s²) ≤ 2(I + 1)`. Hence `err = 4I + 8` is safe.
fn atanh_fixed(a: &BigUint, b: &BigUint, scale: u32) -> (BigUint, u64) {
    if a.is_zero() {
        return (BigUint::zero(), 0);
    }
    let a2 = a * a;
    let b2 = b * b;
    let mut pow = (a << scale as usize) / b;
    let mut sum = BigUint::zero();
    let mut i: u64 = 0;
    while !pow.is_zero() {
        sum += &pow / BigUint::from(2 * i + 1);
        i += 1;
        pow = pow * &a2 / &b2;
    }
    (sum, 4 * i + 8)
}

thread_local! {
    static LN2: RefCell<HashMap<u32, (BigUint, u64)>> = RefCell::new(HashMap::new());
}

/// `ln 2 · 2^scale ∈ [lo, lo + err]`.
fn ln2_fixed(scale: u32) -> (BigUint, u64) {
    LN2.with(|cache| {
        cache
            .borrow_mut()
            .entry(scale)
            .or_insert_with(|| {
                let (s, e) = atanh_fixed(&BigUint::one(), &BigUint::from(3u32), scale);
                (s << 1usize, 2 * e)
            })
            .clone()
    })
}

/// Bounds `lo ≤ ln(num/den)·2^scale ≤ hi`, with `hi − lo ≤ 2^(scale − precision)`.
///
/// Returns `(lo, hi, scale)`.
pub(crate) fn ln_fixed(num: &BigUint, den: &BigUint, precision: u32) -> Result<(BigInt, BigInt, u32)> {
    if num.is_zero() || den.is_zero() {
        return Err(Error::LogOfNonPositive);
    }
    if precision > MAX_SUPPORTED_BITS {
        return Err(Error::PrecisionExhausted {
            what: format!("logarithm at {precision} bits"),
            ceiling_bits: MAX_SUPPORTED_BITS,
        });
    }
    let mut k = num.bits() as i64 - den.bits() as i64;
    let (mut rn, mut rd) = if k >= 0 {
        (num.clone(), den << k as usize)
    } else {
        (num << (-k) as usize, den.clone())
    };
    // r ∈ (1/2, 2); pull it into [1/√2, √2].
    let two = BigUint::from(2u32);
    if &rn * &rn > &two * &rd * &rd {
        rd <<= 1usize;
        k += 1;
    } else if &two * &rn * &rn < &rd * &rd {
        rn <<= 1usize;
        k -= 1;
    }

    let k_abs = k.unsigned_abs();
    let guard = LOG_GUARD_BITS + (64 - (k_abs + 1).leading_zeros());
    let scale = precision + guard;

    let negative = rn < rd;
    let diff = if negative { &rd - &rn } else { &rn - &rd };
    let (sa, ea) = atanh_fixed(&diff, &(&rn + &rd), scale);
    let sa: BigInt = BigInt::from(sa) * 2u32;
    let ea: BigInt = BigInt::from(ea) * 2u32;
    let (mut lo, mut hi) = if negative {
        (-(sa.clone() + &ea), -sa)
    } else {
        (sa.clone(), sa + ea)
    };

    if k != 0 {
        let (l2, e2) = ln2_fixed(scale);
        let l2_lo = BigInt::from(l2);
        let l2_hi = &l2_lo + BigInt::from(e2);
        let kb = BigInt::from(k);
        if k > 0 {
            lo += &kb * &l2_lo;
            hi += &kb * &l2_hi;
        } else {
            lo += &kb * &l2_hi;
            hi += &kb * &l2_lo;
        }
    }
    debug_assert!(&hi - &lo <= BigInt::one() << guard as usize);
    Ok((lo, hi, scale))
}
