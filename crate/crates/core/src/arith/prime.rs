use crate::error::{Error, Result};

/// These bases make Miller-Rabin deterministic for every 64-bit input.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for `1 ≤ m < 2^64`.
pub fn is_prime(m: u128) -> Result<bool> {
    if m == 0 || m > u64::MAX as u128 {
        return Err(Error::InvalidArgument(format!(
            "primality test supports 1 ≤ m < 2^64, got {m}"
        )));
    }
    let m = m as u64;
    if m < 2 {
        return Ok(false);
    }
    for &p in &WITNESSES {
        if m % p == 0 {
            return Ok(m == p);
        }
    }
    let d_shift = (m - 1).trailing_zeros();
    let d = (m - 1) >> d_shift;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..d_shift {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// All primes `< limit` by the sieve of Eratosthenes.
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}
