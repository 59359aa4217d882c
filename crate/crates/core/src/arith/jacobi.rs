use crate::error::{Error, Result};

/// Jacobi symbol `(a/m)` by the binary reciprocity algorithm.
///
/// `m` must be odd and positive. Returns `0` exactly when `gcd(a, m) > 1`.
pub fn jacobi(a: i128, m: u128) -> Result<i8> {
    if m == 0 || m % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "Jacobi modulus must be odd and positive, got {m}"
        )));
    }
    let mut a = if a >= 0 {
        (a as u128) % m
    } else {
        let r = a.unsigned_abs() % m;
        if r == 0 {
            0
        } else {
            m - r
        }
    };
    let mut m = m;
    let mut sign: i8 = 1;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        // (2/m) = -1 iff m ≡ 3, 5 (mod 8)
        if twos % 2 == 1 && matches!(m % 8, 3 | 5) {
            sign = -sign;
        }
        // reciprocity for odd a, m
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut m);
        a %= m;
    }
    Ok(if m == 1 { sign } else { 0 })
}
