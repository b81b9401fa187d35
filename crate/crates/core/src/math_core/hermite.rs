use super::Polynomial;
use crate::error::{Error, Result};

/// Largest degree whose physicists' Hermite coefficients are all exactly
/// representable as `f64`. `H_29` has a coefficient with more than 53
/// significant bits.
pub const MAX_EXACT_HERMITE_DEGREE: usize = 28;

/// Largest index `n` for which `(2n-1)!!` fits in 53 bits.
pub const MAX_EXACT_WEIGHT_INDEX: usize = 15;

/// Integer coefficients of `H_n` from `H_{n+1} = 2x H_n - 2n H_{n-1}`.
///
/// Fails once any coefficient leaves `i128`.
pub fn hermite_integer_coeffs(n: usize) -> Result<Vec<i128>> {
    let overflow = || Error::Capacity {
        what: format!("Hermite polynomial H_{n} overflows 128-bit coefficients"),
        max: 45,
    };
    let mut prev: Vec<i128> = vec![1];
    if n == 0 {
        return Ok(prev);
    }
    let mut cur: Vec<i128> = vec![0, 2];
    for k in 1..n {
        let mut next = vec![0i128; k + 2];
        for (j, &c) in cur.iter().enumerate() {
            next[j + 1] = c.checked_mul(2).ok_or_else(overflow)?;
        }
        let two_k = 2 * k as i128;
        for (j, &c) in prev.iter().enumerate() {
            let term = c.checked_mul(two_k).ok_or_else(overflow)?;
            next[j] = next[j].checked_sub(term).ok_or_else(overflow)?;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Physicists' Hermite polynomial `H_n` with exactly represented coefficients.
///
/// Errors with [`Error::Capacity`] above [`MAX_EXACT_HERMITE_DEGREE`].
pub fn hermite_poly(n: usize) -> Result<Polynomial> {
    let capacity = || Error::Capacity {
        what: format!("H_{n} coefficients are not exactly representable in f64"),
        max: MAX_EXACT_HERMITE_DEGREE,
    };
    if n > MAX_EXACT_HERMITE_DEGREE {
        return Err(capacity());
    }
    let ints = hermite_integer_coeffs(n)?;
    let mut coeffs = Vec::with_capacity(ints.len());
    for c in ints {
        let f = c as f64;
        if f as i128 != c {
            return Err(capacity());
        }
        coeffs.push(f);
    }
    Ok(Polynomial::new(coeffs))
}

/// `(2n)!/(n! 2^n) = (2n-1)!!`, the weight of `g_{2n}` in the p = 0 overlap.
pub fn admissibility_weight(n: usize) -> Result<f64> {
    if n > MAX_EXACT_WEIGHT_INDEX {
        return Err(Error::Capacity {
            what: format!("(2·{n}-1)!! exceeds exact f64 integers"),
            max: MAX_EXACT_WEIGHT_INDEX,
        });
    }
    Ok(double_factorial_weights().nth(n).unwrap_or(f64::INFINITY))
}

/// Unbounded stream `1, 1, 3, 15, 105, ...` from `w_n = w_{n-1}(2n-1)`.
///
/// Exact through index [`MAX_EXACT_WEIGHT_INDEX`], rounded past it.
pub fn double_factorial_weights() -> impl Iterator<Item = f64> {
    let mut w = 1.0f64;
    (0usize..).map(move |n| {
        if n > 0 {
            w *= (2 * n - 1) as f64;
        }
        w
    })
}
