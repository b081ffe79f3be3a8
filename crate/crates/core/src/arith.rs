//! Small exact-integer helpers shared across modules.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `(n)_k = n (n-1) ... (n-k+1)`, defined for any integer `n`.
pub fn falling_factorial(n: i64, k: usize) -> BigInt {
    (0..k as i64).fold(BigInt::one(), |acc, j| acc * (n - j))
}

/// Binomial coefficient `C(n, k)` extended to negative `n` by
/// `C(n, k) = (n)_k / k!`; zero for `k < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    falling_factorial(n, k as usize) / factorial(k as usize)
}

pub fn sign(exponent: usize) -> i64 {
    if exponent.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
