use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient with the convention `C(n, k) = 0` whenever `k < 0`,
/// `n < 0` or `n < k`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || n < k {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
