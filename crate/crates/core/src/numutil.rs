//! Small numeric helpers shared across the crate: guarded ceilings of
//! real-valued logs, deterministic primality by trial division, binomial
//! coefficients and modular arithmetic.

use num::bigint::BigUint;
use num::One;

/// Tolerance used to snap a float to a nearby integer before rounding.
/// Parameter formulas ceil real-valued logs; without the snap, values like
/// `3.0000000000004` would ceil to 4 on one platform and 3 on another.
pub const INT_EPS: f64 = 1e-9;

/// Ceiling with a snap: if `x` is within [`INT_EPS`] of an integer, that
/// integer is returned, otherwise `x.ceil()`.
pub fn ceil_guard(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() <= INT_EPS {
        r as i64
    } else {
        x.ceil() as i64
    }
}

/// Floor with the same snap as [`ceil_guard`].
pub fn floor_guard(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() <= INT_EPS {
        r as i64
    } else {
        x.floor() as i64
    }
}

/// Smallest even integer strictly greater than `x`.
pub fn smallest_even_above(x: f64) -> i64 {
    let mut k = floor_guard(x) + 1;
    if k % 2 != 0 {
        k += 1;
    }
    k
}

/// log base `q` of `x`.
pub fn log_q(q: u32, x: f64) -> f64 {
    x.ln() / (q as f64).ln()
}

/// Deterministic primality by trial division. The moduli in this crate are
/// tiny (a few times the code length), so nothing faster is warranted.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m.is_multiple_of(2) {
        return m == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `p >= lo`.
pub fn smallest_prime_geq(lo: u64) -> u64 {
    let mut p = lo.max(2);
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// Smallest prime `p > lo`.
pub fn smallest_prime_gt(lo: u64) -> u64 {
    smallest_prime_geq(lo + 1)
}

/// Exact binomial coefficient with the convention C(n,k) = 0 for k < 0,
/// n < 0 or k > n (the conventions used by the intersection-size formula).
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::default();
    }
    let k = k.min(n - k) as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n as u64) - i) / BigUint::from(i + 1);
    }
    acc
}

/// Binomial coefficient as u64; panics on overflow (desk-scale callers only).
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    use num::ToPrimitive;
    binomial(n as i64, k as i64)
        .to_u64()
        .expect("binomial overflows u64")
}

/// (a * b) mod m without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// a^e mod m.
pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    #[test]
    fn guarded_ceilings_snap_to_integers() {
        assert_eq!(ceil_guard(3.0 + 4e-10), 3);
        assert_eq!(ceil_guard(3.0 - 4e-10), 3);
        assert_eq!(ceil_guard(3.1), 4);
        assert_eq!(floor_guard(3.0 - 4e-10), 3);
        assert_eq!(floor_guard(2.9), 2);
    }

    #[test]
    fn even_above() {
        assert_eq!(smallest_even_above(1.0), 2);
        assert_eq!(smallest_even_above(2.0), 4);
        assert_eq!(smallest_even_above(5.4), 6);
        assert_eq!(smallest_even_above(0.2), 2);
    }

    #[test]
    fn primes_by_trial_division() {
        assert_eq!(smallest_prime_geq(2), 2);
        assert_eq!(smallest_prime_gt(2), 3);
        assert_eq!(smallest_prime_gt(48), 53);
        assert_eq!(smallest_prime_geq(14), 17);
        assert!(!is_prime(1));
        assert!(!is_prime(0));
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(4, 2).to_u64(), Some(6));
        assert_eq!(binomial(4, 3).to_u64(), Some(4));
        assert_eq!(binomial(3, 5).to_u64(), Some(0));
        assert_eq!(binomial(-1, 0).to_u64(), Some(0));
        assert_eq!(binomial(5, -1).to_u64(), Some(0));
        assert_eq!(binomial(0, 0).to_u64(), Some(1));
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mul_mod(u64::MAX - 1, u64::MAX - 1, 97), {
            let a = ((u64::MAX - 1) % 97) as u128;
            ((a * a) % 97) as u64
        });
        assert_eq!(pow_mod(7, 0, 5), 1);
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(pow_mod(5, 3, 1), 0);
    }
}
