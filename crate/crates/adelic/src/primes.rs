//! Primality testing and factorization for machine-sized integers.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Deterministic Miller-Rabin for u64.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is
/// sufficient for all n < 3.3 * 10^24, well beyond u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

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

/// Prime factorization of |n| by trial division, as (prime, exponent) pairs
/// in increasing prime order. Intended for the magnitudes that show up in
/// diagonal embeddings and character moduli, not cryptographic sizes.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0u32;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Primes dividing a big integer, by trial division. Panics if a prime
/// factor exceeds u64, which cannot happen for inputs produced by this
/// crate's public entry points (numerators and denominators of literals).
pub fn prime_divisors_bigint(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::from(2u64);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.to_u64().expect("prime factor fits in u64"));
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        let step = if d.to_u64() == Some(2) { 1u64 } else { 2 };
        d += BigInt::from(step);
    }
    if n > BigInt::from(1u64) {
        out.push(n.to_u64().expect("prime factor fits in u64"));
    }
    out
}

/// Modular inverse of a mod m for coprime a, m.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    // extended Euclid on i128 to dodge overflow
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "inv_mod of non-unit");
    (t.rem_euclid(m as i128)) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn large_prime_and_composite() {
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 3));
        assert!(is_prime((1u64 << 61) - 1));
    }

    #[test]
    fn factorization() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(97), vec![(97, 1)]);
    }

    #[test]
    fn inverse() {
        for a in 1..23u64 {
            assert_eq!(mul_mod(a, inv_mod(a, 23), 23), 1);
        }
    }

    #[test]
    fn bigint_divisors() {
        let n = BigInt::from(-720i64);
        assert_eq!(prime_divisors_bigint(&n), vec![2, 3, 5]);
        assert_eq!(prime_divisors_bigint(&BigInt::zero()), Vec::<u64>::new());
    }
}
