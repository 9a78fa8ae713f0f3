//! Deterministic primality below `2^64`, Legendre symbols and a small sieve.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Strong-pseudoprime witness sets, each deterministic below its limit.
/// The last one (Jim Sinclair's) covers every `n < 2^64`.
const WITNESS_SETS: [(u64, &[u64]); 3] = [
    (4_759_123_141, &[2, 7, 61]),
    (3_474_749_660_383, &[2, 3, 5, 7, 11, 13]),
    (
        u64::MAX,
        &[2, 325, 9375, 28178, 450775, 9780504, 1795265022],
    ),
];

#[inline]
fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(n)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let witnesses = WITNESS_SETS
        .iter()
        .find(|(limit, _)| n < *limit)
        .map_or(WITNESS_SETS[2].1, |w| w.1);
    'witness: for &a in witnesses {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Jacobi symbol `(a / n)` for odd positive `n`; equals the Legendre symbol
/// when `n` is prime.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus, got {n}");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(d / p)` for an odd prime `p`.
pub fn legendre(d: i64, p: u64) -> i8 {
    debug_assert!(is_prime(p) && p > 2);
    jacobi(d, p)
}

pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

pub fn is_perfect_square(n: i64) -> bool {
    n >= 0 && {
        let r = (n as u64).isqrt();
        r * r == n as u64
    }
}

/// [`primes_up_to`], memoized per bound.
pub fn primes_up_to_cached(bound: u64) -> Arc<Vec<u64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<u64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("prime cache poisoned").get(&bound) {
        return Arc::clone(p);
    }
    let primes = Arc::new(primes_up_to(bound));
    cache
        .lock()
        .expect("prime cache poisoned")
        .insert(bound, Arc::clone(&primes));
    primes
}

/// All primes `<= bound` (sieve of Eratosthenes over odd numbers).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let half = (bound as usize - 1) / 2; // index i <-> 2i + 1, i >= 1
    let mut composite = vec![false; half + 1];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= bound as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j <= half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2];
    out.extend(
        (1..=half)
            .filter(|&i| !composite[i])
            .map(|i| 2 * i as u64 + 1),
    );
    out
}
