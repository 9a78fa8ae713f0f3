//! The quadratic families `f_{r,c}(k) = 36 k^2 + 3 (r + 3) k + c`.
//!
//! A prime `p >= 67` has `l0(p) = 24k + r` for unique `k >= 1` and
//! `0 <= r <= 23`, and `p = f_{r,c}(k)` with `c = p - 36 k^2 - 3 (r+3) k`.
//! It is exceptional exactly when `c` belongs to `C'_r` and `k` has reached
//! the family threshold `k_{r,c}`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::bounds::{
    family_value, interpolation_f, trivial_bound, ExceptionalVerdict, Route, Witness, SCOPE_MIN_P,
};
use crate::exec::Execution;
use crate::primes::{is_perfect_square, is_prime, isqrt, legendre, primes_up_to_cached};
use crate::subset::gcd;
use crate::{Error, Result};
use serde::Serialize;

/// How far [`derive_k_threshold`] checks that the threshold condition keeps
/// holding.
pub const THRESHOLD_HORIZON: u64 = 10_000;
pub const DEFAULT_PRIME_BOUND: u64 = 10_000_000;
/// Number of leading primes kept by a scan.
pub const HEAD_LEN: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimeFamily {
    pub r: u32,
    pub c: i64,
    /// `(r + 3)^2 - 16 c`; the discriminant of `f_{r,c}` is nine times this.
    pub discriminant_reduced: i64,
    pub k_threshold: u64,
}

impl PrimeFamily {
    pub fn new(r: u32, c: i64) -> Result<Self> {
        if !in_c_prime(r, c) {
            return Err(Error::NotAFamily { r, c });
        }
        Ok(Self {
            r,
            c,
            discriminant_reduced: reduced_discriminant(r, c),
            k_threshold: derive_k_threshold(r, c)?,
        })
    }

    pub fn value(&self, k: u64) -> Option<u64> {
        family_value(self.r, self.c, k)
    }
}

pub fn reduced_discriminant(r: u32, c: i64) -> i64 {
    i64::from(r + 3).pow(2) - 16 * c
}

/// `C_r = {floor((r+3)^2/16) + s : -5 <= s <= 0}` and the subset `C'_r` of
/// constants for which `f_{r,c}` is irreducible over `Z`.
pub fn candidate_constants(r: u32) -> (Vec<i64>, Vec<i64>) {
    assert!(r < 24, "r = {r} out of range");
    let top = i64::from(r + 3).pow(2) / 16;
    let all: Vec<i64> = (top - 5..=top).collect();
    let irreducible = all
        .iter()
        .copied()
        .filter(|&c| is_irreducible(r, c))
        .collect();
    (all, irreducible)
}

/// Primitive with a non-square discriminant.
fn is_irreducible(r: u32, c: i64) -> bool {
    let b = 3 * u64::from(r + 3);
    gcd(gcd(36, b), c.unsigned_abs()) == 1 && !is_perfect_square(reduced_discriminant(r, c))
}

pub fn in_c_prime(r: u32, c: i64) -> bool {
    r < 24 && candidate_constants(r).1.contains(&c)
}

/// Smallest `k >= 1` from which on every `k' <= THRESHOLD_HORIZON` has
/// `F_r(f_{r,c}(k')) < 0` and `f_{r,c}(k')` is not a prime below 67.
///
/// Errors if `F_r` turns nonnegative again after having been negative.
pub fn derive_k_threshold(r: u32, c: i64) -> Result<u64> {
    if !in_c_prime(r, c) {
        return Err(Error::NotAFamily { r, c });
    }
    let mut threshold = 1;
    let mut seen_negative = false;
    for k in 1..=THRESHOLD_HORIZON {
        let f = family_value(r, c, k).ok_or(Error::Overflow { r, c, k })?;
        let exceeds = interpolation_f(r, c, k)?.exceeds;
        if exceeds && seen_negative {
            return Err(Error::ThresholdInconsistent { r, c, k });
        }
        seen_negative |= !exceeds;
        if exceeds || (f < SCOPE_MIN_P && is_prime(f)) {
            threshold = k + 1;
        }
    }
    Ok(threshold)
}

/// The 54 families in `(r, c)` order, thresholds derived once.
pub fn all_families() -> &'static [PrimeFamily] {
    static FAMILIES: OnceLock<Vec<PrimeFamily>> = OnceLock::new();
    FAMILIES.get_or_init(|| {
        (0..24)
            .flat_map(|r| candidate_constants(r).1.into_iter().map(move |c| (r, c)))
            .map(|(r, c)| PrimeFamily::new(r, c).expect("derived threshold"))
            .collect()
    })
}

pub fn family(r: u32, c: i64) -> Result<PrimeFamily> {
    all_families()
        .iter()
        .find(|f| f.r == r && f.c == c)
        .copied()
        .ok_or(Error::NotAFamily { r, c })
}

/// `(r, c, k)` with `l0(p) = 24k + r` and `p = f_{r,c}(k)`.
pub fn decompose(p: u64) -> (u32, i64, u64) {
    let l0 = trivial_bound(p);
    let (k, r) = (l0 / 24, (l0 % 24) as u32);
    let ki = i128::from(k);
    let c = i128::from(p) - 36 * ki * ki - 3 * (i128::from(r) + 3) * ki;
    (r, c as i64, k)
}

/// Arithmetic route: `p` is exceptional iff `c ∈ C'_r` and `k >= k_{r,c}`.
pub fn is_exceptional_arithmetic(p: u64) -> Result<ExceptionalVerdict> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < SCOPE_MIN_P {
        return Err(Error::OutOfTheoremScope(p));
    }
    let (r, c, k) = decompose(p);
    let threshold = family(r, c).ok().map(|f| f.k_threshold);
    Ok(ExceptionalVerdict {
        p,
        l0: trivial_bound(p),
        route: Route::Arithmetic,
        exceptional: threshold.is_some_and(|t| k >= t),
        witness: Witness::Arithmetic {
            r,
            c,
            k,
            k_threshold: threshold,
        },
    })
}

/// Primes `p = f_{r,c}(k) <= x_max` with `k >= k_min` and `l0(p) = 24k + r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyScan {
    pub r: u32,
    pub c: i64,
    pub k_min: u64,
    pub x_max: u64,
    pub first_primes: Vec<u64>,
    pub count: u64,
    /// `k` where `f_{r,c}(k)` is prime but `l0` falls outside `24k + r`.
    pub off_interval: Vec<u64>,
}

#[derive(Default)]
struct Chunk {
    head: Vec<u64>,
    count: u64,
    off_interval: Vec<u64>,
}

/// Largest `k` with `f_{r,c}(k) <= x_max` (0 if none).
fn last_k(r: u32, c: i64, x_max: u64) -> u64 {
    let mut k = isqrt(x_max / 36 + 1) + 1;
    while k > 0 && family_value(r, c, k).is_none_or(|v| v > x_max) {
        k -= 1;
    }
    k
}

pub fn enumerate_family_primes(
    r: u32,
    c: i64,
    x_max: u64,
    k_min: u64,
    exec: Execution,
) -> Result<FamilyScan> {
    if r >= 24 {
        return Err(Error::NotAFamily { r, c });
    }
    if x_max > 1 << 63 {
        return Err(Error::Overflow { r, c, k: u64::MAX });
    }
    let k_end = last_k(r, c, x_max) + 1;
    let chunks = exec.map_chunks(k_min..k_end.max(k_min), 4096, |ks| {
        let mut out = Chunk::default();
        for k in ks {
            let Some(p) = family_value(r, c, k) else {
                continue;
            };
            if !is_prime(p) {
                continue;
            }
            if trivial_bound(p) != 24 * k + u64::from(r) {
                out.off_interval.push(k);
                continue;
            }
            out.count += 1;
            if out.head.len() < HEAD_LEN {
                out.head.push(p);
            }
        }
        out
    });
    let mut scan = FamilyScan {
        r,
        c,
        k_min,
        x_max,
        first_primes: Vec::new(),
        count: 0,
        off_interval: Vec::new(),
    };
    for ch in chunks {
        scan.count += ch.count;
        let room = HEAD_LEN - scan.first_primes.len();
        scan.first_primes.extend(ch.head.into_iter().take(room));
        scan.off_interval.extend(ch.off_interval);
    }
    Ok(scan)
}

/// Truncated Hardy-Littlewood constant
/// `C(f_{r,c}) = prod_{5 <= p <= bound} (1 - (D/p) / (p - 1))` with
/// `D = (r+3)^2 - 16c`.
///
/// Memoized per `(D, prime_bound)`; families sharing `D` share the value.
pub fn hl_constant(r: u32, c: i64, prime_bound: u64) -> f64 {
    static CACHE: OnceLock<Mutex<HashMap<(i64, u64), f64>>> = OnceLock::new();
    let d = reduced_discriminant(r, c);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(&v) = cache
        .lock()
        .expect("constant cache poisoned")
        .get(&(d, prime_bound))
    {
        return v;
    }
    let v = euler_product(d, prime_bound);
    cache
        .lock()
        .expect("constant cache poisoned")
        .insert((d, prime_bound), v);
    v
}

fn euler_product(d: i64, prime_bound: u64) -> f64 {
    primes_up_to_cached(prime_bound)
        .iter()
        .filter(|&&p| p >= 5)
        .map(|&p| 1.0 - f64::from(legendre(d, p)) / (p - 1) as f64)
        .product()
}

/// `2 delta_r`: 4 for even `r`, 2 for odd `r`.
pub fn density_divisor(r: u32) -> f64 {
    if r % 2 == 0 {
        4.0
    } else {
        2.0
    }
}

/// `C(f_{r,c}) / (2 delta_r)`, the conjectured coefficient of
/// `sqrt(x) / log x` in the count of family primes up to `x`.
pub fn hl_density(r: u32, c: i64, prime_bound: u64) -> f64 {
    hl_constant(r, c, prime_bound) / density_divisor(r)
}

/// Conditions for the Hardy-Littlewood prime conjecture on `a x^2 + b x + c`:
/// `a > 0`, `gcd(a, b, c) = 1`, `a + b` and `c` not both even, and
/// `b^2 - 4ac` not a perfect square.
pub fn hardy_littlewood_admissible(a: i64, b: i64, c: i64) -> bool {
    let g = gcd(gcd(a.unsigned_abs(), b.unsigned_abs()), c.unsigned_abs());
    let disc = i128::from(b) * i128::from(b) - 4 * i128::from(a) * i128::from(c);
    let square = disc >= 0 && {
        let r = (disc as u128).isqrt();
        r * r == disc as u128
    };
    a > 0 && g == 1 && !((a + b) % 2 == 0 && c % 2 == 0) && !square
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyReport {
    pub family: PrimeFamily,
    pub scan: FamilyScan,
    pub prime_bound: u64,
    pub hl_constant: f64,
    pub hl_density: f64,
}

/// Scan from `k_{r,c}` plus the Hardy-Littlewood figures for one family.
pub fn family_report(
    f: PrimeFamily,
    x_max: u64,
    prime_bound: u64,
    exec: Execution,
) -> Result<FamilyReport> {
    let scan = enumerate_family_primes(f.r, f.c, x_max, f.k_threshold, exec)?;
    let hl = hl_constant(f.r, f.c, prime_bound);
    Ok(FamilyReport {
        family: f,
        scan,
        prime_bound,
        hl_constant: hl,
        hl_density: hl / density_divisor(f.r),
    })
}

/// [`family_report`] for each of `families`, in the given order.
pub fn table2(
    families: &[PrimeFamily],
    x_max: u64,
    prime_bound: u64,
    exec: Execution,
) -> Result<Vec<FamilyReport>> {
    primes_up_to_cached(prime_bound);
    exec.map(families, |&f| family_report(f, x_max, prime_bound, exec))
        .into_iter()
        .collect()
}
