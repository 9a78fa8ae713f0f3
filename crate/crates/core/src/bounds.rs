//! Covalency bounds and the closed-form analysis of `|mu_2|`.
//!
//! `l0(m) = floor(4 sqrt m) - 2` is the trivial bound: every Cayley graph of
//! `Q_{4m}` with covalency at most `l0` is Ramanujan, and for `l = l0 + 1`
//! some member of the family `S` is not. For the family `S'` (subsets with
//! `l2 > 0`) and prime `m = p`, whether covalency `l0 + 1` is still safe is
//! decided by the window subsets `S^{(l1,l2)}` and their `|mu_2|`.

use std::f64::consts::PI;

use crate::dd::Dd;
use crate::exec::Execution;
use crate::primes::{is_prime, isqrt};
use crate::spectra::{is_ramanujan_with, Trivial, TIE_BAND};
use crate::subset::{check_extremal_profile, CovalencyClass, Family};
use crate::{Error, Result};
use serde::Serialize;

/// Largest `m` accepted by [`exact_ltilde`].
pub const EXACT_MAX_M: u32 = 12;
/// Smallest prime for which the closed-form exceptional test is established.
pub const SCOPE_MIN_P: u64 = 67;
/// `a_{l mod 6}` of the argmax profile.
pub const A_TABLE: [i64; 6] = [0, 2, 4, 0, 2, -2];

/// `l0 = floor(4 sqrt m) - 2 = isqrt(16 m) - 2`.
pub fn trivial_bound(m: u64) -> u64 {
    assert!((1..=u64::MAX / 16).contains(&m), "m = {m} out of range");
    isqrt(16 * m) - 2
}

/// Largest `l` such that every member of `family` at every covalency
/// `1..=l` is Ramanujan, found by exhaustive enumeration.
///
/// For `m = 2` this gives 7, not `l0 = 3`: the only members at covalency 4
/// with `l2 = 0` are bipartite, and their eigenvalue `-|S|` is trivial under
/// the `|lambda| != |S|` convention. With [`Trivial::Degree`] it gives 3.
pub fn exact_ltilde(m: u32, family: Family, exec: Execution) -> Result<u32> {
    exact_ltilde_with(m, family, Trivial::AbsoluteDegree, exec)
}

pub fn exact_ltilde_with(m: u32, family: Family, trivial: Trivial, exec: Execution) -> Result<u32> {
    if m > EXACT_MAX_M {
        return Err(Error::EnumerationCap {
            m,
            cap: EXACT_MAX_M,
        });
    }
    for l in 1..4 * m {
        if !covalency_is_ramanujan(m, l, family, trivial, exec)? {
            return Ok(l - 1);
        }
    }
    Ok(4 * m - 1)
}

/// Whether every member of `family` with covalency `l` is Ramanujan
/// (vacuously true for an empty class).
pub fn covalency_is_ramanujan(
    m: u32,
    l: u32,
    family: Family,
    trivial: Trivial,
    exec: Execution,
) -> Result<bool> {
    let class = CovalencyClass::new(m, l, family)?;
    let masks = class.pair_masks();
    let verdicts = exec.map(&masks, |&p| -> Result<bool> {
        for s in class.with_pair_mask(p) {
            if !is_ramanujan_with(&s, trivial)? {
                return Ok(false);
            }
        }
        Ok(true)
    });
    verdicts.into_iter().try_fold(true, |acc, v| Ok(acc && v?))
}

/// `|mu_2|` of the window subset for an explicit `delta`, in `f64`.
fn window_mu2(m: u64, l1: u64, l2: u64, delta: bool) -> f64 {
    let d = u64::from(delta);
    let m = m as f64;
    let s1 = (PI / m).sin();
    let z = (PI * (l1 + d) as f64 / m - PI / m).sin() / s1 + (1 - d) as f64;
    let w = 2.0 * (PI * l2 as f64 / (2.0 * m)).sin().abs() / s1;
    z.abs() + w
}

fn window_mu2_dd(m: u64, l1: u64, l2: u64, delta: bool) -> Dd {
    let d = u64::from(delta);
    let m = i128::from(m);
    let s1 = Dd::sin_pi(1, m);
    let z = Dd::sin_pi(i128::from(l1 + d) - 1, m) / s1 + Dd::from((1 - d) as f64);
    let w = Dd::sin_pi(i128::from(l2), 2 * m).abs() * 2.0 / s1;
    z.abs() + w
}

/// `|mu_2^{(l1,l2)}|` in closed form, with `delta = (l1 + l2) mod 2`:
///
/// ```text
/// | sin(pi (l1 - 1 + delta) / m) / sin(pi / m) + (1 - delta) |
///     + 2 |sin(pi l2 / (2m))| / sin(pi / m)
/// ```
///
/// Equal to `mu_abs(extremal_subset(m, l1, l2), 2)`.
pub fn mu2_extremal(m: u32, l1: u32, l2: u32) -> Result<f64> {
    check_extremal_profile(m, l1, l2)?;
    Ok(window_mu2(
        u64::from(m),
        u64::from(l1),
        u64::from(l2),
        l1 % 2 == 1,
    ))
}

/// [`mu2_extremal`] in double-double.
pub fn mu2_extremal_dd(m: u32, l1: u32, l2: u32) -> Result<Dd> {
    check_extremal_profile(m, l1, l2)?;
    Ok(window_mu2_dd(
        u64::from(m),
        u64::from(l1),
        u64::from(l2),
        l1 % 2 == 1,
    ))
}

/// Exact maximum of `|mu_2|` over all symmetric subsets with the split
/// `(l1, l2)` (generation not imposed).
///
/// `z_2` and `w_2` depend on disjoint parts of the subset, so both are
/// maximized separately: `z_2` by keeping the pairs with the largest (or the
/// smallest) values of `2 cos(2 pi k / m)`, `|w_2|` by removing a contiguous
/// arc of y-pairs. For `l1 >= 5` this exceeds [`mu2_extremal`], because the
/// pairs `k` and `m - k` contribute equally and the window only removes one
/// of them.
pub fn mu2_split_maximum(m: u32, l1: u32, l2: u32) -> Result<f64> {
    check_extremal_profile(m, l1, l2)?;
    let mm = u64::from(m);
    let delta = l1 % 2 == 1;
    let kept = ((2 * m - l1 - u32::from(delta)) / 2) as usize;
    let mut c: Vec<f64> = (1..mm)
        .map(|k| 2.0 * crate::spectra::cos_pi_ratio(2 * k, mm))
        .collect();
    c.sort_by(f64::total_cmp);
    let d = if delta { 1.0 } else { 0.0 };
    let low = d + crate::spectra::compensated_sum(c[..kept].iter().copied());
    let high = d + crate::spectra::compensated_sum(c[c.len() - kept..].iter().copied());
    let z = low.abs().max(high.abs());
    let arc = u64::from(l2 / 2);
    let w = if m == 1 {
        0.0
    } else {
        2.0 * (PI * arc as f64 / mm as f64).sin().abs() / (PI / mm as f64).sin()
    };
    Ok(z + w)
}

/// The maximizing split `(l1, l2) = ((l + a)/3, (2l - a)/3)` of covalency
/// `l` in the family `S'`, with `a = a_{l mod 6}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArgmaxProfile {
    pub l: u64,
    pub r6: u8,
    pub a: i64,
    pub l1: u64,
    pub l2: u64,
}

pub fn argmax_profile(l: u64) -> Result<ArgmaxProfile> {
    if l < 3 {
        return Err(Error::EmptyCovalency(l as i64));
    }
    let r6 = (l % 6) as u8;
    let a = A_TABLE[r6 as usize];
    let li = l as i64;
    Ok(ArgmaxProfile {
        l,
        r6,
        a,
        l1: ((li + a) / 3) as u64,
        l2: ((2 * li - a) / 3) as u64,
    })
}

/// A signed comparison `|mu_2| - RB`, with the sign taken from a
/// double-double evaluation whenever the `f64` margin is below
/// [`TIE_BAND`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Gap {
    pub mu2: f64,
    pub bound: f64,
    pub gap: f64,
    /// `mu2 > bound`.
    pub exceeds: bool,
    pub extended_precision: bool,
}

/// `|mu_2|` of the window `(l1, l2)` against `RB(l) = 2 sqrt(4m - l - 1)`.
fn window_gap(m: u64, l: u64, l1: u64, l2: u64, delta: bool) -> Gap {
    let mu2 = window_mu2(m, l1, l2, delta);
    let degree = 4 * m - l - 1;
    let bound = 2.0 * (degree as f64).sqrt();
    let gap = mu2 - bound;
    if gap.abs() >= TIE_BAND {
        return Gap {
            mu2,
            bound,
            gap,
            exceeds: gap > 0.0,
            extended_precision: false,
        };
    }
    let g = window_mu2_dd(m, l1, l2, delta) - Dd::from_i128(i128::from(4 * degree)).sqrt();
    Gap {
        mu2,
        bound,
        gap: g.to_f64(),
        exceeds: g.to_f64() > crate::spectra::DD_TOL,
        extended_precision: true,
    }
}

/// The window check at covalency `l0 + 2` used to show `l~' <= l0 + 1`:
/// `|mu_2|` at the argmax profile against `RB(l0 + 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WindowCheck {
    pub m: u64,
    pub l: u64,
    pub profile: ArgmaxProfile,
    pub gap: Gap,
}

pub fn window_check(m: u64) -> Result<WindowCheck> {
    let l = trivial_bound(m) + 2;
    let profile = argmax_profile(l)?;
    check_extremal_profile(
        u32::try_from(m).map_err(|_| Error::OrderOutOfRange(m))?,
        profile.l1 as u32,
        profile.l2 as u32,
    )?;
    let gap = window_gap(m, l, profile.l1, profile.l2, l % 2 == 1);
    Ok(WindowCheck { m, l, profile, gap })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Spectral,
    Arithmetic,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Spectral {
        l1: u64,
        l2: u64,
        mu2: f64,
        bound: f64,
        extended_precision: bool,
    },
    Arithmetic {
        r: u32,
        c: i64,
        k: u64,
        k_threshold: Option<u64>,
    },
}

/// Whether `l~' = l0 + 1` for the prime `p`, with the evidence of the route.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExceptionalVerdict {
    pub p: u64,
    pub l0: u64,
    pub route: Route,
    pub exceptional: bool,
    pub witness: Witness,
}

fn check_scope(p: u64) -> Result<()> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    if p < SCOPE_MIN_P {
        return Err(Error::OutOfTheoremScope(p));
    }
    Ok(())
}

/// The closed-form comparison at covalency `l0 + 1` for prime `p`.
///
/// `delta` in the `|mu_2|` expression is taken as `l0 mod 2`; this is the
/// convention under which the comparison reproduces the published
/// thresholds `k_{r,c}` and agrees with [`crate::families`] on every prime.
fn closed_form_gap(p: u64) -> (ArgmaxProfile, Gap) {
    let l0 = trivial_bound(p);
    let profile = argmax_profile(l0 + 1).expect("l0 + 1 >= 3");
    let gap = window_gap(p, l0 + 1, profile.l1, profile.l2, l0 % 2 == 1);
    (profile, gap)
}

/// `lambda(l0 + 1)`: `|mu_2|` at the argmax profile of covalency `l0 + 1`.
pub fn lambda_at_l0_plus_1(p: u64) -> Result<f64> {
    check_scope(p)?;
    Ok(closed_form_gap(p).1.mu2)
}

/// Spectral route: `p` is exceptional iff `lambda(l0 + 1) <= RB(l0 + 1)`.
pub fn is_exceptional_spectral(p: u64) -> Result<ExceptionalVerdict> {
    check_scope(p)?;
    let (profile, gap) = closed_form_gap(p);
    Ok(ExceptionalVerdict {
        p,
        l0: trivial_bound(p),
        route: Route::Spectral,
        exceptional: !gap.exceeds,
        witness: Witness::Spectral {
            l1: profile.l1,
            l2: profile.l2,
            mu2: gap.mu2,
            bound: gap.bound,
            extended_precision: gap.extended_precision,
        },
    })
}

/// `f_{r,c}(k) = 36 k^2 + 3 (r + 3) k + c`, or `None` on overflow or a
/// negative value.
pub fn family_value(r: u32, c: i64, k: u64) -> Option<u64> {
    let k = i128::from(k);
    let v = 36 * k * k + 3 * (i128::from(r) + 3) * k + i128::from(c);
    u64::try_from(v).ok()
}

/// The interpolation function `F_r` at `t = f_{r,c}(k)`, the closed-form
/// comparison at covalency `l0 + 1` with `l0 = 24k + r` evaluated at a
/// real argument:
///
/// ```text
/// F_r(t) = sin(pi (l1 - 1 + delta) / t) / sin(pi / t) + (1 - delta)
///        + 2 sin(pi l2 / (2t)) / sin(pi / t) - 2 sqrt(4t - (l0 + 1) - 1)
/// ```
///
/// with `(l1, l2)` the argmax profile of `l0 + 1` and `delta = r mod 2`.
pub fn interpolation_f(r: u32, c: i64, k: u64) -> Result<Gap> {
    assert!(r < 24, "r = {r} out of range");
    let t = family_value(r, c, k).ok_or(Error::Overflow { r, c, k })?;
    let l = 24 * k + u64::from(r) + 1;
    let profile = argmax_profile(l)?;
    if 4 * t < l + 1 {
        return Err(Error::Overflow { r, c, k });
    }
    Ok(window_gap(t, l, profile.l1, profile.l2, r % 2 == 1))
}

/// Limit of `k F_r(f_{r,c}(k))`: `(27 (r+3)^2 - 432 c - 256 pi^2) / 1296`.
pub fn asymptotic_coefficient(r: u32, c: i64) -> f64 {
    let q = f64::from(r + 3).powi(2);
    (27.0 * q - 432.0 * c as f64 - 256.0 * PI * PI) / 1296.0
}

/// `ceil((27 (r+3)^2 - 256 pi^2) / 432) = floor((r+3)^2 / 16) - 5`: the
/// largest `c` with a negative asymptotic coefficient is the top of `C_r`
/// minus five.
pub fn ceiling_identity(r: u32) -> (i64, i64) {
    let q = i64::from(r + 3).pow(2);
    let lhs = ((27 * q) as f64 - 256.0 * PI * PI) / 432.0;
    (lhs.ceil() as i64, q / 16 - 5)
}
