//! Spectra of `X(S)` from the character table of `Q_{4m}`.
//!
//! The four degree-one characters give integer eigenvalues `lambda_1..4`;
//! each two-dimensional representation `rho_j` (`1 <= j <= m-1`) gives the
//! pair `mu_j^± = z_j ± |w_j|`, each with multiplicity two, where
//!
//! ```text
//! z_j = sum_{k1 in pairs} 2 cos(pi j k1 / m) + delta (-1)^j
//! w_j = (1 + (-1)^j) sum_{k2 in ypairs} exp(i pi j k2 / m)
//! ```

use crate::dd::Dd;
use crate::subset::CayleySubset;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::Serialize;

/// Values closer than this are merged into one multiplicity group, and an
/// eigenvalue within it of `±|S|` counts as trivial.
pub const GROUP_TOL: f64 = 1e-9;
/// Ramanujan comparisons closer than this are redone in double-double.
pub const TIE_BAND: f64 = 1e-6;
/// Tolerance for double-double comparisons; exact ties are Ramanujan.
pub const DD_TOL: f64 = 1e-24;

/// Neumaier compensated sum.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `cos(pi * n / m)` with `n` reduced exactly modulo `2m` first.
#[inline]
pub(crate) fn cos_pi_ratio(n: u64, m: u64) -> f64 {
    let r = n % (2 * m);
    (std::f64::consts::PI * r as f64 / m as f64).cos()
}

#[inline]
pub(crate) fn sin_pi_ratio(n: u64, m: u64) -> f64 {
    let r = n % (2 * m);
    (std::f64::consts::PI * r as f64 / m as f64).sin()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoDimBlock {
    pub j: u32,
    pub z: f64,
    pub w: Complex64,
    pub mu_plus: f64,
    pub mu_minus: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenData {
    pub lambda: [i64; 4],
    pub blocks: Vec<TwoDimBlock>,
}

/// `(lambda_1, lambda_2, lambda_3, lambda_4)`.
pub fn one_dim_eigenvalues(s: &CayleySubset) -> [i64; 4] {
    let sc = s.sigma_counts();
    let (se1, so1, se2, so2) = (
        i64::from(sc.se1),
        i64::from(sc.so1),
        i64::from(sc.se2),
        i64::from(sc.so2),
    );
    let d = i64::from(s.delta());
    let lambda1 = 2 * (se1 + so1) + d + 2 * (se2 + so2);
    let lambda2 = 2 * (se1 + so1) + d - 2 * (se2 + so2);
    if s.m() % 2 == 1 {
        let l3 = 2 * (se1 - so1) - d;
        [lambda1, lambda2, l3, l3]
    } else {
        let base = 2 * (se1 - so1) + d;
        [
            lambda1,
            lambda2,
            base + 2 * (se2 - so2),
            base - 2 * (se2 - so2),
        ]
    }
}

fn z_value(s: &CayleySubset, j: u32) -> f64 {
    let m = u64::from(s.m());
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    let terms = s
        .pairs()
        .map(|k| 2.0 * cos_pi_ratio(u64::from(j) * u64::from(k), m));
    compensated_sum(terms) + if s.delta() { sign } else { 0.0 }
}

fn w_value(s: &CayleySubset, j: u32) -> Complex64 {
    if j % 2 == 1 {
        return Complex64::new(0.0, 0.0);
    }
    let m = u64::from(s.m());
    let jk = |k: u32| u64::from(j) * u64::from(k);
    let re = compensated_sum(s.ypairs().map(|k| cos_pi_ratio(jk(k), m)));
    let im = compensated_sum(s.ypairs().map(|k| sin_pi_ratio(jk(k), m)));
    Complex64::new(2.0 * re, 2.0 * im)
}

/// The `rho_j` block for `1 <= j <= m-1`.
pub fn two_dim_eigenvalues(s: &CayleySubset, j: u32) -> Result<TwoDimBlock> {
    if j == 0 || j >= s.m() {
        return Err(Error::IndexOutOfRange {
            field: "j",
            index: u64::from(j),
            m: s.m(),
        });
    }
    let z = z_value(s, j);
    let w = w_value(s, j);
    let a = w.norm();
    Ok(TwoDimBlock {
        j,
        z,
        w,
        mu_plus: z + a,
        mu_minus: z - a,
    })
}

pub fn eigen_data(s: &CayleySubset) -> EigenData {
    let blocks = (1..s.m())
        .map(|j| two_dim_eigenvalues(s, j).expect("j in range"))
        .collect();
    EigenData {
        lambda: one_dim_eigenvalues(s),
        blocks,
    }
}

/// `|mu_j| = |z_j| + |w_j| = max(|mu_j^+|, |mu_j^-|)`.
pub fn mu_abs(s: &CayleySubset, j: u32) -> Result<f64> {
    let b = two_dim_eigenvalues(s, j)?;
    Ok(b.z.abs() + b.w.norm())
}

/// Eigenvalue multiset. `values` keeps every eigenvalue (sorted
/// descending); `groups` merges values within [`GROUP_TOL`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub groups: Vec<(f64, usize)>,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let mut groups: Vec<(f64, usize)> = Vec::new();
        let mut start = 0;
        for i in 0..values.len() {
            if values[start] - values[i] > GROUP_TOL {
                groups.push((group_value(&values[start..i]), i - start));
                start = i;
            }
        }
        if !values.is_empty() {
            groups.push((group_value(&values[start..]), values.len() - start));
        }
        Self { values, groups }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn trace(&self) -> f64 {
        compensated_sum(self.values.iter().copied())
    }

    pub fn second_moment(&self) -> f64 {
        compensated_sum(self.values.iter().map(|v| v * v))
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }
}

fn group_value(vals: &[f64]) -> f64 {
    let mean = compensated_sum(vals.iter().copied()) / vals.len() as f64;
    // snap near-integers so that printed groups read cleanly
    let r = mean.round();
    if (mean - r).abs() < GROUP_TOL {
        r + 0.0
    } else {
        mean
    }
}

pub fn full_spectrum(s: &CayleySubset) -> Spectrum {
    let data = eigen_data(s);
    let mut values: Vec<f64> = data.lambda.iter().map(|&v| v as f64).collect();
    for b in &data.blocks {
        values.extend([b.mu_plus, b.mu_plus, b.mu_minus, b.mu_minus]);
    }
    Spectrum::from_values(values)
}

pub fn ramanujan_bound(s: &CayleySubset) -> f64 {
    let k = s.size() as f64;
    2.0 * (k - 1.0).max(0.0).sqrt()
}

/// `lambda(S)`: the largest `|lambda|` over eigenvalues with `|lambda| != |S|`.
pub fn lambda_max_nontrivial(s: &CayleySubset) -> Result<f64> {
    let data = eigen_data(s);
    let k = s.size() as f64;
    candidates(&data)
        .map(|(_, v)| v.abs())
        .filter(|a| (a - k).abs() > GROUP_TOL)
        .fold(None, |acc: Option<f64>, a| {
            Some(acc.map_or(a, |b| b.max(a)))
        })
        .ok_or(Error::NoNontrivialEigenvalue(s.size()))
}

/// Where an eigenvalue comes from, so it can be recomputed in double-double.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Source {
    Linear(usize),
    Plus(u32),
    Minus(u32),
}

fn candidates(data: &EigenData) -> impl Iterator<Item = (Source, f64)> + '_ {
    let linear = data
        .lambda
        .iter()
        .enumerate()
        .map(|(i, &v)| (Source::Linear(i), v as f64));
    let blocks = data.blocks.iter().flat_map(|b| {
        [
            (Source::Plus(b.j), b.mu_plus),
            (Source::Minus(b.j), b.mu_minus),
        ]
    });
    linear.chain(blocks)
}

fn z_dd(s: &CayleySubset, j: u32) -> Dd {
    let m = i128::from(s.m());
    let mut acc = Dd::ZERO;
    for k in s.pairs() {
        acc = acc + Dd::cos_pi(i128::from(j) * i128::from(k), m) * 2.0;
    }
    if s.delta() {
        acc = acc + Dd::from(if j % 2 == 0 { 1.0 } else { -1.0 });
    }
    acc
}

fn w_abs_dd(s: &CayleySubset, j: u32) -> Dd {
    if j % 2 == 1 {
        return Dd::ZERO;
    }
    let m = i128::from(s.m());
    let (mut re, mut im) = (Dd::ZERO, Dd::ZERO);
    for k in s.ypairs() {
        let n = i128::from(j) * i128::from(k);
        re = re + Dd::cos_pi(n, m);
        im = im + Dd::sin_pi(n, m);
    }
    (re * re + im * im).sqrt() * 2.0
}

/// Which eigenvalues count as trivial when forming `lambda(S)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trivial {
    /// `|lambda| = |S|`: both `|S|` and, for bipartite graphs, `-|S|`.
    #[default]
    AbsoluteDegree,
    /// Only `lambda = |S|`; a bipartite `-|S|` is kept.
    Degree,
}

impl Trivial {
    fn excludes(self, v: f64, k: f64) -> bool {
        match self {
            Trivial::AbsoluteDegree => (v.abs() - k).abs() <= GROUP_TOL,
            Trivial::Degree => (v - k).abs() <= GROUP_TOL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RamanujanVerdict {
    pub lambda: f64,
    pub bound: f64,
    pub ramanujan: bool,
    /// Whether a near tie forced a double-double re-evaluation.
    pub extended_precision: bool,
}

/// Decides `lambda(S) <= 2 sqrt(|S| - 1)`.
///
/// Integer eigenvalues are compared exactly (`lambda^2 <= 4(|S| - 1)`).
/// Others are compared in `f64` with tolerance [`GROUP_TOL`] unless they lie
/// within [`TIE_BAND`] of the bound, in which case they are recomputed in
/// double-double.
pub fn ramanujan_verdict(s: &CayleySubset) -> Result<RamanujanVerdict> {
    ramanujan_verdict_with(s, Trivial::AbsoluteDegree)
}

/// [`ramanujan_verdict`] under an explicit triviality convention.
pub fn ramanujan_verdict_with(s: &CayleySubset, trivial: Trivial) -> Result<RamanujanVerdict> {
    let data = eigen_data(s);
    let k = s.size() as i64;
    let kf = k as f64;
    let bound = ramanujan_bound(s);
    let bound_dd = Dd::from(4 * (k - 1).max(0)).sqrt();
    let mut lambda: Option<f64> = None;
    let mut ok = true;
    let mut extended = false;
    for (src, v) in candidates(&data) {
        let a = v.abs();
        if trivial.excludes(v, kf) {
            continue;
        }
        if let Source::Linear(i) = src {
            let li = data.lambda[i].abs();
            ok &= li * li <= 4 * (k - 1);
        } else {
            if (a - bound).abs() < TIE_BAND {
                extended = true;
                let value = match src {
                    Source::Plus(j) => z_dd(s, j) + w_abs_dd(s, j),
                    Source::Minus(j) => z_dd(s, j) - w_abs_dd(s, j),
                    Source::Linear(_) => unreachable!(),
                };
                ok &= (value.abs() - bound_dd).to_f64() <= DD_TOL;
            } else {
                ok &= a <= bound + GROUP_TOL;
            }
        }
        lambda = Some(lambda.map_or(a, |b: f64| b.max(a)));
    }
    let lambda = lambda.ok_or(Error::NoNontrivialEigenvalue(s.size()))?;
    Ok(RamanujanVerdict {
        lambda,
        bound,
        ramanujan: ok,
        extended_precision: extended,
    })
}

pub fn is_ramanujan(s: &CayleySubset) -> Result<bool> {
    Ok(ramanujan_verdict(s)?.ramanujan)
}

pub fn is_ramanujan_with(s: &CayleySubset, trivial: Trivial) -> Result<bool> {
    Ok(ramanujan_verdict_with(s, trivial)?.ramanujan)
}
