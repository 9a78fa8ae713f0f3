//! Symmetric subsets of `Q_{4m}` in structural form.
//!
//! A symmetric subset `S` not containing the identity splits as
//! `S1 = S ∩ <x>` and `S2 = S ∩ <x>y`, and each half is a disjoint union of
//! inverse-closed blocks:
//!
//! * `{x^k, x^{2m-k}}` for `1 <= k <= m-1` (the "pairs"),
//! * `{x^m}` (the flag `delta`),
//! * `{x^k y, x^{m+k} y}` for `0 <= k <= m-1` (the "y-pairs").
//!
//! Storing the block bitsets instead of raw element sets makes the profile
//! `(l, l1, l2, delta)` and the parity counts constant-time lookups.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::group::{Element, QuaternionGroup};
use crate::{Error, Result};

/// Largest `m` accepted by the exhaustive enumerators (masks live in `u64`).
pub const ENUM_MAX_M: u32 = 24;

/// The two families of Cayley subsets: all of them, or those with `l2 != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    S,
    SPrime,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::S => "s",
            Family::SPrime => "sprime",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" | "S" => Ok(Family::S),
            "sprime" | "s'" | "S'" => Ok(Family::SPrime),
            other => Err(Error::SubsetLiteral(format!("unknown family {other:?}"))),
        }
    }
}

/// Covalency bookkeeping: `l = 4m - |S| = l1 + l2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CovalencyProfile {
    pub l: u32,
    pub l1: u32,
    pub l2: u32,
    pub delta: bool,
}

/// Parity counts of the block representatives: pairs `k1` in `[1, m-1]`
/// and y-pairs `k2` in `[0, m-1]`, split by the parity of the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SigmaCounts {
    pub se1: u32,
    pub so1: u32,
    pub se2: u32,
    pub so2: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CayleySubset {
    m: u32,
    pairs: FixedBitSet,
    delta: bool,
    ypairs: FixedBitSet,
}

impl CayleySubset {
    /// Builds a subset from pair indices `k1 ∈ [1, m-1]`, the `x^m` flag and
    /// y-pair indices `k2 ∈ [0, m-1]`. Duplicated indices are rejected.
    pub fn new(
        m: u32,
        pairs: impl IntoIterator<Item = u32>,
        delta: bool,
        ypairs: impl IntoIterator<Item = u32>,
    ) -> Result<Self> {
        QuaternionGroup::new(m)?;
        let mut pair_bits = FixedBitSet::with_capacity(m as usize);
        for k in pairs {
            if k == 0 || k >= m {
                return Err(Error::IndexOutOfRange {
                    field: "pairs",
                    index: u64::from(k),
                    m,
                });
            }
            if pair_bits.put(k as usize) {
                return Err(Error::SubsetLiteral(format!("duplicate pair index {k}")));
            }
        }
        let mut ypair_bits = FixedBitSet::with_capacity(m as usize);
        for k in ypairs {
            if k >= m {
                return Err(Error::IndexOutOfRange {
                    field: "ypairs",
                    index: u64::from(k),
                    m,
                });
            }
            if ypair_bits.put(k as usize) {
                return Err(Error::SubsetLiteral(format!("duplicate ypair index {k}")));
            }
        }
        Ok(Self {
            m,
            pairs: pair_bits,
            delta,
            ypairs: ypair_bits,
        })
    }

    /// `Q_{4m} \ {1}`: the complete-graph subset.
    pub fn full(m: u32) -> Result<Self> {
        Self::new(m, 1..m, true, 0..m)
    }

    /// Mask form used by the enumerators: bit `i` of `pair_mask` is the pair
    /// `k1 = i + 1`, bit `i` of `ypair_mask` is the y-pair `k2 = i`.
    pub fn from_masks(m: u32, pair_mask: u64, delta: bool, ypair_mask: u64) -> Result<Self> {
        if m > ENUM_MAX_M {
            return Err(Error::EnumerationCap { m, cap: ENUM_MAX_M });
        }
        if m == 0 || pair_mask >> (m - 1) != 0 || ypair_mask >> m != 0 {
            return Err(Error::SubsetLiteral(format!(
                "masks out of range for m = {m}"
            )));
        }
        Self::new(m, bits(pair_mask).map(|i| i + 1), delta, bits(ypair_mask))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn group(&self) -> QuaternionGroup {
        QuaternionGroup::new(self.m).expect("validated at construction")
    }

    pub fn delta(&self) -> bool {
        self.delta
    }

    /// Pair representatives `k1`, ascending.
    pub fn pairs(&self) -> impl Iterator<Item = u32> + '_ {
        self.pairs.ones().map(|i| i as u32)
    }

    /// Y-pair representatives `k2`, ascending.
    pub fn ypairs(&self) -> impl Iterator<Item = u32> + '_ {
        self.ypairs.ones().map(|i| i as u32)
    }

    pub fn contains_pair(&self, k1: u32) -> bool {
        self.pairs.contains(k1 as usize)
    }

    pub fn contains_ypair(&self, k2: u32) -> bool {
        self.ypairs.contains(k2 as usize)
    }

    /// `|S|`, the degree of the Cayley graph.
    pub fn size(&self) -> usize {
        2 * self.pairs.count_ones(..) + usize::from(self.delta) + 2 * self.ypairs.count_ones(..)
    }

    /// The explicit element set, sorted.
    pub fn elements(&self) -> Vec<Element> {
        let g = self.group();
        let m = i64::from(self.m);
        let mut out = Vec::with_capacity(self.size());
        for k in self.pairs() {
            let k = i64::from(k);
            out.push(g.x_pow(k));
            out.push(g.x_pow(2 * m - k));
        }
        if self.delta {
            out.push(g.x_pow(m));
        }
        for k in self.ypairs() {
            let k = i64::from(k);
            out.push(g.x_pow_y(k));
            out.push(g.x_pow_y(m + k));
        }
        out.sort();
        out
    }

    pub fn profile(&self) -> CovalencyProfile {
        let two_m = 2 * self.m;
        let l1 = two_m - (2 * self.pairs.count_ones(..) as u32 + u32::from(self.delta));
        let l2 = two_m - 2 * self.ypairs.count_ones(..) as u32;
        CovalencyProfile {
            l: l1 + l2,
            l1,
            l2,
            delta: self.delta,
        }
    }

    pub fn sigma_counts(&self) -> SigmaCounts {
        let (mut se1, mut so1, mut se2, mut so2) = (0, 0, 0, 0);
        for k in self.pairs() {
            if k % 2 == 0 {
                se1 += 1
            } else {
                so1 += 1
            }
        }
        for k in self.ypairs() {
            if k % 2 == 0 {
                se2 += 1
            } else {
                so2 += 1
            }
        }
        SigmaCounts { se1, so1, se2, so2 }
    }

    /// Generation test by Schreier generators of `<S> ∩ <x>`.
    ///
    /// With a y-element `t` in `S`, `<S> ∩ <x>` is generated by the pair
    /// exponents, `x^m`, and `x^{a-b}` for y-exponents `a`, `b`; so `S`
    /// generates iff `S2` is non-empty and the gcd of those exponents with
    /// `2m` is 1. Runs in `O(|S|)`; [`Self::generates_by_closure`] is the
    /// breadth-first reference.
    pub fn generates(&self) -> bool {
        let mut ys = self.ypairs();
        let Some(first) = ys.next() else {
            return false;
        };
        let mut g = u64::from(self.m);
        for k in self.pairs() {
            g = gcd(g, u64::from(k));
        }
        for k in ys {
            g = gcd(g, u64::from(k - first));
        }
        g == 1
    }

    pub fn generates_by_closure(&self) -> bool {
        self.group().generates(&self.elements())
    }

    pub fn is_member(&self, family: Family) -> bool {
        self.generates() && (family == Family::S || self.profile().l2 != 0)
    }
}

impl fmt::Display for CayleySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |it: &mut dyn Iterator<Item = u32>| {
            it.map(|k| k.to_string()).collect::<Vec<_>>().join(",")
        };
        write!(
            f,
            "m={};pairs={};delta={};ypairs={}",
            self.m,
            join(&mut self.pairs()),
            u8::from(self.delta),
            join(&mut self.ypairs())
        )
    }
}

impl FromStr for CayleySubset {
    type Err = Error;

    /// Parses `m=<int>;pairs=<list>;delta=<0|1>;ypairs=<list>` with keys in
    /// exactly that order and comma-separated decimal lists (possibly empty).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::SubsetLiteral(msg);
        let fields: Vec<&str> = s.split(';').collect();
        let keys = ["m", "pairs", "delta", "ypairs"];
        if fields.len() != keys.len() {
            return Err(bad(format!(
                "expected 4 ';'-separated fields, found {}",
                fields.len()
            )));
        }
        let mut values = [""; 4];
        for (i, (field, key)) in fields.iter().zip(keys).enumerate() {
            values[i] = field
                .strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .ok_or_else(|| {
                    bad(format!(
                        "field {} must be `{key}=...`, found {field:?}",
                        i + 1
                    ))
                })?;
        }
        let int = |v: &str| -> Result<u32> {
            if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad(format!("not a decimal integer: {v:?}")));
            }
            v.parse()
                .map_err(|_| bad(format!("integer out of range: {v:?}")))
        };
        let list = |v: &str| -> Result<Vec<u32>> {
            if v.is_empty() {
                Ok(Vec::new())
            } else {
                v.split(',').map(int).collect()
            }
        };
        let m = int(values[0])?;
        let pairs = list(values[1])?;
        let delta = match values[2] {
            "0" => false,
            "1" => true,
            other => return Err(bad(format!("delta must be 0 or 1, found {other:?}"))),
        };
        let ypairs = list(values[3])?;
        CayleySubset::new(m, pairs, delta, ypairs)
    }
}

/// Admissible splits `(l1, l2)` of covalency `l`: `0 < l1 <= 2m`,
/// `l1 ≡ l (mod 2)`, `0 <= l2 < 2m` even (`l2 > 0` for [`Family::SPrime`]).
/// Listed by increasing `l2`.
pub fn admissible_splits(m: u32, l: u32, family: Family) -> Vec<(u32, u32)> {
    let two_m = 2 * m;
    let min_l2 = if family == Family::SPrime { 2 } else { 0 };
    (min_l2..two_m)
        .step_by(2)
        .filter(|&l2| l2 < l && l - l2 <= two_m)
        .map(|l2| (l - l2, l2))
        .collect()
}

/// The window subset `S^{(l1,l2)}`: `<x>` minus `{1, x^{±1}, ..., x^{±w}}`
/// with `w = (l1 - 2 + delta)/2` (and minus `x^m` when `delta = 0`), and
/// `<x>y` minus `{x^k y, x^{m+k} y : 0 <= k < l2/2}`. `delta` is the parity
/// of `l1 + l2`.
pub fn extremal_subset(m: u32, l1: u32, l2: u32) -> Result<CayleySubset> {
    check_extremal_profile(m, l1, l2)?;
    let delta = l1 % 2 == 1;
    let window = (l1 + u32::from(delta) - 2) / 2;
    CayleySubset::new(m, window + 1..m, delta, l2 / 2..m)
}

pub(crate) fn check_extremal_profile(m: u32, l1: u32, l2: u32) -> Result<()> {
    let err = |reason| Error::InadmissibleProfile {
        m: u64::from(m),
        l1: i64::from(l1),
        l2: i64::from(l2),
        reason,
    };
    if m == 0 {
        return Err(Error::OrderOutOfRange(0));
    }
    if l1 == 0 {
        return Err(err("l1 must be positive"));
    }
    if l2 == 0 || l2 % 2 != 0 {
        return Err(err("l2 must be positive and even"));
    }
    if l2 >= 2 * m || l1 > 2 * m {
        return Err(err("l1 <= 2m and l2 < 2m required"));
    }
    let delta = l1 % 2;
    if (l1 + delta - 2) / 2 > m - 1 || l2 / 2 > m {
        return Err(err("removal windows do not fit in the group"));
    }
    Ok(())
}

/// Enumerates the members of a family with covalency `l` for small `m`.
///
/// The stream is ordered lexicographically by `(pair mask, ypair mask)`
/// read as integers; `delta = l mod 2` is fixed for the whole class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CovalencyClass {
    m: u32,
    l: u32,
    family: Family,
}

impl CovalencyClass {
    pub fn new(m: u32, l: u32, family: Family) -> Result<Self> {
        QuaternionGroup::new(m)?;
        if m > ENUM_MAX_M {
            return Err(Error::EnumerationCap { m, cap: ENUM_MAX_M });
        }
        Ok(Self { m, l, family })
    }

    pub fn delta(&self) -> bool {
        self.l % 2 == 1
    }

    /// Y-pair popcount demanded by a pair mask, or `None` when the mask
    /// cannot belong to this class.
    fn ypair_count(&self, pair_mask: u64) -> Option<u32> {
        let two_m = 2 * self.m;
        let used = 2 * pair_mask.count_ones() + u32::from(self.delta());
        let l1 = two_m.checked_sub(used)?;
        let l2 = self.l.checked_sub(l1)?;
        let ok = l1 > 0 && l2 < two_m && l2 % 2 == 0 && (self.family == Family::S || l2 > 0);
        ok.then(|| self.m - l2 / 2)
    }

    /// Pair masks that occur in the class, ascending.
    pub fn pair_masks(&self) -> Vec<u64> {
        if self.l == 0 || self.l >= 4 * self.m {
            return Vec::new();
        }
        (0..1u64 << (self.m - 1))
            .filter(|&p| self.ypair_count(p).is_some())
            .collect()
    }

    /// Members of the class sharing the given pair mask.
    pub fn with_pair_mask(&self, pair_mask: u64) -> impl Iterator<Item = CayleySubset> + '_ {
        let count = self.ypair_count(pair_mask);
        count
            .into_iter()
            .flat_map(move |b| FixedPopcount::new(self.m, b))
            .filter_map(move |y| {
                let s = CayleySubset::from_masks(self.m, pair_mask, self.delta(), y).ok()?;
                s.generates().then_some(s)
            })
    }

    pub fn iter(&self) -> impl Iterator<Item = CayleySubset> + '_ {
        self.pair_masks()
            .into_iter()
            .flat_map(move |p| self.with_pair_mask(p))
    }
}

/// Members of `family` with covalency `l`; empty when `l` is not attained.
pub fn enumerate_family(m: u32, l: u32, family: Family) -> Result<Vec<CayleySubset>> {
    Ok(CovalencyClass::new(m, l, family)?.iter().collect())
}

/// Members of the family `S` with the given split (all generating subsets
/// with `l1(S) = l1`, `l2(S) = l2`).
pub fn enumerate_split(m: u32, l1: u32, l2: u32) -> Result<Vec<CayleySubset>> {
    let class = CovalencyClass::new(m, l1 + l2, Family::S)?;
    let delta = l1 % 2 == 1;
    if l1 == 0 || l1 > 2 * m || l2 % 2 != 0 || l2 >= 2 * m {
        return Ok(Vec::new());
    }
    let pair_count = (2 * m - l1 - u32::from(delta)) / 2;
    Ok(FixedPopcount::new(m - 1, pair_count)
        .flat_map(|p| class.with_pair_mask(p).collect::<Vec<_>>())
        .collect())
}

/// Masks of `n` bits with exactly `k` ones, ascending (Gosper's hack).
#[derive(Clone, Debug)]
pub struct FixedPopcount {
    next: Option<u64>,
    limit: u64,
}

impl FixedPopcount {
    pub fn new(n: u32, k: u32) -> Self {
        assert!(n < 64, "mask width {n} too large");
        let next = (k <= n).then(|| if k == 0 { 0 } else { (1u64 << k) - 1 });
        Self {
            next,
            limit: 1u64 << n,
        }
    }
}

impl Iterator for FixedPopcount {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let x = self.next?;
        self.next = if x == 0 {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            let y = (((r ^ x) >> 2) / c) | r;
            (y < self.limit).then_some(y)
        };
        Some(x)
    }
}

fn bits(mask: u64) -> impl Iterator<Item = u32> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn subset(m: u32, pairs: &[u32], delta: bool, ypairs: &[u32]) -> CayleySubset {
        CayleySubset::new(m, pairs.iter().copied(), delta, ypairs.iter().copied()).unwrap()
    }

    #[test]
    fn elements_examples() {
        let full = CayleySubset::full(3).unwrap();
        let els = full.elements();
        assert_eq!(els.len(), 11);
        assert!(els.iter().all(|e| !e.is_identity()));

        let g = QuaternionGroup::new(3).unwrap();
        assert_eq!(
            subset(3, &[1], false, &[]).elements(),
            vec![g.x_pow(1), g.x_pow(5)]
        );

        let mut want = vec![
            g.x_pow(2),
            g.x_pow(4),
            g.x_pow(3),
            g.x_pow_y(0),
            g.x_pow_y(3),
        ];
        want.sort();
        assert_eq!(subset(3, &[2], true, &[0]).elements(), want);
    }

    #[test]
    fn profile_examples() {
        let p = CayleySubset::full(3).unwrap().profile();
        assert_eq!(
            p,
            CovalencyProfile {
                l: 1,
                l1: 1,
                l2: 0,
                delta: true
            }
        );
        let p = subset(5, &[1, 2, 3, 4], false, &[0, 1, 2, 3, 4]).profile();
        assert_eq!(
            p,
            CovalencyProfile {
                l: 2,
                l1: 2,
                l2: 0,
                delta: false
            }
        );
        let p = subset(5, &[1, 2, 3], true, &[0, 1, 2, 3]).profile();
        assert_eq!(
            p,
            CovalencyProfile {
                l: 5,
                l1: 3,
                l2: 2,
                delta: true
            }
        );
    }

    #[test]
    fn sigma_examples() {
        let s = CayleySubset::full(5).unwrap().sigma_counts();
        assert_eq!((s.se1, s.so1, s.se2, s.so2), (2, 2, 3, 2));
        let s = subset(5, &[2], false, &[]).sigma_counts();
        assert_eq!((s.se1, s.so1, s.se2, s.so2), (1, 0, 0, 0));
        let s = subset(4, &[1, 3], true, &[0, 2]).sigma_counts();
        assert_eq!((s.se1, s.so1, s.se2, s.so2), (0, 2, 2, 0));
    }

    fn all_subsets(m: u32) -> impl Iterator<Item = CayleySubset> {
        (0..1u64 << (m - 1)).flat_map(move |p| {
            (0..2).flat_map(move |d| {
                (0..1u64 << m).map(move |y| CayleySubset::from_masks(m, p, d == 1, y).unwrap())
            })
        })
    }

    #[test]
    fn sigma_caps_and_sizes() {
        for m in 1..=8 {
            for s in all_subsets(m) {
                let sc = s.sigma_counts();
                let prof = s.profile();
                let s1 = 2 * (sc.se1 + sc.so1) + u32::from(s.delta());
                let s2 = 2 * (sc.se2 + sc.so2);
                assert_eq!(s1 + s2, s.size() as u32);
                assert_eq!(prof.l1, 2 * m - s1);
                assert_eq!(prof.l2, 2 * m - s2);
                assert_eq!(prof.l2 % 2, 0);
                assert_eq!(prof.l1 % 2, u32::from(prof.delta));
                assert_eq!(s.elements().len() as u32, 4 * m - prof.l);
                if m % 2 == 1 {
                    assert!(sc.se1 <= (m - 1) / 2 && sc.so1 <= (m - 1) / 2);
                    assert!(sc.se2 <= m.div_ceil(2) && sc.so2 <= (m - 1) / 2);
                } else {
                    assert!(sc.se1 < m / 2 && sc.so1 <= m / 2);
                    assert!(sc.se2 <= m / 2 && sc.so2 <= m / 2);
                }
            }
        }
    }

    #[test]
    fn structural_generation_matches_closure() {
        for m in 1..=8 {
            for s in all_subsets(m) {
                assert_eq!(s.generates(), s.generates_by_closure(), "{s}");
            }
        }
    }

    #[test]
    fn enumerated_members_are_cayley_subsets() {
        for m in 1..=6 {
            let g = QuaternionGroup::new(m).unwrap();
            for family in [Family::S, Family::SPrime] {
                for l in 1..4 * m {
                    for s in enumerate_family(m, l, family).unwrap() {
                        let els = s.elements();
                        assert!(els.iter().all(|e| !e.is_identity()));
                        let inv: std::collections::BTreeSet<_> =
                            els.iter().map(|&e| g.inverse(e)).collect();
                        assert_eq!(inv.into_iter().collect::<Vec<_>>(), els);
                        assert_eq!(g.generated_order(&els), g.order());
                        assert_eq!(s.profile().l, l);
                        assert!(family == Family::S || s.profile().l2 > 0);
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_counts_match_brute_force() {
        for m in 1..=6 {
            let mut brute: BTreeMap<(u32, bool), Vec<CayleySubset>> = BTreeMap::new();
            for s in all_subsets(m).filter(CayleySubset::generates_by_closure) {
                let p = s.profile();
                brute.entry((p.l, false)).or_default().push(s.clone());
                if p.l2 != 0 {
                    brute.entry((p.l, true)).or_default().push(s);
                }
            }
            for l in 1..4 * m {
                for (family, key) in [(Family::S, false), (Family::SPrime, true)] {
                    let got = enumerate_family(m, l, family).unwrap();
                    let want = brute.remove(&(l, key)).unwrap_or_default();
                    assert_eq!(got, want, "m={m} l={l} {family}");
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let one = enumerate_family(3, 1, Family::S).unwrap();
        assert_eq!(one, vec![CayleySubset::full(3).unwrap()]);
        assert!(enumerate_family(3, 2, Family::SPrime).unwrap().is_empty());
        let three = enumerate_family(3, 3, Family::SPrime).unwrap();
        assert_eq!(three.len(), 3);
        for s in &three {
            assert_eq!(
                s.profile(),
                CovalencyProfile {
                    l: 3,
                    l1: 1,
                    l2: 2,
                    delta: true
                }
            );
        }
        assert!(enumerate_family(3, 0, Family::S).unwrap().is_empty());
        assert!(enumerate_family(3, 12, Family::S).unwrap().is_empty());
        assert!(CovalencyClass::new(ENUM_MAX_M + 1, 3, Family::S).is_err());
    }

    #[test]
    fn split_enumeration_partitions_classes() {
        for m in 2..=6 {
            for l in 1..4 * m {
                let whole = enumerate_family(m, l, Family::S).unwrap();
                let mut parts = 0;
                for (l1, l2) in admissible_splits(m, l, Family::S) {
                    let split = enumerate_split(m, l1, l2).unwrap();
                    assert!(split
                        .iter()
                        .all(|s| (s.profile().l1, s.profile().l2) == (l1, l2)));
                    parts += split.len();
                }
                assert_eq!(parts, whole.len(), "m={m} l={l}");
            }
        }
    }

    #[test]
    fn extremal_examples() {
        let s = extremal_subset(5, 1, 2).unwrap();
        assert_eq!(
            s.profile(),
            CovalencyProfile {
                l: 3,
                l1: 1,
                l2: 2,
                delta: true
            }
        );
        let g = s.group();
        let missing: Vec<_> = g.elements().filter(|e| !s.elements().contains(e)).collect();
        assert_eq!(missing, vec![g.identity(), g.x_pow_y(0), g.x_pow_y(5)]);

        let s = extremal_subset(5, 2, 2).unwrap();
        assert_eq!(
            s.profile(),
            CovalencyProfile {
                l: 4,
                l1: 2,
                l2: 2,
                delta: false
            }
        );
        assert!(!s.elements().contains(&g.x_pow(5)));

        let s = extremal_subset(63, 12, 20).unwrap();
        assert_eq!(
            s.profile(),
            CovalencyProfile {
                l: 32,
                l1: 12,
                l2: 20,
                delta: false
            }
        );
    }

    #[test]
    fn extremal_rejects_inadmissible() {
        assert!(extremal_subset(5, 3, 0).is_err());
        assert!(extremal_subset(5, 3, 3).is_err());
        assert!(extremal_subset(5, 0, 2).is_err());
        assert!(extremal_subset(5, 1, 10).is_err());
        assert!(extremal_subset(5, 11, 2).is_err());
    }

    #[test]
    fn extremal_profile_round_trip() {
        for m in 1..=30 {
            for l1 in 1..=2 * m {
                for l2 in (2..2 * m).step_by(2) {
                    if let Ok(s) = extremal_subset(m, l1, l2) {
                        let p = s.profile();
                        assert_eq!((p.l, p.l1, p.l2, p.delta), (l1 + l2, l1, l2, l1 % 2 == 1));
                    }
                }
            }
        }
    }

    #[test]
    fn literal_parsing() {
        let s: CayleySubset = "m=3;pairs=2;delta=1;ypairs=0".parse().unwrap();
        assert_eq!(s, subset(3, &[2], true, &[0]));
        let s: CayleySubset = "m=4;pairs=;delta=0;ypairs=".parse().unwrap();
        assert_eq!(s.size(), 0);
        for bad in [
            "m=3;pairs=3;delta=0;ypairs=",
            "m=3;pairs=0;delta=0;ypairs=",
            "m=3;pairs=;delta=0;ypairs=3",
            "m=3;pairs=1,1;delta=0;ypairs=",
            "m=3;delta=0;pairs=1;ypairs=",
            "m=3;pairs=1;delta=2;ypairs=",
            "m=3; pairs=1;delta=0;ypairs=",
            "m=3;pairs=+1;delta=0;ypairs=",
            "m=0;pairs=;delta=0;ypairs=",
            "m=3;pairs=1;delta=0",
            "m=3;pairs=1,;delta=0;ypairs=",
        ] {
            assert!(bad.parse::<CayleySubset>().is_err(), "{bad}");
        }
    }

    #[test]
    fn popcount_iterator() {
        let v: Vec<u64> = FixedPopcount::new(4, 2).collect();
        assert_eq!(v, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(FixedPopcount::new(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(FixedPopcount::new(3, 3).collect::<Vec<_>>(), vec![7]);
        assert!(FixedPopcount::new(3, 4).next().is_none());
    }

    proptest! {
        #[test]
        fn literal_round_trip(m in 1u32..=40, pm in any::<u64>(), d in any::<bool>(), ym in any::<u64>()) {
            let pairs: Vec<u32> = (1..m).filter(|k| pm >> (k % 64) & 1 == 1).collect();
            let ypairs: Vec<u32> = (0..m).filter(|k| ym >> (k % 64) & 1 == 1).collect();
            let s = CayleySubset::new(m, pairs, d, ypairs).unwrap();
            let back: CayleySubset = s.to_string().parse().unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
