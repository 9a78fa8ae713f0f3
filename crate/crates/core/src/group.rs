//! Arithmetic in the generalized quaternion group `Q_{4m}`.
//!
//! Elements are kept in the canonical form `x^k y^e` with `0 <= k < 2m` and
//! `e` in `{0, 1}`, so every one of the `4m` elements has exactly one
//! representation. Multiplication follows from `x^{2m} = 1`, `y^2 = x^m`
//! and `y x = x^{-1} y`.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

/// Largest supported `m`. Orders up to `2^22` stay far inside `u32`.
pub const MAX_M: u32 = 1 << 20;

/// `Q_{4m}` for a fixed `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionGroup {
    m: u32,
}

/// `x^k y^e` in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    e: u8,
    k: u32,
}

impl Element {
    /// Exponent of `x`, in `[0, 2m)`.
    pub fn exponent(self) -> u32 {
        self.k
    }

    /// True for elements of the coset `<x> y`.
    pub fn in_y_coset(self) -> bool {
        self.e == 1
    }

    pub fn is_identity(self) -> bool {
        self.k == 0 && self.e == 0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.e) {
            (0, 0) => write!(f, "1"),
            (0, _) => write!(f, "y"),
            (1, 0) => write!(f, "x"),
            (1, _) => write!(f, "xy"),
            (k, 0) => write!(f, "x^{k}"),
            (k, _) => write!(f, "x^{k}y"),
        }
    }
}

impl QuaternionGroup {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(Error::OrderOutOfRange(u64::from(m)));
        }
        Ok(Self { m })
    }

    pub fn m(self) -> u32 {
        self.m
    }

    /// Group order `4m`.
    pub fn order(self) -> usize {
        4 * self.m as usize
    }

    pub fn is_even(self) -> bool {
        self.m % 2 == 0
    }

    fn modulus(self) -> u32 {
        2 * self.m
    }

    pub fn identity(self) -> Element {
        Element { k: 0, e: 0 }
    }

    /// `x^k`, with `k` reduced modulo `2m`.
    pub fn x_pow(self, k: i64) -> Element {
        Element {
            k: k.rem_euclid(i64::from(self.modulus())) as u32,
            e: 0,
        }
    }

    /// `x^k y`, with `k` reduced modulo `2m`.
    pub fn x_pow_y(self, k: i64) -> Element {
        Element {
            k: k.rem_euclid(i64::from(self.modulus())) as u32,
            e: 1,
        }
    }

    /// Checked constructor from a canonical pair.
    pub fn element(self, k: u32, in_y_coset: bool) -> Result<Element> {
        if k >= self.modulus() {
            return Err(Error::IndexOutOfRange {
                field: "exponent",
                index: u64::from(k),
                m: self.m,
            });
        }
        Ok(Element {
            k,
            e: u8::from(in_y_coset),
        })
    }

    /// Position of `g` in `0..4m`: `<x>` first, then `<x> y`.
    pub fn index(self, g: Element) -> usize {
        g.e as usize * self.modulus() as usize + g.k as usize
    }

    pub fn from_index(self, i: usize) -> Element {
        let n = self.modulus() as usize;
        Element {
            k: (i % n) as u32,
            e: (i / n) as u8,
        }
    }

    pub fn elements(self) -> impl Iterator<Item = Element> {
        (0..self.order()).map(move |i| self.from_index(i))
    }

    pub fn multiply(self, a: Element, b: Element) -> Element {
        let n = u64::from(self.modulus());
        let (ak, bk, m) = (u64::from(a.k), u64::from(b.k), u64::from(self.m));
        let (k, e) = match (a.e, b.e) {
            (0, 0) => (ak + bk, 0),
            (0, _) => (ak + bk, 1),
            (_, 0) => (ak + n - bk, 1),
            _ => (ak + n - bk + m, 0),
        };
        Element {
            k: (k % n) as u32,
            e,
        }
    }

    pub fn inverse(self, g: Element) -> Element {
        let n = self.modulus();
        if g.e == 0 {
            Element {
                k: (n - g.k) % n,
                e: 0,
            }
        } else {
            Element {
                k: (self.m + g.k) % n,
                e: 1,
            }
        }
    }

    /// `C(1), C(x), ..., C(x^{m-1}), C(x^m), C(y), C(xy)`; `m + 3` classes.
    pub fn conjugacy_classes(self) -> Vec<Vec<Element>> {
        let m = i64::from(self.m);
        let mut classes = Vec::with_capacity(self.m as usize + 3);
        classes.push(vec![self.identity()]);
        for k in 1..m {
            classes.push(vec![self.x_pow(k), self.x_pow(2 * m - k)]);
        }
        classes.push(vec![self.x_pow(m)]);
        classes.push((0..m).map(|k| self.x_pow_y(2 * k)).collect());
        classes.push((0..m).map(|k| self.x_pow_y(2 * k + 1)).collect());
        classes
    }

    /// Size of the subgroup generated by `subset`, by breadth-first closure.
    pub fn generated_order(self, subset: &[Element]) -> usize {
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut queue = VecDeque::new();
        let id = self.identity();
        seen.insert(self.index(id));
        queue.push_back(id);
        while let Some(g) = queue.pop_front() {
            for &s in subset {
                let h = self.multiply(g, s);
                let i = self.index(h);
                if !seen.put(i) {
                    queue.push_back(h);
                }
            }
        }
        seen.count_ones(..)
    }

    /// True iff `subset` generates the whole group.
    pub fn generates(self, subset: &[Element]) -> bool {
        !subset.is_empty() && self.generated_order(subset) == self.order()
    }
}
