//! Double-double arithmetic (an unevaluated sum `hi + lo` of two `f64`s,
//! about 106 significant bits).
//!
//! Used to re-decide sign questions whose `f64` margin is below `1e-6`:
//! Ramanujan verdicts, the `|mu_2| - RB` gaps and the interpolation function.
//! Only what those callers need is provided: the four operations, square
//! root, and sine/cosine of rational multiples of pi with exact integer
//! argument reduction.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

pub const PI: Dd = Dd {
    hi: std::f64::consts::PI,
    lo: 1.224_646_799_147_353_2e-16,
};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }

    /// Exact for `|n| < 2^53`; rounded to 106 bits otherwise.
    pub fn from_i128(n: i128) -> Self {
        let hi = n as f64;
        let lo = (n - hi as i128) as f64;
        Dd::new(hi, lo)
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn signum(self) -> f64 {
        match self.partial_cmp(&Dd::ZERO) {
            Some(Ordering::Greater) => 1.0,
            Some(Ordering::Less) => -1.0,
            _ => 0.0,
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return if self.hi == 0.0 {
                Dd::ZERO
            } else {
                Dd {
                    hi: f64::NAN,
                    lo: f64::NAN,
                }
            };
        }
        let y = Dd::from(self.hi.sqrt());
        // one Newton step doubles the 53 correct bits
        y + (self - y * y) / (y * 2.0)
    }

    /// `sin(pi * num / den)` for `den > 0`.
    pub fn sin_pi(num: i128, den: i128) -> Self {
        assert!(den > 0, "denominator must be positive");
        let mut t = num.rem_euclid(2 * den);
        let mut sign = 1.0;
        if t >= den {
            t -= den;
            sign = -1.0;
        }
        if 2 * t > den {
            t = den - t;
        }
        // angle now in [0, pi/2]
        let value = if 4 * t > den {
            cos_taylor(PI * Dd::from_i128(den - 2 * t) / Dd::from_i128(2 * den))
        } else {
            sin_taylor(PI * Dd::from_i128(t) / Dd::from_i128(den))
        };
        value * sign
    }

    /// `cos(pi * num / den)` for `den > 0`.
    pub fn cos_pi(num: i128, den: i128) -> Self {
        Dd::sin_pi(2 * num + den, 2 * den)
    }
}

fn sin_taylor(x: Dd) -> Dd {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 1.0;
    while term.hi.abs() > 1e-36 {
        term = -(term * x2) / ((n + 1.0) * (n + 2.0));
        sum = sum + term;
        n += 2.0;
    }
    sum
}

fn cos_taylor(x: Dd) -> Dd {
    let x2 = x * x;
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut n = 0.0;
    while term.hi.abs() > 1e-36 {
        term = -(term * x2) / ((n + 1.0) * (n + 2.0));
        sum = sum + term;
        n += 2.0;
    }
    sum
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

impl From<i64> for Dd {
    fn from(n: i64) -> Self {
        Dd::from_i128(i128::from(n))
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, b: f64) -> Dd {
        self * Dd::from(b)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from(q3)
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, b: f64) -> Dd {
        self / Dd::from(b)
    }
}
