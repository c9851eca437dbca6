//! Exact numbers of the form `a + b*sqrt(delta)`.
//!
//! Line/parabola intersections have coordinates in a real quadratic field.
//! Arithmetic is closed inside one field; mixing two different radicals in a
//! sum or product is rejected. Comparisons are exact for any pair, including
//! numbers from two different fields.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, int, integer_sqrt_exact, serde_rat, to_f64, Rat};

/// `a + b*sqrt(delta)` with `delta >= 0`.
///
/// Normal form: `delta` is a non-square integer (small square factors pulled
/// into `b`), or `b = delta = 0` for rationals.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "QuadFile")]
pub struct QuadNum {
    #[serde(with = "serde_rat")]
    a: Rat,
    #[serde(with = "serde_rat")]
    b: Rat,
    #[serde(with = "serde_rat")]
    delta: Rat,
}

#[derive(Deserialize)]
struct QuadFile {
    #[serde(with = "serde_rat")]
    a: Rat,
    #[serde(with = "serde_rat")]
    b: Rat,
    #[serde(with = "serde_rat")]
    delta: Rat,
}

impl TryFrom<QuadFile> for QuadNum {
    type Error = Error;
    fn try_from(f: QuadFile) -> Result<Self> {
        QuadNum::new(f.a, f.b, f.delta)
    }
}

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

impl QuadNum {
    pub fn new(a: Rat, b: Rat, delta: Rat) -> Result<Self> {
        if delta.is_negative() {
            return Err(Error::Precondition(format!(
                "negative radicand {}",
                fmt_rat(&delta)
            )));
        }
        if b.is_zero() || delta.is_zero() {
            return Ok(Self::rational(a));
        }
        // sqrt(p/q) = sqrt(p q) / q
        let q = delta.denom().clone();
        let mut d: BigInt = delta.numer() * &q;
        let mut b = b / Rat::from_integer(q);
        if let Some(k) = integer_sqrt_exact(&d) {
            return Ok(Self::rational(a + b * Rat::from_integer(k)));
        }
        for p in SMALL_PRIMES {
            let p2 = BigInt::from(p * p);
            while (&d % &p2).is_zero() {
                d /= &p2;
                b *= int(p as i64);
            }
        }
        Ok(Self {
            a,
            b,
            delta: Rat::from_integer(d),
        })
    }

    pub fn rational(a: Rat) -> Self {
        Self {
            a,
            b: Rat::zero(),
            delta: Rat::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::rational(Rat::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rat::one())
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn delta(&self) -> &Rat {
        &self.delta
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            to_f64(&self.a)
        } else {
            to_f64(&self.a) + to_f64(&self.b) * to_f64(&self.delta).sqrt()
        }
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        sign_plus_radical(&self.a, &self.b, &self.delta)
    }

    /// Rewrites `other` over this number's radical, when both live in the
    /// same field.
    fn align(&self, other: &QuadNum) -> Option<(Rat, Rat, Rat)> {
        if other.is_rational() {
            return Some((other.a.clone(), Rat::zero(), self.delta.clone()));
        }
        if self.is_rational() || self.delta == other.delta {
            return Some((other.a.clone(), other.b.clone(), other.delta.clone()));
        }
        // sqrt(d2) = k/d1 * sqrt(d1) when d1 d2 = k^2
        let prod = &self.delta * &other.delta;
        let k = integer_sqrt_exact(prod.numer()).filter(|_| prod.denom().is_one())?;
        let scale = Rat::from_integer(k) / &self.delta;
        Some((other.a.clone(), &other.b * scale, self.delta.clone()))
    }

    fn combine(&self, other: &QuadNum) -> Result<(Rat, Rat, Rat, Rat, Rat)> {
        if self.is_rational() && !other.is_rational() {
            return Ok((
                self.a.clone(),
                Rat::zero(),
                other.a.clone(),
                other.b.clone(),
                other.delta.clone(),
            ));
        }
        let (oa, ob, d) = self.align(other).ok_or_else(|| {
            Error::MixedRadicals(fmt_rat(&self.delta), fmt_rat(&other.delta))
        })?;
        Ok((self.a.clone(), self.b.clone(), oa, ob, d))
    }

    pub fn checked_add(&self, other: &QuadNum) -> Result<QuadNum> {
        let (a1, b1, a2, b2, d) = self.combine(other)?;
        QuadNum::new(a1 + a2, b1 + b2, d)
    }

    pub fn checked_sub(&self, other: &QuadNum) -> Result<QuadNum> {
        let (a1, b1, a2, b2, d) = self.combine(other)?;
        QuadNum::new(a1 - a2, b1 - b2, d)
    }

    pub fn checked_mul(&self, other: &QuadNum) -> Result<QuadNum> {
        let (a1, b1, a2, b2, d) = self.combine(other)?;
        QuadNum::new(&a1 * &a2 + &b1 * &b2 * &d, a1 * b2 + a2 * b1, d)
    }

    pub fn inverse(&self) -> Result<QuadNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.a * &self.a - &self.b * &self.b * &self.delta;
        QuadNum::new(&self.a / &norm, -&self.b / &norm, self.delta.clone())
    }

    pub fn checked_div(&self, other: &QuadNum) -> Result<QuadNum> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn mul_rat(&self, t: &Rat) -> QuadNum {
        Self {
            a: &self.a * t,
            b: &self.b * t,
            delta: self.delta.clone(),
        }
        .renormalized()
    }

    pub fn add_rat(&self, t: &Rat) -> QuadNum {
        Self {
            a: &self.a + t,
            b: self.b.clone(),
            delta: self.delta.clone(),
        }
    }

    fn renormalized(self) -> Self {
        if self.b.is_zero() {
            Self::rational(self.a)
        } else {
            self
        }
    }

    pub fn abs(&self) -> QuadNum {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }
}

/// Sign of `a + b*sqrt(d)`, `d >= 0`.
pub(crate) fn sign_plus_radical(a: &Rat, b: &Rat, d: &Rat) -> Ordering {
    let sa = a.cmp(&Rat::zero());
    let sb = if d.is_zero() {
        Ordering::Equal
    } else {
        b.cmp(&Rat::zero())
    };
    if sb == Ordering::Equal || sa == sb {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    match (a * a).cmp(&(b * b * d)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `x + y*sqrt(d)` with `x`, `y` in one quadratic field.
fn sign_over_field(x: &QuadNum, y: &QuadNum, d: &Rat) -> Result<Ordering> {
    let sx = x.signum();
    let sy = if d.is_zero() {
        Ordering::Equal
    } else {
        y.signum()
    };
    if sy == Ordering::Equal || sx == sy {
        return Ok(sx);
    }
    if sx == Ordering::Equal {
        return Ok(sy);
    }
    let t = x.checked_mul(x)?.checked_sub(&y.checked_mul(y)?.mul_rat(d))?;
    Ok(match t.signum() {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    })
}

impl PartialEq for QuadNum {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadNum {}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadNum {
    fn cmp(&self, other: &Self) -> Ordering {
        if let Ok(diff) = self.checked_sub(other) {
            return diff.signum();
        }
        // self - other = (a1 - a2) + b1 sqrt(d1) - b2 sqrt(d2) with unrelated d1, d2
        let x = QuadNum {
            a: &self.a - &other.a,
            b: self.b.clone(),
            delta: self.delta.clone(),
        };
        let y = QuadNum::rational(-&other.b);
        sign_over_field(&x, &y, &other.delta).expect("x and y share a field")
    }
}

impl From<Rat> for QuadNum {
    fn from(a: Rat) -> Self {
        Self::rational(a)
    }
}

impl From<&Rat> for QuadNum {
    fn from(a: &Rat) -> Self {
        Self::rational(a.clone())
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", fmt_rat(&self.a))
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                fmt_rat(&self.a),
                fmt_rat(&self.b),
                fmt_rat(&self.delta)
            )
        }
    }
}

// Operator sugar for values already known to share a field. Panics on mixed
// radicals; use the `checked_*` methods on untrusted input.
impl Add for &QuadNum {
    type Output = QuadNum;
    fn add(self, rhs: &QuadNum) -> QuadNum {
        self.checked_add(rhs).expect("quadratic numbers from different fields")
    }
}

impl Sub for &QuadNum {
    type Output = QuadNum;
    fn sub(self, rhs: &QuadNum) -> QuadNum {
        self.checked_sub(rhs).expect("quadratic numbers from different fields")
    }
}

impl Mul for &QuadNum {
    type Output = QuadNum;
    fn mul(self, rhs: &QuadNum) -> QuadNum {
        self.checked_mul(rhs).expect("quadratic numbers from different fields")
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum {
            a: -&self.a,
            b: -&self.b,
            delta: self.delta.clone(),
        }
    }
}

impl Neg for QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        -&self
    }
}

/// Element `c0 + c1 sqrt(d1) + c2 sqrt(d2) + c3 sqrt(d1 d2)` of a biquadratic
/// field; used when a predicate mixes points from two quadratic fields.
#[derive(Clone, Debug)]
pub(crate) struct Surd2 {
    d1: Rat,
    d2: Rat,
    c: [Rat; 4],
}

/// The (at most two) radicals spanning a set of quadratic numbers.
#[derive(Clone, Debug)]
pub(crate) struct Biquadratic {
    d1: Rat,
    d2: Rat,
}

impl Biquadratic {
    pub(crate) fn spanning<'a>(nums: impl IntoIterator<Item = &'a QuadNum>) -> Result<Self> {
        let mut f1: Option<QuadNum> = None;
        let mut f2: Option<QuadNum> = None;
        for n in nums {
            if n.is_rational() {
                continue;
            }
            match (&f1, &f2) {
                (None, _) => f1 = Some(n.clone()),
                (Some(a), None) => {
                    if a.align(n).is_none() {
                        f2 = Some(n.clone());
                    }
                }
                (Some(a), Some(b)) => {
                    if a.align(n).is_none() && b.align(n).is_none() {
                        let prod = QuadNum::new(Rat::zero(), Rat::one(), &a.delta * &b.delta)?;
                        if prod.align(n).is_none() {
                            return Err(Error::MixedRadicals(
                                format!("{} and {}", fmt_rat(&a.delta), fmt_rat(&b.delta)),
                                fmt_rat(&n.delta),
                            ));
                        }
                    }
                }
            }
        }
        Ok(Self {
            d1: f1.map_or_else(Rat::one, |q| q.delta),
            d2: f2.map_or_else(Rat::one, |q| q.delta),
        })
    }

    pub(crate) fn lift(&self, x: &QuadNum) -> Result<Surd2> {
        let zero = Rat::zero;
        let mut c = [x.a.clone(), zero(), zero(), zero()];
        if !x.is_rational() {
            let probe = |d: &Rat| {
                QuadNum::new(Rat::zero(), Rat::one(), d.clone())
                    .ok()
                    .filter(|q| !q.is_rational())
                    .and_then(|q| q.align(x))
            };
            if let Some((_, b, _)) = probe(&self.d1) {
                c[1] = b;
            } else if let Some((_, b, _)) = probe(&self.d2) {
                c[2] = b;
            } else if let Some((_, b, _)) = probe(&(&self.d1 * &self.d2)) {
                // sqrt(d1 d2) is represented through its own normal form;
                // rescale from that radical back to the product.
                let unit = QuadNum::new(Rat::zero(), Rat::one(), &self.d1 * &self.d2)?;
                c[3] = b * &unit.b;
            } else {
                return Err(Error::MixedRadicals(
                    format!("{} and {}", fmt_rat(&self.d1), fmt_rat(&self.d2)),
                    fmt_rat(&x.delta),
                ));
            }
        }
        Ok(Surd2 {
            d1: self.d1.clone(),
            d2: self.d2.clone(),
            c,
        })
    }
}

impl Surd2 {
    pub(crate) fn add(&self, o: &Surd2) -> Surd2 {
        self.sub(&o.neg())
    }

    pub(crate) fn neg(&self) -> Surd2 {
        Surd2 {
            d1: self.d1.clone(),
            d2: self.d2.clone(),
            c: self.c.clone().map(|x| -x),
        }
    }

    pub(crate) fn sub(&self, o: &Surd2) -> Surd2 {
        Surd2 {
            d1: self.d1.clone(),
            d2: self.d2.clone(),
            c: [
                &self.c[0] - &o.c[0],
                &self.c[1] - &o.c[1],
                &self.c[2] - &o.c[2],
                &self.c[3] - &o.c[3],
            ],
        }
    }

    pub(crate) fn mul(&self, o: &Surd2) -> Surd2 {
        let (d1, d2) = (&self.d1, &self.d2);
        let [c0, c1, c2, c3] = &self.c;
        let [e0, e1, e2, e3] = &o.c;
        Surd2 {
            d1: d1.clone(),
            d2: d2.clone(),
            c: [
                c0 * e0 + c1 * e1 * d1 + c2 * e2 * d2 + c3 * e3 * d1 * d2,
                c0 * e1 + c1 * e0 + (c2 * e3 + c3 * e2) * d2,
                c0 * e2 + c2 * e0 + (c1 * e3 + c3 * e1) * d1,
                c0 * e3 + c3 * e0 + c1 * e2 + c2 * e1,
            ],
        }
    }

    pub(crate) fn signum(&self) -> Ordering {
        // (c0 + c1 sqrt d1) + (c2 + c3 sqrt d1) sqrt d2
        let x = QuadNum::new(self.c[0].clone(), self.c[1].clone(), self.d1.clone())
            .expect("nonnegative radicand");
        let y = QuadNum::new(self.c[2].clone(), self.c[3].clone(), self.d1.clone())
            .expect("nonnegative radicand");
        sign_over_field(&x, &y, &self.d2).expect("same field by construction")
    }
}
