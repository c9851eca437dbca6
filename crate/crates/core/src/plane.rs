//! Points, lines and parabolas in the projective plane with homogeneous
//! coordinates `[v0 : v1 : v2]` and affine chart `(x, y) = (v1/v0, v2/v0)`.
//!
//! Orientation convention: `+1` (counterclockwise) means the third point is
//! to the left of the directed line through the first two, which is also
//! what "above" means when comparing rays out of a common point.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{Biquadratic, QuadNum};
use crate::rational::{fmt_rat, frac, int, serde_rat, serde_rat3, Rat};

/// Normalizes a nonzero triple so its first nonzero entry is 1.
fn normalize(v: [Rat; 3]) -> Option<[Rat; 3]> {
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    if lead.is_one() {
        return Some(v);
    }
    Some(v.map(|x| x / &lead))
}

fn cross(a: &[Rat; 3], b: &[Rat; 3]) -> [Rat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[Rat; 3], b: &[Rat; 3]) -> Rat {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

/// A point `[v0 : v1 : v2]`, stored with first nonzero coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PointFile", into = "PointFile")]
pub struct PlanePoint {
    homog: [Rat; 3],
}

#[derive(Serialize, Deserialize)]
struct PointFile {
    #[serde(with = "serde_rat3")]
    homog: [Rat; 3],
}

impl TryFrom<PointFile> for PlanePoint {
    type Error = Error;
    fn try_from(f: PointFile) -> Result<Self> {
        let [a, b, c] = f.homog;
        PlanePoint::new(a, b, c)
    }
}

impl From<PlanePoint> for PointFile {
    fn from(p: PlanePoint) -> Self {
        PointFile { homog: p.homog }
    }
}

impl PlanePoint {
    pub fn new(v0: Rat, v1: Rat, v2: Rat) -> Result<Self> {
        normalize([v0, v1, v2])
            .map(|homog| Self { homog })
            .ok_or(Error::ZeroCharacter)
    }

    pub fn affine(x: Rat, y: Rat) -> Self {
        Self {
            homog: [Rat::one(), x, y],
        }
    }

    /// The point at infinity in the vertical direction, `[0 : 0 : 1]`.
    pub fn vertical_infinity() -> Self {
        Self {
            homog: [Rat::zero(), Rat::zero(), Rat::one()],
        }
    }

    pub fn homog(&self) -> &[Rat; 3] {
        &self.homog
    }

    pub fn is_affine(&self) -> bool {
        !self.homog[0].is_zero()
    }

    pub fn x(&self) -> Result<&Rat> {
        if self.is_affine() {
            Ok(&self.homog[1])
        } else {
            Err(Error::PointAtInfinity)
        }
    }

    pub fn y(&self) -> Result<&Rat> {
        if self.is_affine() {
            Ok(&self.homog[2])
        } else {
            Err(Error::PointAtInfinity)
        }
    }

    pub fn xy(&self) -> Result<(Rat, Rat)> {
        Ok((self.x()?.clone(), self.y()?.clone()))
    }

    /// `y - x^2/2`, the parabola level through this point.
    pub fn parabola_level(&self) -> Result<Rat> {
        let (x, y) = self.xy()?;
        Ok(y - &x * &x / int(2))
    }

    /// Strictly above the boundary parabola `y = x^2/2`.
    pub fn above_parabola(&self) -> bool {
        self.parabola_level().is_ok_and(|c| c.is_positive())
    }

    pub fn to_quad(&self) -> Result<QuadPoint> {
        let (x, y) = self.xy()?;
        Ok(QuadPoint::rational(x, y))
    }

    pub fn to_f64(&self) -> Option<(f64, f64)> {
        self.is_affine().then(|| {
            (
                crate::rational::to_f64(&self.homog[1]),
                crate::rational::to_f64(&self.homog[2]),
            )
        })
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_affine() {
            write!(f, "({}, {})", fmt_rat(&self.homog[1]), fmt_rat(&self.homog[2]))
        } else {
            write!(
                f,
                "[0 : {} : {}]",
                fmt_rat(&self.homog[1]),
                fmt_rat(&self.homog[2])
            )
        }
    }
}

/// The line `a*v0 + b*v1 + c*v2 = 0`, stored with first nonzero coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "LineFile", into = "LineFile")]
pub struct PlaneLine {
    coeffs: [Rat; 3],
}

#[derive(Serialize, Deserialize)]
struct LineFile {
    #[serde(with = "serde_rat3")]
    coeffs: [Rat; 3],
}

impl TryFrom<LineFile> for PlaneLine {
    type Error = Error;
    fn try_from(f: LineFile) -> Result<Self> {
        let [a, b, c] = f.coeffs;
        PlaneLine::new(a, b, c)
    }
}

impl From<PlaneLine> for LineFile {
    fn from(l: PlaneLine) -> Self {
        LineFile { coeffs: l.coeffs }
    }
}

impl PlaneLine {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self> {
        normalize([a, b, c])
            .map(|coeffs| Self { coeffs })
            .ok_or_else(|| Error::Precondition("all line coefficients vanish".into()))
    }

    /// The unique line through two projectively distinct points.
    pub fn through(p: &PlanePoint, q: &PlanePoint) -> Result<Self> {
        let c = cross(&p.homog, &q.homog);
        normalize(c)
            .map(|coeffs| Self { coeffs })
            .ok_or(Error::IdenticalPoints)
    }

    pub fn coeffs(&self) -> &[Rat; 3] {
        &self.coeffs
    }

    pub fn eval(&self, p: &PlanePoint) -> Rat {
        dot(&self.coeffs, &p.homog)
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        self.eval(p).is_zero()
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coeffs[1].is_zero() && self.coeffs[2].is_zero()
    }

    /// Affine part is a vertical line `x = const`.
    pub fn is_vertical(&self) -> bool {
        self.coeffs[2].is_zero() && !self.coeffs[1].is_zero()
    }

    /// The meeting point of two distinct lines.
    pub fn meet(&self, other: &PlaneLine) -> Option<PlanePoint> {
        normalize(cross(&self.coeffs, &other.coeffs)).map(|homog| PlanePoint { homog })
    }

    /// `y` on the line at affine abscissa `x`; `None` for vertical lines.
    pub fn y_at(&self, x: &Rat) -> Option<Rat> {
        let [a, b, c] = &self.coeffs;
        (!c.is_zero()).then(|| -(a + b * x) / c)
    }

    /// `a + b x + c y` at an affine point with quadratic coordinates.
    pub fn eval_quad(&self, p: &QuadPoint) -> Result<QuadNum> {
        let [a, b, c] = &self.coeffs;
        p.x.mul_rat(b).checked_add(&p.y.mul_rat(c)).map(|t| t.add_rat(a))
    }

    /// Human-readable affine equation.
    pub fn affine_equation(&self) -> String {
        let [a, b, c] = &self.coeffs;
        if self.is_at_infinity() {
            return "line at infinity".into();
        }
        if c.is_zero() {
            return format!("x = {}", fmt_rat(&(-a / b)));
        }
        let slope = -b / c;
        let icpt = -a / c;
        let mut s = String::from("y = ");
        match slope.cmp(&Rat::zero()) {
            Ordering::Equal => return s + &fmt_rat(&icpt),
            _ if slope.is_one() => s.push('x'),
            _ if slope == -Rat::one() => s.push_str("-x"),
            _ => s.push_str(&format!("{}*x", fmt_rat(&slope))),
        }
        match icpt.cmp(&Rat::zero()) {
            Ordering::Greater => s.push_str(&format!(" + {}", fmt_rat(&icpt))),
            Ordering::Less => s.push_str(&format!(" - {}", fmt_rat(&-icpt))),
            Ordering::Equal => {}
        }
        s
    }
}

impl fmt::Display for PlaneLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.affine_equation())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::CounterClockwise,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    pub fn reverse(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }
}

/// Determinant of the homogeneous coordinate matrix vanishes.
pub fn collinear(p: &PlanePoint, q: &PlanePoint, r: &PlanePoint) -> bool {
    dot(&cross(&p.homog, &q.homog), &r.homog).is_zero()
}

/// Sign of `(q - p) x (r - p)` for affine points.
pub fn orientation(p: &PlanePoint, q: &PlanePoint, r: &PlanePoint) -> Result<Orientation> {
    let (px, py) = p.xy()?;
    let (qx, qy) = q.xy()?;
    let (rx, ry) = r.xy()?;
    let det = (qx - &px) * (ry - &py) - (qy - &py) * (rx - &px);
    Ok(Orientation::from_ordering(det.cmp(&Rat::zero())))
}

/// The parabola `y = x^2/2 + C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolaShift {
    #[serde(rename = "C", with = "serde_rat")]
    pub c: Rat,
}

impl ParabolaShift {
    pub fn new(c: Rat) -> Self {
        Self { c }
    }

    pub fn boundary() -> Self {
        Self::new(Rat::zero())
    }

    pub fn through(p: &PlanePoint) -> Result<Self> {
        Ok(Self::new(p.parabola_level()?))
    }

    pub fn y_at(&self, x: &Rat) -> Rat {
        x * x / int(2) + &self.c
    }

    pub fn contains_quad(&self, p: &QuadPoint) -> Result<bool> {
        let rhs = p.x.checked_mul(&p.x)?.mul_rat(&frac(1, 2)).add_rat(&self.c);
        Ok(p.y.checked_sub(&rhs)?.is_zero())
    }
}

/// An affine point whose coordinates lie in a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadPoint {
    pub x: QuadNum,
    pub y: QuadNum,
}

impl QuadPoint {
    pub fn new(x: QuadNum, y: QuadNum) -> Self {
        Self { x, y }
    }

    pub fn rational(x: Rat, y: Rat) -> Self {
        Self::new(x.into(), y.into())
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_rational() && self.y.is_rational()
    }

    pub fn to_plane_point(&self) -> Option<PlanePoint> {
        Some(PlanePoint::affine(
            self.x.as_rational()?.clone(),
            self.y.as_rational()?.clone(),
        ))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Display for QuadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Intersection of a line with `y = x^2/2 + C`, sorted by increasing `x`.
///
/// A vertical line meets the parabola in one affine point (its second
/// intersection is the point at infinity `[0:0:1]`, which is not returned).
pub fn line_parabola_intersect(l: &PlaneLine, p: &ParabolaShift) -> Result<Vec<QuadPoint>> {
    if l.is_at_infinity() {
        return Err(Error::LineAtInfinity);
    }
    let [a, b, c] = l.coeffs();
    if c.is_zero() {
        let x = -a / b;
        let y = p.y_at(&x);
        return Ok(vec![QuadPoint::rational(x, y)]);
    }
    // y = alpha x + beta; x^2 - 2 alpha x + 2 (C - beta) = 0
    let alpha = -b / c;
    let beta = -a / c;
    let disc = &alpha * &alpha - int(2) * (&p.c - &beta);
    let point = |x: QuadNum| -> Result<QuadPoint> {
        let y = x.mul_rat(&alpha).add_rat(&beta);
        Ok(QuadPoint::new(x, y))
    };
    match disc.cmp(&Rat::zero()) {
        Ordering::Less => Ok(vec![]),
        Ordering::Equal => Ok(vec![point(alpha.clone().into())?]),
        Ordering::Greater => {
            let left = QuadNum::new(alpha.clone(), -Rat::one(), disc.clone())?;
            let right = QuadNum::new(alpha.clone(), Rat::one(), disc)?;
            Ok(vec![point(left)?, point(right)?])
        }
    }
}

/// Slides an affine point along its own parabola level by `delta` in `x`.
pub fn parabola_translate(p: &PlanePoint, delta: &Rat) -> Result<PlanePoint> {
    let level = ParabolaShift::through(p)?;
    let x = p.x()? + delta;
    let y = level.y_at(&x);
    Ok(PlanePoint::affine(x, y))
}

/// Orientation of three affine points with quadratic coordinates; the
/// coordinates may come from up to two different quadratic fields.
pub fn orientation_quad(p: &QuadPoint, q: &QuadPoint, r: &QuadPoint) -> Result<Orientation> {
    let field = Biquadratic::spanning([&p.x, &p.y, &q.x, &q.y, &r.x, &r.y])?;
    let [px, py, qx, qy, rx, ry] = [&p.x, &p.y, &q.x, &q.y, &r.x, &r.y].map(|c| field.lift(c));
    let (px, py, qx, qy, rx, ry) = (px?, py?, qx?, qy?, rx?, ry?);
    let lhs = qx.sub(&px).mul(&ry.sub(&py));
    let rhs = qy.sub(&py).mul(&rx.sub(&px));
    Ok(Orientation::from_ordering(lhs.sub(&rhs).signum()))
}

fn within(a: &QuadNum, b: &QuadNum, t: &QuadNum) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= t && t <= hi
}

/// `r` lies on the closed segment `[p, q]`, given that the three are collinear.
fn on_segment(p: &QuadPoint, q: &QuadPoint, r: &QuadPoint) -> bool {
    within(&p.x, &q.x, &r.x) && within(&p.y, &q.y, &r.y)
}

/// Closed segment intersection test.
pub fn segments_intersect(s1: (&QuadPoint, &QuadPoint), s2: (&QuadPoint, &QuadPoint)) -> Result<bool> {
    let (p1, q1) = s1;
    let (p2, q2) = s2;
    let o1 = orientation_quad(p1, q1, p2)?;
    let o2 = orientation_quad(p1, q1, q2)?;
    let o3 = orientation_quad(p2, q2, p1)?;
    let o4 = orientation_quad(p2, q2, q1)?;
    use Orientation::Collinear as C;
    if o1 != o2 && o3 != o4 && o1 != C && o2 != C && o3 != C && o4 != C {
        return Ok(true);
    }
    Ok((o1 == C && on_segment(p1, q1, p2))
        || (o2 == C && on_segment(p1, q1, q2))
        || (o3 == C && on_segment(p2, q2, p1))
        || (o4 == C && on_segment(p2, q2, q1)))
}
