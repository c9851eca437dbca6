//! Central charges `Z_{s,q}`, heart-sign classification and exact phase
//! comparison for the stability parameters `(s, q)` with `q > s^2/2`.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::VTilde;
use crate::phase::Ray;
use crate::plane::{PlaneLine, PlanePoint};
use crate::quad::QuadNum;
use crate::rational::{fmt_rat, int, serde_rat, to_f64, Rat};

/// A stability parameter `P = (1, s, q)`, strictly above the boundary parabola.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StabFile", into = "StabFile")]
pub struct StabPoint {
    s: Rat,
    q: Rat,
}

#[derive(Serialize, Deserialize)]
struct StabFile {
    #[serde(with = "serde_rat")]
    s: Rat,
    #[serde(with = "serde_rat")]
    q: Rat,
}

impl TryFrom<StabFile> for StabPoint {
    type Error = Error;
    fn try_from(f: StabFile) -> Result<Self> {
        StabPoint::new(f.s, f.q)
    }
}

impl From<StabPoint> for StabFile {
    fn from(p: StabPoint) -> Self {
        StabFile { s: p.s, q: p.q }
    }
}

impl StabPoint {
    pub fn new(s: Rat, q: Rat) -> Result<Self> {
        if q <= &s * &s / int(2) {
            return Err(Error::InvalidStabPoint {
                s: fmt_rat(&s),
                q: fmt_rat(&q),
            });
        }
        Ok(Self { s, q })
    }

    pub fn from_plane_point(p: &PlanePoint) -> Result<Self> {
        let (s, q) = p.xy()?;
        Self::new(s, q)
    }

    pub fn s(&self) -> &Rat {
        &self.s
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn point(&self) -> PlanePoint {
        PlanePoint::affine(self.s.clone(), self.q.clone())
    }

    /// The point `(1 - t) self + t other`.
    pub fn lerp(&self, other: &StabPoint, t: &Rat) -> StabPoint {
        let one_minus = Rat::from_integer(1.into()) - t;
        StabPoint {
            s: &self.s * &one_minus + &other.s * t,
            q: &self.q * &one_minus + &other.q * t,
        }
    }

    pub fn charge(&self, v: &VTilde) -> ChargeValue {
        central_charge(self, v)
    }

    /// Charge of a homogeneous vector with quadratic coordinates.
    pub fn charge_quad(&self, u: &[QuadNum; 3]) -> Ray {
        let re = (&u[0].mul_rat(&self.q)) - &u[2];
        let im = (&u[1]) - &u[0].mul_rat(&self.s);
        Ray::new(re, im)
    }
}

impl std::fmt::Display for StabPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(s, q) = ({}, {})", fmt_rat(&self.s), fmt_rat(&self.q))
    }
}

/// An exact complex number `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChargeValue {
    #[serde(with = "serde_rat")]
    pub re: Rat,
    #[serde(with = "serde_rat")]
    pub im: Rat,
}

impl ChargeValue {
    pub fn new(re: Rat, im: Rat) -> Self {
        Self { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `Im(conj(self) * other)`: positive when `other` is counterclockwise
    /// from `self`.
    pub fn cross(&self, other: &ChargeValue) -> Rat {
        &self.re * &other.im - &self.im * &other.re
    }

    pub fn dot(&self, other: &ChargeValue) -> Rat {
        &self.re * &other.re + &self.im * &other.im
    }

    /// Same direction divided by `|re| + |im|`.
    pub fn normalized(&self) -> ChargeValue {
        let n = self.re.abs() + self.im.abs();
        if n.is_zero() {
            return self.clone();
        }
        ChargeValue::new(&self.re / &n, &self.im / &n)
    }

    pub fn to_ray(&self) -> Ray {
        Ray::new(self.re.clone().into(), self.im.clone().into())
    }
}

/// `Z_{s,q}(v) = (-v2 + q v0) + i (v1 - s v0)`.
pub fn central_charge(p: &StabPoint, v: &VTilde) -> ChargeValue {
    ChargeValue::new(&p.q * &v.v0 - &v.v2, &v.v1 - &p.s * &v.v0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HeartSign {
    StrictUpper,
    NegativeRealAxis,
    Fails,
}

impl HeartSign {
    pub fn of(z: &ChargeValue) -> Self {
        match z.im.cmp(&Rat::zero()) {
            Ordering::Greater => HeartSign::StrictUpper,
            Ordering::Equal if z.re.is_negative() => HeartSign::NegativeRealAxis,
            _ => HeartSign::Fails,
        }
    }

    pub fn passes(self) -> bool {
        self != HeartSign::Fails
    }
}

pub fn heart_sign_check(p: &StabPoint, v: &VTilde) -> HeartSign {
    HeartSign::of(&central_charge(p, v))
}

/// The charge of `v` at `p`, required to be a heart charge.
pub fn heart_charge(p: &StabPoint, v: &VTilde) -> Result<ChargeValue> {
    let z = central_charge(p, v);
    if z.is_zero() {
        return Err(Error::ZeroCharge);
    }
    if !HeartSign::of(&z).passes() {
        return Err(Error::NotInHeart {
            re: fmt_rat(&z.re),
            im: fmt_rat(&z.im),
        });
    }
    Ok(z)
}

/// A phase in `(0, 1]`: exact ray plus a float for display.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseValue {
    pub exact_ray: ChargeValue,
    pub approx: f64,
    /// The phase itself when it is rational (`1`, `1/2`, `1/4` or `3/4`).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<String>,
}

impl PhaseValue {
    pub fn of_heart_charge(z: &ChargeValue) -> Self {
        let ray = z.normalized();
        let exact = if ray.im.is_zero() {
            Some("1")
        } else if ray.re.is_zero() {
            Some("1/2")
        } else if ray.re == ray.im {
            Some("1/4")
        } else if ray.re == -&ray.im {
            Some("3/4")
        } else {
            None
        };
        let approx = match exact {
            Some("1") => 1.0,
            Some("1/2") => 0.5,
            Some("1/4") => 0.25,
            Some("3/4") => 0.75,
            _ => to_f64(&ray.im).atan2(to_f64(&ray.re)) / PI,
        };
        PhaseValue {
            exact_ray: ray,
            approx,
            exact: exact.map(String::from),
        }
    }
}

pub fn phase(p: &StabPoint, v: &VTilde) -> Result<PhaseValue> {
    Ok(PhaseValue::of_heart_charge(&heart_charge(p, v)?))
}

/// Exact comparison `phi_P(v)` against `phi_P(w)`.
pub fn phase_compare(p: &StabPoint, v: &VTilde, w: &VTilde) -> Result<Ordering> {
    let zv = heart_charge(p, v)?;
    let zw = heart_charge(p, w)?;
    // Both lie in the half-open upper half plane, so counterclockwise from zw
    // means strictly larger phase.
    Ok(zw.cross(&zv).cmp(&Rat::zero()))
}

/// The potential wall of `v` and `w`: the line through their plane points.
pub fn wall_of(v: &VTilde, w: &VTilde) -> Result<PlaneLine> {
    PlaneLine::through(&v.plane_point()?, &w.plane_point()?)
}

/// Where two walls of `v` meet, and whether that point avoids the open
/// region above the boundary parabola.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallPairWitness {
    pub meet: PlanePoint,
    pub disjoint: bool,
}

pub fn walls_disjoint_above_parabola(
    v: &VTilde,
    w1: &VTilde,
    w2: &VTilde,
) -> Result<WallPairWitness> {
    if v.discriminant().is_negative() {
        return Err(Error::Precondition(format!(
            "discriminant of {v} is negative"
        )));
    }
    let l1 = wall_of(v, w1)?;
    let l2 = wall_of(v, w2)?;
    let meet = l1
        .meet(&l2)
        .ok_or_else(|| Error::Degenerate("the two walls coincide".into()))?;
    Ok(WallPairWitness {
        disjoint: !meet.above_parabola(),
        meet,
    })
}
