//! The interval that contains the phase at `Q` of every factor that can split
//! off while the parameter moves from `P` to `Q`.
//!
//! The line through `v(E)` and `P` meets the boundary parabola in `A` and `B`.
//! Their phases at `P` agree with `phi_P(E)`; following them continuously to
//! `Q` gives the two endpoints.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::VTilde;
use crate::phase::{LiftedPhase, Ray};
use crate::plane::{line_parabola_intersect, ParabolaShift, PlaneLine, PlanePoint, QuadPoint};
use crate::quad::QuadNum;
use crate::stability::{heart_charge, StabPoint};

/// A point of the boundary parabola in the projective plane.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParabolaPoint {
    Affine(QuadPoint),
    /// `[0 : 0 : 1]`, where every vertical line meets the parabola again.
    Infinity,
}

impl ParabolaPoint {
    pub fn homog(&self) -> [QuadNum; 3] {
        match self {
            ParabolaPoint::Affine(p) => [QuadNum::one(), p.x.clone(), p.y.clone()],
            ParabolaPoint::Infinity => [QuadNum::zero(), QuadNum::zero(), QuadNum::one()],
        }
    }

    pub fn affine(&self) -> Option<&QuadPoint> {
        match self {
            ParabolaPoint::Affine(p) => Some(p),
            ParabolaPoint::Infinity => None,
        }
    }

    pub fn is_plane_point(&self, p: &PlanePoint) -> bool {
        match self {
            ParabolaPoint::Affine(a) => p.to_quad().is_ok_and(|q| &q == a),
            ParabolaPoint::Infinity => p == &PlanePoint::vertical_infinity(),
        }
    }
}

impl fmt::Display for ParabolaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParabolaPoint::Affine(p) => write!(f, "{p}"),
            ParabolaPoint::Infinity => f.write_str("[0 : 0 : 1]"),
        }
    }
}

/// The two points where a line meets the boundary parabola, left one first.
pub fn chord_endpoints(line: &PlaneLine) -> Result<(ParabolaPoint, ParabolaPoint)> {
    let mut pts = line_parabola_intersect(line, &ParabolaShift::boundary())?;
    if line.is_vertical() {
        let a = pts.pop().expect("vertical lines meet the parabola");
        return Ok((ParabolaPoint::Affine(a), ParabolaPoint::Infinity));
    }
    if pts.len() != 2 {
        return Err(Error::Degenerate(format!(
            "line {line} meets the boundary parabola in {} point(s)",
            pts.len()
        )));
    }
    let b = pts.pop().expect("two points");
    let a = pts.pop().expect("two points");
    Ok((ParabolaPoint::Affine(a), ParabolaPoint::Affine(b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EndpointLabel {
    A,
    B,
}

/// One end of a phase interval.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Endpoint {
    pub point: ParabolaPoint,
    /// Representative vector whose charge at `P` points along `Z_P(v)`.
    pub vector: [QuadNum; 3],
    pub phase_at_q: LiftedPhase,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhaseInterval {
    pub p: StabPoint,
    pub q: StabPoint,
    pub v: VTilde,
    pub line: PlaneLine,
    pub phase_at_p: LiftedPhase,
    pub a: Endpoint,
    pub b: Endpoint,
    pub lo: EndpointLabel,
    pub hi: EndpointLabel,
    /// Set when `v(E)` itself lies on the parabola and coincides with an
    /// endpoint; that side of the interval is then attained by `E` itself.
    pub degenerate_endpoint: Option<EndpointLabel>,
}

impl PhaseInterval {
    pub fn endpoint(&self, label: EndpointLabel) -> &Endpoint {
        match label {
            EndpointLabel::A => &self.a,
            EndpointLabel::B => &self.b,
        }
    }

    pub fn lo_phase(&self) -> &LiftedPhase {
        &self.endpoint(self.lo).phase_at_q
    }

    pub fn hi_phase(&self) -> &LiftedPhase {
        &self.endpoint(self.hi).phase_at_q
    }

    /// Weakly between the endpoints.
    pub fn contains(&self, phase: &LiftedPhase) -> bool {
        self.lo_phase() <= phase && phase <= self.hi_phase()
    }

    /// Strictly below both endpoints.
    pub fn strictly_below(&self, phase: &LiftedPhase) -> bool {
        phase < self.lo_phase()
    }
}

fn ray_of(p: &StabPoint, u: &[QuadNum; 3]) -> Ray {
    p.charge_quad(u)
}

/// Signs `u` so that its charge at `p` points the same way as `target`.
fn orient_like(p: &StabPoint, u: [QuadNum; 3], target: &Ray) -> Result<[QuadNum; 3]> {
    let z = ray_of(p, &u);
    if z.same_direction(target) {
        Ok(u)
    } else if z.neg().same_direction(target) {
        Ok(u.map(|c| -c))
    } else {
        Err(Error::Degenerate(
            "parabola point is not on the line through v(E) and P".into(),
        ))
    }
}

pub fn phase_bound_interval(p: &StabPoint, q: &StabPoint, v: &VTilde) -> Result<PhaseInterval> {
    let vp = v.plane_point()?;
    let line = PlaneLine::through(&vp, &p.point())?;
    let zp = heart_charge(p, v)?.to_ray();
    let phase_at_p = LiftedPhase::in_heart(zp.clone())?;
    let (pa, pb) = chord_endpoints(&line)?;

    let end = |point: ParabolaPoint| -> Result<Endpoint> {
        let vector = orient_like(p, point.homog(), &zp)?;
        let start = LiftedPhase {
            turns: phase_at_p.turns,
            ray: ray_of(p, &vector),
        };
        let phase_at_q = start.transport(ray_of(q, &vector))?;
        Ok(Endpoint {
            point,
            vector,
            phase_at_q,
        })
    };
    let a = end(pa)?;
    let b = end(pb)?;
    let (lo, hi) = match a.phase_at_q.cmp(&b.phase_at_q) {
        Ordering::Greater => (EndpointLabel::B, EndpointLabel::A),
        _ => (EndpointLabel::A, EndpointLabel::B),
    };
    let degenerate_endpoint = if a.point.is_plane_point(&vp) {
        Some(EndpointLabel::A)
    } else if b.point.is_plane_point(&vp) {
        Some(EndpointLabel::B)
    } else {
        None
    };
    Ok(PhaseInterval {
        p: p.clone(),
        q: q.clone(),
        v: v.clone(),
        line,
        phase_at_p,
        a,
        b,
        lo,
        hi,
        degenerate_endpoint,
    })
}

/// Phase at `q` of `v`, followed continuously from its heart phase at `p`.
pub fn transported_phase(p: &StabPoint, q: &StabPoint, v: &VTilde) -> Result<LiftedPhase> {
    let start = LiftedPhase::in_heart(heart_charge(p, v)?.to_ray())?;
    start.transport(q.charge(v).to_ray())
}
