//! Finite search for numerical destabilizers.
//!
//! A candidate is an integral character `w` with `w` and `v - w` both
//! Bogomolov-nonnegative whose charge at some point `X` of the region lies
//! strictly between `0` and `Z_X(v)` on the ray of `Z_X(v)`. Such an `X` lies
//! on the line through the plane points of `v` and `w`, and the condition is
//! the same at every point of that line above the parabola, since none of
//! the three charges can vanish there.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{CharVec, DivisorClass, SurfaceLattice, VTilde};
use crate::plane::{PlaneLine, PlanePoint};
use crate::rational::{ceil_int, floor_int, int, serde_rat, Rat};
use crate::stability::{central_charge, HeartSign, StabPoint};

/// Where in the `(s, q)` plane walls are looked for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// The open segment between two parameter points.
    Segment { from: StabPoint, to: StabPoint },
    /// A closed box, intersected with the open region above the parabola.
    Box {
        #[serde(with = "serde_rat")]
        s_min: Rat,
        #[serde(with = "serde_rat")]
        s_max: Rat,
        #[serde(with = "serde_rat")]
        q_min: Rat,
        #[serde(with = "serde_rat")]
        q_max: Rat,
    },
}

impl Region {
    fn bounds(&self) -> Result<(Rat, Rat, Rat, Rat)> {
        match self {
            Region::Segment { from, to } => Ok((
                from.s().min(to.s()).clone(),
                from.s().max(to.s()).clone(),
                from.q().min(to.q()).clone(),
                from.q().max(to.q()).clone(),
            )),
            Region::Box {
                s_min,
                s_max,
                q_min,
                q_max,
            } => {
                if s_min > s_max || q_min > q_max {
                    return Err(Error::Precondition("empty box".into()));
                }
                Ok((s_min.clone(), s_max.clone(), q_min.clone(), q_max.clone()))
            }
        }
    }

    /// A point of the wall inside the region and strictly above the parabola,
    /// with its position along the segment when the region is one.
    fn sample(&self, wall: &PlaneLine) -> Option<(PlanePoint, Option<Rat>)> {
        match self {
            Region::Segment { from, to } => {
                let (p, q) = (from.point(), to.point());
                let (ep, eq) = (wall.eval(&p), wall.eval(&q));
                if ep.is_zero() || eq.is_zero() || ep.is_positive() == eq.is_positive() {
                    return None;
                }
                let t = &ep / (&ep - &eq);
                let x = from.lerp(to, &t).point();
                Some((x, Some(t)))
            }
            Region::Box {
                s_min,
                s_max,
                q_min,
                q_max,
            } => box_sample(wall, s_min, s_max, q_min, q_max).map(|x| (x, None)),
        }
    }
}

/// Maximizes `q - s^2/2` over the part of the wall inside the box.
fn box_sample(wall: &PlaneLine, s_min: &Rat, s_max: &Rat, q_min: &Rat, q_max: &Rat) -> Option<PlanePoint> {
    let [a, b, c] = wall.coeffs();
    if wall.is_at_infinity() {
        return None;
    }
    if c.is_zero() {
        let s = -a / b;
        if &s < s_min || &s > s_max {
            return None;
        }
        let x = PlanePoint::affine(s, q_max.clone());
        return x.above_parabola().then_some(x);
    }
    // q = slope s + icpt; clip s so that q stays in [q_min, q_max]
    let slope = -b / c;
    let icpt = -a / c;
    let (mut lo, mut hi) = (s_min.clone(), s_max.clone());
    if slope.is_zero() {
        if &icpt < q_min || &icpt > q_max {
            return None;
        }
    } else {
        let s1 = (q_min - &icpt) / &slope;
        let s2 = (q_max - &icpt) / &slope;
        let (l, h) = if s1 <= s2 { (s1, s2) } else { (s2, s1) };
        lo = lo.max(l);
        hi = hi.min(h);
    }
    if lo > hi {
        return None;
    }
    let s = slope.clone().max(lo).min(hi);
    let q = &slope * &s + &icpt;
    let x = PlanePoint::affine(s, q);
    x.above_parabola().then_some(x)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WallWitness {
    pub character: CharVec,
    pub vtilde: VTilde,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateWall {
    pub wall: PlaneLine,
    /// A parameter point on the wall inside the region; for a segment this is
    /// the crossing point.
    pub sample: PlanePoint,
    /// Position of the crossing along the segment, in `(0, 1)`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<String>,
    pub witnesses: Vec<WallWitness>,
}

impl CandidateWall {
    pub fn crossing(&self) -> Result<StabPoint> {
        StabPoint::from_plane_point(&self.sample)
    }
}

/// `Z_X(v)` is a heart charge and `Z_X(w)` lies strictly between it and `0`.
fn strictly_inside(x: &StabPoint, v: &VTilde, w: &VTilde) -> bool {
    let zv = central_charge(x, v);
    let zw = central_charge(x, w);
    if !HeartSign::of(&zv).passes() || !zv.cross(&zw).is_zero() {
        return false;
    }
    let d = zv.dot(&zw);
    d.is_positive() && d < zv.dot(&zv)
}

fn abs_max(a: Rat, b: Rat) -> Rat {
    a.abs().max(b.abs())
}

/// Integer points `k` with `base + k` in `[lo, hi]`.
fn integer_steps(base: &Rat, lo: &Rat, hi: &Rat) -> std::ops::RangeInclusive<i64> {
    let from = ceil_int(&(lo - base));
    let to = floor_int(&(hi - base));
    let clamp = |n: BigInt| n.to_i64().unwrap_or(if n.is_negative() { i64::MIN } else { i64::MAX });
    clamp(from)..=clamp(to)
}

fn c1_grid(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-bound..=bound).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out
}

/// Bound on the number of `ch2` values tried for one `(rank, c1)`; a wider
/// range means the region is far larger than anything the search is for.
const MAX_CH2_STEPS: i64 = 1_000_000;

pub fn enumerate_candidate_walls(
    lattice: &SurfaceLattice,
    ch: &CharVec,
    region: &Region,
    rank_bound: u32,
    c1_bound: u32,
) -> Result<Vec<CandidateWall>> {
    lattice.check_char(ch)?;
    if !lattice.is_integral(ch) {
        return Err(Error::Precondition(format!("character {ch} is not integral")));
    }
    let v = lattice.vtilde(ch)?;
    if v.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let (s_lo, s_hi, q_lo, q_hi) = region.bounds()?;
    let re_bound = abs_max(&q_lo * &v.v0 - &v.v2, &q_hi * &v.v0 - &v.v2);
    let im_bound = abs_max(&v.v1 - &s_lo * &v.v0, &v.v1 - &s_hi * &v.v0);
    let hh = lattice.h_squared();
    let dd = lattice.intersect(lattice.d(), lattice.d())?;
    let two = int(2);

    let rb = rank_bound as i64;
    let grid: Vec<(i64, Vec<i64>)> = (-rb..=rb)
        .flat_map(|r| c1_grid(lattice.rank(), c1_bound as i64).into_iter().map(move |c| (r, c)))
        .collect();

    let found: Vec<(PlaneLine, PlanePoint, Option<Rat>, WallWitness)> = grid
        .par_iter()
        .map(|(r, c)| -> Result<Vec<_>> {
            let mut out = Vec::new();
            let r = int(*r);
            let c = DivisorClass::from_ints(c);
            let w0 = &hh * &r;
            let w1 = lattice.intersect(lattice.h(), &c)?;
            // smallest |Im Z| of w over the box against the largest of v
            let im_lo = {
                let a = &w1 - &s_lo * &w0;
                let b = &w1 - &s_hi * &w0;
                if a.is_positive() != b.is_positive() && !a.is_zero() && !b.is_zero() {
                    Rat::zero()
                } else {
                    a.abs().min(b.abs())
                }
            };
            if im_lo > im_bound {
                return Ok(out);
            }
            let cc = lattice.intersect(&c, &c)?;
            let dc = lattice.intersect(lattice.d(), &c)?;
            // ch2 = cc/2 + k, and w2 = ch2 - D.c + r D.D/2
            let base = &cc / &two - &dc + &r * &dd / &two;
            let (qa, qb) = (&q_lo * &w0, &q_hi * &w0);
            let mut lo = qa.clone().min(qb.clone()) - &re_bound;
            let mut hi = qa.max(qb) + &re_bound;
            let u0 = &v.v0 - &w0;
            let u1 = &v.v1 - &w1;
            if w0.is_positive() {
                hi = hi.min(&w1 * &w1 / (&two * &w0));
            } else if w0.is_negative() {
                lo = lo.max(&w1 * &w1 / (&two * &w0));
            }
            if u0.is_positive() {
                lo = lo.max(&v.v2 - &u1 * &u1 / (&two * &u0));
            } else if u0.is_negative() {
                hi = hi.min(&v.v2 - &u1 * &u1 / (&two * &u0));
            }
            if lo > hi {
                return Ok(out);
            }
            let steps = integer_steps(&base, &lo, &hi);
            if steps.end().saturating_sub(*steps.start()) > MAX_CH2_STEPS {
                return Err(Error::Precondition(
                    "search region too large for the enumeration".into(),
                ));
            }
            for k in steps {
                let e = &cc / &two + int(k);
                let wc = CharVec::new(r.clone(), c.clone(), e);
                let w = lattice.vtilde(&wc)?;
                let rest = &v - &w;
                if w.is_zero() || rest.is_zero() {
                    continue;
                }
                if w.discriminant().is_negative() || rest.discriminant().is_negative() {
                    continue;
                }
                let Ok(wall) = PlaneLine::through(&v.plane_point()?, &w.plane_point()?) else {
                    continue;
                };
                let Some((x, t)) = region.sample(&wall) else {
                    continue;
                };
                let xp = StabPoint::from_plane_point(&x)?;
                if !strictly_inside(&xp, &v, &w) {
                    continue;
                }
                out.push((
                    wall,
                    x,
                    t,
                    WallWitness {
                        character: wc,
                        vtilde: w,
                    },
                ));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut grouped: BTreeMap<PlaneLine, (PlanePoint, Option<Rat>, Vec<WallWitness>)> = BTreeMap::new();
    for (wall, x, t, wit) in found {
        grouped
            .entry(wall)
            .or_insert_with(|| (x, t, Vec::new()))
            .2
            .push(wit);
    }
    let mut walls: Vec<(Option<Rat>, CandidateWall)> = grouped
        .into_iter()
        .map(|(wall, (sample, t, mut witnesses))| {
            witnesses.sort();
            (
                t.clone(),
                CandidateWall {
                    wall,
                    sample,
                    t: t.as_ref().map(crate::rational::fmt_rat),
                    witnesses,
                },
            )
        })
        .collect();
    // BTreeMap order already sorts by line; along a segment order by position.
    walls.sort_by(|(ta, _), (tb, _)| ta.cmp(tb));
    Ok(walls.into_iter().map(|(_, w)| w).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn p2() -> SurfaceLattice {
        SurfaceLattice::projective_plane()
    }

    fn ch(r: i64, c: i64, e: Rat) -> CharVec {
        CharVec::new(int(r), DivisorClass::from_ints(&[c]), e)
    }

    fn unit_box() -> Region {
        Region::Box {
            s_min: int(-2),
            s_max: int(2),
            q_min: int(0),
            q_max: int(4),
        }
    }

    #[test]
    fn zero_bounds_give_nothing() {
        let walls =
            enumerate_candidate_walls(&p2(), &ch(1, 0, int(0)), &unit_box(), 0, 0).unwrap();
        assert!(walls.is_empty());
    }

    #[test]
    fn skyscraper_walls_are_vertical() {
        let walls =
            enumerate_candidate_walls(&p2(), &ch(0, 0, int(1)), &unit_box(), 1, 1).unwrap();
        for w in &walls {
            assert!(w.wall.contains(&PlanePoint::vertical_infinity()));
        }
    }

    #[test]
    fn non_integral_rejected() {
        assert!(enumerate_candidate_walls(&p2(), &ch(1, 1, int(0)), &unit_box(), 1, 1).is_err());
    }

    #[test]
    fn witnesses_lie_on_their_walls() {
        let v = ch(1, 0, int(-2));
        let walls = enumerate_candidate_walls(&p2(), &v, &unit_box(), 2, 2).unwrap();
        assert!(!walls.is_empty());
        let vv = p2().vtilde(&v).unwrap();
        for w in &walls {
            assert!(w.wall.contains(&vv.plane_point().unwrap()));
            assert!(w.sample.above_parabola());
            for wit in &w.witnesses {
                assert!(w.wall.contains(&wit.vtilde.plane_point().unwrap()));
                assert!(wit.vtilde.discriminant() >= Rat::zero());
                assert!((&vv - &wit.vtilde).discriminant() >= Rat::zero());
            }
        }
    }

    #[test]
    fn samples_keep_v_in_the_heart() {
        let v = ch(1, 0, int(-2));
        let region = Region::Box {
            s_min: int(-3),
            s_max: int(0),
            q_min: frac(1, 2),
            q_max: int(5),
        };
        let walls = enumerate_candidate_walls(&p2(), &v, &region, 3, 5).unwrap();
        let vv = p2().vtilde(&v).unwrap();
        assert!(!walls.is_empty());
        for w in &walls {
            // s = 0 is where Z(v) turns real positive
            assert!(!w.wall.is_vertical(), "{}", w.wall);
            let x = w.crossing().unwrap();
            assert!(HeartSign::of(&central_charge(&x, &vv)).passes());
        }
    }

    #[test]
    fn segment_walls_are_ordered_and_crossed() {
        let p = StabPoint::new(int(-2), frac(5, 2)).unwrap();
        let q = StabPoint::new(frac(-1, 2), frac(3, 4)).unwrap();
        let region = Region::Segment {
            from: p.clone(),
            to: q.clone(),
        };
        let walls = enumerate_candidate_walls(&p2(), &ch(1, 0, int(-1)), &region, 3, 5).unwrap();
        let ts: Vec<Rat> = walls
            .iter()
            .map(|w| crate::rational::parse_rat(w.t.as_deref().unwrap()).unwrap())
            .collect();
        assert!(ts.windows(2).all(|p| p[0] <= p[1]));
        for t in &ts {
            assert!(t > &Rat::zero() && t < &int(1));
        }
    }
}
