//! Following a character along a parameter segment and splitting it at every
//! candidate wall it crosses.
//!
//! Each node carries a character, the point where it starts moving and its
//! phase there. At every wall crossed on the way to the common end point the
//! node may split into two factors, which then move on from the crossing
//! point with the parent's phase. Every node, split or not, ends at `Q` with
//! a phase; those are the phases the interval bound speaks about.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{CharVec, SurfaceLattice, VTilde};
use crate::phase::LiftedPhase;
use crate::plane::PlaneLine;
use crate::rational::{fmt_rat, Rat};
use crate::stability::{heart_charge, StabPoint};
use crate::walls::enumerate::{enumerate_candidate_walls, Region};

/// Search bounds for destabilizing factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBounds {
    pub rank_bound: u32,
    pub c1_bound: u32,
    /// Splitting generations below the root.
    pub max_depth: u32,
}

impl LatticeBounds {
    pub fn new(rank_bound: u32, c1_bound: u32) -> Self {
        Self {
            rank_bound,
            c1_bound,
            max_depth: 2,
        }
    }

    pub fn with_depth(self, max_depth: u32) -> Self {
        Self { max_depth, ..self }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathNode {
    pub character: CharVec,
    pub vtilde: VTilde,
    pub start: StabPoint,
    pub phase_at_start: LiftedPhase,
    pub phase_at_q: LiftedPhase,
    pub events: Vec<PathEvent>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathEvent {
    pub r: StabPoint,
    /// Position of `r` on the node's own segment.
    pub t: String,
    pub wall: PlaneLine,
    pub splits: Vec<Split>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Split {
    pub factors: Vec<PathNode>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathTree {
    pub p: StabPoint,
    pub q: StabPoint,
    pub bounds: LatticeBounds,
    pub root: PathNode,
    pub node_count: usize,
}

impl PathNode {
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a PathNode)) {
        f(self);
        for ev in &self.events {
            for sp in &ev.splits {
                for n in &sp.factors {
                    n.visit(f);
                }
            }
        }
    }

    fn count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }
}

impl PathTree {
    pub fn nodes(&self) -> Vec<&PathNode> {
        let mut out = Vec::new();
        self.root.visit(&mut |n| out.push(n));
        out
    }
}

struct Ctx<'a> {
    lattice: &'a SurfaceLattice,
    q: &'a StabPoint,
    bounds: LatticeBounds,
}

impl Ctx<'_> {
    fn node(&self, ch: CharVec, start: StabPoint, phase: LiftedPhase, depth: u32) -> Result<PathNode> {
        let v = self.lattice.vtilde(&ch)?;
        let phase_at_q = phase.transport(self.q.charge(&v).to_ray())?;
        let mut events = Vec::new();
        if depth < self.bounds.max_depth && &start != self.q {
            let region = Region::Segment {
                from: start.clone(),
                to: self.q.clone(),
            };
            let walls = enumerate_candidate_walls(
                self.lattice,
                &ch,
                &region,
                self.bounds.rank_bound,
                self.bounds.c1_bound,
            )?;
            for wall in walls {
                let r = wall.crossing()?;
                let phase_r = phase.transport(r.charge(&v).to_ray())?;
                // keep one of each complementary pair {w, v - w}
                let mut pairs: Vec<(CharVec, CharVec)> = wall
                    .witnesses
                    .iter()
                    .map(|w| {
                        let rest = &ch - &w.character;
                        if w.character <= rest {
                            (w.character.clone(), rest)
                        } else {
                            (rest, w.character.clone())
                        }
                    })
                    .collect();
                pairs.sort();
                pairs.dedup();
                let splits = pairs
                    .into_par_iter()
                    .map(|(a, b)| -> Result<Split> {
                        let factors = [a, b]
                            .into_iter()
                            .map(|f| {
                                let fv = self.lattice.vtilde(&f)?;
                                let ph = LiftedPhase {
                                    turns: phase_r.turns,
                                    ray: r.charge(&fv).to_ray(),
                                };
                                self.node(f, r.clone(), ph, depth + 1)
                            })
                            .collect::<Result<Vec<_>>>()?;
                        Ok(Split { factors })
                    })
                    .collect::<Result<Vec<_>>>()?;
                events.push(PathEvent {
                    r,
                    t: wall.t.unwrap_or_default(),
                    wall: wall.wall,
                    splits,
                });
            }
        }
        Ok(PathNode {
            character: ch,
            vtilde: v,
            start,
            phase_at_start: phase,
            phase_at_q,
            events,
        })
    }
}

pub fn simulate_destabilization_paths(
    lattice: &SurfaceLattice,
    p: &StabPoint,
    q: &StabPoint,
    ch: &CharVec,
    bounds: LatticeBounds,
) -> Result<PathTree> {
    lattice.check_char(ch)?;
    if !lattice.is_integral(ch) {
        return Err(Error::Precondition(format!("character {ch} is not integral")));
    }
    let v = lattice.vtilde(ch)?;
    if v.discriminant() < Rat::from_integer(0.into()) {
        return Err(Error::Precondition(format!(
            "discriminant {} of {v} is negative",
            fmt_rat(&v.discriminant())
        )));
    }
    let phase = LiftedPhase::in_heart(heart_charge(p, &v)?.to_ray())?;
    let ctx = Ctx { lattice, q, bounds };
    let root = ctx.node(ch.clone(), p.clone(), phase, 0)?;
    Ok(PathTree {
        p: p.clone(),
        q: q.clone(),
        bounds,
        node_count: root.count(),
        root,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DivisorClass;
    use crate::rational::{frac, int};
    use crate::walls::interval::phase_bound_interval;

    fn ch(r: i64, c: i64, e: i64) -> CharVec {
        CharVec::new(int(r), DivisorClass::from_ints(&[c]), int(e))
    }

    #[test]
    fn no_walls_means_single_leaf() {
        let l = SurfaceLattice::projective_plane();
        let p = StabPoint::new(int(-1), int(3)).unwrap();
        let q = StabPoint::new(frac(-9, 10), int(3)).unwrap();
        let t = simulate_destabilization_paths(&l, &p, &q, &ch(1, 0, 0), LatticeBounds::new(1, 1))
            .unwrap();
        assert_eq!(t.node_count, 1);
        assert!(t.root.events.is_empty());
    }

    #[test]
    fn ideal_sheaf_tree_respects_interval() {
        let l = SurfaceLattice::projective_plane();
        let p = StabPoint::new(int(-2), frac(5, 2)).unwrap();
        let q = StabPoint::new(frac(-3, 2), frac(7, 6)).unwrap();
        let e = ch(1, 0, -1);
        let tree =
            simulate_destabilization_paths(&l, &p, &q, &e, LatticeBounds::new(3, 5)).unwrap();
        assert!(tree.node_count > 1);
        let iv = phase_bound_interval(&p, &q, &l.vtilde(&e).unwrap()).unwrap();
        for n in tree.nodes() {
            assert!(iv.contains(&n.phase_at_q), "{}", n.character);
            for ev in &n.events {
                for sp in &ev.splits {
                    let sum = &sp.factors[0].character + &sp.factors[1].character;
                    assert_eq!(sum, n.character);
                }
            }
        }
    }
}
