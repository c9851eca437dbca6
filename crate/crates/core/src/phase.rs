//! Phases beyond `(0, 1]`: exact rays with a winding count, transported
//! continuously along straight paths in the parameter plane.
//!
//! A lifted phase is `2 * turns + Arg(ray) / pi` with `Arg` in `(-pi, pi]`.
//! The charge of a fixed character is affine in `(s, q)`, so along a straight
//! parameter segment it traces a straight segment in the complex plane and
//! turns by strictly less than `pi`. That is what makes transport exact.

use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{Biquadratic, QuadNum, Surd2};

/// A nonzero complex direction with quadratic-field components.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Ray {
    pub re: QuadNum,
    pub im: QuadNum,
}

fn lifted_sign(a: &Ray, b: &Ray, combine: impl Fn(&Surd2, &Surd2, &Surd2, &Surd2) -> Surd2) -> Ordering {
    let f = Biquadratic::spanning([&a.re, &a.im, &b.re, &b.im])
        .expect("rays span at most two quadratic fields");
    let lift = |x: &QuadNum| f.lift(x).expect("component lies in the spanning field");
    combine(&lift(&a.re), &lift(&a.im), &lift(&b.re), &lift(&b.im)).signum()
}

/// Sign of `a.re * b.im - a.im * b.re`.
pub fn cross_sign(a: &Ray, b: &Ray) -> Ordering {
    lifted_sign(a, b, |ar, ai, br, bi| ar.mul(bi).sub(&ai.mul(br)))
}

fn dot_sign(a: &Ray, b: &Ray) -> Ordering {
    lifted_sign(a, b, |ar, ai, br, bi| ar.mul(br).add(&ai.mul(bi)))
}

impl Ray {
    pub fn new(re: QuadNum, im: QuadNum) -> Self {
        Self { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> Ray {
        Ray::new(-&self.re, -&self.im)
    }

    /// 0: lower half plane, 1: positive reals, 2: upper half plane,
    /// 3: negative reals. Principal arguments increase with this index.
    fn sector(&self) -> u8 {
        match (self.im.signum(), self.re.signum()) {
            (Ordering::Less, _) => 0,
            (Ordering::Equal, Ordering::Greater) => 1,
            (Ordering::Greater, _) => 2,
            _ => 3,
        }
    }

    /// Compares principal arguments in `(-pi, pi]`.
    pub fn cmp_arg(&self, other: &Ray) -> Ordering {
        let (a, b) = (self.sector(), other.sector());
        if a != b {
            return a.cmp(&b);
        }
        if a == 0 || a == 2 {
            // inside an open half plane a counterclockwise turn is an increase
            return cross_sign(other, self);
        }
        Ordering::Equal
    }

    /// Same direction (positive multiple).
    pub fn same_direction(&self, other: &Ray) -> bool {
        cross_sign(self, other) == Ordering::Equal && dot_sign(self, other) == Ordering::Greater
    }

    pub fn arg_f64(&self) -> f64 {
        self.im.to_f64().atan2(self.re.to_f64())
    }

    /// Principal argument over `pi`, exactly `1` on the negative reals.
    fn arg_over_pi(&self) -> f64 {
        if self.sector() == 3 {
            1.0
        } else {
            self.arg_f64() / PI
        }
    }
}

/// `2 * turns + Arg(ray)/pi`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftedPhase {
    pub turns: i64,
    pub ray: Ray,
}

impl LiftedPhase {
    /// Phase of a charge in the upper half plane or on the negative reals,
    /// which lies in `(0, 1]`.
    pub fn in_heart(ray: Ray) -> Result<Self> {
        let s = ray.sector();
        if ray.is_zero() {
            return Err(Error::ZeroCharge);
        }
        if s != 2 && s != 3 {
            return Err(Error::NotInHeart {
                re: ray.re.to_string(),
                im: ray.im.to_string(),
            });
        }
        Ok(Self { turns: 0, ray })
    }

    /// Follows the phase while the charge moves along the straight segment
    /// from `self.ray` to `target` (both values of one affine family).
    pub fn transport(&self, target: Ray) -> Result<LiftedPhase> {
        if target.is_zero() {
            return Err(Error::ZeroCharge);
        }
        let turn = cross_sign(&self.ray, &target);
        let arg = self.ray.cmp_arg(&target);
        let turns = match turn {
            Ordering::Greater if arg == Ordering::Greater => self.turns + 1,
            Ordering::Less if arg == Ordering::Less => self.turns - 1,
            Ordering::Equal if !self.ray.same_direction(&target) => {
                return Err(Error::Degenerate(
                    "charge passes through zero along the path".into(),
                ))
            }
            _ => self.turns,
        };
        Ok(LiftedPhase { turns, ray: target })
    }

    pub fn to_f64(&self) -> f64 {
        2.0 * self.turns as f64 + self.ray.arg_over_pi()
    }
}

impl PartialEq for LiftedPhase {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for LiftedPhase {}

impl PartialOrd for LiftedPhase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LiftedPhase {
    fn cmp(&self, other: &Self) -> Ordering {
        self.turns
            .cmp(&other.turns)
            .then_with(|| self.ray.cmp_arg(&other.ray))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn r(re: i64, im: i64) -> Ray {
        Ray::new(int(re).into(), int(im).into())
    }

    #[test]
    fn argument_order() {
        let order = [r(-1, -1), r(0, -1), r(1, -1), r(1, 0), r(1, 1), r(0, 1), r(-1, 1), r(-1, 0)];
        for (i, a) in order.iter().enumerate() {
            for (j, b) in order.iter().enumerate() {
                assert_eq!(a.cmp_arg(b), i.cmp(&j), "{i} vs {j}");
            }
        }
    }

    #[test]
    fn transport_winds() {
        let start = LiftedPhase::in_heart(r(-1, 1)).unwrap();
        // counterclockwise past the negative real axis
        let past = start.transport(r(-1, -1)).unwrap();
        assert_eq!(past.turns, 1);
        assert!((past.to_f64() - 1.25).abs() < 1e-12);
        assert!(past > start);
        // and back
        let back = past.transport(r(-1, 1)).unwrap();
        assert_eq!(back.turns, 0);
        assert_eq!(back, start);
        // clockwise below the positive reals
        let low = LiftedPhase::in_heart(r(1, 1)).unwrap().transport(r(1, -1)).unwrap();
        assert_eq!(low.turns, 0);
        assert!((low.to_f64() + 0.25).abs() < 1e-12);
        // clockwise from the lower half plane onto the negative reals
        let neg = low.transport(r(-1, -1)).unwrap().transport(r(-1, 0)).unwrap();
        assert_eq!(neg.turns, -1);
        assert!((neg.to_f64() + 1.0).abs() < 1e-12);
        assert!(LiftedPhase::in_heart(r(0, 1)).unwrap().transport(r(0, -1)).is_err());
    }

    #[test]
    fn heart_entry() {
        assert!(LiftedPhase::in_heart(r(1, 0)).is_err());
        assert!(LiftedPhase::in_heart(r(0, 0)).is_err());
        assert!((LiftedPhase::in_heart(r(-3, 0)).unwrap().to_f64() - 1.0).abs() < 1e-15);
    }
}
