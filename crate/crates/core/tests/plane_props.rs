mod common;

use common::rat;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use twofloat::TwoFloat;
use walland_core::plane::{
    collinear, line_parabola_intersect, orientation, parabola_translate, segments_intersect,
};
use walland_core::rational::{frac, int};
use walland_core::{ParabolaShift, PlaneLine, PlanePoint, QuadNum, QuadPoint, Rat};

fn affine() -> impl Strategy<Value = PlanePoint> {
    (rat(10), rat(10)).prop_map(|(x, y)| PlanePoint::affine(x, y))
}

fn two(x: &Rat) -> TwoFloat {
    let n: i64 = x.numer().try_into().unwrap();
    let d: i64 = x.denom().try_into().unwrap();
    TwoFloat::from(n as f64) / TwoFloat::from(d as f64)
}

fn two_quad(x: &QuadNum) -> TwoFloat {
    two(x.a()) + two(x.b()) * two(x.delta()).sqrt()
}

fn quad() -> impl Strategy<Value = QuadNum> {
    (rat(20), rat(20), 0i64..=30, 1i64..=4)
        .prop_map(|(a, b, n, d)| QuadNum::new(a, b, frac(n, d)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn orientation_is_alternating(p in affine(), q in affine(), r in affine()) {
        let o = orientation(&p, &q, &r).unwrap();
        prop_assert_eq!(o, orientation(&p, &r, &q).unwrap().reverse());
        prop_assert_eq!(o, orientation(&q, &r, &p).unwrap());
        prop_assert_eq!(o, orientation(&r, &p, &q).unwrap());
        prop_assert_eq!(collinear(&p, &q, &r), o.sign() == 0);
    }

    #[test]
    fn collinear_triples_have_no_orientation(p in affine(), q in affine(), t in rat(4)) {
        let (px, py) = p.xy().unwrap();
        let (qx, qy) = q.xy().unwrap();
        let r = PlanePoint::affine(&px + &t * (&qx - &px), &py + &t * (&qy - &py));
        prop_assert!(collinear(&p, &q, &r));
        prop_assert_eq!(orientation(&p, &q, &r).unwrap().sign(), 0);
    }

    #[test]
    fn chord_points_satisfy_both_equations(a in rat(10), b in rat(10), c in rat(10), shift in rat(5)) {
        prop_assume!(!(b == int(0) && c == int(0)));
        let l = PlaneLine::new(a, b, c).unwrap();
        let par = ParabolaShift::new(shift);
        let pts = line_parabola_intersect(&l, &par).unwrap();
        prop_assert!(pts.len() <= 2);
        for p in &pts {
            prop_assert!(l.eval_quad(p).unwrap().is_zero());
            prop_assert!(par.contains_quad(p).unwrap());
        }
        if pts.len() == 2 {
            prop_assert!(pts[0].x < pts[1].x);
        }
    }

    #[test]
    fn translation_keeps_parabola_level(p in affine(), d in rat(10)) {
        let moved = parabola_translate(&p, &d).unwrap();
        prop_assert_eq!(moved.parabola_level().unwrap(), p.parabola_level().unwrap());
        prop_assert_eq!(moved.x().unwrap(), &(p.x().unwrap() + &d));
    }

    #[test]
    fn segment_test_is_symmetric(a in affine(), b in affine(), c in affine(), d in affine()) {
        let q = |p: &PlanePoint| p.to_quad().unwrap();
        let (a, b, c, d) = (q(&a), q(&b), q(&c), q(&d));
        let x = segments_intersect((&a, &b), (&c, &d)).unwrap();
        prop_assert_eq!(x, segments_intersect((&d, &c), (&b, &a)).unwrap());
        prop_assert_eq!(x, segments_intersect((&c, &d), (&a, &b)).unwrap());
    }

    #[test]
    fn quad_arithmetic_in_one_field(a in rat(9), b in rat(9), c in rat(9), d in rat(9), n in 2i64..=30) {
        let delta = int(n);
        let x = QuadNum::new(a, b, delta.clone()).unwrap();
        let y = QuadNum::new(c, d, delta).unwrap();
        let sum = x.checked_add(&y).unwrap();
        prop_assert_eq!(sum.checked_sub(&y).unwrap(), x.clone());
        if !y.is_zero() {
            let q = x.checked_div(&y).unwrap();
            prop_assert_eq!(q.checked_mul(&y).unwrap(), x);
        }
    }
}

#[test]
fn quad_comparison_agrees_with_double_double() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let mut compared = 0;
    for _ in 0..10_000 {
        let x = quad().new_tree(&mut runner).unwrap().current();
        let y = quad().new_tree(&mut runner).unwrap().current();
        let exact = x.cmp(&y);
        let gap = two_quad(&x) - two_quad(&y);
        if gap.abs() > TwoFloat::from(1e-15) {
            compared += 1;
            let float = if gap > TwoFloat::from(0.0) {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Less
            };
            assert_eq!(exact, float, "{x} vs {y}");
        }
    }
    assert!(compared > 9_000);
}

#[test]
fn quad_ties_are_exact() {
    // sqrt(8) = 2 sqrt(2), sqrt(18)/3 = sqrt(2)
    let a = QuadNum::new(int(0), int(1), int(8)).unwrap();
    let b = QuadNum::new(int(0), int(2), int(2)).unwrap();
    assert_eq!(a, b);
    let c = QuadNum::new(int(1), frac(1, 3), int(18)).unwrap();
    let d = QuadNum::new(int(1), int(1), int(2)).unwrap();
    assert_eq!(c.cmp(&d), std::cmp::Ordering::Equal);
    // sqrt(2) + sqrt(3) against sqrt(5 + 2 sqrt(6)) squared out: compare 1 + sqrt(2) and sqrt(3) + 1/10
    let e = QuadNum::new(int(1), int(1), int(2)).unwrap();
    let f = QuadNum::new(frac(1, 10), int(1), int(3)).unwrap();
    assert!(e > f);
    assert_eq!(QuadPoint::rational(int(1), int(2)).to_plane_point(), Some(PlanePoint::affine(int(1), int(2))));
}
