mod common;

use std::cmp::Ordering;

use common::{rat, stab_point};
use proptest::prelude::*;
use walland_core::rational::{frac, int};
use walland_core::stability::{heart_sign_check, walls_disjoint_above_parabola, HeartSign};
use walland_core::{central_charge, phase, phase_compare, wall_of, ChargeValue, StabPoint, VTilde};

fn vtilde() -> impl Strategy<Value = VTilde> {
    (rat(6), rat(8), rat(10)).prop_map(|(a, b, c)| VTilde::new(a, b, c))
}

fn bogomolov() -> impl Strategy<Value = VTilde> {
    vtilde().prop_filter("nonnegative discriminant", |v| {
        !v.is_zero() && v.discriminant() >= int(0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn charge_is_linear(p in stab_point(), v in vtilde(), w in vtilde(), a in rat(5), b in rat(5)) {
        let combo = &v.scale(&a) + &w.scale(&b);
        let zv = central_charge(&p, &v);
        let zw = central_charge(&p, &w);
        let expect = ChargeValue::new(&a * &zv.re + &b * &zw.re, &a * &zv.im + &b * &zw.im);
        prop_assert_eq!(central_charge(&p, &combo), expect);
    }

    #[test]
    fn heart_phases_lie_in_unit_interval(p in stab_point(), v in vtilde()) {
        if heart_sign_check(&p, &v) != HeartSign::Fails && !central_charge(&p, &v).is_zero() {
            let ph = phase(&p, &v).unwrap().approx;
            prop_assert!(ph > 0.0 && ph <= 1.0, "{}", ph);
        } else {
            prop_assert!(phase(&p, &v).is_err());
        }
    }

    #[test]
    fn exact_comparison_matches_floats_off_ties(p in stab_point(), v in vtilde(), w in vtilde()) {
        let (Ok(a), Ok(b)) = (phase(&p, &v), phase(&p, &w)) else { return Ok(()) };
        let exact = phase_compare(&p, &v, &w).unwrap();
        if (a.approx - b.approx).abs() > 1e-9 {
            prop_assert_eq!(exact, a.approx.partial_cmp(&b.approx).unwrap());
        }
        prop_assert_eq!(phase_compare(&p, &w, &v).unwrap(), exact.reverse());
    }

    #[test]
    fn wall_membership_is_phase_equality(v in vtilde(), w in vtilde(), s in rat(6), h in 1i64..=30) {
        let Ok(l) = wall_of(&v, &w) else { return Ok(()) };
        prop_assert!(l.contains(&v.plane_point().unwrap()));
        prop_assert!(l.contains(&w.plane_point().unwrap()));
        // a point on the wall when possible, a nearby one otherwise
        let on = l.y_at(&s).and_then(|y| StabPoint::new(s.clone(), y).ok());
        let off = StabPoint::new(s.clone(), &s * &s / int(2) + frac(h, 4)).unwrap();
        for p in on.into_iter().chain([off]) {
            if let Ok(ord) = phase_compare(&p, &v, &w) {
                prop_assert_eq!(ord == Ordering::Equal, l.contains(&p.point()));
            }
        }
    }

    #[test]
    fn walls_of_one_character_meet_below_parabola(v in bogomolov(), w1 in vtilde(), w2 in vtilde()) {
        let (Ok(l1), Ok(l2)) = (wall_of(&v, &w1), wall_of(&v, &w2)) else { return Ok(()) };
        if l1 == l2 || l1.meet(&l2).is_none() {
            return Ok(());
        }
        let witness = walls_disjoint_above_parabola(&v, &w1, &w2).unwrap();
        prop_assert!(witness.disjoint, "walls meet at {}", witness.meet);
    }
}
