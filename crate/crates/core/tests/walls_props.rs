mod common;

use common::{charvec, p2_integral, quadric, stab_point};
use proptest::prelude::*;
use walland_core::stability::{heart_sign_check, HeartSign};
use walland_core::walls::ext2::dual_data;
use walland_core::walls::{
    expected_moduli_dim, ext2_certificate, phase_bound_interval, simulate_destabilization_paths,
    LatticeBounds,
};
use walland_core::rational::int;
use walland_core::SurfaceLattice;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_node_lands_inside_the_bound(ch in p2_integral(), p in stab_point(), q in stab_point()) {
        let l = SurfaceLattice::projective_plane();
        let v = l.vtilde(&ch).unwrap();
        prop_assume!(!v.is_zero() && v.discriminant() >= int(0));
        prop_assume!(heart_sign_check(&p, &v) != HeartSign::Fails);
        let tree = simulate_destabilization_paths(&l, &p, &q, &ch, LatticeBounds::new(3, 5)).unwrap();
        let iv = phase_bound_interval(&p, &q, &v).unwrap();
        for n in tree.nodes() {
            prop_assert!(iv.contains(&n.phase_at_q), "{} escapes", n.character);
            for ev in &n.events {
                for sp in &ev.splits {
                    prop_assert_eq!(&(&sp.factors[0].character + &sp.factors[1].character), &n.character);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn plane_certificates_never_fail(ch in p2_integral(), p in stab_point()) {
        let l = SurfaceLattice::projective_plane();
        let v = l.vtilde(&ch).unwrap();
        // torsion characters have no certificate (a point is its own twist)
        prop_assume!(v.v0 != int(0) && v.discriminant() >= int(0));
        prop_assume!(heart_sign_check(&p, &v) != HeartSign::Fails);
        if let Err(e) = ext2_certificate(&p, &ch, &l) {
            prop_assert!(false, "{} at {:?}: {}", ch, p, e);
        }
    }

    #[test]
    fn dual_reduction_is_an_involution(ch in charvec(2), s in common::rat(5)) {
        let l = quadric().with_twist(walland_core::DivisorClass::from_ints(&[1, -1])).unwrap();
        let (ch1, l1, s1) = dual_data(&ch, &l, &s);
        let (ch2, l2, s2) = dual_data(&ch1, &l1, &s1);
        prop_assert_eq!(ch2, ch);
        prop_assert_eq!(l2, l);
        prop_assert_eq!(s2, s);
    }

    #[test]
    fn expected_dimension_symmetries(ch in charvec(2)) {
        let l = quadric();
        let d = expected_moduli_dim(&ch, &l).unwrap();
        let twisted = l.tensor_by_k(&ch).unwrap();
        prop_assert_eq!(expected_moduli_dim(&twisted, &l).unwrap(), d.clone());
        prop_assert_eq!(expected_moduli_dim(&ch.derived_dual(), &l).unwrap(), d.clone());
        prop_assert_eq!(ch.derived_dual().derived_dual(), ch);
    }
}

#[test]
fn hilbert_scheme_dimensions() {
    let l = SurfaceLattice::projective_plane();
    for n in 1..=3 {
        let ch = l.parse_char(&format!("1,0,-{n}")).unwrap();
        assert_eq!(expected_moduli_dim(&ch, &l).unwrap(), int(2 * n));
    }
}
