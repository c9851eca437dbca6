#![allow(dead_code)]

use proptest::prelude::*;
use walland_core::rational::{frac, int};
use walland_core::{CharVec, DivisorClass, Rat, StabPoint, SurfaceLattice};

pub fn rat(range: i64) -> impl Strategy<Value = Rat> {
    (-range..=range, 1i64..=6).prop_map(|(n, d)| frac(n, d))
}

pub fn divisor(n: usize) -> impl Strategy<Value = DivisorClass> {
    prop::collection::vec(rat(8), n).prop_map(DivisorClass::new)
}

pub fn charvec(n: usize) -> impl Strategy<Value = CharVec> {
    (rat(6), divisor(n), rat(10)).prop_map(|(r, c, e)| CharVec::new(r, c, e))
}

/// Integral characters on the plane with `|r| <= 3`, `|c1| <= 5`.
pub fn p2_integral() -> impl Strategy<Value = CharVec> {
    (-3i64..=3, -5i64..=5, -4i64..=4).prop_map(|(r, c, n)| {
        CharVec::new(int(r), DivisorClass::from_ints(&[c]), frac(c * c - 2 * n, 2))
    })
}

pub fn stab_point() -> impl Strategy<Value = StabPoint> {
    (-40i64..=40, 1i64..=40).prop_map(|(s, h)| {
        let s = frac(s, 8);
        let q = &s * &s / int(2) + frac(h, 8);
        StabPoint::new(s, q).unwrap()
    })
}

/// `P^1 x P^1` with `H = h + f`, `K = -2h - 2f`.
pub fn quadric() -> SurfaceLattice {
    SurfaceLattice::new(
        vec!["h".into(), "f".into()],
        vec![vec![0, 1], vec![1, 0]],
        DivisorClass::from_ints(&[1, 1]),
        DivisorClass::from_ints(&[0, 0]),
        DivisorClass::from_ints(&[-2, -2]),
        1,
    )
    .unwrap()
}
