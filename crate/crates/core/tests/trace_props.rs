use std::sync::Arc;

use proptest::prelude::*;
use walland_core::rational::int;
use walland_core::trace::fuzz::{
    instance_rng, random_cochain, random_complex, random_form_cochain, random_form_cocycle,
};
use walland_core::trace::{
    cohomology, compose, form_differential, hom_degree_range, hom_differential, hom_dim,
    supertrace, theta_pairing, CohomClass, FormCochain, HomCochain, MatrixComplex, RatMatrix,
};
use walland_core::Rat;

fn sign(k: i64) -> Rat {
    int(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// Rank by fraction-free elimination over the integers, scaled from the
/// rational entries.
fn rank_oracle(rows: Vec<Vec<Rat>>) -> usize {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut a: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != BigInt::from(0)) else { continue };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            let (f, g) = (a[i][c].clone(), a[rank][c].clone());
            for j in 0..cols {
                a[i][j] = &a[i][j] * &g - &a[rank][j] * &f;
            }
        }
        rank += 1;
    }
    rank
}

/// Matrix of `D` on Hom^k, column by column from unit cochains.
fn d_rows(c: &Arc<MatrixComplex>, k: i64) -> Vec<Vec<Rat>> {
    let n = hom_dim(c, c, k);
    let m = hom_dim(c, c, k + 1);
    let cols: Vec<Vec<Rat>> = (0..n)
        .map(|j| {
            let e: Vec<Rat> = (0..n).map(|i| int((i == j) as i64)).collect();
            let f = HomCochain::from_vector(c.clone(), c.clone(), k, &e).unwrap();
            hom_differential(&f).unwrap().to_vector()
        })
        .collect();
    (0..m).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect()
}

fn complex(seed: u64, idx: u64) -> (Arc<MatrixComplex>, rand_chacha::ChaCha8Rng) {
    let mut rng = instance_rng(seed, idx);
    (Arc::new(random_complex(&mut rng)), rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>(), k in -2i64..=2) {
        let (c, mut rng) = complex(seed, 0);
        let g = random_cochain(&mut rng, &c, &c, k);
        prop_assert!(hom_differential(&hom_differential(&g).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), k in -2i64..=2, l in -2i64..=2) {
        let (c, mut rng) = complex(seed, 1);
        let a = random_cochain(&mut rng, &c, &c, k);
        let b = random_cochain(&mut rng, &c, &c, l);
        let lhs = hom_differential(&compose(&a, &b).unwrap()).unwrap();
        let rhs = compose(&hom_differential(&a).unwrap(), &b).unwrap()
            .add(&compose(&a, &hom_differential(&b).unwrap()).unwrap().scale(&sign(k)))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn graded_commutator_trace(seed in any::<u64>(), k in -3i64..=3) {
        let (c, mut rng) = complex(seed, 2);
        let a = random_cochain(&mut rng, &c, &c, k);
        let b = random_cochain(&mut rng, &c, &c, -k);
        let ab = supertrace(&compose(&a, &b).unwrap()).unwrap();
        let ba = supertrace(&compose(&b, &a).unwrap()).unwrap();
        prop_assert_eq!(ab, sign(k * k) * ba);
    }

    #[test]
    fn coboundaries_are_traceless(seed in any::<u64>()) {
        let (c, mut rng) = complex(seed, 3);
        let f = random_cochain(&mut rng, &c, &c, -1);
        prop_assert_eq!(supertrace(&hom_differential(&f).unwrap()).unwrap(), int(0));
    }

    #[test]
    fn pairing_is_antisymmetric_and_sees_classes(seed in any::<u64>()) {
        let (c, mut rng) = complex(seed, 4);
        let a = random_form_cocycle(&mut rng, &c).unwrap();
        let b = random_form_cocycle(&mut rng, &c).unwrap();
        let ab = theta_pairing(&a, &b).unwrap();
        prop_assert_eq!(&ab + theta_pairing(&b, &a).unwrap(), int(0));
        prop_assert_eq!(theta_pairing(&a, &a).unwrap(), int(0));
        // changing a representative by a coboundary leaves the pairing alone
        let h: FormCochain = random_form_cochain(&mut rng, &c, 0);
        let shifted = a.add(&form_differential(&h).unwrap()).unwrap();
        prop_assert_eq!(theta_pairing(&shifted, &b).unwrap(), ab.clone());
        prop_assert_eq!(theta_pairing(&b, &shifted).unwrap(), -ab);
    }

    #[test]
    fn cohomology_dimensions_match_rank_oracle(seed in any::<u64>()) {
        let (c, _) = complex(seed, 5);
        let mut euler_h = 0i64;
        let mut euler_c = 0i64;
        for k in hom_degree_range(&c, &c) {
            let h = cohomology(&c, &c, k).unwrap();
            let n = hom_dim(&c, &c, k);
            let expect = n - rank_oracle(d_rows(&c, k)) - rank_oracle(d_rows(&c, k - 1));
            prop_assert_eq!(h.dim(), expect);
            for class in h.classes() {
                prop_assert!(CohomClass::new(class.representative().clone()).is_ok());
            }
            let s = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            euler_h += s * h.dim() as i64;
            euler_c += s * n as i64;
        }
        prop_assert_eq!(euler_h, euler_c);
    }

    #[test]
    fn complexes_round_trip_through_json(seed in any::<u64>()) {
        let (c, mut rng) = complex(seed, 6);
        let json = serde_json::to_string(&*c).unwrap();
        prop_assert_eq!(&serde_json::from_str::<MatrixComplex>(&json).unwrap(), &*c);
        let f = random_cochain(&mut rng, &c, &c, 1);
        let back: HomCochain = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn two_term_cohomology_values() {
    let zero = Arc::new(MatrixComplex::new(0, vec![1, 1], vec![RatMatrix::from_i64(1, 1, &[0])]).unwrap());
    let dims: Vec<usize> = (-1..=1).map(|k| cohomology(&zero, &zero, k).unwrap().dim()).collect();
    assert_eq!(dims, vec![1, 2, 1]);
    let id = Arc::new(MatrixComplex::new(0, vec![1, 1], vec![RatMatrix::from_i64(1, 1, &[1])]).unwrap());
    for k in -1..=1 {
        assert_eq!(cohomology(&id, &id, k).unwrap().dim(), 0);
    }
}

#[test]
fn non_complexes_are_rejected_on_load() {
    let json = r#"{"start":0,"dims":[1,1,1],"diffs":[{"rows":1,"cols":1,"entries":[["1"]]},{"rows":1,"cols":1,"entries":[["2"]]}]}"#;
    assert!(serde_json::from_str::<MatrixComplex>(json).is_err());
}
