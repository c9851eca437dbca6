//! Cohomology of `Hom^*(S, T)` by exact row reduction.

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::trace::complex::{hom_differential, hom_dim, sign, HomCochain, MatrixComplex};
use crate::trace::matrix::RatMatrix;

/// Matrix of `D : Hom^k -> Hom^{k+1}` in the flattened coordinates.
///
/// The unit cochain `E_rc` in component `j` maps to `d_T E_rc` in component
/// `j` and to `-(-1)^k E_rc d_S` in component `j - 1`.
pub fn differential_matrix(
    source: &Arc<MatrixComplex>,
    target: &Arc<MatrixComplex>,
    k: i64,
) -> Result<RatMatrix> {
    let offsets = |deg: i64| -> Vec<usize> {
        let mut acc = 0;
        (source.start()..=source.end())
            .map(|i| {
                let o = acc;
                acc += target.dim(i + deg) * source.dim(i);
                o
            })
            .collect()
    };
    let (from, to) = (offsets(k), offsets(k + 1));
    let mut m = RatMatrix::zeros(hom_dim(source, target, k + 1), hom_dim(source, target, k));
    let sgn = -Rat::from_integer(sign(k).into());
    for (idx, j) in (source.start()..=source.end()).enumerate() {
        let (rows, cols) = (target.dim(j + k), source.dim(j));
        let dt = target.diff(j + k);
        let ds = source.diff(j - 1);
        for r in 0..rows {
            for c in 0..cols {
                let col = from[idx] + r * cols + c;
                // (d_T E_rc)[a][c] = d_T[a][r]
                let out_cols = cols;
                for a in 0..dt.rows() {
                    let x = dt.get(a, r);
                    if !x.is_zero() {
                        m.set(to[idx] + a * out_cols + c, col, x.clone());
                    }
                }
                // (E_rc d_S)[r][b] = d_S[c][b], landing in component j - 1
                if idx > 0 {
                    let prev_cols = source.dim(j - 1);
                    for b in 0..prev_cols {
                        let x = ds.get(c, b);
                        if !x.is_zero() {
                            let row = to[idx - 1] + r * prev_cols + b;
                            let v = m.get(row, col) + &sgn * x;
                            m.set(row, col, v);
                        }
                    }
                }
            }
        }
    }
    Ok(m)
}

/// A cocycle standing for its cohomology class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomClass {
    representative: HomCochain,
}

impl CohomClass {
    pub fn new(representative: HomCochain) -> Result<Self> {
        if !hom_differential(&representative)?.is_zero() {
            return Err(Error::Precondition("representative is not a cocycle".into()));
        }
        Ok(Self { representative })
    }

    pub fn representative(&self) -> &HomCochain {
        &self.representative
    }

    pub fn degree(&self) -> i64 {
        self.representative.degree()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Cohomology {
    pub degree: i64,
    pub cocycles: Vec<HomCochain>,
    pub coboundaries: Vec<HomCochain>,
    /// Cocycles completing the coboundaries to a basis of all cocycles.
    pub representatives: Vec<HomCochain>,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn classes(&self) -> Vec<CohomClass> {
        self.representatives
            .iter()
            .map(|r| CohomClass {
                representative: r.clone(),
            })
            .collect()
    }
}

pub fn cohomology(
    source: &Arc<MatrixComplex>,
    target: &Arc<MatrixComplex>,
    degree: i64,
) -> Result<Cohomology> {
    let n = hom_dim(source, target, degree);
    let to_cochain = |v: &Vec<Rat>| HomCochain::from_vector(source.clone(), target.clone(), degree, v);

    let cocycle_vecs = differential_matrix(source, target, degree)?.kernel();
    let coboundary_vecs = differential_matrix(source, target, degree - 1)?.column_space();

    // coboundaries first: every pivot past them marks a new class
    let b = coboundary_vecs.len();
    let span: Vec<Vec<Rat>> = coboundary_vecs.iter().chain(&cocycle_vecs).cloned().collect();
    let (_, pivots) = RatMatrix::from_columns(n, &span).rref();
    let reps: Vec<&Vec<Rat>> = pivots.iter().filter(|&&p| p >= b).map(|&p| &span[p]).collect();
    Ok(Cohomology {
        degree,
        cocycles: cocycle_vecs.iter().map(to_cochain).collect::<Result<_>>()?,
        coboundaries: coboundary_vecs.iter().map(to_cochain).collect::<Result<_>>()?,
        representatives: reps.into_iter().map(to_cochain).collect::<Result<_>>()?,
    })
}

/// Degrees where `Hom^k(S, T)` can be nonzero.
pub fn hom_degree_range(source: &MatrixComplex, target: &MatrixComplex) -> std::ops::RangeInclusive<i64> {
    (target.start() - source.end())..=(target.end() - source.start())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn rank_oracle(rows: usize, cols: usize, m: &RatMatrix) -> usize {
        // plain Gaussian elimination, independent of rref
        let mut a: Vec<Vec<Rat>> = (0..rows).map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect()).collect();
        let mut r = 0;
        for c in 0..cols {
            if let Some(p) = (r..rows).find(|&i| a[i][c] != int(0)) {
                a.swap(r, p);
                for i in r + 1..rows {
                    let f = &a[i][c] / &a[r][c];
                    for j in c..cols {
                        let x = &a[r][j] * &f;
                        a[i][j] -= x;
                    }
                }
                r += 1;
            }
        }
        r
    }

    fn two_term(diff: i64) -> Arc<MatrixComplex> {
        Arc::new(MatrixComplex::new(0, vec![1, 1], vec![RatMatrix::from_i64(1, 1, &[diff])]).unwrap())
    }

    #[test]
    fn zero_differential_two_term() {
        let c = two_term(0);
        let dims: Vec<usize> = (-2..=2).map(|k| cohomology(&c, &c, k).unwrap().dim()).collect();
        assert_eq!(dims, vec![0, 1, 2, 1, 0]);
    }

    #[test]
    fn identity_differential_is_acyclic() {
        let c = two_term(1);
        for k in -2..=2 {
            assert_eq!(cohomology(&c, &c, k).unwrap().dim(), 0, "degree {k}");
        }
    }

    #[test]
    fn dimension_matches_rank_oracle() {
        let c = Arc::new(
            MatrixComplex::new(
                -1,
                vec![2, 3, 1],
                vec![
                    RatMatrix::from_i64(3, 2, &[1, 0, 0, 1, 0, 0]),
                    RatMatrix::from_i64(1, 3, &[0, 0, 2]),
                ],
            )
            .unwrap(),
        );
        let mut euler = 0i64;
        for k in hom_degree_range(&c, &c) {
            let h = cohomology(&c, &c, k).unwrap();
            let dk = differential_matrix(&c, &c, k).unwrap();
            let dk1 = differential_matrix(&c, &c, k - 1).unwrap();
            let n = hom_dim(&c, &c, k);
            let expect = n - rank_oracle(dk.rows(), dk.cols(), &dk) - rank_oracle(dk1.rows(), dk1.cols(), &dk1);
            assert_eq!(h.dim(), expect);
            for z in &h.representatives {
                assert!(hom_differential(z).unwrap().is_zero());
            }
            let s = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            euler += s * (h.dim() as i64 - n as i64);
        }
        assert_eq!(euler, 0);
    }

    #[test]
    fn matrix_agrees_with_cochain_differential() {
        let c = Arc::new(
            MatrixComplex::new(
                0,
                vec![2, 2, 1],
                vec![
                    RatMatrix::from_i64(2, 2, &[1, 2, -1, -2]),
                    RatMatrix::from_i64(1, 2, &[1, 1]),
                ],
            )
            .unwrap(),
        );
        for k in -2..=2 {
            let n = hom_dim(&c, &c, k);
            let m = differential_matrix(&c, &c, k).unwrap();
            for j in 0..n {
                let coords: Vec<Rat> = (0..n).map(|i| int((i == j) as i64 * (j as i64 + 1))).collect();
                let f = HomCochain::from_vector(c.clone(), c.clone(), k, &coords).unwrap();
                let direct = hom_differential(&f).unwrap().to_vector();
                assert_eq!(m.apply(&coords).unwrap(), direct, "degree {k} column {j}");
            }
        }
    }

    #[test]
    fn outside_support_is_zero() {
        let c = two_term(0);
        assert_eq!(cohomology(&c, &c, 5).unwrap().dim(), 0);
    }

    #[test]
    fn classes_require_cocycles() {
        let c = two_term(1);
        let mut maps = HomCochain::zero(c.clone(), c.clone(), 0).maps().to_vec();
        maps[0] = RatMatrix::from_i64(1, 1, &[1]);
        let f = HomCochain::new(c.clone(), c, 0, maps).unwrap();
        assert!(CohomClass::new(f).is_err());
    }
}
