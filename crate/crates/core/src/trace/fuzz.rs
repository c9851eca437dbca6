//! Seeded random complexes and cochains, and the identity checks run on them.
//!
//! Complexes are built split: each term is `B + H + C` with the differential
//! sending `C^i` identically onto `B^{i+1}`. The split form is then scrambled
//! by elementary row operations, which keep `d d = 0` exactly, as long as
//! every entry stays in `[-3, 3]`.

use std::sync::Arc;

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::rational::{int, Rat};
use crate::trace::cohomology::{cohomology, differential_matrix, hom_degree_range};
use crate::trace::complex::{
    compose, hom_differential, hom_dim, sign, supertrace, HomCochain, MatrixComplex,
};
use crate::trace::forms::{form_differential, pairing_unchecked, FormCochain};
use crate::trace::matrix::RatMatrix;

pub const MAX_LENGTH: usize = 5;
pub const MAX_DIM: usize = 4;
pub const ENTRY_BOUND: i64 = 3;

/// Generator for instance `index` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_complex(rng: &mut impl Rng) -> MatrixComplex {
    let len = rng.gen_range(1..=MAX_LENGTH);
    let start = rng.gen_range(-2..=1);
    // b[i] + h[i] + c[i] per degree, with b[i+1] = c[i]
    let mut b = vec![0usize; len];
    let mut h = vec![0usize; len];
    let mut c = vec![0usize; len];
    for i in 0..len {
        let room = MAX_DIM - b[i];
        let total = rng.gen_range(b[i].clamp(1, MAX_DIM) - b[i]..=room);
        c[i] = if i + 1 < len { rng.gen_range(0..=total.min(MAX_DIM)) } else { 0 };
        h[i] = total - c[i];
        if i + 1 < len {
            b[i + 1] = c[i];
        }
    }
    let dims: Vec<usize> = (0..len).map(|i| b[i] + h[i] + c[i]).collect();
    let mut diffs: Vec<RatMatrix> = (0..len.saturating_sub(1))
        .map(|i| {
            let mut d = RatMatrix::zeros(dims[i + 1], dims[i]);
            for k in 0..c[i] {
                // C^i sits last in E^i, B^{i+1} first in E^{i+1}
                d.set(k, b[i] + h[i] + k, int(1));
            }
            d
        })
        .collect();

    for _ in 0..rng.gen_range(0..=12) {
        let j = rng.gen_range(0..len);
        let n = dims[j];
        if n == 0 {
            continue;
        }
        let backup = diffs.clone();
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let (x, y) = distinct_pair(rng, n);
                let lambda = int(*[-1i64, 1, 2, -2].choose(rng).expect("nonempty"));
                elementary(&mut diffs, j, x, y, &lambda);
            }
            1 => {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(rng);
                permute(&mut diffs, j, &perm);
            }
            _ => {
                let x = rng.gen_range(0..n);
                negate(&mut diffs, j, x);
            }
        }
        let ok = diffs
            .iter()
            .all(|d| d.entries().iter().all(|e| e.abs() <= int(ENTRY_BOUND)));
        if !ok {
            diffs = backup;
        }
    }
    MatrixComplex::new(start, dims, diffs).expect("split construction is a complex")
}

fn distinct_pair(rng: &mut impl Rng, n: usize) -> (usize, usize) {
    let x = rng.gen_range(0..n);
    let mut y = rng.gen_range(0..n - 1);
    if y >= x {
        y += 1;
    }
    (x, y)
}

/// Change of basis `x_a += lambda x_b` on term `j` (zero-based).
fn elementary(diffs: &mut [RatMatrix], j: usize, a: usize, bb: usize, lambda: &Rat) {
    if j > 0 {
        let d = &mut diffs[j - 1];
        for col in 0..d.cols() {
            let v = d.get(a, col) + lambda * d.get(bb, col);
            d.set(a, col, v);
        }
    }
    if j < diffs.len() {
        let d = &mut diffs[j];
        for row in 0..d.rows() {
            let v = d.get(row, bb) - lambda * d.get(row, a);
            d.set(row, bb, v);
        }
    }
}

fn permute(diffs: &mut [RatMatrix], j: usize, perm: &[usize]) {
    if j > 0 {
        let d = &diffs[j - 1];
        let mut out = RatMatrix::zeros(d.rows(), d.cols());
        for (new, &old) in perm.iter().enumerate() {
            for col in 0..d.cols() {
                out.set(new, col, d.get(old, col).clone());
            }
        }
        diffs[j - 1] = out;
    }
    if j < diffs.len() {
        let d = &diffs[j];
        let mut out = RatMatrix::zeros(d.rows(), d.cols());
        for (new, &old) in perm.iter().enumerate() {
            for row in 0..d.rows() {
                out.set(row, new, d.get(row, old).clone());
            }
        }
        diffs[j] = out;
    }
}

fn negate(diffs: &mut [RatMatrix], j: usize, x: usize) {
    if j > 0 {
        let d = &mut diffs[j - 1];
        for col in 0..d.cols() {
            let v = -d.get(x, col);
            d.set(x, col, v);
        }
    }
    if j < diffs.len() {
        let d = &mut diffs[j];
        for row in 0..d.rows() {
            let v = -d.get(row, x);
            d.set(row, x, v);
        }
    }
}

fn random_entries(rng: &mut impl Rng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| int(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND))).collect()
}

/// A cochain with entries in `[-3, 3]`.
pub fn random_cochain(
    rng: &mut impl Rng,
    source: &Arc<MatrixComplex>,
    target: &Arc<MatrixComplex>,
    degree: i64,
) -> HomCochain {
    let coords = random_entries(rng, hom_dim(source, target, degree));
    HomCochain::from_vector(source.clone(), target.clone(), degree, &coords).expect("sized coordinates")
}

/// A random integer combination of a cocycle basis.
pub fn random_cocycle(rng: &mut impl Rng, c: &Arc<MatrixComplex>, degree: i64) -> Result<HomCochain> {
    let basis = differential_matrix(c, c, degree)?.kernel();
    let mut coords = vec![int(0); hom_dim(c, c, degree)];
    for z in &basis {
        let t = int(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND));
        for (x, y) in coords.iter_mut().zip(z) {
            *x += &t * y;
        }
    }
    HomCochain::from_vector(c.clone(), c.clone(), degree, &coords)
}

pub fn random_form_cochain(rng: &mut impl Rng, c: &Arc<MatrixComplex>, degree: i64) -> FormCochain {
    let parts = [0, 1, 2, 3].map(|m: u32| random_cochain(rng, c, c, degree - m.count_ones() as i64));
    FormCochain::from_parts(degree, parts).expect("degrees match masks")
}

pub fn random_form_cocycle(rng: &mut impl Rng, c: &Arc<MatrixComplex>) -> Result<FormCochain> {
    let parts = [
        random_cocycle(rng, c, 1)?,
        random_cocycle(rng, c, 0)?,
        random_cocycle(rng, c, 0)?,
        random_cocycle(rng, c, -1)?,
    ];
    FormCochain::from_parts(1, parts)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzReport {
    pub seed: u64,
    pub instances: u64,
    pub checks: u64,
    pub violations: u64,
    /// Instances whose pairing `theta(a, b)` was nonzero.
    pub nonzero_pairings: u64,
    /// `"instance:check"` for the first few violations, in instance order.
    pub failures: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checks: u64,
    failed: Vec<&'static str>,
    nonzero: bool,
}

impl Tally {
    fn check(&mut self, name: &'static str, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failed.push(name);
        }
    }
}

/// Every identity on one instance.
fn run_instance(seed: u64, index: u64) -> Result<Tally> {
    let mut rng = instance_rng(seed, index);
    let c = Arc::new(random_complex(&mut rng));
    let mut t = Tally::default();
    let k = rng.gen_range(-2..=2);

    let g = random_cochain(&mut rng, &c, &c, k);
    t.check("dd", hom_differential(&hom_differential(&g)?)?.is_zero());

    let a = random_cochain(&mut rng, &c, &c, k);
    let l = rng.gen_range(-2..=2);
    let b = random_cochain(&mut rng, &c, &c, l);
    let lhs = hom_differential(&compose(&a, &b)?)?;
    let rhs = compose(&hom_differential(&a)?, &b)?
        .add(&compose(&a, &hom_differential(&b)?)?.scale(&int(sign(k))))?;
    t.check("leibniz", lhs == rhs);

    let bb = random_cochain(&mut rng, &c, &c, -k);
    let ab = supertrace(&compose(&a, &bb)?)?;
    let ba = supertrace(&compose(&bb, &a)?)?;
    t.check("commutator", ab == ba * int(sign(k * k)));

    let f = random_cochain(&mut rng, &c, &c, -1);
    t.check("exact_trace", supertrace(&hom_differential(&f)?)? == int(0));

    let x = random_form_cocycle(&mut rng, &c)?;
    let y = random_form_cocycle(&mut rng, &c)?;
    let xy = pairing_unchecked(&x, &y)?;
    let yx = pairing_unchecked(&y, &x)?;
    t.check("antisymmetry", &xy + &yx == int(0));
    t.check("self_pairing", pairing_unchecked(&x, &x)? == int(0));
    t.nonzero = xy != int(0);

    let h = random_form_cochain(&mut rng, &c, 0);
    let dh = form_differential(&h)?;
    t.check("coboundary_left", pairing_unchecked(&dh, &y)? == int(0));
    t.check("coboundary_right", pairing_unchecked(&x, &dh)? == int(0));

    let mut euler_h = 0i64;
    let mut euler_c = 0i64;
    for deg in hom_degree_range(&c, &c) {
        let s = sign(deg);
        euler_h += s * cohomology(&c, &c, deg)?.dim() as i64;
        euler_c += s * hom_dim(&c, &c, deg) as i64;
    }
    t.check("euler", euler_h == euler_c);
    Ok(t)
}

const FAILURES_KEPT: usize = 10;

/// Runs `n` seeded instances. Instance `i` depends only on `(seed, i)`.
pub fn run_fuzz(n: u64, seed: u64) -> Result<FuzzReport> {
    let tallies = (0..n)
        .into_par_iter()
        .map(|i| run_instance(seed, i).map(|t| (i, t)))
        .collect::<Result<Vec<_>>>()?;
    let mut report = FuzzReport {
        seed,
        instances: n,
        ..Default::default()
    };
    for (i, t) in tallies {
        report.checks += t.checks;
        report.violations += t.failed.len() as u64;
        report.nonzero_pairings += t.nonzero as u64;
        for name in t.failed {
            if report.failures.len() < FAILURES_KEPT {
                report.failures.push(format!("{i}:{name}"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complexes_respect_bounds() {
        for i in 0..200 {
            let c = random_complex(&mut instance_rng(3, i));
            assert!(c.dims().len() <= MAX_LENGTH);
            assert!(c.dims().iter().all(|&d| d <= MAX_DIM));
            for d in c.diffs() {
                assert!(d.entries().iter().all(|e| e.abs() <= int(ENTRY_BOUND)));
            }
        }
    }

    #[test]
    fn scrambling_happens() {
        let nontrivial = (0..100)
            .map(|i| random_complex(&mut instance_rng(5, i)))
            .filter(|c| c.diffs().iter().any(|d| d.entries().iter().any(|e| e.abs() > int(1))))
            .count();
        assert!(nontrivial > 0);
    }

    #[test]
    fn small_run_is_clean_and_deterministic() {
        let a = run_fuzz(40, 11).unwrap();
        let b = run_fuzz(40, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.violations, 0, "{:?}", a.failures);
        assert_eq!(a.checks, 40 * 9);
        assert!(a.nonzero_pairings > 0);
    }
}
