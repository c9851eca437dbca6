//! Cochains with coefficients in the exterior algebra on two odd generators
//! `e1, e2`, and the trace pairing on degree-1 cocycles.
//!
//! An element of total degree `t` has four parts indexed by a bit mask
//! `m` over `{e1, e2}`; the part at `m` is a Hom cochain of degree
//! `t - |m|`. The differential acts on each part and leaves the form
//! factor alone. Products carry the Koszul sign
//! `(f a)(g b) = (-1)^{|a| |g|} (f g)(a b)`.
//!
//! The pairing of two degree-1 cocycles is the supertrace of the `e1 e2`
//! part of their product, which has Hom degree 0.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rat};
use crate::trace::complex::{compose, hom_differential, supertrace, HomCochain, MatrixComplex};

const TOP: usize = 0b11;

fn weight(mask: usize) -> i64 {
    mask.count_ones() as i64
}

/// Sign of moving `e^a e^b` into increasing generator order.
fn reorder_sign(a: usize, b: usize) -> i64 {
    let mut inversions = 0;
    for i in 0..2 {
        for j in 0..2 {
            if a & (1 << i) != 0 && b & (1 << j) != 0 && i > j {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormCochain {
    degree: i64,
    /// Indexed by mask: `1`, `e1`, `e2`, `e1 e2`.
    parts: [HomCochain; 4],
}

impl FormCochain {
    pub fn zero(source: Arc<MatrixComplex>, target: Arc<MatrixComplex>, degree: i64) -> Self {
        let parts = [0, 1, 2, 3]
            .map(|m| HomCochain::zero(source.clone(), target.clone(), degree - weight(m)));
        Self { degree, parts }
    }

    pub fn from_parts(degree: i64, parts: [HomCochain; 4]) -> Result<Self> {
        for (m, p) in parts.iter().enumerate() {
            if p.degree() != degree - weight(m) {
                return Err(Error::Shape(format!(
                    "part {m} has degree {}, expected {}",
                    p.degree(),
                    degree - weight(m)
                )));
            }
            if p.source() != parts[0].source() || p.target() != parts[0].target() {
                return Err(Error::Shape("parts live on different complexes".into()));
            }
        }
        Ok(Self { degree, parts })
    }

    /// `f` with the constant form `1`.
    pub fn from_hom(f: HomCochain) -> Self {
        let mut out = Self::zero(f.source().clone(), f.target().clone(), f.degree());
        out.parts[0] = f;
        out
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn part(&self, mask: usize) -> &HomCochain {
        &self.parts[mask]
    }

    pub fn parts(&self) -> &[HomCochain; 4] {
        &self.parts
    }

    pub fn source(&self) -> &Arc<MatrixComplex> {
        self.parts[0].source()
    }

    pub fn target(&self) -> &Arc<MatrixComplex> {
        self.parts[0].target()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(HomCochain::is_zero)
    }

    pub fn add(&self, other: &FormCochain) -> Result<FormCochain> {
        let mut parts = self.parts.clone();
        for (p, q) in parts.iter_mut().zip(&other.parts) {
            *p = p.add(q)?;
        }
        Ok(FormCochain {
            degree: self.degree,
            parts,
        })
    }

    pub fn scale(&self, t: &Rat) -> FormCochain {
        FormCochain {
            degree: self.degree,
            parts: self.parts.clone().map(|p| p.scale(t)),
        }
    }

    pub fn sub(&self, other: &FormCochain) -> Result<FormCochain> {
        self.add(&other.scale(&int(-1)))
    }
}

pub fn form_differential(f: &FormCochain) -> Result<FormCochain> {
    let parts = [
        hom_differential(&f.parts[0])?,
        hom_differential(&f.parts[1])?,
        hom_differential(&f.parts[2])?,
        hom_differential(&f.parts[3])?,
    ];
    FormCochain::from_parts(f.degree + 1, parts)
}

pub fn form_product(a: &FormCochain, b: &FormCochain) -> Result<FormCochain> {
    let mut out = FormCochain::zero(b.source().clone(), a.target().clone(), a.degree + b.degree);
    for ma in 0..4 {
        for mb in 0..4 {
            if ma & mb != 0 {
                continue;
            }
            let g = &b.parts[mb];
            let koszul = if (weight(ma) * g.degree()).rem_euclid(2) == 0 { 1 } else { -1 };
            let s = koszul * reorder_sign(ma, mb);
            let term = compose(&a.parts[ma], g)?.scale(&int(s));
            out.parts[ma | mb] = out.parts[ma | mb].add(&term)?;
        }
    }
    Ok(out)
}

/// Supertrace of the `e1 e2` part of `a b` for degree-1 cocycles on one complex.
pub fn theta_pairing(a: &FormCochain, b: &FormCochain) -> Result<Rat> {
    for (name, x) in [("left", a), ("right", b)] {
        if x.degree != 1 {
            return Err(Error::Precondition(format!(
                "{name} argument has degree {}, expected 1",
                x.degree
            )));
        }
        if x.source() != x.target() {
            return Err(Error::Precondition(format!("{name} argument is not an endomorphism")));
        }
        if !form_differential(x)?.is_zero() {
            return Err(Error::Precondition(format!("{name} argument is not a cocycle")));
        }
    }
    if a.source() != b.source() {
        return Err(Error::Precondition("arguments live on different complexes".into()));
    }
    pairing_unchecked(a, b)
}

/// The same trace without the cocycle checks.
pub fn pairing_unchecked(a: &FormCochain, b: &FormCochain) -> Result<Rat> {
    supertrace(&form_product(a, b)?.parts[TOP])
}
