//! Bounded cochain complexes of rational vector spaces and graded maps
//! between them.
//!
//! Sign conventions: a cochain `f` of degree `k` has components
//! `f^i : S^i -> T^{i+k}` and differential `D f = d_T f - (-1)^k f d_S`.
//! A degree-1 cocycle `g` therefore satisfies `d g^i = -g^{i+1} d`, i.e.
//! `g^{i+1} d^i + d^{i+1} g^i = 0`. Composition multiplies components
//! without signs, and `D(a b) = D(a) b + (-1)^{|a|} a D(b)`.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, Rat};
use crate::trace::matrix::RatMatrix;

/// `E^start -> E^{start+1} -> ... -> E^end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexFile", into = "ComplexFile")]
pub struct MatrixComplex {
    start: i64,
    dims: Vec<usize>,
    diffs: Vec<RatMatrix>,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    start: i64,
    dims: Vec<usize>,
    diffs: Vec<RatMatrix>,
}

impl TryFrom<ComplexFile> for MatrixComplex {
    type Error = Error;
    fn try_from(f: ComplexFile) -> Result<Self> {
        MatrixComplex::new(f.start, f.dims, f.diffs)
    }
}

impl From<MatrixComplex> for ComplexFile {
    fn from(c: MatrixComplex) -> Self {
        ComplexFile {
            start: c.start,
            dims: c.dims,
            diffs: c.diffs,
        }
    }
}

impl MatrixComplex {
    pub fn new(start: i64, dims: Vec<usize>, diffs: Vec<RatMatrix>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Shape("a complex needs at least one term".into()));
        }
        if diffs.len() + 1 != dims.len() {
            return Err(Error::Shape(format!(
                "{} terms need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::Shape(format!(
                    "differential in degree {} is {}x{}, expected {}x{}",
                    start + i as i64,
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for i in 1..diffs.len() {
            if !(&diffs[i] * &diffs[i - 1]).is_zero() {
                return Err(Error::NotAComplex(start + i as i64 - 1));
            }
        }
        Ok(Self { start, dims, diffs })
    }

    /// A single space in degree `deg`.
    pub fn concentrated(deg: i64, dim: usize) -> Self {
        Self {
            start: deg,
            dims: vec![dim],
            diffs: vec![],
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.start + self.dims.len() as i64 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn diffs(&self) -> &[RatMatrix] {
        &self.diffs
    }

    /// Dimension in degree `i`, zero outside the range.
    pub fn dim(&self, i: i64) -> usize {
        if i < self.start || i > self.end() {
            0
        } else {
            self.dims[(i - self.start) as usize]
        }
    }

    /// `d^i : E^i -> E^{i+1}`, a zero matrix where either side vanishes.
    pub fn diff(&self, i: i64) -> RatMatrix {
        if i >= self.start && i < self.end() {
            self.diffs[(i - self.start) as usize].clone()
        } else {
            RatMatrix::zeros(self.dim(i + 1), self.dim(i))
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.start..=self.end())
            .map(|i| sign(i) * self.dim(i) as i64)
            .sum()
    }
}

pub(crate) fn sign(i: i64) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A degree-`k` map of graded spaces `S -> T`: components `f^i : S^i -> T^{i+k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCochain {
    source: Arc<MatrixComplex>,
    target: Arc<MatrixComplex>,
    degree: i64,
    /// Indexed by `i - source.start()`.
    maps: Vec<RatMatrix>,
}

impl HomCochain {
    pub fn zero(source: Arc<MatrixComplex>, target: Arc<MatrixComplex>, degree: i64) -> Self {
        let maps = (source.start()..=source.end())
            .map(|i| RatMatrix::zeros(target.dim(i + degree), source.dim(i)))
            .collect();
        Self {
            source,
            target,
            degree,
            maps,
        }
    }

    pub fn identity(c: Arc<MatrixComplex>) -> Self {
        let maps = (c.start()..=c.end()).map(|i| RatMatrix::identity(c.dim(i))).collect();
        Self {
            source: c.clone(),
            target: c,
            degree: 0,
            maps,
        }
    }

    /// Components listed for `i = source.start() ..= source.end()`.
    pub fn new(
        source: Arc<MatrixComplex>,
        target: Arc<MatrixComplex>,
        degree: i64,
        maps: Vec<RatMatrix>,
    ) -> Result<Self> {
        let n = source.dims().len();
        if maps.len() != n {
            return Err(Error::Shape(format!("expected {n} components, got {}", maps.len())));
        }
        for (idx, m) in maps.iter().enumerate() {
            let i = source.start() + idx as i64;
            let want = (target.dim(i + degree), source.dim(i));
            if m.shape() != want {
                return Err(Error::Shape(format!(
                    "component {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(Self {
            source,
            target,
            degree,
            maps,
        })
    }

    pub fn source(&self) -> &Arc<MatrixComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MatrixComplex> {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn maps(&self) -> &[RatMatrix] {
        &self.maps
    }

    /// `f^i`, a zero matrix outside the source range.
    pub fn component(&self, i: i64) -> RatMatrix {
        if i < self.source.start() || i > self.source.end() {
            RatMatrix::zeros(self.target.dim(i + self.degree), self.source.dim(i))
        } else {
            self.maps[(i - self.source.start()) as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(RatMatrix::is_zero)
    }

    fn same_space(&self, other: &HomCochain) -> Result<()> {
        if self.degree != other.degree || self.source != other.source || self.target != other.target {
            return Err(Error::Shape("cochains live in different Hom spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomCochain) -> Result<HomCochain> {
        self.same_space(other)?;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(HomCochain { maps, ..self.clone() })
    }

    pub fn scale(&self, t: &Rat) -> HomCochain {
        HomCochain {
            maps: self.maps.iter().map(|m| m.scale(t)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &HomCochain) -> Result<HomCochain> {
        self.add(&other.scale(&int(-1)))
    }

    /// Flattened coordinates in the order of `hom_basis`.
    pub fn to_vector(&self) -> Vec<Rat> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn from_vector(
        source: Arc<MatrixComplex>,
        target: Arc<MatrixComplex>,
        degree: i64,
        coords: &[Rat],
    ) -> Result<Self> {
        let mut pos = 0;
        let mut maps = Vec::new();
        for i in source.start()..=source.end() {
            let (r, c) = (target.dim(i + degree), source.dim(i));
            let slice = coords
                .get(pos..pos + r * c)
                .ok_or_else(|| Error::Shape("coordinate vector too short".into()))?;
            let rows = slice.chunks(c.max(1)).take(r).map(|x| x.to_vec()).collect();
            maps.push(if c == 0 {
                RatMatrix::zeros(r, 0)
            } else {
                RatMatrix::from_rows(rows, c)?
            });
            pos += r * c;
        }
        if pos != coords.len() {
            return Err(Error::Shape("coordinate vector too long".into()));
        }
        Self::new(source, target, degree, maps)
    }
}

/// Dimension of `Hom^k(S, T) = prod_i Hom(S^i, T^{i+k})`.
pub fn hom_dim(source: &MatrixComplex, target: &MatrixComplex, k: i64) -> usize {
    (source.start()..=source.end())
        .map(|i| target.dim(i + k) * source.dim(i))
        .sum()
}

/// `D(f)^i = d_T^{i+k} f^i - (-1)^k f^{i+1} d_S^i`.
pub fn hom_differential(f: &HomCochain) -> Result<HomCochain> {
    let k = f.degree;
    let s = &f.source;
    let t = &f.target;
    let sgn = int(sign(k));
    let maps = (s.start()..=s.end())
        .map(|i| {
            let left = t.diff(i + k).checked_mul(&f.component(i))?;
            let right = f.component(i + 1).checked_mul(&s.diff(i))?;
            left.checked_sub(&right.scale(&sgn))
        })
        .collect::<Result<Vec<_>>>()?;
    HomCochain::new(s.clone(), t.clone(), k + 1, maps)
}

/// `(a b)^i = a^{i + deg b} b^i`.
pub fn compose(a: &HomCochain, b: &HomCochain) -> Result<HomCochain> {
    if a.source != b.target {
        return Err(Error::Shape(
            "composition needs the target of the right factor to be the source of the left".into(),
        ));
    }
    let s = &b.source;
    let maps = (s.start()..=s.end())
        .map(|i| a.component(i + b.degree).checked_mul(&b.component(i)))
        .collect::<Result<Vec<_>>>()?;
    HomCochain::new(s.clone(), a.target.clone(), a.degree + b.degree, maps)
}

/// `sum_i (-1)^i tr f^i` for a degree-0 endomorphism.
pub fn supertrace(f: &HomCochain) -> Result<Rat> {
    if f.degree != 0 || f.source != f.target {
        return Err(Error::Shape(
            "supertrace needs a degree-0 endomorphism".into(),
        ));
    }
    let mut acc = Rat::zero();
    for i in f.source.start()..=f.source.end() {
        let t = f.component(i).trace()?;
        if sign(i) > 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Ok(acc)
}

impl Serialize for HomCochain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            source: &'a MatrixComplex,
            target: &'a MatrixComplex,
            degree: i64,
            maps: &'a [RatMatrix],
        }
        Out {
            source: &self.source,
            target: &self.target,
            degree: self.degree,
            maps: &self.maps,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomCochain {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct In {
            source: MatrixComplex,
            target: MatrixComplex,
            degree: i64,
            maps: Vec<RatMatrix>,
        }
        let f = In::deserialize(d)?;
        let (source, target) = if f.source == f.target {
            let c = Arc::new(f.source);
            (c.clone(), c)
        } else {
            (Arc::new(f.source), Arc::new(f.target))
        };
        HomCochain::new(source, target, f.degree, f.maps).map_err(D::Error::custom)
    }
}
