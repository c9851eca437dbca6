//! Numerical data of a polarized surface and exact Chern-character arithmetic.
//!
//! Divisor classes are coordinate vectors in a user-declared basis with an
//! integral intersection (Gram) matrix. Characters are `(rank, c1, ch2)`
//! triples with rational entries. Nothing here knows about stability; the
//! functions are the linear algebra the stability engine is built on.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plane::PlanePoint;
use crate::rational::{fmt_rat, int, is_integer, parse_rat, serde_rat, serde_rat_vec, Rat};

/// A real divisor class, written in the basis of its [`SurfaceLattice`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    #[serde(with = "serde_rat_vec")]
    pub coords: Vec<Rat>,
}

impl DivisorClass {
    pub fn new(coords: Vec<Rat>) -> Self {
        Self { coords }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            coords: vec![Rat::zero(); n],
        }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self {
            coords: v.iter().map(|&x| int(x)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, t: &Rat) -> Self {
        Self {
            coords: self.coords.iter().map(|x| x * t).collect(),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

/// Full Chern character `(ch0, ch1, ch2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharVec {
    #[serde(with = "serde_rat")]
    pub r: Rat,
    pub c1: DivisorClass,
    #[serde(with = "serde_rat")]
    pub e: Rat,
}

impl CharVec {
    pub fn new(r: Rat, c1: DivisorClass, e: Rat) -> Self {
        Self { r, c1, e }
    }

    /// Parses `"r,c1_1,...,c1_n,e"` for a lattice of rank `n`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != n + 2 {
            return Err(Error::ParseCharacter(
                s.to_string(),
                format!("expected {} comma-separated entries, got {}", n + 2, parts.len()),
            ));
        }
        let vals = parts
            .iter()
            .map(|p| parse_rat(p))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::ParseCharacter(s.to_string(), e.to_string()))?;
        Ok(Self {
            r: vals[0].clone(),
            c1: DivisorClass::new(vals[1..=n].to_vec()),
            e: vals[n + 1].clone(),
        })
    }

    /// Character of the shifted derived dual `E^v[2]`: `(r, -c1, ch2)`.
    ///
    /// The twist divisor and the parameter `s` must be negated by the caller.
    pub fn derived_dual(&self) -> Self {
        Self {
            r: self.r.clone(),
            c1: -&self.c1,
            e: self.e.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.c1.is_zero() && self.e.is_zero()
    }
}

impl fmt::Display for CharVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rat(&self.r))?;
        for c in &self.c1.coords {
            write!(f, ",{}", fmt_rat(c))?;
        }
        write!(f, ",{}", fmt_rat(&self.e))
    }
}

impl Add for &CharVec {
    type Output = CharVec;
    fn add(self, rhs: &CharVec) -> CharVec {
        CharVec {
            r: &self.r + &rhs.r,
            c1: &self.c1 + &rhs.c1,
            e: &self.e + &rhs.e,
        }
    }
}

impl Sub for &CharVec {
    type Output = CharVec;
    fn sub(self, rhs: &CharVec) -> CharVec {
        CharVec {
            r: &self.r - &rhs.r,
            c1: &self.c1 - &rhs.c1,
            e: &self.e - &rhs.e,
        }
    }
}

impl Neg for &CharVec {
    type Output = CharVec;
    fn neg(self) -> CharVec {
        CharVec {
            r: -&self.r,
            c1: -&self.c1,
            e: -&self.e,
        }
    }
}

/// `(H^2 ch0^D, H.ch1^D, ch2^D)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VTilde {
    #[serde(with = "serde_rat")]
    pub v0: Rat,
    #[serde(with = "serde_rat")]
    pub v1: Rat,
    #[serde(with = "serde_rat")]
    pub v2: Rat,
}

impl VTilde {
    pub fn new(v0: Rat, v1: Rat, v2: Rat) -> Self {
        Self { v0, v1, v2 }
    }

    pub fn from_ints(v0: i64, v1: i64, v2: i64) -> Self {
        Self::new(int(v0), int(v1), int(v2))
    }

    pub fn is_zero(&self) -> bool {
        self.v0.is_zero() && self.v1.is_zero() && self.v2.is_zero()
    }

    /// `v1^2 - 2 v0 v2`; nonnegative exactly on the closed region below the
    /// boundary parabola.
    pub fn discriminant(&self) -> Rat {
        &self.v1 * &self.v1 - int(2) * &self.v0 * &self.v2
    }

    pub fn plane_point(&self) -> Result<PlanePoint> {
        PlanePoint::new(self.v0.clone(), self.v1.clone(), self.v2.clone())
    }

    pub fn scale(&self, t: &Rat) -> Self {
        Self::new(&self.v0 * t, &self.v1 * t, &self.v2 * t)
    }

    pub fn as_array(&self) -> [Rat; 3] {
        [self.v0.clone(), self.v1.clone(), self.v2.clone()]
    }
}

impl fmt::Display for VTilde {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            fmt_rat(&self.v0),
            fmt_rat(&self.v1),
            fmt_rat(&self.v2)
        )
    }
}

impl Add for &VTilde {
    type Output = VTilde;
    fn add(self, rhs: &VTilde) -> VTilde {
        VTilde::new(&self.v0 + &rhs.v0, &self.v1 + &rhs.v1, &self.v2 + &rhs.v2)
    }
}

impl Sub for &VTilde {
    type Output = VTilde;
    fn sub(self, rhs: &VTilde) -> VTilde {
        VTilde::new(&self.v0 - &rhs.v0, &self.v1 - &rhs.v1, &self.v2 - &rhs.v2)
    }
}

impl Neg for &VTilde {
    type Output = VTilde;
    fn neg(self) -> VTilde {
        VTilde::new(-&self.v0, -&self.v1, -&self.v2)
    }
}

/// Numerical data of a polarized surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeFile", into = "LatticeFile")]
pub struct SurfaceLattice {
    basis: Vec<String>,
    gram: Vec<Vec<i64>>,
    h: DivisorClass,
    d: DivisorClass,
    k: DivisorClass,
    chi_o: i64,
}

/// On-disk layout: `{basis, gram, H, D, K, chiO}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    basis: Vec<String>,
    gram: Vec<Vec<i64>>,
    #[serde(rename = "H")]
    h: DivisorClass,
    #[serde(rename = "D")]
    d: DivisorClass,
    #[serde(rename = "K")]
    k: DivisorClass,
    #[serde(rename = "chiO")]
    chi_o: i64,
}

impl TryFrom<LatticeFile> for SurfaceLattice {
    type Error = Error;
    fn try_from(f: LatticeFile) -> Result<Self> {
        SurfaceLattice::new(f.basis, f.gram, f.h, f.d, f.k, f.chi_o)
    }
}

impl From<SurfaceLattice> for LatticeFile {
    fn from(l: SurfaceLattice) -> Self {
        LatticeFile {
            basis: l.basis,
            gram: l.gram,
            h: l.h,
            d: l.d,
            k: l.k,
            chi_o: l.chi_o,
        }
    }
}

impl SurfaceLattice {
    pub fn new(
        basis: Vec<String>,
        gram: Vec<Vec<i64>>,
        h: DivisorClass,
        d: DivisorClass,
        k: DivisorClass,
        chi_o: i64,
    ) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::InvalidLattice("empty basis".into()));
        }
        if gram.len() != n || gram.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidLattice(format!("gram matrix must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!(
                        "gram matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        for (name, v) in [("H", &h), ("D", &d), ("K", &k)] {
            if v.len() != n {
                return Err(Error::InvalidLattice(format!(
                    "{name} has {} coordinates, basis has {n}",
                    v.len()
                )));
            }
        }
        let lattice = Self {
            basis,
            gram,
            h,
            d,
            k,
            chi_o,
        };
        if !lattice.dot(&lattice.h, &lattice.h).is_positive() {
            return Err(Error::InvalidLattice("H.H must be positive".into()));
        }
        if !lattice.dot(&lattice.h, &lattice.d).is_zero() {
            return Err(Error::InvalidLattice("H.D must vanish".into()));
        }
        Ok(lattice)
    }

    /// The projective plane: basis `{h}`, `h^2 = 1`, `K = -3h`.
    pub fn projective_plane() -> Self {
        Self::new(
            vec!["h".into()],
            vec![vec![1]],
            DivisorClass::from_ints(&[1]),
            DivisorClass::from_ints(&[0]),
            DivisorClass::from_ints(&[-3]),
            1,
        )
        .expect("valid lattice")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidLattice(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lattice serializes")
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn h(&self) -> &DivisorClass {
        &self.h
    }

    pub fn d(&self) -> &DivisorClass {
        &self.d
    }

    pub fn k(&self) -> &DivisorClass {
        &self.k
    }

    pub fn chi_o(&self) -> i64 {
        self.chi_o
    }

    pub fn h_squared(&self) -> Rat {
        self.dot(&self.h, &self.h)
    }

    pub fn h_dot_k(&self) -> Rat {
        self.dot(&self.h, &self.k)
    }

    /// `H.K < 0`, the standing assumption for Ext^2 certificates.
    pub fn poisson_mode(&self) -> bool {
        self.h_dot_k().is_negative()
    }

    /// The same surface with twist divisor `d`.
    pub fn with_twist(&self, d: DivisorClass) -> Result<Self> {
        Self::new(
            self.basis.clone(),
            self.gram.clone(),
            self.h.clone(),
            d,
            self.k.clone(),
            self.chi_o,
        )
    }

    /// The same surface with `D` replaced by `-D`.
    pub fn dual_twist(&self) -> Self {
        let mut l = self.clone();
        l.d = -&self.d;
        l
    }

    fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> Rat {
        let mut acc = Rat::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 && !bj.is_zero() {
                    acc += ai * bj * int(g);
                }
            }
        }
        acc
    }

    pub fn check_divisor(&self, a: &DivisorClass) -> Result<()> {
        if a.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: a.len(),
            });
        }
        Ok(())
    }

    pub fn check_char(&self, ch: &CharVec) -> Result<()> {
        self.check_divisor(&ch.c1)
    }

    pub fn parse_char(&self, s: &str) -> Result<CharVec> {
        CharVec::parse(s, self.rank())
    }

    /// `a^T G b`.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rat> {
        self.check_divisor(a)?;
        self.check_divisor(b)?;
        Ok(self.dot(a, b))
    }

    /// `ch . exp(L)`.
    pub fn mul_exp(&self, ch: &CharVec, l: &DivisorClass) -> Result<CharVec> {
        self.check_char(ch)?;
        self.check_divisor(l)?;
        let ll = self.dot(l, l);
        Ok(CharVec {
            r: ch.r.clone(),
            c1: &ch.c1 + &l.scale(&ch.r),
            e: &ch.e + self.dot(&ch.c1, l) + &ch.r * ll / int(2),
        })
    }

    /// `ch^D = exp(-D) . ch`.
    pub fn twist_char(&self, ch: &CharVec) -> Result<CharVec> {
        self.mul_exp(ch, &-&self.d)
    }

    pub fn vtilde(&self, ch: &CharVec) -> Result<VTilde> {
        let t = self.twist_char(ch)?;
        Ok(VTilde {
            v0: self.h_squared() * &t.r,
            v1: self.dot(&self.h, &t.c1),
            v2: t.e,
        })
    }

    /// `ch(E (x) K) = ch(E) . exp(K)`.
    pub fn tensor_by_k(&self, ch: &CharVec) -> Result<CharVec> {
        self.mul_exp(ch, &self.k)
    }

    /// Riemann-Roch: `chi(E, F) = r_E r_F chi(O) - K.(r_E c_F - r_F c_E)/2
    /// + r_E e_F + r_F e_E - c_E.c_F`.
    pub fn euler_pairing(&self, e: &CharVec, f: &CharVec) -> Result<Rat> {
        self.check_char(e)?;
        self.check_char(f)?;
        let mixed = &f.c1.scale(&e.r) - &e.c1.scale(&f.r);
        Ok(&e.r * &f.r * int(self.chi_o) - self.dot(&self.k, &mixed) / int(2)
            + &e.r * &f.e
            + &f.r * &e.e
            - self.dot(&e.c1, &f.c1))
    }

    /// Integral rank and `c1`, with `ch2 - c1^2/2` an integer.
    pub fn is_integral(&self, ch: &CharVec) -> bool {
        is_integer(&ch.r)
            && ch.c1.coords.iter().all(is_integer)
            && is_integer(&(&ch.e - self.dot(&ch.c1, &ch.c1) / int(2)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn p2() -> SurfaceLattice {
        SurfaceLattice::projective_plane()
    }

    fn ch(r: i64, c: &[i64], e: Rat) -> CharVec {
        CharVec::new(int(r), DivisorClass::from_ints(c), e)
    }

    /// Basis {H, D} with H^2 = 2, D^2 = -2, H.D = 0, twist D.
    fn twisted() -> SurfaceLattice {
        SurfaceLattice::new(
            vec!["H".into(), "D".into()],
            vec![vec![2, 0], vec![0, -2]],
            DivisorClass::from_ints(&[1, 0]),
            DivisorClass::from_ints(&[0, 1]),
            DivisorClass::from_ints(&[0, 0]),
            2,
        )
        .unwrap()
    }

    #[test]
    fn intersect_examples() {
        let l = p2();
        let h = DivisorClass::from_ints(&[1]);
        assert_eq!(l.intersect(&h, &h).unwrap(), int(1));
        assert_eq!(l.intersect(&DivisorClass::zero(1), &h).unwrap(), int(0));

        let hf = SurfaceLattice::new(
            vec!["H".into(), "F".into()],
            vec![vec![0, 1], vec![1, 0]],
            DivisorClass::from_ints(&[1, 1]),
            DivisorClass::from_ints(&[0, 0]),
            DivisorClass::from_ints(&[-2, -2]),
            1,
        )
        .unwrap();
        let s = DivisorClass::from_ints(&[1, 1]);
        assert_eq!(hf.intersect(&s, &s).unwrap(), int(2));
    }

    #[test]
    fn intersect_dimension_mismatch() {
        let l = p2();
        let bad = DivisorClass::from_ints(&[1, 0]);
        assert!(matches!(
            l.intersect(&bad, &bad),
            Err(Error::DimensionMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn twist_examples() {
        let l = p2();
        let c = ch(2, &[1], frac(1, 3));
        assert_eq!(l.twist_char(&c).unwrap(), c);

        let t = twisted();
        let o = ch(1, &[0, 0], int(0));
        // (1, -D, D.D/2) with D.D = -2
        assert_eq!(t.twist_char(&o).unwrap(), ch(1, &[0, -1], int(-1)));

        let c = ch(2, &[0, 1], int(1));
        assert_eq!(t.twist_char(&c).unwrap(), ch(2, &[0, -1], int(1)));
    }

    #[test]
    fn vtilde_examples() {
        let l = p2();
        assert_eq!(l.vtilde(&ch(1, &[0], int(0))).unwrap(), VTilde::from_ints(1, 0, 0));
        assert_eq!(l.vtilde(&ch(0, &[0], int(1))).unwrap(), VTilde::from_ints(0, 0, 1));
        assert_eq!(
            l.vtilde(&ch(1, &[-3], frac(9, 2))).unwrap(),
            VTilde::new(int(1), int(-3), frac(9, 2))
        );
    }

    #[test]
    fn tensor_by_k_examples() {
        let l = p2();
        assert_eq!(
            l.tensor_by_k(&ch(1, &[0], int(0))).unwrap(),
            ch(1, &[-3], frac(9, 2))
        );
        assert_eq!(l.tensor_by_k(&ch(0, &[0], int(5))).unwrap(), ch(0, &[0], int(5)));
        let t = twisted();
        let c = ch(3, &[1, -2], frac(7, 2));
        assert_eq!(t.tensor_by_k(&c).unwrap(), c);
    }

    #[test]
    fn derived_dual_examples() {
        assert_eq!(ch(1, &[0], int(0)).derived_dual(), ch(1, &[0], int(0)));
        assert_eq!(
            ch(1, &[-3], frac(9, 2)).derived_dual(),
            ch(1, &[3], frac(9, 2))
        );
        assert_eq!(ch(0, &[0], int(1)).derived_dual(), ch(0, &[0], int(1)));
    }

    #[test]
    fn euler_pairing_examples() {
        let l = p2();
        let o = ch(1, &[0], int(0));
        assert_eq!(l.euler_pairing(&o, &o).unwrap(), int(1));
        assert_eq!(l.euler_pairing(&o, &ch(1, &[1], frac(1, 2))).unwrap(), int(3));
        for n in 0..6 {
            let ideal = ch(1, &[0], int(-n));
            assert_eq!(l.euler_pairing(&ideal, &ideal).unwrap(), int(1 - 2 * n));
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(VTilde::from_ints(0, 0, 1).discriminant(), int(0));
        assert_eq!(VTilde::from_ints(1, 0, 0).discriminant(), int(0));
        assert_eq!(
            VTilde::new(int(1), int(-3), frac(9, 2)).discriminant(),
            int(0)
        );
    }

    #[test]
    fn lattice_validation() {
        let h = DivisorClass::from_ints(&[1]);
        assert!(SurfaceLattice::new(
            vec!["h".into()],
            vec![vec![-1]],
            h.clone(),
            DivisorClass::from_ints(&[0]),
            DivisorClass::from_ints(&[0]),
            1
        )
        .is_err());
        assert!(SurfaceLattice::new(
            vec!["h".into()],
            vec![vec![1]],
            h.clone(),
            h.clone(),
            DivisorClass::from_ints(&[0]),
            1
        )
        .is_err());
        assert!(SurfaceLattice::new(
            vec!["a".into(), "b".into()],
            vec![vec![1, 2], vec![3, 1]],
            DivisorClass::from_ints(&[1, 0]),
            DivisorClass::from_ints(&[0, 0]),
            DivisorClass::from_ints(&[0, 0]),
            1
        )
        .is_err());
        assert!(p2().poisson_mode());
        assert!(!twisted().poisson_mode());
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        let text = r#"{"basis":["H","D"],"gram":[[2,0],[0,-2]],"H":["1","0"],"D":["0","1/3"],"K":["-1/2","0"],"chiO":2}"#;
        let l = SurfaceLattice::from_json(text).unwrap();
        assert_eq!(l.to_json(), text);
        assert_eq!(SurfaceLattice::from_json(&l.to_json()).unwrap(), l);
        assert!(SurfaceLattice::from_json(r#"{"basis":["h"]}"#).is_err());
    }

    #[test]
    fn parse_characters() {
        let l = twisted();
        let c = l.parse_char("2, 1/2, -1, 3/4").unwrap();
        assert_eq!(c.r, int(2));
        assert_eq!(c.c1.coords, vec![frac(1, 2), int(-1)]);
        assert_eq!(c.e, frac(3, 4));
        assert_eq!(c.to_string(), "2,1/2,-1,3/4");
        assert!(l.parse_char("1,0,0").is_err());
        assert!(l.parse_char("1,x,0,0").is_err());
    }

    #[test]
    fn integrality() {
        let l = p2();
        assert!(l.is_integral(&ch(1, &[1], frac(1, 2))));
        assert!(l.is_integral(&ch(1, &[0], int(-2))));
        assert!(!l.is_integral(&ch(1, &[1], int(0))));
        assert!(!l.is_integral(&CharVec::new(frac(1, 2), DivisorClass::zero(1), int(0))));
    }
}
