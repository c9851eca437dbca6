//! Scene files: labeled points, strokes and parabola levels over a
//! rational viewport, resolved against a surface lattice and drawn by
//! [`crate::svg`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use walland_core::rational::{parse_rat, to_f64};
use walland_core::walls::{Ext2Branch, Ext2Certificate, ParabolaPoint};
use walland_core::{Error, PlanePoint, Rat, Result, SurfaceLattice};

use crate::svg::{self, Extent, Stroke, Viewport};

pub const PHASE_COMPARE: &str = include_str!("../../../scenes/phase-compare.json");
pub const DEFORM: &str = include_str!("../../../scenes/deform.json");
pub const EXT2: &str = include_str!("../../../scenes/ext2.json");

pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "phase-compare" => Some(PHASE_COMPARE),
        "deform" => Some(DEFORM),
        "ext2" => Some(EXT2),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViewportSpec {
    pub s_min: String,
    pub s_max: String,
    pub q_min: String,
    pub q_max: String,
}

/// A labeled point: either plane coordinates `[s, q]` or a character whose
/// plane image is taken on the scene's surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSpec {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char: Option<String>,
    /// Drawn as a labeled dot; hidden points only anchor strokes.
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub shown: bool,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrokeKind {
    Segment,
    Ray,
    Line,
}

/// A stroke between two labeled points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrokeSpec {
    pub kind: StrokeKind,
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub dashed: bool,
}

/// The parabola `q = s^2/2 + level`, or the one through a labeled point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParabolaSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub through: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    pub title: String,
    /// Defaults to the projective plane.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceLattice>,
    pub viewport: ViewportSpec,
    #[serde(default)]
    pub points: Vec<PointSpec>,
    #[serde(default)]
    pub strokes: Vec<StrokeSpec>,
    #[serde(default)]
    pub parabolas: Vec<ParabolaSpec>,
}

impl SceneSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Shape(format!("scene file: {e}")))
    }

    /// Exact plane coordinates of every labeled point.
    pub fn resolve_points(&self) -> Result<BTreeMap<String, (Rat, Rat)>> {
        let lattice = self.surface.clone().unwrap_or_else(SurfaceLattice::projective_plane);
        let mut out = BTreeMap::new();
        for p in &self.points {
            let xy = match (&p.at, &p.char) {
                (Some([s, q]), None) => (parse_rat(s)?, parse_rat(q)?),
                (None, Some(c)) => {
                    let ch = lattice.parse_char(c)?;
                    lattice.vtilde(&ch)?.plane_point()?.xy()?
                }
                _ => {
                    return Err(Error::Shape(format!(
                        "point {:?} needs exactly one of \"at\" and \"char\"",
                        p.label
                    )))
                }
            };
            if out.insert(p.label.clone(), xy).is_some() {
                return Err(Error::Shape(format!("duplicate point label {:?}", p.label)));
            }
        }
        Ok(out)
    }

    pub fn resolve(&self) -> Result<svg::Scene> {
        let v = &self.viewport;
        let [s_min, s_max, q_min, q_max] =
            [&v.s_min, &v.s_max, &v.q_min, &v.q_max].map(|x| parse_rat(x));
        let (s_min, s_max, q_min, q_max) = (s_min?, s_max?, q_min?, q_max?);
        if s_min >= s_max || q_min >= q_max {
            return Err(Error::Precondition("viewport is empty".into()));
        }
        let viewport = Viewport {
            x_min: to_f64(&s_min),
            x_max: to_f64(&s_max),
            y_min: to_f64(&q_min),
            y_max: to_f64(&q_max),
        };

        let exact = self.resolve_points()?;
        let lookup = |label: &str| {
            exact
                .get(label)
                .ok_or_else(|| Error::Shape(format!("unknown point label {label:?}")))
        };
        let float = |(x, y): &(Rat, Rat)| (to_f64(x), to_f64(y));

        let mut strokes = Vec::new();
        for s in &self.strokes {
            let (a, b) = (lookup(&s.from)?, lookup(&s.to)?);
            if a == b {
                return Err(Error::IdenticalPoints);
            }
            strokes.push(Stroke {
                from: float(a),
                to: float(b),
                extent: match s.kind {
                    StrokeKind::Segment => Extent::Segment,
                    StrokeKind::Ray => Extent::Ray,
                    StrokeKind::Line => Extent::Line,
                },
                label: s.label.clone(),
                dashed: s.dashed,
            });
        }

        let mut parabolas = Vec::new();
        for p in &self.parabolas {
            let level = match (&p.level, &p.through) {
                (Some(c), None) => parse_rat(c)?,
                (None, Some(label)) => {
                    let (x, y) = lookup(label)?;
                    y - x * x / Rat::from_integer(2.into())
                }
                _ => {
                    return Err(Error::Shape(
                        "parabola needs exactly one of \"level\" and \"through\"".into(),
                    ))
                }
            };
            parabolas.push((to_f64(&level), p.label.clone()));
        }

        let points = self
            .points
            .iter()
            .filter(|p| p.shown)
            .map(|p| (p.label.clone(), float(&exact[&p.label])))
            .collect();
        Ok(svg::Scene {
            title: self.title.clone(),
            viewport,
            parabolas,
            strokes,
            points,
        })
    }
}

fn rat_point(p: &PlanePoint) -> Result<[String; 2]> {
    let (x, y) = p.xy()?;
    Ok([x.to_string(), y.to_string()])
}

fn parabola_point(p: &ParabolaPoint) -> Result<[String; 2]> {
    let q = p.affine().ok_or(Error::PointAtInfinity)?;
    let x = q.x.as_rational().ok_or_else(|| irrational(p))?;
    let y = q.y.as_rational().ok_or_else(|| irrational(p))?;
    Ok([x.to_string(), y.to_string()])
}

fn irrational(p: &ParabolaPoint) -> Error {
    Error::Precondition(format!("{p} has irrational coordinates and cannot be labeled exactly"))
}

/// The slope-comparison picture of a left-side certificate: both
/// characters, `P` and `Q` on their parabola, and the chords `AB`, `A'B'`.
///
/// Chord endpoints are placed at their float positions when irrational.
pub fn ext2_scene(cert: &Ext2Certificate) -> Result<SceneSpec> {
    let leaf = cert.leaf();
    let data = leaf
        .data
        .as_ref()
        .ok_or_else(|| Error::Precondition("certificate carries no plane data".into()))?;
    let at = |p: &ParabolaPoint| match parabola_point(p) {
        Ok(xy) => Ok(xy),
        Err(Error::Precondition(_)) => {
            let (x, y) = p.affine().ok_or(Error::PointAtInfinity)?.to_f64();
            Ok([f64_rat(x), f64_rat(y)])
        }
        Err(e) => Err(e),
    };
    let point = |label: &str, xy: [String; 2]| PointSpec {
        label: label.into(),
        at: Some(xy),
        char: None,
        shown: true,
    };
    let points = vec![
        point("v(E)", rat_point(&data.v_e)?),
        point("v(E⊗K)", rat_point(&data.v_ek)?),
        point("P", [data.p.s().to_string(), data.p.q().to_string()]),
        point("Q", [data.q.s().to_string(), data.q.q().to_string()]),
        point("A", at(&data.a)?),
        point("B", at(&data.b)?),
        point("A′", at(&data.a_prime)?),
        point("B′", at(&data.b_prime)?),
    ];
    let mut all: Vec<_> = points.iter().map(|p| parse_pair(p.at.as_ref().expect("set"))).collect();
    all.extend(match &leaf.branch {
        Ext2Branch::SegmentsIntersect { r, .. } => Some(r.xy()?),
        _ => None,
    });
    let viewport = padded_box(&all);
    let mut points = points;
    if let Ext2Branch::SegmentsIntersect { r, .. } = &leaf.branch {
        points.push(point("R", rat_point(r)?));
    }
    let seg = |a: &str, b: &str| StrokeSpec {
        kind: StrokeKind::Segment,
        from: a.into(),
        to: b.into(),
        label: None,
        dashed: false,
    };
    let dashed = |a: &str, b: &str| StrokeSpec {
        dashed: true,
        ..seg(a, b)
    };
    Ok(SceneSpec {
        title: format!("Ext^2 certificate ({})", leaf.branch.name()),
        surface: None,
        viewport,
        points,
        strokes: vec![seg("A", "B"), seg("A′", "B′"), dashed("P", "Q"), dashed("v(E)", "v(E⊗K)")],
        parabolas: vec![
            ParabolaSpec {
                level: Some("0".into()),
                through: None,
                label: Some("q = s²/2".into()),
            },
            ParabolaSpec {
                level: None,
                through: Some("P".into()),
                label: None,
            },
        ],
    })
}

fn parse_pair([x, y]: &[String; 2]) -> (Rat, Rat) {
    (parse_rat(x).expect("formatted rational"), parse_rat(y).expect("formatted rational"))
}

/// A float rounded to four decimals, as an exact rational string.
fn f64_rat(x: f64) -> String {
    let n = (x * 10_000.0).round() as i64;
    Rat::new(n.into(), 10_000.into()).to_string()
}

/// The bounding box of `pts` grown by one unit on each side and snapped
/// outward to halves.
fn padded_box(pts: &[(Rat, Rat)]) -> ViewportSpec {
    let half = Rat::new(1.into(), 2.into());
    let snap_down = |r: Rat| (r / &half).floor() * &half;
    let snap_up = |r: Rat| (r / &half).ceil() * &half;
    let one = Rat::from_integer(1.into());
    let xs = pts.iter().map(|p| &p.0);
    let ys = pts.iter().map(|p| &p.1);
    let s_min = xs.clone().min().expect("points").clone();
    let s_max = xs.max().expect("points").clone();
    let q_min = ys.clone().min().expect("points").clone();
    let q_max = ys.max().expect("points").clone();
    ViewportSpec {
        s_min: snap_down(s_min - &one).to_string(),
        s_max: snap_up(s_max + &one).to_string(),
        q_min: snap_down(q_min - &one).to_string(),
        q_max: snap_up(q_max + &one).to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_scenes_resolve() {
        for name in ["phase-compare", "deform", "ext2"] {
            let spec = SceneSpec::from_json(bundled(name).unwrap()).unwrap();
            let scene = spec.resolve().unwrap();
            assert!(!scene.points.is_empty(), "{name}");
        }
    }

    #[test]
    fn character_points_use_the_plane_image() {
        let spec = SceneSpec::from_json(
            r#"{"title":"t","viewport":{"s_min":"-1","s_max":"1","q_min":"0","q_max":"1"},
                "points":[{"label":"O(1)","char":"1,1,1/2"}]}"#,
        )
        .unwrap();
        let pts = spec.resolve_points().unwrap();
        assert_eq!(pts["O(1)"], (Rat::from_integer(1.into()), Rat::new(1.into(), 2.into())));
    }

    #[test]
    fn bad_scenes_are_rejected() {
        let base = r#""viewport":{"s_min":"0","s_max":"0","q_min":"0","q_max":"1"}"#;
        let empty = SceneSpec::from_json(&format!(r#"{{"title":"t",{base}}}"#)).unwrap();
        assert!(matches!(empty.resolve(), Err(Error::Precondition(_))));
        let dangling = SceneSpec::from_json(
            r#"{"title":"t","viewport":{"s_min":"0","s_max":"1","q_min":"0","q_max":"1"},
                "strokes":[{"kind":"segment","from":"X","to":"Y"}]}"#,
        )
        .unwrap();
        assert!(matches!(dangling.resolve(), Err(Error::Shape(_))));
        assert!(SceneSpec::from_json(r#"{"title":"t"}"#).is_err());
    }

    #[test]
    fn viewport_padding() {
        let r = |n: i64, d: i64| Rat::new(n.into(), d.into());
        let v = padded_box(&[(r(-4, 1), r(17, 2)), (r(1, 3), r(0, 1))]);
        assert_eq!(
            [v.s_min, v.s_max, v.q_min, v.q_max],
            ["-5", "3/2", "-1", "19/2"].map(String::from)
        );
    }
}
