//! Plain SVG drawings of the `(s, q)` plane.
//!
//! Plane coordinates map to the picture by `X = 100 (x - x_min)`,
//! `Y = 100 (y_max - y)`; every number is printed with four decimals.

use std::fmt::Write;

const SCALE: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extent {
    Segment,
    /// From the first point through the second and beyond.
    Ray,
    Line,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stroke {
    pub from: (f64, f64),
    pub to: (f64, f64),
    pub extent: Extent,
    pub label: Option<String>,
    pub dashed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub title: String,
    pub viewport: Viewport,
    /// Levels `C` of parabolas `y = x^2/2 + C`, with labels.
    pub parabolas: Vec<(f64, Option<String>)>,
    pub strokes: Vec<Stroke>,
    pub points: Vec<(String, (f64, f64))>,
}

fn num(x: f64) -> String {
    let x = if x.abs() < 5e-5 { 0.0 } else { x };
    format!("{x:.4}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Viewport {
    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        ((x - self.x_min) * SCALE, (self.y_max - y) * SCALE)
    }

    fn contains(&self, (x, y): (f64, f64)) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }

    /// Liang-Barsky clip of `from + t (to - from)` for `t` in `[t0, t1]`.
    fn clip(&self, from: (f64, f64), to: (f64, f64), t0: f64, t1: f64) -> Option<((f64, f64), (f64, f64))> {
        let (dx, dy) = (to.0 - from.0, to.1 - from.1);
        let (mut lo, mut hi) = (t0, t1);
        for (p, q) in [
            (-dx, from.0 - self.x_min),
            (dx, self.x_max - from.0),
            (-dy, from.1 - self.y_min),
            (dy, self.y_max - from.1),
        ] {
            if p == 0.0 {
                if q < 0.0 {
                    return None;
                }
                continue;
            }
            let r = q / p;
            if p < 0.0 {
                lo = lo.max(r);
            } else {
                hi = hi.min(r);
            }
        }
        if lo > hi {
            return None;
        }
        let at = |t: f64| (from.0 + t * dx, from.1 + t * dy);
        Some((at(lo), at(hi)))
    }

    /// Pieces of `[x_min, x_max]` where `y = x^2/2 + c` stays in the box.
    fn parabola_pieces(&self, c: f64) -> Vec<(f64, f64)> {
        if self.y_max < c {
            return vec![];
        }
        let w = (2.0 * (self.y_max - c)).sqrt();
        let (lo, hi) = (self.x_min.max(-w), self.x_max.min(w));
        if lo >= hi {
            return vec![];
        }
        if self.y_min <= c {
            return vec![(lo, hi)];
        }
        let u = (2.0 * (self.y_min - c)).sqrt();
        [(lo, hi.min(-u)), (lo.max(u), hi)]
            .into_iter()
            .filter(|(a, b)| a < b)
            .collect()
    }
}

pub fn render(scene: &Scene) -> String {
    let vp = &scene.viewport;
    let w = (vp.x_max - vp.x_min) * SCALE;
    let h = (vp.y_max - vp.y_min) * SCALE;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}">"#,
        num(w),
        num(h)
    );
    let _ = writeln!(out, "<title>{}</title>", escape(&scene.title));
    let _ = writeln!(out, r#"<rect width="{}" height="{}" fill="white"/>"#, num(w), num(h));

    for (c, label) in &scene.parabolas {
        for (x0, x1) in vp.parabola_pieces(*c) {
            let y = |x: f64| x * x / 2.0 + c;
            // the control point of a parabola arc is where its end tangents meet
            let ctrl = ((x0 + x1) / 2.0, x0 * x1 / 2.0 + c);
            let (a, b, m) = (vp.map((x0, y(x0))), vp.map((x1, y(x1))), vp.map(ctrl));
            let _ = writeln!(
                out,
                r##"<path d="M {} {} Q {} {} {} {}" fill="none" stroke="#1f4e79" stroke-width="1.5"/>"##,
                num(a.0),
                num(a.1),
                num(m.0),
                num(m.1),
                num(b.0),
                num(b.1)
            );
        }
        if let Some(label) = label {
            let pieces = vp.parabola_pieces(*c);
            if let Some(&(_, x1)) = pieces.last() {
                let at = vp.map((x1, x1 * x1 / 2.0 + c));
                text(&mut out, label, (at.0 - 4.0, at.1 + 14.0), "end");
            }
        }
    }

    for s in &scene.strokes {
        let (t0, t1) = match s.extent {
            Extent::Segment => (0.0, 1.0),
            Extent::Ray => (0.0, f64::INFINITY),
            Extent::Line => (f64::NEG_INFINITY, f64::INFINITY),
        };
        let Some((a, b)) = vp.clip(s.from, s.to, t0, t1) else { continue };
        let (a, b) = (vp.map(a), vp.map(b));
        let dash = if s.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1"{dash}/>"#,
            num(a.0),
            num(a.1),
            num(b.0),
            num(b.1)
        );
        if let Some(label) = &s.label {
            let mid = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            text(&mut out, label, (mid.0 + 6.0, mid.1 - 6.0), "start");
        }
    }

    // coincident points share one dot and a joined label
    let mut merged: Vec<(String, (f64, f64))> = Vec::new();
    for (label, p) in &scene.points {
        match merged.iter_mut().find(|(_, q)| q == p) {
            Some((l, _)) => *l = format!("{l} = {label}"),
            None => merged.push((label.clone(), *p)),
        }
    }
    for (label, p) in &merged {
        if !vp.contains(*p) {
            continue;
        }
        let at = vp.map(*p);
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="3" fill="black"/>"#,
            num(at.0),
            num(at.1)
        );
        text(&mut out, label, (at.0 + 6.0, at.1 - 6.0), "start");
    }
    out.push_str("</svg>\n");
    out
}

fn text(out: &mut String, label: &str, at: (f64, f64), anchor: &str) {
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="{anchor}">{}</text>"#,
        num(at.0),
        num(at.1),
        escape(label)
    );
}
