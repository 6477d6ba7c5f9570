//! Stereographic SVG rendering of tiling documents.
//!
//! Projection from the pole `N` sends the hemisphere opposite `N` onto the
//! unit disk. Geodesic arcs become cubic Bézier pieces built from Hermite
//! data and split until they stay within [`MAX_DEVIATION_PX`] of the curve.

use std::fmt::Write;

use crate::develop::fibonacci_sphere;
use crate::error::{Error, Result};
use crate::io::document::{TileEntryKind, TilingDocument};
use crate::quaternion::{Quat, UnitQuat};
use crate::sphere::{Hyperplane, Location, SphericalPolygon};

pub const MAX_DEVIATION_PX: f64 = 0.25;
/// Candidate poles examined by [`auto_pole`].
pub const POLE_CANDIDATES: usize = 10_000;
const MARGIN: f64 = 0.05;
const MAX_DEPTH: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PoleChoice {
    Auto,
    Fixed([f64; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub size: u32,
    pub pole: PoleChoice,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self { size: 800, pole: PoleChoice::Auto }
    }
}

type V3 = [f64; 3];

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn scale(a: V3, s: f64) -> V3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn normalize(a: V3) -> Option<V3> {
    let n = dot(a, a).sqrt();
    (n > 0.0 && n.is_finite()).then(|| scale(a, 1.0 / n))
}

fn angle(a: V3, b: V3) -> f64 {
    let c = cross(a, b);
    dot(c, c).sqrt().atan2(dot(a, b))
}

/// Minor great-circle arc from `a` to `b`.
#[derive(Debug, Clone, Copy)]
struct Arc {
    a: V3,
    tangent: V3,
    length: f64,
}

impl Arc {
    fn new(a: V3, b: V3) -> Option<Arc> {
        let length = angle(a, b);
        let tangent = normalize(add(b, scale(a, -dot(a, b))))?;
        Some(Arc { a, tangent, length })
    }

    fn point(&self, t: f64) -> V3 {
        let (s, c) = t.sin_cos();
        add(scale(self.a, c), scale(self.tangent, s))
    }

    fn velocity(&self, t: f64) -> V3 {
        let (s, c) = t.sin_cos();
        add(scale(self.tangent, c), scale(self.a, -s))
    }

    /// Angular distance from `q` to the arc.
    fn distance(&self, q: V3) -> f64 {
        let n = cross(self.a, self.tangent);
        let along = dot(q, self.tangent).atan2(dot(q, self.a));
        if (0.0..=self.length).contains(&along) {
            dot(q, n).abs().clamp(0.0, 1.0).asin()
        } else {
            angle(q, self.a).min(angle(q, self.point(self.length)))
        }
    }
}

/// Stereographic projection into pixel coordinates.
struct Projection {
    pole: V3,
    e1: V3,
    e2: V3,
    center: f64,
    px_per_unit: f64,
}

impl Projection {
    fn new(pole: V3, size: u32) -> Projection {
        let helper = if pole[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let e1 = normalize(cross(helper, pole)).expect("helper is not parallel to pole");
        let e2 = cross(pole, e1);
        let size = size as f64;
        Projection { pole, e1, e2, center: size / 2.0, px_per_unit: size / (2.0 * (1.0 + MARGIN)) }
    }

    fn project(&self, p: V3) -> [f64; 2] {
        let d = 1.0 - dot(p, self.pole);
        let k = self.px_per_unit / d;
        // SVG y grows downward.
        [self.center + k * dot(p, self.e1), self.center - k * dot(p, self.e2)]
    }

    fn derivative(&self, p: V3, v: V3) -> [f64; 2] {
        let d = 1.0 - dot(p, self.pole);
        let dd = -dot(v, self.pole);
        let (x, y) = (dot(p, self.e1), dot(p, self.e2));
        let (dx, dy) = (dot(v, self.e1), dot(v, self.e2));
        let k = self.px_per_unit;
        [k * (dx * d - x * dd) / (d * d), -k * (dy * d - y * dd) / (d * d)]
    }
}

fn fmt_num(out: &mut String, x: f64) {
    let r = (x * 1000.0).round() / 1000.0;
    let r = if r == 0.0 { 0.0 } else { r };
    write!(out, "{r:.3}").unwrap();
}

fn fmt_point(out: &mut String, p: [f64; 2]) {
    fmt_num(out, p[0]);
    out.push(' ');
    fmt_num(out, p[1]);
}

/// Appends cubic segments tracing `arc`; the current point must be its start.
fn trace_arc(out: &mut String, proj: &Projection, arc: &Arc) {
    fn rec(out: &mut String, proj: &Projection, arc: &Arc, t0: f64, t1: f64, depth: u32) {
        let h = t1 - t0;
        let (p0, p3) = (arc.point(t0), arc.point(t1));
        let (c0, c3) = (proj.project(p0), proj.project(p3));
        let d0 = proj.derivative(p0, arc.velocity(t0));
        let d3 = proj.derivative(p3, arc.velocity(t1));
        let c1 = [c0[0] + d0[0] * h / 3.0, c0[1] + d0[1] * h / 3.0];
        let c2 = [c3[0] - d3[0] * h / 3.0, c3[1] - d3[1] * h / 3.0];
        let ok = [0.25, 0.5, 0.75].iter().all(|&u: &f64| {
            let v = 1.0 - u;
            let b = [
                v * v * v * c0[0] + 3.0 * v * v * u * c1[0] + 3.0 * v * u * u * c2[0] + u * u * u * c3[0],
                v * v * v * c0[1] + 3.0 * v * v * u * c1[1] + 3.0 * v * u * u * c2[1] + u * u * u * c3[1],
            ];
            let c = proj.project(arc.point(t0 + u * h));
            let dev = ((b[0] - c[0]).powi(2) + (b[1] - c[1]).powi(2)).sqrt();
            dev <= MAX_DEVIATION_PX
        });
        if ok || depth >= MAX_DEPTH {
            out.push_str(" C");
            fmt_point(out, c1);
            out.push(' ');
            fmt_point(out, c2);
            out.push(' ');
            fmt_point(out, c3);
        } else {
            let m = 0.5 * (t0 + t1);
            rec(out, proj, arc, t0, m, depth + 1);
            rec(out, proj, arc, m, t1, depth + 1);
        }
    }
    rec(out, proj, arc, 0.0, arc.length, 0);
}

/// Consecutive minor arcs through the tile vertices (closed for polygons).
fn tile_arcs(points: &[V3], closed: bool) -> Vec<Arc> {
    let n = points.len();
    let count = if closed { n } else { n - 1 };
    (0..count).filter_map(|i| Arc::new(points[i], points[(i + 1) % n])).collect()
}

fn all_arcs(doc: &TilingDocument) -> Vec<Arc> {
    doc.tiles
        .iter()
        .flat_map(|t| tile_arcs(&t.vertices, t.kind != TileEntryKind::EdgeSegment))
        .collect()
}

/// The Fibonacci candidate farthest from every tile edge.
pub fn auto_pole(doc: &TilingDocument) -> V3 {
    let arcs = all_arcs(doc);
    let mut best = ([0.0, 0.0, 1.0], f64::NEG_INFINITY);
    for q in fibonacci_sphere(POLE_CANDIDATES) {
        let p = [q.x, q.y, q.z];
        let d = arcs.iter().map(|a| a.distance(p)).fold(f64::INFINITY, f64::min);
        if d > best.1 {
            best = (p, d);
        }
    }
    best.0
}

/// Angular distance from `p` to the nearest tile vertex.
pub fn distance_to_vertices(doc: &TilingDocument, p: V3) -> f64 {
    doc.tiles
        .iter()
        .flat_map(|t| t.vertices.iter())
        .map(|&v| angle(v, p))
        .fold(f64::INFINITY, f64::min)
}

fn contains(points: &[V3], pole: V3) -> bool {
    let verts: Option<Vec<UnitQuat>> = points
        .iter()
        .map(|v| UnitQuat::new(Quat::pure(*v)).ok())
        .collect();
    let Some(verts) = verts else { return false };
    match SphericalPolygon::new(Hyperplane::sigma(), verts) {
        Ok(poly) => UnitQuat::new(Quat::pure(pole))
            .ok()
            .and_then(|q| poly.locate(q, 0.0).ok())
            .is_some_and(|l| l == Location::Inside),
        Err(_) => false,
    }
}

const STYLE: &str = ".face{fill:#f2c14e;stroke:#222;stroke-width:0.8}\
.vertex{fill:#5b8fb9;stroke:#222;stroke-width:0.8}\
.edge{fill:none;stroke:#c0392b;stroke-width:1.6}";

pub fn render_svg(doc: &TilingDocument, opts: &RenderOptions) -> Result<String> {
    if opts.size == 0 {
        return Err(Error::InvalidParameter("size must be positive".into()));
    }
    let pole = match opts.pole {
        PoleChoice::Auto => auto_pole(doc),
        PoleChoice::Fixed(p) => {
            normalize(p).ok_or_else(|| Error::InvalidParameter("pole must be nonzero".into()))?
        }
    };
    let proj = Projection::new(pole, opts.size);
    let size = opts.size;
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    )
    .unwrap();
    writeln!(out, "<style>{STYLE}</style>").unwrap();
    for (kind, class) in [
        (TileEntryKind::Face, "face"),
        (TileEntryKind::Vertex, "vertex"),
        (TileEntryKind::EdgeSegment, "edge"),
    ] {
        for tile in doc.tiles.iter().filter(|t| t.kind == kind) {
            let closed = kind != TileEntryKind::EdgeSegment;
            let mut d = String::new();
            let mut evenodd = false;
            if closed && contains(&tile.vertices, pole) {
                // The tile around the pole is the outside of its image.
                evenodd = true;
                let s = size as f64;
                write!(d, "M0 0 H{s} V{s} H0 Z ").unwrap();
            }
            d.push('M');
            fmt_point(&mut d, proj.project(tile.vertices[0]));
            for arc in tile_arcs(&tile.vertices, closed) {
                trace_arc(&mut d, &proj, &arc);
            }
            if closed {
                d.push_str(" Z");
            }
            let rule = if evenodd { r#" fill-rule="evenodd""# } else { "" };
            writeln!(
                out,
                r#"<path class="{class}" data-source="{}"{rule} d="{d}"/>"#,
                tile.source
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
