//! Development of the normal complex onto `Σ`, the pure unit quaternions.
//!
//! A face tile `f × {f*}` maps to `F = {ω(x, f*) : x ∈ f}`, a vertex tile
//! `{v} × v*` to `V = {ω(v, ν) : ν ∈ v*}`, and a rectangle `e × e*` collapses
//! onto a geodesic segment `E` of length `len(e) + len(e*)`.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::complex::{NormalComplex, TileKind, TileRef};
use crate::error::{Error, Result};
use crate::polyhedron::{exterior_dihedral_angle, DualPair, Edge};
use crate::quaternion::{PureUnit, Quat, Side, TangentVector, UnitQuat};
use crate::sphere::{
    distance, tangent_toward, GeodesicArc, Hyperplane, Location, OrientedGeodesic, Orientation,
    SphericalPolygon, TOL_COVERAGE,
};

/// Boundary-adversarial samples added by [`verify_tiling`].
pub const ADVERSARIAL_SAMPLES: usize = 1000;
/// Adversarial samples sit this many coverage tolerances off a tile edge.
pub const ADVERSARIAL_OFFSET: f64 = 10.0;
/// Largest acceptable `|4π - Σ areas|`.
pub const TOL_AREA_DEFICIT: f64 = 1e-6;
/// Breakpoints along a segment closer than this are treated as equal.
const TOL_BREAKPOINT: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct DevelopedPolygon {
    pub source: TileRef,
    pub polygon: SphericalPolygon,
}

/// Image of the rectangle of one primal edge.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSegment {
    pub edge: usize,
    /// The primal edge `v1 -> v2`, with `f1*` the start of `e*`.
    pub oriented: Edge,
    pub f1: usize,
    pub f2: usize,
    pub a: f64,
    pub b: f64,
    pub arc: GeodesicArc,
    /// Images of `(v1,f1*), (v2,f1*), (v2,f2*), (v1,f2*)`.
    pub corners: [PureUnit; 4],
    /// Parameters of `corners` along `arc.geodesic`.
    pub corner_params: [f64; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tiling {
    pub side: Side,
    pub faces: Vec<DevelopedPolygon>,
    pub vertices: Vec<DevelopedPolygon>,
    pub segments: Vec<EdgeSegment>,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct VerificationReport {
    pub n_samples: usize,
    pub covered_exactly_once: usize,
    pub boundary: usize,
    pub uncovered: usize,
    pub multiply_covered: usize,
    pub area_deficit: f64,
    pub max_geodesic_deviation: f64,
    pub max_slide_deviation: f64,
    /// Largest boundary count consistent with the sampling density.
    pub boundary_bound: usize,
}

impl VerificationReport {
    pub fn accepted(&self) -> bool {
        self.uncovered == 0
            && self.multiply_covered == 0
            && self.boundary <= self.boundary_bound
            && self.area_deficit < TOL_AREA_DEFICIT
    }
}

fn omega(side: Side, x: UnitQuat, nu: UnitQuat) -> Result<PureUnit> {
    Ok(side.omega(TangentVector::new(x, nu)?))
}

fn sigma_polygon(source: TileRef, points: Vec<UnitQuat>) -> Result<DevelopedPolygon> {
    Ok(DevelopedPolygon { source, polygon: SphericalPolygon::new(Hyperplane::sigma(), points)? })
}

/// `a + wrap(b - a)` with the wrap into `(-π, π]`.
fn unwrap_near(a: f64, b: f64) -> f64 {
    let mut d = (b - a).rem_euclid(TAU);
    if d > PI {
        d -= TAU;
    }
    a + d
}

pub fn develop(c: &NormalComplex, side: Side) -> Result<Tiling> {
    let dp = c.dual_pair();
    let p = &dp.primal;
    let mut faces = Vec::with_capacity(p.num_faces());
    for (f, cyc) in p.faces().iter().enumerate() {
        let pole = p.face_poles()[f];
        let pts = cyc
            .iter()
            .map(|&v| omega(side, p.vertices()[v], pole).map(PureUnit::unit))
            .collect::<Result<Vec<_>>>()?;
        faces.push(sigma_polygon(TileRef { kind: TileKind::Face, index: f }, pts)?);
    }
    let mut vertices = Vec::with_capacity(p.num_vertices());
    for v in 0..p.num_vertices() {
        let x = p.vertices()[v];
        let pts = dp
            .dual_face_inward(v)
            .iter()
            .map(|&f| omega(side, x, p.face_poles()[f]).map(PureUnit::unit))
            .collect::<Result<Vec<_>>>()?;
        vertices.push(sigma_polygon(TileRef { kind: TileKind::Vertex, index: v }, pts)?);
    }
    let mut segments = Vec::with_capacity(p.num_edges());
    for (j, et) in c.edge_tiles().iter().enumerate() {
        let cv = et.corners.map(|i| c.complex_vertices()[i]);
        let (v1, v2) = (cv[0].vertex, cv[1].vertex);
        let (f1, f2) = (cv[0].face, cv[2].face);
        let mut corners = [PureUnit::I; 4];
        for (k, x) in cv.iter().enumerate() {
            corners[k] = omega(side, p.vertices()[x.vertex], p.face_poles()[x.face])?;
        }
        let x1 = p.vertices()[v1];
        let dir = tangent_toward(p.face_poles()[f1], p.face_poles()[f2])
            .ok_or_else(|| Error::InvalidPolyhedron(format!("edge {j} has coincident face poles")))?;
        // Derivative of t ↦ ω(v1, y_t) at t = 0.
        let tangent = match side {
            Side::Left => x1.quat().conj() * dir,
            Side::Right => dir * x1.quat().conj(),
        };
        let geodesic = OrientedGeodesic::new(corners[0].quat(), tangent)?;
        let (a, b) = (et.a, et.b);
        let expected = match side {
            Side::Left => [0.0, -a, b - a, b],
            Side::Right => [0.0, a, a + b, b],
        };
        let mut corner_params = [0.0; 4];
        for k in 0..4 {
            corner_params[k] = unwrap_near(expected[k], geodesic.parameter_of(corners[k].quat()));
        }
        let (s, e) = match side {
            Side::Left => (corner_params[1], corner_params[3]),
            Side::Right => (corner_params[0], corner_params[2]),
        };
        segments.push(EdgeSegment {
            edge: j,
            oriented: Edge { start: v1, end: v2, left: f1, right: f2 },
            f1,
            f2,
            a,
            b,
            arc: GeodesicArc::new(geodesic, s, e)?,
            corners,
            corner_params,
        });
    }
    Ok(Tiling { side, faces, vertices, segments })
}

impl Tiling {
    /// All face and vertex tiles.
    pub fn polygons(&self) -> impl Iterator<Item = &DevelopedPolygon> {
        self.faces.iter().chain(self.vertices.iter())
    }

    pub fn num_polygons(&self) -> usize {
        self.faces.len() + self.vertices.len()
    }

    pub fn total_area(&self) -> Result<f64> {
        let mut sum = 0.0;
        for p in self.polygons() {
            sum += p.polygon.area()?;
        }
        Ok(sum)
    }

    /// Largest distance of a segment corner from its great circle.
    pub fn max_geodesic_deviation(&self) -> f64 {
        self.segments
            .iter()
            .flat_map(|s| s.corners.iter().map(move |c| s.arc.geodesic.deviation(c.quat())))
            .fold(0.0, f64::max)
    }

    /// Number of developed polygons not positively oriented on `Σ`.
    pub fn orientation_mismatches(&self) -> usize {
        self.polygons().filter(|p| p.polygon.orientation() != Orientation::Positive).count()
    }
}

/// Largest change in pairwise vertex distance between a tile and its image.
pub fn isometry_deviation(t: &Tiling, c: &NormalComplex) -> f64 {
    let p = &c.dual_pair().primal;
    let mut worst = 0.0_f64;
    for dev in t.polygons() {
        let src: Vec<UnitQuat> = match dev.source.kind {
            TileKind::Face => p.faces()[dev.source.index].iter().map(|&v| p.vertices()[v]).collect(),
            TileKind::Vertex => c.vertex_polygon(dev.source.index).vertices().to_vec(),
            TileKind::Edge => continue,
        };
        let img = dev.polygon.vertices();
        for i in 0..src.len() {
            for k in i + 1..src.len() {
                worst = worst.max((distance(img[i], img[k]) - distance(src[i], src[k])).abs());
            }
        }
    }
    worst
}

/// Largest `|len(E) - (len(e) + len(e*))|`, with the length read off the
/// corner images.
pub fn segment_length_check(t: &Tiling, dp: &DualPair) -> Result<f64> {
    let mut worst = 0.0_f64;
    for s in &t.segments {
        let e = dp.primal.edge(s.edge)?;
        let a = distance(dp.primal.vertices()[e.start], dp.primal.vertices()[e.end]);
        let b = exterior_dihedral_angle(dp, s.edge)?;
        let lo = s.corner_params.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = s.corner_params.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        worst = worst.max((hi - lo - (a + b)).abs());
    }
    Ok(worst)
}

fn vec3(q: Quat) -> [f64; 3] {
    [q.x, q.y, q.z]
}

fn det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Handedness {
    Right,
    Left,
}

/// The configuration of the two face images at one edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlideRecord {
    pub edge: usize,
    /// Largest distance of the four edge-endpoint images from the common circle.
    pub collinearity: f64,
    /// Signed shift along the circle from the first face's copy of the edge to the second's.
    pub offset: f64,
    pub dihedral: f64,
    pub opposite_sides: bool,
    /// Direction of the second face's shift, seen from the first face.
    pub handedness: Handedness,
}

/// The local slide configuration of every edge.
pub fn slide_records(t: &Tiling, dp: &DualPair) -> Result<Vec<SlideRecord>> {
    let mut out = Vec::with_capacity(t.segments.len());
    for s in &t.segments {
        let face = |f: usize| {
            t.faces
                .iter()
                .find(|d| d.source.index == f)
                .ok_or_else(|| Error::InvalidParameter(format!("tiling has no image of face {f}")))
        };
        let (p1, p2) = (face(s.f1)?, face(s.f2)?);
        let [a1, _, b2, a2] = s.corners.map(|c| c.quat());
        let g = OrientedGeodesic::through(s.corners[0].unit(), s.corners[1].unit())?;
        let collinearity = [b2, a2].iter().map(|&q| g.deviation(q)).fold(0.0, f64::max);
        let geo = s.arc.geodesic;
        let offset = s.corner_params[3] - s.corner_params[0];
        // Normal of the circle's plane in R^3.
        let (u1, u2) = geo.basis();
        let n = {
            let (x, y) = (vec3(u1), vec3(u2));
            [x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]]
        };
        let side_of = |p: &SphericalPolygon| {
            let c = vec3(p.centroid().quat());
            n[0] * c[0] + n[1] * c[1] + n[2] * c[2]
        };
        let (s1, s2) = (side_of(&p1.polygon), side_of(&p2.polygon));
        let opposite_sides = s1 * s2 < 0.0;
        // Shift direction r at A1, and d pointing from the circle toward F2.
        let r = vec3(geo.tangent(s.corner_params[0])).map(|x| x * offset.signum());
        let d = n.map(|x| x * s2.signum());
        let handedness = if det3(vec3(a1), r, d) > 0.0 { Handedness::Right } else { Handedness::Left };
        out.push(SlideRecord {
            edge: s.edge,
            collinearity,
            offset,
            dihedral: exterior_dihedral_angle(dp, s.edge)?,
            opposite_sides,
            handedness,
        });
    }
    Ok(out)
}

/// Largest `|offset - θ|` over all edges, where `θ` is the exterior dihedral angle.
pub fn slide_check(t: &Tiling, dp: &DualPair) -> Result<f64> {
    Ok(slide_records(t, dp)?
        .iter()
        .map(|r| (r.offset - r.dihedral).abs().max(r.collinearity))
        .fold(0.0, f64::max))
}

/// Handedness expected for a side: right for `ω`, left for `ω'`.
pub fn expected_handedness(side: Side) -> Handedness {
    match side {
        Side::Left => Handedness::Right,
        Side::Right => Handedness::Left,
    }
}

/// Edges whose segment is split differently by the tiles on its two sides.
///
/// At such an edge some tile meets its neighbour across the segment along a
/// proper subsegment, so the tiling is not edge-to-edge there.
pub fn non_edge_to_edge_witnesses(t: &Tiling) -> Vec<usize> {
    let mut out = Vec::new();
    for s in &t.segments {
        let (u1, u2) = s.arc.geodesic.basis();
        let (x, y) = (vec3(u1), vec3(u2));
        let n = [x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]];
        let e = s.oriented;
        // Corner parameter pairs spanned by each tile along the segment.
        let pieces = [
            (TileRef { kind: TileKind::Face, index: s.f1 }, s.corner_params[0], s.corner_params[1]),
            (TileRef { kind: TileKind::Vertex, index: e.end }, s.corner_params[1], s.corner_params[2]),
            (TileRef { kind: TileKind::Face, index: s.f2 }, s.corner_params[2], s.corner_params[3]),
            (TileRef { kind: TileKind::Vertex, index: e.start }, s.corner_params[3], s.corner_params[0]),
        ];
        let mut breaks: [Vec<f64>; 2] = [Vec::new(), Vec::new()];
        for (r, p, q) in pieces {
            let list = if r.kind == TileKind::Face { &t.faces } else { &t.vertices };
            let Some(d) = list.iter().find(|d| d.source == r) else { continue };
            let c = vec3(d.polygon.centroid().quat());
            let side = usize::from(n[0] * c[0] + n[1] * c[1] + n[2] * c[2] < 0.0);
            breaks[side].push(p);
            breaks[side].push(q);
        }
        let norm = |v: &mut Vec<f64>| {
            v.sort_by(f64::total_cmp);
            v.dedup_by(|a, b| (*a - *b).abs() < TOL_BREAKPOINT);
        };
        norm(&mut breaks[0]);
        norm(&mut breaks[1]);
        let same = breaks[0].len() == breaks[1].len()
            && breaks[0].iter().zip(&breaks[1]).all(|(a, b)| (a - b).abs() < TOL_BREAKPOINT);
        if !same {
            out.push(s.edge);
        }
    }
    out
}

/// `n` quasi-uniform points on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<Quat> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let (s, c) = (golden * i as f64).sin_cos();
            Quat::new(0.0, r * c, r * s, z)
        })
        .collect()
}

/// Points just inside and just outside randomly chosen tile edges.
pub fn adversarial_samples(t: &Tiling, count: usize, seed: u64) -> Vec<Quat> {
    let polys: Vec<&SphericalPolygon> = t.polygons().map(|d| &d.polygon).collect();
    if polys.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta = ADVERSARIAL_OFFSET * TOL_COVERAGE;
    (0..count)
        .map(|_| {
            let p = polys[rng.gen_range(0..polys.len())];
            let k = rng.gen_range(0..p.len());
            let (a, b) = (p.vertex(k), p.vertex(k + 1));
            let s: f64 = rng.gen_range(0.0..1.0);
            let d = distance(a, b);
            let on = crate::sphere::advance_toward(a, b, s * d).unwrap_or(a).quat();
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let q = on + p.inward_normals()[k].scale(sign * delta);
            q.normalized().unwrap_or(on)
        })
        .collect()
}

/// A polygon with a cheap rejection cap.
struct Located<'a> {
    polygon: &'a SphericalPolygon,
    center: Quat,
    cos_radius: f64,
}

#[derive(Clone, Copy, Default)]
struct Counts {
    once: usize,
    boundary: usize,
    uncovered: usize,
    multiple: usize,
}

impl std::ops::Add for Counts {
    type Output = Counts;
    fn add(self, o: Counts) -> Counts {
        Counts {
            once: self.once + o.once,
            boundary: self.boundary + o.boundary,
            uncovered: self.uncovered + o.uncovered,
            multiple: self.multiple + o.multiple,
        }
    }
}

/// Samples `Σ` and counts how many developed polygons contain each point.
///
/// Uses `n_samples` Fibonacci points and [`ADVERSARIAL_SAMPLES`] points near
/// tile edges. Counts are reduced in a fixed order, so the report is
/// deterministic for a given seed.
pub fn verify_tiling(t: &Tiling, n_samples: usize, seed: u64) -> Result<VerificationReport> {
    let tol = TOL_COVERAGE;
    let sin_tol = tol.sin();
    let located: Vec<Located> = t
        .polygons()
        .map(|d| {
            let center = d.polygon.centroid();
            let radius = d
                .polygon
                .vertices()
                .iter()
                .map(|&v| distance(center, v))
                .fold(0.0, f64::max);
            let r = radius + 2.0 * tol;
            Located {
                polygon: &d.polygon,
                center: center.quat(),
                cos_radius: if r >= PI { -2.0 } else { r.cos() },
            }
        })
        .collect();
    let mut samples = fibonacci_sphere(n_samples);
    samples.extend(adversarial_samples(t, ADVERSARIAL_SAMPLES, seed));
    let counts = samples
        .par_iter()
        .map(|&q| {
            let (mut inside, mut boundary) = (0usize, 0usize);
            for l in &located {
                if l.center.dot(q) < l.cos_radius {
                    continue;
                }
                match l.polygon.locate_unchecked(q, sin_tol) {
                    Location::Inside => inside += 1,
                    Location::Boundary => boundary += 1,
                    Location::Outside => {}
                }
            }
            let mut c = Counts::default();
            match (inside, boundary) {
                (i, _) if i >= 2 => c.multiple = 1,
                (0, 0) => c.uncovered = 1,
                (1, 0) => c.once = 1,
                _ => c.boundary = 1,
            }
            c
        })
        .reduce(Counts::default, |a, b| a + b);

    let area = t.total_area()?;
    let perimeter: f64 = t.polygons().map(|d| d.polygon.perimeter()).sum();
    let expected = n_samples as f64 * 2.0 * tol * perimeter / (4.0 * PI);
    let max_slide_deviation = t
        .segments
        .iter()
        .map(|s| {
            let offset = s.corner_params[3] - s.corner_params[0];
            (offset - s.b).abs()
        })
        .fold(0.0, f64::max);
    Ok(VerificationReport {
        n_samples: samples.len(),
        covered_exactly_once: counts.once,
        boundary: counts.boundary,
        uncovered: counts.uncovered,
        multiply_covered: counts.multiple,
        area_deficit: (4.0 * PI - area).abs(),
        max_geodesic_deviation: t.max_geodesic_deviation(),
        max_slide_deviation,
        boundary_bound: (10.0 * expected).ceil().max(5.0) as usize,
    })
}

#[cfg(test)]
mod tests;
