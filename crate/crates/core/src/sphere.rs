//! Metric and incidence primitives on `S^3` and on its great 2-spheres.
//!
//! Every sidedness test is the sign of a 4x4 determinant `det[a, b, q, ν]`
//! with the carrier pole `ν` as the last column. On `Σ` (pole `-1`) this is
//! the usual 3x3 orientation test in `(i, j, k)` coordinates.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quaternion::{cross4, det4, Quat, UnitQuat, TOL_UNIT};

/// Areas below this are degenerate.
pub const TOL_AREA: f64 = 1e-12;
/// Default boundary width for point location.
pub const TOL_LOCATE: f64 = 1e-9;
/// Boundary width used when classifying Monte Carlo samples.
pub const TOL_COVERAGE: f64 = 1e-7;

/// Spherical distance, `arccos <x,y>` evaluated in the stable form
/// `2 atan2(|x - y|, |x + y|)`.
pub fn distance(x: UnitQuat, y: UnitQuat) -> f64 {
    quat_angle(x.quat(), y.quat())
}

pub(crate) fn quat_angle(x: Quat, y: Quat) -> f64 {
    2.0 * (x - y).norm().atan2((x + y).norm())
}

/// Unit tangent at `from` pointing along the minor arc toward `to`.
pub fn tangent_toward(from: UnitQuat, to: UnitQuat) -> Option<Quat> {
    let f = from.quat();
    let t = to.quat();
    (t - f.scale(f.dot(t))).normalized()
}

/// The point at distance `s` from `from` along the minor arc toward `to`.
pub fn advance_toward(from: UnitQuat, to: UnitQuat, s: f64) -> Option<UnitQuat> {
    let dir = tangent_toward(from, to)?;
    let (sn, cs) = s.sin_cos();
    UnitQuat::normalize(from.quat().scale(cs) + dir.scale(sn)).ok()
}

/// Vector `n` with `<n, q> = det[a, b, q, pole]`.
pub(crate) fn side_functional(a: Quat, b: Quat, pole: Quat) -> Quat {
    -cross4(a, b, pole)
}

/// Orientation of a cycle relative to an oriented hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Counterclockwise when seen from the pole side.
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

/// Sum of `det[v0, v_i, v_{i+1}, pole]` over the fan from the first vertex.
pub fn cycle_orientation_measure(vertices: &[Quat], pole: Quat) -> f64 {
    let v0 = vertices[0];
    (1..vertices.len().saturating_sub(1))
        .map(|i| det4(v0, vertices[i], vertices[i + 1], pole))
        .sum()
}

/// The great 2-sphere `Π_ν = {x : <x,ν> = 0}`, oriented by the normal `ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperplane {
    pole: UnitQuat,
}

impl Hyperplane {
    pub fn new(pole: UnitQuat) -> Self {
        Self { pole }
    }

    /// `Σ`, identified with `Π_{-1}` as oriented hyperplanes.
    pub fn sigma() -> Self {
        Self { pole: UnitQuat::ONE.neg() }
    }

    pub fn pole(self) -> UnitQuat {
        self.pole
    }

    pub fn offset(self, x: UnitQuat) -> f64 {
        self.pole.dot(x)
    }

    pub fn contains(self, x: UnitQuat, tol: f64) -> bool {
        self.offset(x).abs() <= tol
    }

    /// Closed half-sphere `Δ_ν = {x : <x,ν> <= 0}`.
    pub fn in_half_sphere(self, x: UnitQuat, tol: f64) -> bool {
        self.offset(x) <= tol
    }
}

/// Great circle `γ(t) = cos t · u1 + sin t · u2`, oriented by `(u1, u2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedGeodesic {
    u1: Quat,
    u2: Quat,
}

impl OrientedGeodesic {
    pub fn new(u1: Quat, u2: Quat) -> Result<Self> {
        for (name, n2) in [("u1", u1.norm_sq()), ("u2", u2.norm_sq())] {
            if (n2 - 1.0).abs() > TOL_UNIT {
                return Err(Error::InvalidParameter(format!("{name} is not unit: {n2}")));
            }
        }
        let ip = u1.dot(u2);
        if ip.abs() > TOL_UNIT {
            return Err(Error::NotOrthogonal { inner: ip });
        }
        Ok(Self { u1, u2 })
    }

    /// The geodesic through `a` heading toward `b` (minor arc direction).
    pub fn through(a: UnitQuat, b: UnitQuat) -> Result<Self> {
        let dir = tangent_toward(a, b)
            .ok_or_else(|| Error::InvalidParameter("points are equal or antipodal".into()))?;
        Ok(Self { u1: a.quat(), u2: dir })
    }

    pub fn basis(self) -> (Quat, Quat) {
        (self.u1, self.u2)
    }

    pub fn point(self, t: f64) -> Quat {
        let (s, c) = t.sin_cos();
        self.u1.scale(c) + self.u2.scale(s)
    }

    pub fn tangent(self, t: f64) -> Quat {
        let (s, c) = t.sin_cos();
        self.u2.scale(c) - self.u1.scale(s)
    }

    /// Parameter of the orthogonal projection of `q` onto the circle, in `(-π, π]`.
    pub fn parameter_of(self, q: Quat) -> f64 {
        q.dot(self.u2).atan2(q.dot(self.u1))
    }

    /// Distance of `q` from the plane of the circle (norm of the residual).
    pub fn deviation(self, q: Quat) -> f64 {
        let r = q - self.u1.scale(q.dot(self.u1)) - self.u2.scale(q.dot(self.u2));
        r.norm()
    }

    pub fn reversed(self) -> Self {
        Self { u1: self.u1, u2: -self.u2 }
    }

    /// The dual geodesic `S^3 ∩ V⊥`, oriented so `det[u1, u2, u3, u4] > 0`.
    pub fn dual(self) -> OrientedGeodesic {
        dual_geodesic(self)
    }
}

pub fn dual_geodesic(g: OrientedGeodesic) -> OrientedGeodesic {
    let (u1, u2) = g.basis();
    let residual = |e: Quat| e - u1.scale(e.dot(u1)) - u2.scale(e.dot(u2));
    let mut candidates: Vec<Quat> = [Quat::ONE, Quat::I, Quat::J, Quat::K]
        .into_iter()
        .map(residual)
        .collect();
    candidates.sort_by(|a, b| b.norm_sq().total_cmp(&a.norm_sq()));
    let u3 = candidates[0].scale(1.0 / candidates[0].norm());
    // Second vector: best remaining residual, orthogonalized against u3.
    let u4 = candidates[1..]
        .iter()
        .map(|&c| c - u3.scale(c.dot(u3)))
        .max_by(|a, b| a.norm_sq().total_cmp(&b.norm_sq()))
        .expect("complement is two-dimensional");
    let mut u4 = u4.scale(1.0 / u4.norm());
    if det4(u1, u2, u3, u4) < 0.0 {
        u4 = -u4;
    }
    OrientedGeodesic { u1: u3, u2: u4 }
}

/// Arc `t ∈ [t_start, t_end]` of an oriented geodesic.
///
/// Lengths up to (not including) `2π` are allowed; images of edge tiles can
/// exceed a half circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicArc {
    pub geodesic: OrientedGeodesic,
    pub t_start: f64,
    pub t_end: f64,
}

impl GeodesicArc {
    pub fn new(geodesic: OrientedGeodesic, t_start: f64, t_end: f64) -> Result<Self> {
        let len = t_end - t_start;
        if !(0.0..2.0 * PI).contains(&len) {
            return Err(Error::InvalidParameter(format!("arc length {len} out of range")));
        }
        Ok(Self { geodesic, t_start, t_end })
    }

    pub fn length(&self) -> f64 {
        self.t_end - self.t_start
    }

    pub fn start(&self) -> Quat {
        self.geodesic.point(self.t_start)
    }

    pub fn end(&self) -> Quat {
        self.geodesic.point(self.t_end)
    }

    pub fn point_at(&self, t: f64) -> Quat {
        self.geodesic.point(t)
    }
}

/// Result of locating a point against a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Convex geodesic polygon on a great 2-sphere of `S^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalPolygon {
    carrier: Hyperplane,
    vertices: Vec<UnitQuat>,
    orientation: Orientation,
    /// Unit normals of the edge circles inside the carrier, pointing inward.
    inward: Vec<Quat>,
}

impl SphericalPolygon {
    pub fn new(carrier: Hyperplane, vertices: Vec<UnitQuat>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidPolygon(format!("{n} vertices")));
        }
        for (i, &v) in vertices.iter().enumerate() {
            let off = carrier.offset(v);
            if off.abs() > TOL_UNIT {
                return Err(Error::InvalidPolygon(format!(
                    "vertex {i} is off the carrier by {off:e}"
                )));
            }
        }
        for i in 0..n {
            let d = distance(vertices[i], vertices[(i + 1) % n]);
            if !(d > 0.0 && d < PI) {
                return Err(Error::InvalidPolygon(format!("edge {i} has length {d}")));
            }
        }
        let pole = carrier.pole().quat();
        let quats: Vec<Quat> = vertices.iter().map(|v| v.quat()).collect();
        let measure = cycle_orientation_measure(&quats, pole);
        let orientation = if measure >= 0.0 {
            Orientation::Positive
        } else {
            Orientation::Negative
        };
        let s = orientation.sign();
        let mut inward = Vec::with_capacity(n);
        for i in 0..n {
            let f = side_functional(quats[i], quats[(i + 1) % n], pole).scale(s);
            let f = f
                .normalized()
                .ok_or_else(|| Error::InvalidPolygon(format!("edge {i} is degenerate")))?;
            inward.push(f);
        }
        for (i, nrm) in inward.iter().enumerate() {
            for (j, q) in quats.iter().enumerate() {
                if nrm.dot(*q) < -TOL_UNIT {
                    return Err(Error::InvalidPolygon(format!(
                        "not convex: vertex {j} lies outside edge {i}"
                    )));
                }
            }
        }
        Ok(Self { carrier, vertices, orientation, inward })
    }

    pub fn carrier(&self) -> Hyperplane {
        self.carrier
    }

    pub fn vertices(&self) -> &[UnitQuat] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn inward_normals(&self) -> &[Quat] {
        &self.inward
    }

    pub fn vertex(&self, i: usize) -> UnitQuat {
        self.vertices[i % self.vertices.len()]
    }

    pub fn interior_angle(&self, i: usize) -> Result<f64> {
        interior_angle(self, i)
    }

    pub fn area(&self) -> Result<f64> {
        polygon_area(self)
    }

    /// Normalized vertex sum.
    pub fn centroid(&self) -> UnitQuat {
        let s = self
            .vertices
            .iter()
            .fold(Quat::ZERO, |acc, v| acc + v.quat());
        UnitQuat::normalize(s).unwrap_or(self.vertices[0])
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| distance(self.vertices[i], self.vertices[(i + 1) % n]))
            .sum()
    }

    pub fn locate(&self, q: UnitQuat, tol: f64) -> Result<Location> {
        locate_point(self, q, tol)
    }

    /// Location test without the carrier check; `sin_tol = sin(tol)`.
    pub(crate) fn locate_unchecked(&self, q: Quat, sin_tol: f64) -> Location {
        let mut inside = true;
        for nrm in &self.inward {
            let s = nrm.dot(q);
            if s < -sin_tol {
                return Location::Outside;
            }
            if s <= sin_tol {
                inside = false;
            }
        }
        if inside {
            Location::Inside
        } else {
            Location::Boundary
        }
    }
}

/// Angle between the two edges at vertex `i`, from tangent directions.
pub fn interior_angle(p: &SphericalPolygon, i: usize) -> Result<f64> {
    let n = p.len();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    let v = p.vertices[i];
    let prev = p.vertices[(i + n - 1) % n];
    let next = p.vertices[(i + 1) % n];
    let t1 = tangent_toward(v, prev).ok_or_else(|| Error::InvalidPolygon("zero edge".into()))?;
    let t2 = tangent_toward(v, next).ok_or_else(|| Error::InvalidPolygon("zero edge".into()))?;
    Ok(quat_angle(t1, t2))
}

/// Sum of interior angles minus `(n - 2)π`.
pub fn polygon_area(p: &SphericalPolygon) -> Result<f64> {
    let n = p.len();
    let mut sum = 0.0;
    for i in 0..n {
        sum += interior_angle(p, i)?;
    }
    let area = sum - (n as f64 - 2.0) * PI;
    if area < TOL_AREA {
        return Err(Error::DegeneratePolygon { area });
    }
    Ok(area)
}

pub fn locate_point(p: &SphericalPolygon, q: UnitQuat, tol: f64) -> Result<Location> {
    let off = p.carrier.offset(q);
    if off.abs() > TOL_UNIT {
        return Err(Error::OffCarrier { inner: off });
    }
    Ok(p.locate_unchecked(q.quat(), tol.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::PureUnit;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pu(v: [f64; 3]) -> UnitQuat {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        PureUnit::from_vector([v[0] / n, v[1] / n, v[2] / n]).unwrap().unit()
    }

    fn random_unit(rng: &mut ChaCha8Rng) -> UnitQuat {
        UnitQuat::normalize(Quat::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ))
        .unwrap()
    }

    fn random_sigma(rng: &mut ChaCha8Rng) -> UnitQuat {
        pu([
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ])
    }

    fn octant() -> SphericalPolygon {
        SphericalPolygon::new(
            Hyperplane::sigma(),
            vec![UnitQuat::I, UnitQuat::J, UnitQuat::K],
        )
        .unwrap()
    }

    /// L'Huilier: tan(E/4) = sqrt(tan(s/2) tan((s-a)/2) tan((s-b)/2) tan((s-c)/2)).
    fn lhuilier(a: UnitQuat, b: UnitQuat, c: UnitQuat) -> f64 {
        let (x, y, z) = (distance(b, c), distance(a, c), distance(a, b));
        let s = (x + y + z) / 2.0;
        let t = (s / 2.0).tan()
            * ((s - x) / 2.0).tan()
            * ((s - y) / 2.0).tan()
            * ((s - z) / 2.0).tan();
        4.0 * t.max(0.0).sqrt().atan()
    }

    #[test]
    fn distance_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let x = random_unit(&mut rng);
        assert_eq!(distance(x, x), 0.0);
        assert!((distance(UnitQuat::ONE, UnitQuat::I) - PI / 2.0).abs() < 1e-15);
        assert!((distance(x, x.neg()) - PI).abs() < 1e-15);
    }

    #[test]
    fn distance_symmetry_and_triangle_inequality() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let (a, b, c) = (random_unit(&mut rng), random_unit(&mut rng), random_unit(&mut rng));
            assert!((distance(a, b) - distance(b, a)).abs() < 1e-12);
            assert!(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
            let acos = a.dot(b).clamp(-1.0, 1.0).acos();
            assert!((acos - distance(a, b)).abs() < 1e-7);
        }
    }

    #[test]
    fn dual_geodesic_examples() {
        let g = OrientedGeodesic::new(Quat::ONE, Quat::I).unwrap();
        let d = g.dual();
        let (u3, u4) = d.basis();
        assert!(u3.dot(Quat::ONE).abs() < 1e-15 && u3.dot(Quat::I).abs() < 1e-15);
        assert!(u4.dot(Quat::ONE).abs() < 1e-15 && u4.dot(Quat::I).abs() < 1e-15);
        assert!(det4(Quat::ONE, Quat::I, u3, u4) > 0.0);
        // span(j, k)
        assert!((u3.dot(Quat::J).powi(2) + u3.dot(Quat::K).powi(2) - 1.0).abs() < 1e-15);

        let r = g.reversed().dual();
        let (r3, r4) = r.basis();
        // Reversing the input flips the orientation of the output plane.
        assert!(det4(u3, u4, r3, r4).abs() < 1e-12);
        let cross = u3.dot(r3) * u4.dot(r4) - u3.dot(r4) * u4.dot(r3);
        assert!((cross + 1.0).abs() < 1e-12);
    }

    #[test]
    fn dual_geodesic_orientation_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let a = random_unit(&mut rng);
            let b = random_unit(&mut rng);
            let g = OrientedGeodesic::through(a, b).unwrap();
            let (u1, u2) = g.basis();
            let d = g.dual();
            let (u3, u4) = d.basis();
            for (x, y) in [(u1, u3), (u1, u4), (u2, u3), (u2, u4), (u3, u4)] {
                assert!(x.dot(y).abs() < 1e-12);
            }
            assert!(det4(u1, u2, u3, u4) > 0.0);
            // Twice: same plane, and the sign oracle says same orientation.
            let dd = d.dual();
            let (w1, w2) = dd.basis();
            assert!(g.deviation(w1) < 1e-12 && g.deviation(w2) < 1e-12);
            let same = u1.dot(w1) * u2.dot(w2) - u1.dot(w2) * u2.dot(w1);
            assert!((same - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn octant_triangle() {
        let p = octant();
        assert_eq!(p.orientation(), Orientation::Positive);
        for i in 0..3 {
            assert!((p.interior_angle(i).unwrap() - PI / 2.0).abs() < 1e-15);
        }
        assert!((p.area().unwrap() - PI / 2.0).abs() < 1e-14);
        assert!(matches!(p.interior_angle(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn cube_face_square() {
        let p = SphericalPolygon::new(
            Hyperplane::sigma(),
            vec![
                pu([1.0, 1.0, 1.0]),
                pu([-1.0, 1.0, 1.0]),
                pu([-1.0, -1.0, 1.0]),
                pu([1.0, -1.0, 1.0]),
            ],
        )
        .unwrap();
        for i in 0..4 {
            assert!((p.interior_angle(i).unwrap() - 2.0 * PI / 3.0).abs() < 1e-14);
        }
        assert!((p.area().unwrap() - 2.0 * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn area_matches_lhuilier() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut checked = 0;
        while checked < 300 {
            let (a, b, c) = (random_sigma(&mut rng), random_sigma(&mut rng), random_sigma(&mut rng));
            let Ok(p) = SphericalPolygon::new(Hyperplane::sigma(), vec![a, b, c]) else {
                continue;
            };
            let Ok(area) = p.area() else { continue };
            if area < 1e-3 {
                continue;
            }
            assert!((area - lhuilier(a, b, c)).abs() < 1e-10, "{area}");
            checked += 1;
        }
    }

    #[test]
    fn tiny_triangle_is_euclidean() {
        let c = UnitQuat::K;
        let e = 1e-3 / 3f64.sqrt();
        let verts: Vec<UnitQuat> = (0..3)
            .map(|i| {
                let a = 2.0 * PI * i as f64 / 3.0;
                pu([e * a.cos(), e * a.sin(), 1.0])
            })
            .collect();
        let p = SphericalPolygon::new(Hyperplane::sigma(), verts).unwrap();
        assert!((distance(p.vertex(0), p.vertex(1)) - 1e-3).abs() < 1e-8);
        for i in 0..3 {
            assert!((p.interior_angle(i).unwrap() - PI / 3.0).abs() < 1e-4);
        }
        assert_eq!(p.locate(c, TOL_LOCATE).unwrap(), Location::Inside);
    }

    #[test]
    fn angle_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let mut checked = 0;
        while checked < 200 {
            let verts = vec![random_sigma(&mut rng), random_sigma(&mut rng), random_sigma(&mut rng)];
            let Ok(p) = SphericalPolygon::new(Hyperplane::sigma(), verts) else {
                continue;
            };
            for i in 0..3 {
                let v = p.vertex(i);
                let a = advance_toward(v, p.vertex(i + 2), 1e-6).unwrap().quat() - v.quat();
                let b = advance_toward(v, p.vertex(i + 1), 1e-6).unwrap().quat() - v.quat();
                let fd = (a.dot(b) / (a.norm() * b.norm())).clamp(-1.0, 1.0).acos();
                assert!((fd - p.interior_angle(i).unwrap()).abs() < 1e-5);
            }
            checked += 1;
        }
    }

    #[test]
    fn locate_examples() {
        let p = octant();
        let c = p.centroid();
        assert_eq!(p.locate(c, TOL_LOCATE).unwrap(), Location::Inside);
        assert_eq!(p.locate(UnitQuat::I, TOL_LOCATE).unwrap(), Location::Boundary);
        assert_eq!(p.locate(c.neg(), TOL_LOCATE).unwrap(), Location::Outside);
        for i in 0..3 {
            let m = UnitQuat::normalize(p.vertex(i).quat() + p.vertex(i + 1).quat()).unwrap();
            assert_eq!(p.locate(m, 1e-9).unwrap(), Location::Boundary);
        }
        assert!(matches!(p.locate(UnitQuat::ONE, 1e-9), Err(Error::OffCarrier { .. })));
    }

    #[test]
    fn reversed_cycle_locates_identically() {
        let mut verts = octant().vertices().to_vec();
        verts.reverse();
        let p = SphericalPolygon::new(Hyperplane::sigma(), verts).unwrap();
        assert_eq!(p.orientation(), Orientation::Negative);
        assert_eq!(p.locate(p.centroid(), 1e-9).unwrap(), Location::Inside);
        assert!((p.area().unwrap() - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_invalid_polygons() {
        let s = Hyperplane::sigma();
        assert!(SphericalPolygon::new(s, vec![UnitQuat::I, UnitQuat::J]).is_err());
        assert!(SphericalPolygon::new(s, vec![UnitQuat::ONE, UnitQuat::J, UnitQuat::K]).is_err());
        // Non-convex quadrilateral.
        let bad = vec![
            pu([1.0, 0.0, 1.0]),
            pu([0.0, 0.1, 1.0]),
            pu([-1.0, 0.0, 1.0]),
            pu([0.0, 1.0, 1.0]),
        ];
        assert!(SphericalPolygon::new(s, bad).is_err());
        let tiny = vec![pu([1e-9, 0.0, 1.0]), pu([0.0, 1e-9, 1.0]), pu([0.0, 0.0, 1.0])];
        let p = SphericalPolygon::new(s, tiny).unwrap();
        assert!(matches!(p.area(), Err(Error::DegeneratePolygon { .. })));
    }

    #[test]
    fn area_invariant_under_left_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let base = SphericalPolygon::new(
            Hyperplane::sigma(),
            vec![pu([1.0, 0.2, 0.9]), pu([-0.3, 1.0, 0.8]), pu([-0.5, -0.6, 1.0]), pu([0.6, -0.9, 1.2])],
        )
        .unwrap();
        let area = base.area().unwrap();
        for _ in 0..100 {
            let g = random_unit(&mut rng);
            let verts = base.vertices().iter().map(|v| g.mul(*v)).collect();
            let pole = g.mul(base.carrier().pole());
            let moved = SphericalPolygon::new(Hyperplane::new(pole), verts).unwrap();
            assert!((moved.area().unwrap() - area).abs() < 1e-10);
            assert_eq!(moved.orientation(), base.orientation());
        }
    }
}
