//! Convex polyhedra in `S^3` and their polar duals.
//!
//! A polyhedron is generated by a hemispherical, non-planar vertex set. Its
//! hull is computed by rotating a hemisphere witness to `k = (0,0,0,1)`,
//! projecting radially onto the affine chart `x4 = 1`, and taking the
//! Euclidean hull there. The face of `P` with pole `f*` satisfies
//! `<v, f*> = 0` for its own vertices and `<v, f*> <= 0` for all others.
//!
//! Face cycles are counterclockwise seen from `f*`, so the face on the left of
//! a directed edge `a -> b` is the one whose cycle contains `a -> b`.

mod hull;

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quaternion::{cross4, det4, Quat, UnitQuat, TOL_UNIT};
use crate::sphere::{
    cycle_orientation_measure, distance, Hyperplane, OrientedGeodesic, SphericalPolygon,
};

/// Adjacent hull facets whose poles agree within this angle are merged.
pub const MERGE_POLE_TOL: f64 = 1e-7;
/// Cap on perceptron updates in the hemisphere witness search.
pub const WITNESS_MAX_STEPS: usize = 10_000;
/// Face vertices whose interior angle is this close to `π` are not corners.
const COLLINEAR_TOL: f64 = 1e-9;

/// An edge `start -> end` with `left` and `right` incident faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub start: usize,
    pub end: usize,
    pub left: usize,
    pub right: usize,
}

impl Edge {
    pub fn reversed(self) -> Edge {
        Edge { start: self.end, end: self.start, left: self.right, right: self.left }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolyhedron {
    vertices: Vec<UnitQuat>,
    faces: Vec<Vec<usize>>,
    face_poles: Vec<UnitQuat>,
    edges: Vec<Edge>,
    /// Directed edge -> face containing it.
    directed: HashMap<(usize, usize), usize>,
}

/// Points dropped by [`convex_hull_with_report`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HullReport {
    /// Input indices that are not extremal.
    pub dropped: Vec<usize>,
    /// For each output vertex, its input index.
    pub sources: Vec<usize>,
}

/// A point `x0` with `<v, x0> > 0` for every input point, if one exists.
///
/// Tries the normalized sum first, then perceptron updates toward the worst
/// point.
pub fn hemispherical_witness(points: &[UnitQuat]) -> Option<UnitQuat> {
    let first = *points.first()?;
    let min_inner = |x: Quat| {
        points
            .iter()
            .map(|p| (p.quat().dot(x), *p))
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .unwrap()
    };
    let sum = points.iter().fold(Quat::ZERO, |s, p| s + p.quat());
    let mut x = sum.normalized().unwrap_or(first.quat());
    for _ in 0..WITNESS_MAX_STEPS {
        let (m, worst) = min_inner(x);
        if m > 0.0 {
            return UnitQuat::normalize(x).ok().filter(|w| min_inner(w.quat()).0 > 0.0);
        }
        x = x + worst.quat();
        if x.norm_sq() == 0.0 {
            x = worst.quat();
        }
    }
    None
}

pub fn convex_hull(points: &[UnitQuat]) -> Result<ConvexPolyhedron> {
    convex_hull_with_report(points).map(|(p, _)| p)
}

pub fn convex_hull_with_report(points: &[UnitQuat]) -> Result<(ConvexPolyhedron, HullReport)> {
    if points.len() < 4 {
        return Err(Error::TooFewPoints(points.len()));
    }
    let witness = hemispherical_witness(points).ok_or(Error::NotHemispherical)?;
    // Left translation by k·x0⁻¹ is orientation preserving and sends x0 to k.
    let g = UnitQuat::K.mul(witness.inverse());
    let projected: Vec<[f64; 3]> = points
        .iter()
        .map(|p| {
            let y = g.mul(*p).quat();
            [y.w / y.z, y.x / y.z, y.y / y.z]
        })
        .collect();
    let triangles = hull::hull_triangles(&projected)?;
    let faces = merge_coplanar(points, &triangles)?;

    let mut used: Vec<usize> = faces.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let vertices: Vec<UnitQuat> = used.iter().map(|&s| points[s]).collect();
    let faces: Vec<Vec<usize>> = faces
        .into_iter()
        .map(|f| f.into_iter().map(|s| remap[&s]).collect())
        .collect();
    let dropped = (0..points.len()).filter(|i| !remap.contains_key(i)).collect();
    let poly = ConvexPolyhedron::from_parts(vertices, faces)?;
    Ok((poly, HullReport { dropped, sources: used }))
}

/// Groups hull triangles into faces by pole agreement and extracts the
/// boundary cycle of each group, without collinear corners.
fn merge_coplanar(points: &[UnitQuat], triangles: &[[usize; 3]]) -> Result<Vec<Vec<usize>>> {
    let interior = points.iter().fold(Quat::ZERO, |s, p| s + p.quat());
    let poles: Vec<Quat> = triangles
        .iter()
        .map(|t| {
            let n = cross4(points[t[0]].quat(), points[t[1]].quat(), points[t[2]].quat());
            let n = n.normalized().unwrap_or(n);
            if n.dot(interior) > 0.0 {
                -n
            } else {
                n
            }
        })
        .collect();

    let mut edge_tri: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, t) in triangles.iter().enumerate() {
        for k in 0..3 {
            edge_tri.insert((t[k], t[(k + 1) % 3]), i);
        }
    }
    let mut parent: Vec<usize> = (0..triangles.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, t) in triangles.iter().enumerate() {
        for k in 0..3 {
            let j = edge_tri[&(t[(k + 1) % 3], t[k])];
            if j > i && crate::sphere::quat_angle(poles[i], poles[j]) < MERGE_POLE_TOL {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of: HashMap<usize, usize> = HashMap::new();
    for i in 0..triangles.len() {
        let r = find(&mut parent, i);
        let g = *group_of.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }

    let mut faces = Vec::with_capacity(groups.len());
    for group in groups {
        let mut next: HashMap<usize, usize> = HashMap::new();
        let in_group: std::collections::HashSet<usize> = group.iter().copied().collect();
        for &ti in &group {
            let t = triangles[ti];
            for k in 0..3 {
                let (u, v) = (t[k], t[(k + 1) % 3]);
                if !in_group.contains(&edge_tri[&(v, u)]) {
                    if next.insert(u, v).is_some() {
                        return Err(Error::InvalidPolyhedron(
                            "merged face boundary is not a simple cycle".into(),
                        ));
                    }
                }
            }
        }
        let Some(&start) = next.keys().min() else {
            return Err(Error::InvalidPolyhedron("merged face has no boundary".into()));
        };
        let mut cycle = vec![start];
        let mut cur = next[&start];
        while cur != start {
            cycle.push(cur);
            cur = *next.get(&cur).ok_or_else(|| {
                Error::InvalidPolyhedron("merged face boundary is open".into())
            })?;
            if cycle.len() > next.len() {
                return Err(Error::InvalidPolyhedron("merged face boundary loops".into()));
            }
        }
        if cycle.len() != next.len() {
            return Err(Error::InvalidPolyhedron("merged face has several boundaries".into()));
        }
        faces.push(drop_collinear(points, cycle));
    }
    Ok(faces)
}

fn drop_collinear(points: &[UnitQuat], mut cycle: Vec<usize>) -> Vec<usize> {
    loop {
        let n = cycle.len();
        if n <= 3 {
            return cycle;
        }
        let straight = (0..n).find(|&i| {
            let v = points[cycle[i]];
            let a = crate::sphere::tangent_toward(v, points[cycle[(i + n - 1) % n]]);
            let b = crate::sphere::tangent_toward(v, points[cycle[(i + 1) % n]]);
            match (a, b) {
                (Some(a), Some(b)) => crate::sphere::quat_angle(a, b) > PI - COLLINEAR_TOL,
                _ => true,
            }
        });
        match straight {
            Some(i) => {
                cycle.remove(i);
            }
            None => return cycle,
        }
    }
}

/// Unit vector orthogonal to the face vertices, on the side away from `interior`.
fn face_pole(vertices: &[UnitQuat], face: &[usize], interior: Quat) -> Result<UnitQuat> {
    let v0 = vertices[face[0]].quat();
    let mut best = Quat::ZERO;
    for i in 1..face.len() {
        for j in i + 1..face.len() {
            let n = cross4(v0, vertices[face[i]].quat(), vertices[face[j]].quat());
            if n.norm_sq() > best.norm_sq() {
                best = n;
            }
        }
    }
    let n = best
        .normalized()
        .ok_or_else(|| Error::InvalidPolyhedron("degenerate face".into()))?;
    UnitQuat::normalize(if n.dot(interior) > 0.0 { -n } else { n })
}

impl ConvexPolyhedron {
    /// Builds a polyhedron from vertex coordinates and face cycles.
    ///
    /// Face poles are recomputed from the vertices and cycles are reoriented
    /// counterclockwise about their poles. All invariants are validated.
    pub fn from_parts(vertices: Vec<UnitQuat>, faces: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.len();
        for (fi, f) in faces.iter().enumerate() {
            if f.len() < 3 {
                return Err(Error::InvalidPolyhedron(format!("face {fi} has {} vertices", f.len())));
            }
            for &v in f {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, len: n });
                }
            }
            let mut sorted = f.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != f.len() {
                return Err(Error::InvalidPolyhedron(format!("face {fi} repeats a vertex")));
            }
        }
        let interior = vertices.iter().fold(Quat::ZERO, |s, p| s + p.quat());
        let mut poles = Vec::with_capacity(faces.len());
        let mut oriented = Vec::with_capacity(faces.len());
        for f in &faces {
            let pole = face_pole(&vertices, f, interior)?;
            let quats: Vec<Quat> = f.iter().map(|&v| vertices[v].quat()).collect();
            let mut cycle = f.clone();
            if cycle_orientation_measure(&quats, pole.quat()) < 0.0 {
                cycle.reverse();
                // Keep the first vertex in place.
                cycle.rotate_right(1);
            }
            // Recomputed on the oriented cycle so that rebuilding is exact.
            poles.push(face_pole(&vertices, &cycle, interior)?);
            oriented.push(cycle);
        }
        let poly = Self::from_raw_parts(vertices, oriented, poles)?;
        poly.validate()?;
        Ok(poly)
    }

    /// Assembles a polyhedron from already oriented faces and given poles.
    ///
    /// Only the edge structure is checked; geometric invariants are not.
    pub fn from_raw_parts(
        vertices: Vec<UnitQuat>,
        faces: Vec<Vec<usize>>,
        face_poles: Vec<UnitQuat>,
    ) -> Result<Self> {
        if face_poles.len() != faces.len() {
            return Err(Error::InvalidPolyhedron("one pole per face required".into()));
        }
        let mut directed = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for k in 0..f.len() {
                let key = (f[k], f[(k + 1) % f.len()]);
                if key.0 >= vertices.len() || key.1 >= vertices.len() {
                    return Err(Error::IndexOutOfRange {
                        index: key.0.max(key.1),
                        len: vertices.len(),
                    });
                }
                if directed.insert(key, fi).is_some() {
                    return Err(Error::InvalidPolyhedron(format!(
                        "directed edge {key:?} appears twice"
                    )));
                }
            }
        }
        let mut edges = Vec::new();
        for (fi, f) in faces.iter().enumerate() {
            for k in 0..f.len() {
                let (a, b) = (f[k], f[(k + 1) % f.len()]);
                let right = *directed.get(&(b, a)).ok_or_else(|| {
                    Error::InvalidPolyhedron(format!("edge ({a}, {b}) has only one face"))
                })?;
                if a < b {
                    edges.push(Edge { start: a, end: b, left: fi, right });
                }
            }
        }
        Ok(Self { vertices, faces, face_poles, edges, directed })
    }

    /// Checks every geometric and combinatorial invariant.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPolyhedron(m));
        let (l, m, n) = (self.num_faces() as i64, self.num_edges() as i64, self.num_vertices() as i64);
        if l - m + n != 2 {
            return bad(format!("Euler characteristic {} != 2", l - m + n));
        }
        let mut degree = vec![0usize; self.vertices.len()];
        for f in &self.faces {
            for &v in f {
                degree[v] += 1;
            }
        }
        if let Some(v) = degree.iter().position(|&d| d < 3) {
            return bad(format!("vertex {v} lies on {} faces", degree[v]));
        }
        if hemispherical_witness(&self.vertices).is_none() {
            return Err(Error::NotHemispherical);
        }
        for (fi, f) in self.faces.iter().enumerate() {
            let pole = self.face_poles[fi];
            for &v in f {
                let off = pole.dot(self.vertices[v]);
                if off.abs() > TOL_UNIT {
                    return bad(format!("face {fi} is not planar: vertex {v} off by {off:e}"));
                }
            }
            for (vi, v) in self.vertices.iter().enumerate() {
                let off = pole.dot(*v);
                if off > TOL_UNIT {
                    return bad(format!("not convex: vertex {vi} beyond face {fi} by {off:e}"));
                }
            }
            let poly = self.face_polygon(fi).map_err(|e| {
                Error::InvalidPolyhedron(format!("face {fi}: {e}"))
            })?;
            if poly.orientation() != crate::sphere::Orientation::Positive {
                return bad(format!("face {fi} is not counterclockwise about its pole"));
            }
            for i in 0..poly.len() {
                let ang = poly.interior_angle(i)?;
                if ang > PI - COLLINEAR_TOL {
                    return bad(format!("face {fi} has a straight angle at position {i}"));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[UnitQuat] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_poles(&self) -> &[UnitQuat] {
        &self.face_poles
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Face containing the directed edge `a -> b`.
    pub fn face_of_directed(&self, a: usize, b: usize) -> Option<usize> {
        self.directed.get(&(a, b)).copied()
    }

    pub fn edge(&self, e: usize) -> Result<Edge> {
        self.edges
            .get(e)
            .copied()
            .ok_or(Error::IndexOutOfRange { index: e, len: self.edges.len() })
    }

    /// Index of the edge joining `a` and `b`, in either direction.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| (e.start == a && e.end == b) || (e.start == b && e.end == a))
    }

    pub fn face_polygon(&self, f: usize) -> Result<SphericalPolygon> {
        let verts = self.faces[f].iter().map(|&v| self.vertices[v]).collect();
        SphericalPolygon::new(Hyperplane::new(self.face_poles[f]), verts)
    }

    /// Interior angle of face `f` at its `pos`-th vertex.
    pub fn face_angle(&self, f: usize, pos: usize) -> Result<f64> {
        self.face_polygon(f)?.interior_angle(pos)
    }

    /// Faces around vertex `v`, in rotational order (orientation unspecified).
    pub fn faces_around(&self, v: usize) -> Vec<usize> {
        let Some(f0) = self.faces.iter().position(|f| f.contains(&v)) else {
            return Vec::new();
        };
        let mut out = vec![f0];
        let mut f = f0;
        loop {
            let cyc = &self.faces[f];
            let pos = cyc.iter().position(|&x| x == v).unwrap();
            let w = cyc[(pos + 1) % cyc.len()];
            f = self.directed[&(w, v)];
            if f == f0 || out.len() > self.faces.len() {
                break;
            }
            out.push(f);
        }
        out
    }

    /// Θ(P), the sum of all face angles.
    pub fn angle_sum(&self) -> Result<f64> {
        let mut sum = 0.0;
        for f in 0..self.num_faces() {
            let p = self.face_polygon(f)?;
            for i in 0..p.len() {
                sum += p.interior_angle(i)?;
            }
        }
        Ok(sum)
    }

    /// Applies `x -> g x` to every vertex and pole.
    pub fn left_translate(&self, g: UnitQuat) -> ConvexPolyhedron {
        self.map_points(|x| g.mul(x))
    }

    /// Applies `x -> x g` to every vertex and pole.
    pub fn right_translate(&self, g: UnitQuat) -> ConvexPolyhedron {
        self.map_points(|x| x.mul(g))
    }

    fn map_points(&self, f: impl Fn(UnitQuat) -> UnitQuat) -> ConvexPolyhedron {
        ConvexPolyhedron {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
            face_poles: self.face_poles.iter().map(|&v| f(v)).collect(),
            faces: self.faces.clone(),
            edges: self.edges.clone(),
            directed: self.directed.clone(),
        }
    }
}

/// Sum of face areas.
pub fn total_area(p: &ConvexPolyhedron) -> Result<f64> {
    let mut sum = 0.0;
    for f in 0..p.num_faces() {
        sum += p.face_polygon(f)?.area()?;
    }
    Ok(sum)
}

/// `2(l - m)π + Θ(P)`.
pub fn area_from_angle_sum(p: &ConvexPolyhedron) -> Result<f64> {
    let (l, m) = (p.num_faces() as f64, p.num_edges() as f64);
    Ok(2.0 * (l - m) * PI + p.angle_sum()?)
}

/// A polyhedron, its dual, and the correspondence between their cells.
///
/// Face `i` of the primal is vertex `i` of the dual and vertex `k` of the
/// primal is face `k` of the dual; `edge_map[j]` is the dual edge of primal
/// edge `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPair {
    pub primal: ConvexPolyhedron,
    pub dual: ConvexPolyhedron,
    pub edge_map: Vec<usize>,
}

pub fn dual(p: &ConvexPolyhedron) -> Result<DualPair> {
    let dual_vertices = p.face_poles.clone();
    let cycles: Vec<Vec<usize>> = (0..p.num_vertices()).map(|v| p.faces_around(v)).collect();
    let dual_poly = ConvexPolyhedron::from_parts(dual_vertices, cycles)?;
    DualPair::from_parts(p.clone(), dual_poly)
}

impl DualPair {
    /// Pairs a polyhedron with a dual whose vertices are indexed by primal
    /// faces and whose faces are indexed by primal vertices.
    pub fn from_parts(primal: ConvexPolyhedron, dual: ConvexPolyhedron) -> Result<Self> {
        if dual.num_vertices() != primal.num_faces() || dual.num_faces() != primal.num_vertices() {
            return Err(Error::InvalidPolyhedron("dual cell counts do not match".into()));
        }
        let mut edge_map = Vec::with_capacity(primal.num_edges());
        for e in primal.edges() {
            let d = dual.edge_between(e.left, e.right).ok_or_else(|| {
                Error::InvalidPolyhedron(format!("no dual edge between faces {} and {}", e.left, e.right))
            })?;
            edge_map.push(d);
        }
        Ok(Self { primal, dual, edge_map })
    }

    /// Dual face `v*` of primal vertex `v`, oriented by the inward normal
    /// `-v` (the reverse of its outward cycle in the dual polyhedron).
    pub fn dual_face_inward(&self, v: usize) -> Vec<usize> {
        let mut c = self.dual.faces[v].clone();
        c.reverse();
        c.rotate_right(1);
        c
    }

    pub fn dual_face_inward_polygon(&self, v: usize) -> Result<SphericalPolygon> {
        let verts = self
            .dual_face_inward(v)
            .iter()
            .map(|&f| self.dual.vertices[f])
            .collect();
        SphericalPolygon::new(Hyperplane::new(self.dual.face_poles[v].neg()), verts)
    }

    /// Angle of dual face `v*` at the dual vertex `f*`.
    pub fn dual_angle(&self, v: usize, f: usize) -> Result<f64> {
        let cyc = &self.dual.faces[v];
        let pos = cyc
            .iter()
            .position(|&x| x == f)
            .ok_or_else(|| Error::InvalidParameter(format!("face {f} is not incident to vertex {v}")))?;
        self.dual.face_angle(v, pos)
    }
}

/// Spherical distance between the poles of the two faces at edge `e`.
pub fn exterior_dihedral_angle(dp: &DualPair, e: usize) -> Result<f64> {
    let edge = dp.primal.edge(e)?;
    Ok(distance(dp.primal.face_poles[edge.left], dp.primal.face_poles[edge.right]))
}

/// Length of the dual edge `e*`.
pub fn dual_edge_length(dp: &DualPair, e: usize) -> Result<f64> {
    dp.primal.edge(e)?;
    let d = dp.dual.edges[dp.edge_map[e]];
    Ok(distance(dp.dual.vertices[d.start], dp.dual.vertices[d.end]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrientation {
    /// `start -> end` as stored.
    Forward,
    Reversed,
}

/// One clause of the dual incidence relation for an oriented edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IncidenceClause {
    /// `e*` joins the poles of the two faces at `e`.
    DualEdgeEndpoints,
    /// The left face's pole is the start of `e*`.
    LeftFacePoleStartsDualEdge,
    /// The right face's pole is the end of `e*`.
    RightFacePoleEndsDualEdge,
    /// `v1*` lies on the right of `e*`.
    StartVertexDualOnRight,
    /// `v2*` lies on the left of `e*`.
    EndVertexDualOnLeft,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceReport {
    pub edge: usize,
    pub failures: Vec<IncidenceClause>,
}

impl IncidenceReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Oriented geodesic of an edge `a -> b` and its dual with the associated
/// orientation.
pub fn edge_geodesics(p: &ConvexPolyhedron, edge: Edge) -> Result<(OrientedGeodesic, OrientedGeodesic)> {
    let g = OrientedGeodesic::through(p.vertices[edge.start], p.vertices[edge.end])?;
    Ok((g, g.dual()))
}

/// Checks the orientation and incidence relations between `e` and `e*`.
///
/// With `e` running from `v1` to `v2`, left face `f1` and right face `f2`:
/// `f1*` must start and `f2*` end `e*` (associated orientation), and the dual
/// faces (inward orientation) must have `v1*` on the right of `e*` and `v2*`
/// on the left.
pub fn check_dual_incidence(dp: &DualPair, e: usize, orientation: EdgeOrientation) -> Result<IncidenceReport> {
    let stored = dp.primal.edge(e)?;
    let edge = match orientation {
        EdgeOrientation::Forward => stored,
        EdgeOrientation::Reversed => stored.reversed(),
    };
    let mut failures = Vec::new();
    let (g, gd) = edge_geodesics(&dp.primal, edge)?;
    let (u1, u2) = g.basis();
    let f1 = dp.primal.face_poles[edge.left];
    let f2 = dp.primal.face_poles[edge.right];

    let de = dp.dual.edges[dp.edge_map[e]];
    let mut ends = [de.start, de.end];
    ends.sort_unstable();
    let mut want = [edge.left, edge.right];
    want.sort_unstable();
    if ends != want || gd.deviation(f1.quat()) > 1e-9 || gd.deviation(f2.quat()) > 1e-9 {
        failures.push(IncidenceClause::DualEdgeEndpoints);
    }
    // Moving from f1* to f2* runs positively along e* iff det[u1,u2,f1*,f2*] > 0.
    if det4(u1, u2, f1.quat(), f2.quat()) <= 0.0 {
        failures.push(IncidenceClause::LeftFacePoleStartsDualEdge);
        failures.push(IncidenceClause::RightFacePoleEndsDualEdge);
    }
    // A face lies on the right of an oriented edge when its boundary runs
    // against it.
    let has = |cycle: &[usize], a: usize, b: usize| {
        (0..cycle.len()).any(|k| cycle[k] == a && cycle[(k + 1) % cycle.len()] == b)
    };
    if !has(&dp.dual_face_inward(edge.start), edge.right, edge.left) {
        failures.push(IncidenceClause::StartVertexDualOnRight);
    }
    if !has(&dp.dual_face_inward(edge.end), edge.left, edge.right) {
        failures.push(IncidenceClause::EndVertexDualOnLeft);
    }
    Ok(IncidenceReport { edge: e, failures })
}

/// Maximum of `|angle(v*, f*) + angle(f, v) - π|` over incident pairs.
pub fn angle_duality_check(dp: &DualPair) -> Result<f64> {
    let mut worst = 0.0_f64;
    for (f, cyc) in dp.primal.faces.iter().enumerate() {
        let poly = dp.primal.face_polygon(f)?;
        for (pos, &v) in cyc.iter().enumerate() {
            let theta = poly.interior_angle(pos)?;
            let dual = dp.dual_angle(v, f)?;
            worst = worst.max((theta + dual - PI).abs());
        }
    }
    Ok(worst)
}

/// Cone angle of `P*` at the dual vertex `f*`: the sum of dual face angles there.
pub fn dual_cone_angle(dp: &DualPair, f: usize) -> Result<f64> {
    let mut sum = 0.0;
    for &v in &dp.primal.faces[f] {
        sum += dp.dual_angle(v, f)?;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests;
