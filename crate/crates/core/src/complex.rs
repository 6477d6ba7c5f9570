//! The surface of outward unit normals of a convex polyhedron.
//!
//! Each face `f` gives a tile `f × {f*}`, each vertex `v` a tile `{v} × v*`
//! and each edge `e` a flat rectangle `e × e*`. Tiles are stored by their
//! corners, the incidence pairs `(v, f*)`, listed in the boundary order
//! induced by the tile orientation.

use std::collections::{HashMap, HashSet};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::polyhedron::{dual_edge_length, DualPair, Edge};
use crate::quaternion::{det4, UnitQuat};
use crate::sphere::{distance, OrientedGeodesic, SphericalPolygon};

/// Tolerance for angle and length identities on the complex.
pub const TOL_COMPLEX: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileKind {
    Face,
    Edge,
    Vertex,
}

impl TileKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TileKind::Face => "face",
            TileKind::Edge => "edge",
            TileKind::Vertex => "vertex",
        }
    }
}

/// A tile and the primal cell it comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileRef {
    pub kind: TileKind,
    pub index: usize,
}

/// A point `(v, f*)` of the complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComplexVertex {
    pub vertex: usize,
    pub face: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tile {
    pub source: TileRef,
    /// Corner ids in induced boundary order; edge `k` runs from corner `k` to `k + 1`.
    pub boundary: Vec<usize>,
}

/// The rectangle `e × e*` with sides `a = len(e)` and `b = len(e*)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeTile {
    pub edge: Edge,
    pub a: f64,
    pub b: f64,
    /// `(v1,f1*), (v2,f1*), (v2,f2*), (v1,f2*)` with `e` from `v1` to `v2`
    /// and `e*` from `f1*` to `f2*`.
    pub corners: [usize; 4],
    /// `(s,t) -> (e(s), e*(t))` reverses orientation, so the boundary runs
    /// through the corners in reverse order.
    pub orientation_reversing: bool,
}

#[derive(Debug, Clone)]
pub struct NormalComplex {
    dp: DualPair,
    complex_vertices: Vec<ComplexVertex>,
    index: HashMap<(usize, usize), usize>,
    face_polygons: Vec<SphericalPolygon>,
    vertex_polygons: Vec<SphericalPolygon>,
    edge_tiles: Vec<EdgeTile>,
    tiles: Vec<Tile>,
    /// Every tile edge `(tile, k)` keyed by its directed corner pair.
    directed: HashMap<(usize, usize), Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArea {
    pub faces: f64,
    pub vertices: f64,
    pub rectangles: f64,
}

impl ComplexArea {
    /// Area of the spherical tiles; equals `4π`.
    pub fn curved(&self) -> f64 {
        self.faces + self.vertices
    }

    pub fn total(&self) -> f64 {
        self.curved() + self.rectangles
    }
}

/// Outcome of the structural checks on a complex.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexReport {
    pub euler_characteristic: i64,
    pub max_cone_deviation: f64,
    pub max_side_length_deviation: f64,
    /// Every tile edge has exactly one partner and partner-of-partner is the identity.
    pub edge_to_edge: bool,
    /// Shared edges are traversed in opposite directions by their two tiles.
    pub coherent: bool,
    /// Exactly four tiles form a cycle around every complex vertex.
    pub vertex_stars: bool,
    /// Violations of the six pairwise intersection rules, by case.
    pub case_failures: [usize; 6],
}

impl ComplexReport {
    pub fn is_ok(&self) -> bool {
        self.euler_characteristic == 2
            && self.max_cone_deviation < TOL_COMPLEX
            && self.max_side_length_deviation < TOL_COMPLEX
            && self.edge_to_edge
            && self.coherent
            && self.vertex_stars
            && self.case_failures.iter().all(|&c| c == 0)
    }
}

pub fn build_normal_complex(dp: &DualPair) -> Result<NormalComplex> {
    let p = &dp.primal;
    let mut complex_vertices = Vec::new();
    let mut index = HashMap::new();
    for (f, cyc) in p.faces().iter().enumerate() {
        for &v in cyc {
            index.insert((v, f), complex_vertices.len());
            complex_vertices.push(ComplexVertex { vertex: v, face: f });
        }
    }
    let face_polygons = (0..p.num_faces())
        .map(|f| p.face_polygon(f))
        .collect::<Result<Vec<_>>>()?;
    let vertex_polygons = (0..p.num_vertices())
        .map(|v| dp.dual_face_inward_polygon(v))
        .collect::<Result<Vec<_>>>()?;

    let mut tiles = Vec::new();
    for (f, cyc) in p.faces().iter().enumerate() {
        tiles.push(Tile {
            source: TileRef { kind: TileKind::Face, index: f },
            boundary: cyc.iter().map(|&v| index[&(v, f)]).collect(),
        });
    }
    let mut edge_tiles = Vec::with_capacity(p.num_edges());
    for (j, &e) in p.edges().iter().enumerate() {
        let g = OrientedGeodesic::through(p.vertices()[e.start], p.vertices()[e.end])?;
        let (u1, u2) = g.basis();
        let (pl, pr) = (p.face_poles()[e.left], p.face_poles()[e.right]);
        let (f1, f2) = if det4(u1, u2, pl.quat(), pr.quat()) > 0.0 {
            (e.left, e.right)
        } else {
            (e.right, e.left)
        };
        let corner = |v: usize, f: usize| {
            index.get(&(v, f)).copied().ok_or_else(|| {
                Error::InvalidPolyhedron(format!("vertex {v} is not on face {f}"))
            })
        };
        let corners = [
            corner(e.start, f1)?,
            corner(e.end, f1)?,
            corner(e.end, f2)?,
            corner(e.start, f2)?,
        ];
        let et = EdgeTile {
            edge: e,
            a: distance(p.vertices()[e.start], p.vertices()[e.end]),
            b: dual_edge_length(dp, j)?,
            corners,
            orientation_reversing: true,
        };
        let mut boundary = corners.to_vec();
        if et.orientation_reversing {
            boundary.reverse();
        }
        tiles.push(Tile { source: TileRef { kind: TileKind::Edge, index: j }, boundary });
        edge_tiles.push(et);
    }
    for v in 0..p.num_vertices() {
        tiles.push(Tile {
            source: TileRef { kind: TileKind::Vertex, index: v },
            boundary: dp.dual_face_inward(v).iter().map(|&f| index[&(v, f)]).collect(),
        });
    }

    let mut directed: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for (t, tile) in tiles.iter().enumerate() {
        let n = tile.boundary.len();
        for k in 0..n {
            directed
                .entry((tile.boundary[k], tile.boundary[(k + 1) % n]))
                .or_default()
                .push((t, k));
        }
    }
    Ok(NormalComplex {
        dp: dp.clone(),
        complex_vertices,
        index,
        face_polygons,
        vertex_polygons,
        edge_tiles,
        tiles,
        directed,
    })
}

impl NormalComplex {
    pub fn dual_pair(&self) -> &DualPair {
        &self.dp
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn num_tiles(&self) -> usize {
        self.tiles.len()
    }

    pub fn complex_vertices(&self) -> &[ComplexVertex] {
        &self.complex_vertices
    }

    pub fn complex_vertex_id(&self, vertex: usize, face: usize) -> Option<usize> {
        self.index.get(&(vertex, face)).copied()
    }

    /// Coordinates `(v, f*)` in `S^3 × S^3`.
    pub fn point(&self, cv: usize) -> (UnitQuat, UnitQuat) {
        let c = self.complex_vertices[cv];
        (self.dp.primal.vertices()[c.vertex], self.dp.primal.face_poles()[c.face])
    }

    pub fn face_polygon(&self, f: usize) -> &SphericalPolygon {
        &self.face_polygons[f]
    }

    /// The dual polygon `v*`, oriented by `-v`.
    pub fn vertex_polygon(&self, v: usize) -> &SphericalPolygon {
        &self.vertex_polygons[v]
    }

    pub fn edge_tiles(&self) -> &[EdgeTile] {
        &self.edge_tiles
    }

    /// Tile id of a face, edge or vertex tile.
    pub fn tile_id(&self, r: TileRef) -> usize {
        let (l, m) = (self.face_polygons.len(), self.edge_tiles.len());
        match r.kind {
            TileKind::Face => r.index,
            TileKind::Edge => l + r.index,
            TileKind::Vertex => l + m + r.index,
        }
    }

    /// The tile and edge glued to edge `k` of `tile`.
    pub fn partner(&self, tile: usize, k: usize) -> Option<(usize, usize)> {
        let b = &self.tiles[tile].boundary;
        let (s, e) = (b[k], b[(k + 1) % b.len()]);
        match self.directed.get(&(e, s)).map(Vec::as_slice) {
            Some([one]) => Some(*one),
            _ => None,
        }
    }

    /// Tiles having `cv` as a corner.
    pub fn tiles_at(&self, cv: usize) -> Vec<usize> {
        (0..self.tiles.len())
            .filter(|&t| self.tiles[t].boundary.contains(&cv))
            .collect()
    }

    fn undirected_edges(&self) -> HashSet<(usize, usize)> {
        self.directed.keys().map(|&(a, b)| (a.min(b), a.max(b))).collect()
    }

    /// `V - E + F` over the cells of the complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.complex_vertices.len() as i64 - self.undirected_edges().len() as i64
            + self.tiles.len() as i64
    }

    pub fn area(&self) -> Result<ComplexArea> {
        let mut faces = 0.0;
        for p in &self.face_polygons {
            faces += p.area()?;
        }
        let mut vertices = 0.0;
        for p in &self.vertex_polygons {
            vertices += p.area()?;
        }
        let rectangles = self.edge_tiles.iter().map(|e| e.a * e.b).sum();
        Ok(ComplexArea { faces, vertices, rectangles })
    }

    /// Angle of `tile` at its corner `cv`.
    pub fn corner_angle(&self, tile: usize, cv: usize) -> Result<f64> {
        let t = &self.tiles[tile];
        let pos = t.boundary.iter().position(|&c| c == cv).ok_or_else(|| {
            Error::InvalidParameter(format!("complex vertex {cv} is not a corner of tile {tile}"))
        })?;
        match t.source.kind {
            TileKind::Face => self.face_polygons[t.source.index].interior_angle(pos),
            TileKind::Vertex => self.vertex_polygons[t.source.index].interior_angle(pos),
            TileKind::Edge => Ok(FRAC_PI_2),
        }
    }

    /// Total angle of the tiles around `cv`.
    pub fn cone_angle(&self, cv: usize) -> Result<f64> {
        if cv >= self.complex_vertices.len() {
            return Err(Error::IndexOutOfRange { index: cv, len: self.complex_vertices.len() });
        }
        let mut sum = 0.0;
        for t in self.tiles_at(cv) {
            sum += self.corner_angle(t, cv)?;
        }
        Ok(sum)
    }

    /// Whether the tiles around `cv` are exactly `f̃, ẽ1, ṽ, ẽ2` glued in a cycle.
    pub fn vertex_star_ok(&self, cv: usize) -> bool {
        let c = self.complex_vertices[cv];
        let around = self.tiles_at(cv);
        if around.len() != 4 {
            return false;
        }
        let mut kinds: Vec<TileRef> = around.iter().map(|&t| self.tiles[t].source).collect();
        kinds.sort();
        let p = &self.dp.primal;
        let cyc = &p.faces()[c.face];
        let pos = cyc.iter().position(|&v| v == c.vertex).unwrap();
        let n = cyc.len();
        let mut want = vec![
            TileRef { kind: TileKind::Face, index: c.face },
            TileRef { kind: TileKind::Vertex, index: c.vertex },
        ];
        for w in [cyc[(pos + 1) % n], cyc[(pos + n - 1) % n]] {
            match p.edge_between(c.vertex, w) {
                Some(e) => want.push(TileRef { kind: TileKind::Edge, index: e }),
                None => return false,
            }
        }
        want.sort();
        if kinds != want {
            return false;
        }
        // Walk across the edges incident to cv; each step must reach a new tile.
        let mut t = around[0];
        let mut seen = vec![t];
        for _ in 0..4 {
            let b = &self.tiles[t].boundary;
            let k = b.iter().position(|&x| x == cv).unwrap();
            // The edge entering cv is glued to the next tile around cv.
            let Some((next, _)) = self.partner(t, (k + b.len() - 1) % b.len()) else {
                return false;
            };
            t = next;
            if t == around[0] {
                break;
            }
            if seen.contains(&t) {
                return false;
            }
            seen.push(t);
        }
        t == around[0] && seen.len() == 4
    }

    /// Corner ids and undirected edges of a tile.
    fn cells(&self, t: usize) -> (HashSet<usize>, HashSet<(usize, usize)>) {
        let b = &self.tiles[t].boundary;
        let verts = b.iter().copied().collect();
        let edges = (0..b.len())
            .map(|k| {
                let (x, y) = (b[k], b[(k + 1) % b.len()]);
                (x.min(y), x.max(y))
            })
            .collect();
        (verts, edges)
    }

    /// Counts violations of the six pairwise intersection rules.
    fn intersection_case_failures(&self) -> [usize; 6] {
        let p = &self.dp.primal;
        let cells: Vec<_> = (0..self.tiles.len()).map(|t| self.cells(t)).collect();
        let mut failures = [0usize; 6];
        for i in 0..self.tiles.len() {
            for j in i + 1..self.tiles.len() {
                let (a, b) = (self.tiles[i].source, self.tiles[j].source);
                let shared_v: Vec<usize> = cells[i].0.intersection(&cells[j].0).copied().collect();
                let shared_e: Vec<(usize, usize)> =
                    cells[i].1.intersection(&cells[j].1).copied().collect();
                let (a, b) = if a.kind <= b.kind { (a, b) } else { (b, a) };
                let (case, ok) = match (a.kind, b.kind) {
                    (TileKind::Face, TileKind::Face) => (0, shared_v.is_empty()),
                    (TileKind::Vertex, TileKind::Vertex) => (1, shared_v.is_empty()),
                    (TileKind::Face, TileKind::Edge) => {
                        let e = p.edges()[b.index];
                        let incident = e.left == a.index || e.right == a.index;
                        let ok = if incident {
                            let x = self.index.get(&(e.start, a.index));
                            let y = self.index.get(&(e.end, a.index));
                            match (x, y) {
                                (Some(&x), Some(&y)) => {
                                    let mut sv = shared_v.clone();
                                    sv.sort_unstable();
                                    sv == [x.min(y), x.max(y)] && shared_e == [(x.min(y), x.max(y))]
                                }
                                _ => false,
                            }
                        } else {
                            shared_v.is_empty()
                        };
                        (2, ok)
                    }
                    (TileKind::Edge, TileKind::Vertex) => {
                        let e = p.edges()[a.index];
                        let v = b.index;
                        let ok = if e.start == v || e.end == v {
                            let x = self.index.get(&(v, e.left));
                            let y = self.index.get(&(v, e.right));
                            match (x, y) {
                                (Some(&x), Some(&y)) => {
                                    let mut sv = shared_v.clone();
                                    sv.sort_unstable();
                                    sv == [x.min(y), x.max(y)] && shared_e == [(x.min(y), x.max(y))]
                                }
                                _ => false,
                            }
                        } else {
                            shared_v.is_empty()
                        };
                        (3, ok)
                    }
                    (TileKind::Face, TileKind::Vertex) => {
                        let ok = match self.index.get(&(b.index, a.index)) {
                            Some(&x) => shared_v == [x] && shared_e.is_empty(),
                            None => shared_v.is_empty(),
                        };
                        (4, ok)
                    }
                    (TileKind::Edge, TileKind::Edge) => {
                        let (e1, e2) = (p.edges()[a.index], p.edges()[b.index]);
                        let common_v = [e1.start, e1.end]
                            .into_iter()
                            .find(|&v| v == e2.start || v == e2.end);
                        let common_f = [e1.left, e1.right]
                            .into_iter()
                            .find(|&f| f == e2.left || f == e2.right);
                        let ok = match (common_v, common_f) {
                            (Some(v), Some(f)) => match self.index.get(&(v, f)) {
                                Some(&x) => shared_v == [x] && shared_e.is_empty(),
                                None => false,
                            },
                            _ => shared_v.is_empty(),
                        };
                        (5, ok)
                    }
                    _ => unreachable!(),
                };
                if !ok {
                    failures[case] += 1;
                }
            }
        }
        failures
    }

    /// Largest mismatch between the lengths of glued tile edges.
    fn max_side_length_deviation(&self) -> f64 {
        let l = self.face_polygons.len();
        let m = self.edge_tiles.len();
        let mut worst = 0.0_f64;
        for (j, et) in self.edge_tiles.iter().enumerate() {
            let t = l + j;
            for k in 0..4 {
                let Some((other, ok)) = self.partner(t, k) else { continue };
                let b = &self.tiles[other].boundary;
                let (x, y) = (b[ok], b[(ok + 1) % b.len()]);
                let len = if other < l {
                    let f = &self.face_polygons[other];
                    let n = f.len();
                    distance(f.vertex(ok), f.vertex((ok + 1) % n))
                } else if other >= l + m {
                    let vp = &self.vertex_polygons[other - l - m];
                    distance(vp.vertex(ok), vp.vertex((ok + 1) % vp.len()))
                } else {
                    continue;
                };
                // Sides joining two poles have length b, sides joining two vertices length a.
                let same_face = self.complex_vertices[x].face == self.complex_vertices[y].face;
                let want = if same_face { et.a } else { et.b };
                worst = worst.max((len - want).abs());
            }
        }
        worst
    }

    pub fn report(&self) -> Result<ComplexReport> {
        let mut edge_to_edge = true;
        let mut coherent = true;
        for list in self.directed.values() {
            if list.len() != 1 {
                coherent = false;
            }
        }
        for (t, tile) in self.tiles.iter().enumerate() {
            for k in 0..tile.boundary.len() {
                match self.partner(t, k) {
                    Some((o, ok)) if o != t && self.partner(o, ok) == Some((t, k)) => {}
                    _ => edge_to_edge = false,
                }
            }
        }
        // An undirected edge used twice in the same direction has no partner,
        // so coherence also fails when pairing does.
        if !edge_to_edge {
            coherent = false;
        }
        let mut max_cone_deviation = 0.0_f64;
        let mut vertex_stars = true;
        for cv in 0..self.complex_vertices.len() {
            max_cone_deviation = max_cone_deviation.max((self.cone_angle(cv)? - 2.0 * PI).abs());
            vertex_stars &= self.vertex_star_ok(cv);
        }
        Ok(ComplexReport {
            euler_characteristic: self.euler_characteristic(),
            max_cone_deviation,
            max_side_length_deviation: self.max_side_length_deviation(),
            edge_to_edge,
            coherent,
            vertex_stars,
            case_failures: self.intersection_case_failures(),
        })
    }
}
