//! Incremental 3D convex hull over exact orientation signs.
//!
//! Triangles are stored counterclockwise as seen from outside. A point is
//! added only if it lies strictly beyond some facet, so exactly coplanar and
//! interior points never become hull vertices.

use std::collections::HashMap;

use robust::{orient3d, Coord3D};

use crate::error::{Error, Result};

/// Below this relative volume the input counts as planar.
const PLANAR_REL_TOL: f64 = 1e-12;

fn coord(p: [f64; 3]) -> Coord3D<f64> {
    Coord3D { x: p[0], y: p[1], z: p[2] }
}

/// Positive when `d` is on the inner side of the counterclockwise triangle `a, b, c`.
fn orient(points: &[[f64; 3]], a: usize, b: usize, c: usize, d: usize) -> f64 {
    orient3d(coord(points[a]), coord(points[b]), coord(points[c]), coord(points[d]))
}

fn dist2(a: [f64; 3], b: [f64; 3]) -> f64 {
    (0..3).map(|i| (a[i] - b[i]).powi(2)).sum()
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm(a: [f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

fn initial_simplex(points: &[[f64; 3]]) -> Result<[usize; 4]> {
    let n = points.len();
    let i0 = 0;
    let i1 = (0..n)
        .max_by(|&a, &b| dist2(points[i0], points[a]).total_cmp(&dist2(points[i0], points[b])))
        .unwrap();
    let diam = dist2(points[i0], points[i1]).sqrt();
    if diam == 0.0 {
        return Err(Error::Planar);
    }
    let axis = sub(points[i1], points[i0]);
    let i2 = (0..n)
        .max_by(|&a, &b| {
            let da = norm(cross(axis, sub(points[a], points[i0])));
            let db = norm(cross(axis, sub(points[b], points[i0])));
            da.total_cmp(&db)
        })
        .unwrap();
    let area = norm(cross(axis, sub(points[i2], points[i0])));
    if area <= PLANAR_REL_TOL * diam * diam {
        return Err(Error::Planar);
    }
    let i3 = (0..n)
        .max_by(|&a, &b| {
            orient(points, i0, i1, i2, a)
                .abs()
                .total_cmp(&orient(points, i0, i1, i2, b).abs())
        })
        .unwrap();
    let vol = orient(points, i0, i1, i2, i3).abs();
    if vol <= PLANAR_REL_TOL * diam.powi(3) {
        return Err(Error::Planar);
    }
    Ok([i0, i1, i2, i3])
}

/// Hull triangles of `points`, each counterclockwise from outside.
pub(crate) fn hull_triangles(points: &[[f64; 3]]) -> Result<Vec<[usize; 3]>> {
    if points.len() < 4 {
        return Err(Error::TooFewPoints(points.len()));
    }
    let [a, b, c, d] = initial_simplex(points)?;
    let mut faces: Vec<Option<[usize; 3]>> = Vec::new();
    let mut edge_face: HashMap<(usize, usize), usize> = HashMap::new();

    let add_face = |faces: &mut Vec<Option<[usize; 3]>>,
                        edge_face: &mut HashMap<(usize, usize), usize>,
                        t: [usize; 3]| {
        let id = faces.len();
        faces.push(Some(t));
        for k in 0..3 {
            edge_face.insert((t[k], t[(k + 1) % 3]), id);
        }
    };

    let (b, c) = if orient(points, a, b, c, d) > 0.0 { (b, c) } else { (c, b) };
    for t in [[a, b, c], [a, d, b], [b, d, c], [c, d, a]] {
        add_face(&mut faces, &mut edge_face, t);
    }

    for p in 0..points.len() {
        if [a, b, c, d].contains(&p) {
            continue;
        }
        let visible: Vec<usize> = faces
            .iter()
            .enumerate()
            .filter_map(|(i, f)| {
                let t = (*f)?;
                (orient(points, t[0], t[1], t[2], p) < 0.0).then_some(i)
            })
            .collect();
        if visible.is_empty() {
            continue;
        }
        let is_visible = |faces_vis: &[usize], id: usize| faces_vis.binary_search(&id).is_ok();
        let mut horizon = Vec::new();
        for &fid in &visible {
            let t = faces[fid].unwrap();
            for k in 0..3 {
                let (u, v) = (t[k], t[(k + 1) % 3]);
                let twin = edge_face[&(v, u)];
                if !is_visible(&visible, twin) {
                    horizon.push((u, v));
                }
            }
        }
        for &fid in &visible {
            let t = faces[fid].take().unwrap();
            for k in 0..3 {
                let key = (t[k], t[(k + 1) % 3]);
                if edge_face.get(&key) == Some(&fid) {
                    edge_face.remove(&key);
                }
            }
        }
        for (u, v) in horizon {
            add_face(&mut faces, &mut edge_face, [u, v, p]);
        }
    }
    Ok(faces.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn check_closed(tris: &[[usize; 3]]) {
        let mut directed = HashSet::new();
        for t in tris {
            for k in 0..3 {
                assert!(directed.insert((t[k], t[(k + 1) % 3])), "duplicate directed edge");
            }
        }
        for &(u, v) in &directed {
            assert!(directed.contains(&(v, u)), "unpaired edge");
        }
    }

    #[test]
    fn tetrahedron() {
        let pts = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let tris = hull_triangles(&pts).unwrap();
        assert_eq!(tris.len(), 4);
        check_closed(&tris);
    }

    #[test]
    fn cube_keeps_all_corners() {
        let mut pts = Vec::new();
        for i in 0..8 {
            pts.push([
                if i & 1 == 0 { -1.0 } else { 1.0 },
                if i & 2 == 0 { -1.0 } else { 1.0 },
                if i & 4 == 0 { -1.0 } else { 1.0 },
            ]);
        }
        pts.push([0.0, 0.0, 0.0]);
        pts.push([0.0, 0.0, 1.0]);
        let tris = hull_triangles(&pts).unwrap();
        assert_eq!(tris.len(), 12);
        check_closed(&tris);
        let used: HashSet<usize> = tris.iter().flatten().copied().collect();
        assert_eq!(used, (0..8).collect());
    }

    #[test]
    fn random_points_are_enclosed() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for _ in 0..20 {
            let pts: Vec<[f64; 3]> = (0..200)
                .map(|_| [rng.gen(), rng.gen(), rng.gen()])
                .collect();
            let tris = hull_triangles(&pts).unwrap();
            check_closed(&tris);
            for t in &tris {
                for p in 0..pts.len() {
                    assert!(orient(&pts, t[0], t[1], t[2], p) >= 0.0);
                }
            }
            let v = tris.iter().flatten().collect::<HashSet<_>>().len();
            // Euler for a triangulated sphere: F = 2V - 4.
            assert_eq!(tris.len(), 2 * v - 4);
        }
    }

    #[test]
    fn planar_input_is_rejected() {
        let pts = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]];
        assert_eq!(hull_triangles(&pts), Err(Error::Planar));
        let pts = [[0.0; 3]; 5];
        assert_eq!(hull_triangles(&pts), Err(Error::Planar));
        assert_eq!(hull_triangles(&pts[..3]), Err(Error::TooFewPoints(3)));
    }
}
