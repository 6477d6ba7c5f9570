use super::*;
use crate::quaternion::Quat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lift(dirs: &[[f64; 3]], r: f64) -> Vec<UnitQuat> {
    dirs.iter()
        .map(|d| {
            let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
            let s = r.sin() / n;
            UnitQuat::new(Quat::new(s * d[0], s * d[1], s * d[2], r.cos())).unwrap()
        })
        .collect()
}

fn cube(r: f64) -> ConvexPolyhedron {
    let mut d = Vec::new();
    for i in 0..8 {
        d.push([
            if i & 1 == 0 { -1.0 } else { 1.0 },
            if i & 2 == 0 { -1.0 } else { 1.0 },
            if i & 4 == 0 { -1.0 } else { 1.0 },
        ]);
    }
    convex_hull(&lift(&d, r)).unwrap()
}

fn octahedron(r: f64) -> ConvexPolyhedron {
    let d = [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    convex_hull(&lift(&d, r)).unwrap()
}

fn random_poly(seed: u64, n: usize, cap: f64) -> ConvexPolyhedron {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs: Vec<[f64; 3]> = (0..n)
        .map(|_| {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let s = (1.0 - z * z).sqrt();
            [s * t.cos(), s * t.sin(), z]
        })
        .collect();
    let radii: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2 * cap..cap)).collect();
    let pts: Vec<UnitQuat> = dirs
        .iter()
        .zip(&radii)
        .map(|(d, &r)| lift(&[*d], r)[0])
        .collect();
    // Rotate off the pole so the witness is non-trivial.
    let g = UnitQuat::normalize(Quat::new(0.3, -0.5, 0.2, 0.7)).unwrap();
    let pts: Vec<UnitQuat> = pts.into_iter().map(|p| g.mul(p)).collect();
    convex_hull(&pts).unwrap()
}

#[test]
fn cube_counts_and_invariants() {
    let p = cube(0.6);
    assert_eq!((p.num_vertices(), p.num_edges(), p.num_faces()), (8, 12, 6));
    p.validate().unwrap();
    for f in p.faces() {
        assert_eq!(f.len(), 4);
    }
    for v in 0..8 {
        assert_eq!(p.faces_around(v).len(), 3);
    }
}

#[test]
fn octahedron_counts() {
    let p = octahedron(0.8);
    assert_eq!((p.num_vertices(), p.num_edges(), p.num_faces()), (6, 12, 8));
}

#[test]
fn interior_and_edge_points_are_dropped() {
    let mut d: Vec<[f64; 3]> = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut pts = lift(&d, 0.8);
    // Midpoint of a geodesic edge and a point near the centre.
    let mid = UnitQuat::normalize(pts[0].quat() + pts[2].quat()).unwrap();
    pts.push(mid);
    d.push([0.1, 0.1, 0.1]);
    pts.push(lift(&d[6..], 0.1)[0]);
    let (p, report) = convex_hull_with_report(&pts).unwrap();
    assert_eq!(p.num_vertices(), 6);
    assert_eq!(report.dropped, vec![6, 7]);
    assert_eq!(report.sources, (0..6).collect::<Vec<_>>());
}

#[test]
fn rejects_degenerate_inputs() {
    let pts = lift(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], 0.5);
    assert_eq!(convex_hull(&pts), Err(Error::TooFewPoints(3)));
    // Four points on one great 2-sphere.
    let planar: Vec<UnitQuat> = [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.6, 0.8, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]]
        .iter()
        .map(|a| UnitQuat::new(Quat::from_array(*a)).unwrap())
        .collect();
    assert_eq!(convex_hull(&planar), Err(Error::Planar));
    // Antipodal pair: not in any open half-sphere.
    let mut anti = lift(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 1.0, 1.0]], 0.5);
    anti.push(anti[0].neg());
    assert_eq!(convex_hull(&anti), Err(Error::NotHemispherical));
}

#[test]
fn witness_finds_strict_half_sphere() {
    let pts = lift(&[[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0]], 1.5);
    let w = hemispherical_witness(&pts).unwrap();
    assert!(pts.iter().all(|p| p.dot(w) > 0.0));
    let closed = vec![UnitQuat::I, UnitQuat::I.neg(), UnitQuat::J];
    assert!(hemispherical_witness(&closed).is_none());
}

#[test]
fn face_poles_support_the_vertices() {
    for seed in 0..10 {
        let p = random_poly(seed, 30, 1.2);
        p.validate().unwrap();
        for (f, cyc) in p.faces().iter().enumerate() {
            let pole = p.face_poles()[f];
            for &v in cyc {
                assert!(pole.dot(p.vertices()[v]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn edges_have_consistent_faces() {
    let p = random_poly(3, 25, 1.0);
    for e in p.edges() {
        assert_eq!(p.face_of_directed(e.start, e.end), Some(e.left));
        assert_eq!(p.face_of_directed(e.end, e.start), Some(e.right));
        assert_ne!(e.left, e.right);
    }
}

#[test]
fn from_parts_reorients_and_rejects_bad_input() {
    let p = cube(0.5);
    let reversed: Vec<Vec<usize>> = p
        .faces()
        .iter()
        .map(|f| f.iter().rev().copied().collect())
        .collect();
    let q = ConvexPolyhedron::from_parts(p.vertices().to_vec(), reversed).unwrap();
    for f in 0..q.num_faces() {
        assert!(q.face_poles()[f].dot(p.face_poles()[f]) > 1.0 - 1e-12);
    }
    let mut missing = p.faces().to_vec();
    missing.pop();
    assert!(ConvexPolyhedron::from_parts(p.vertices().to_vec(), missing).is_err());
    let mut bumped = p.vertices().to_vec();
    bumped[0] = UnitQuat::normalize(bumped[0].quat() + Quat::new(0.05, 0.0, 0.0, 0.0)).unwrap();
    assert!(ConvexPolyhedron::from_parts(bumped, p.faces().to_vec()).is_err());
}

#[test]
fn area_matches_angle_sum_identity() {
    for p in [cube(0.4), octahedron(1.0), random_poly(7, 40, 1.3)] {
        let a = total_area(&p).unwrap();
        let b = area_from_angle_sum(&p).unwrap();
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn dual_is_an_involution() {
    for p in [cube(0.7), octahedron(0.9), random_poly(11, 20, 1.1)] {
        let dp = dual(&p).unwrap();
        assert_eq!(dp.dual.num_vertices(), p.num_faces());
        assert_eq!(dp.dual.num_faces(), p.num_vertices());
        for k in 0..p.num_vertices() {
            assert!(dp.dual.face_poles()[k].quat().max_abs_diff(p.vertices()[k].quat()) < 1e-10);
        }
        let ddp = dual(&dp.dual).unwrap();
        for k in 0..p.num_faces() {
            assert!(ddp.dual.face_poles()[k].quat().max_abs_diff(p.face_poles()[k].quat()) < 1e-10);
        }
    }
}

#[test]
fn cube_dual_is_octahedron() {
    let dp = dual(&cube(0.6)).unwrap();
    assert_eq!((dp.dual.num_vertices(), dp.dual.num_edges(), dp.dual.num_faces()), (6, 12, 8));
}

#[test]
fn angle_duality_and_edge_lengths() {
    let p = random_poly(5, 30, 1.2);
    let dp = dual(&p).unwrap();
    assert!(angle_duality_check(&dp).unwrap() < 1e-10);
    for e in 0..p.num_edges() {
        let a = exterior_dihedral_angle(&dp, e).unwrap();
        let b = dual_edge_length(&dp, e).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(a > 0.0 && a < PI);
    }
    // Dual cone angle at f* equals 2π minus the excess deficit of f.
    for f in 0..p.num_faces() {
        let poly = p.face_polygon(f).unwrap();
        let n = poly.len() as f64;
        let sum: f64 = (0..poly.len()).map(|i| poly.interior_angle(i).unwrap()).sum();
        let cone = dual_cone_angle(&dp, f).unwrap();
        assert!((cone - (n * PI - sum)).abs() < 1e-10);
        assert!(cone < 2.0 * PI);
    }
}

#[test]
fn dual_incidence_holds_both_ways() {
    for p in [cube(0.5), octahedron(1.2), random_poly(9, 35, 1.0)] {
        let dp = dual(&p).unwrap();
        for e in 0..p.num_edges() {
            for o in [EdgeOrientation::Forward, EdgeOrientation::Reversed] {
                let r = check_dual_incidence(&dp, e, o).unwrap();
                assert!(r.is_ok(), "edge {e} {o:?}: {:?}", r.failures);
            }
        }
    }
}

#[test]
fn inward_dual_faces_are_positive_for_minus_v() {
    let dp = dual(&cube(0.5)).unwrap();
    for v in 0..8 {
        let poly = dp.dual_face_inward_polygon(v).unwrap();
        assert_eq!(poly.orientation(), crate::sphere::Orientation::Positive);
    }
}

#[test]
fn translations_preserve_invariants() {
    let p = random_poly(2, 20, 1.0);
    let g = UnitQuat::normalize(Quat::new(-0.2, 0.9, 0.1, -0.4)).unwrap();
    for q in [p.left_translate(g), p.right_translate(g)] {
        q.validate().unwrap();
        assert!((total_area(&q).unwrap() - total_area(&p).unwrap()).abs() < 1e-10);
    }
}
