use super::*;
use crate::complex::build_normal_complex;
use crate::polyhedron::{convex_hull, dual, ConvexPolyhedron};
use crate::sphere::advance_toward;

fn random_poly(seed: u64, n: usize, spread: f64) -> ConvexPolyhedron {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<UnitQuat> = (0..n)
        .map(|_| {
            let q = Quat::new(
                rng.gen_range(-spread..spread),
                rng.gen_range(-spread..spread),
                rng.gen_range(-spread..spread),
                1.0,
            );
            UnitQuat::normalize(q).unwrap()
        })
        .collect();
    let g = UnitQuat::normalize(Quat::new(0.4, 0.1, -0.7, 0.2)).unwrap();
    let pts: Vec<UnitQuat> = pts.into_iter().map(|p| g.mul(p)).collect();
    convex_hull(&pts).unwrap()
}

fn complex(seed: u64) -> NormalComplex {
    build_normal_complex(&dual(&random_poly(seed, 20, 1.0)).unwrap()).unwrap()
}

#[test]
fn tiles_are_developed_isometrically() {
    for seed in 0..5 {
        let c = complex(seed);
        for side in [Side::Left, Side::Right] {
            let t = develop(&c, side).unwrap();
            assert!(isometry_deviation(&t, &c) < 1e-10);
            assert_eq!(t.orientation_mismatches(), 0, "seed {seed} {side:?}");
            assert!(t.max_geodesic_deviation() < 1e-10);
            assert_eq!(t.num_polygons(), c.dual_pair().primal.num_faces() + c.dual_pair().primal.num_vertices());
        }
    }
}

#[test]
fn developed_areas_sum_to_four_pi() {
    let c = complex(4);
    for side in [Side::Left, Side::Right] {
        let t = develop(&c, side).unwrap();
        assert!((t.total_area().unwrap() - 4.0 * PI).abs() < 1e-9);
    }
}

/// Sweeps the rectangle on a grid and measures the angular extent of its
/// image along a circle fitted to the images themselves.
fn grid_extent(c: &NormalComplex, j: usize, side: Side) -> f64 {
    let p = &c.dual_pair().primal;
    let et = c.edge_tiles()[j];
    let cv = et.corners.map(|i| c.complex_vertices()[i]);
    let (v1, v2) = (p.vertices()[cv[0].vertex], p.vertices()[cv[1].vertex]);
    let (f1, f2) = (p.face_poles()[cv[0].face], p.face_poles()[cv[2].face]);
    let img = |s: f64, t: f64| {
        let x = advance_toward(v1, v2, s).unwrap();
        let y = advance_toward(f1, f2, t).unwrap();
        side.omega(TangentVector::new(x, y).unwrap()).quat()
    };
    let n = 100;
    let origin = img(0.0, 0.0);
    let far = img(et.a, et.b * 0.5);
    let u2 = (far - origin.scale(far.dot(origin))).normalized().unwrap();
    let mut prev: Option<f64> = None;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..=n {
        for k in 0..=n {
            // Serpentine order keeps consecutive samples close.
            let k = if i % 2 == 0 { k } else { n - k };
            let q = img(et.a * i as f64 / n as f64, et.b * k as f64 / n as f64);
            let raw = q.dot(u2).atan2(q.dot(origin));
            let u = match prev {
                Some(pv) => unwrap_near(pv, raw),
                None => raw,
            };
            prev = Some(u);
            lo = lo.min(u);
            hi = hi.max(u);
        }
    }
    hi - lo
}

#[test]
fn segment_length_matches_grid_oracle() {
    let c = complex(7);
    for side in [Side::Left, Side::Right] {
        let t = develop(&c, side).unwrap();
        assert!(segment_length_check(&t, c.dual_pair()).unwrap() < 1e-9);
        for s in &t.segments {
            let oracle = grid_extent(&c, s.edge, side);
            assert!((oracle - (s.a + s.b)).abs() < 1e-9, "edge {} {side:?}", s.edge);
            assert!((s.arc.length() - oracle).abs() < 1e-9);
        }
    }
}

#[test]
fn face_images_slide_by_the_dihedral_angle() {
    for seed in 0..5 {
        let c = complex(seed);
        for side in [Side::Left, Side::Right] {
            let t = develop(&c, side).unwrap();
            assert!(slide_check(&t, c.dual_pair()).unwrap() < 1e-9);
            for r in slide_records(&t, c.dual_pair()).unwrap() {
                assert!(r.opposite_sides);
                assert_eq!(r.handedness, expected_handedness(side), "seed {seed} {side:?}");
            }
        }
    }
}

#[test]
fn generic_tilings_are_not_edge_to_edge() {
    let c = complex(2);
    for side in [Side::Left, Side::Right] {
        let t = develop(&c, side).unwrap();
        let w = non_edge_to_edge_witnesses(&t);
        assert!(!w.is_empty());
        for &j in &w {
            let s = &t.segments[j];
            assert!((s.a - s.b).abs() > 1e-9);
        }
    }
}

#[test]
fn coverage_is_exact() {
    let c = complex(9);
    for side in [Side::Left, Side::Right] {
        let t = develop(&c, side).unwrap();
        let r = verify_tiling(&t, 20_000, 1).unwrap();
        assert!(r.accepted(), "{side:?}: {r:?}");
        assert_eq!(r.covered_exactly_once + r.boundary + r.uncovered + r.multiply_covered, r.n_samples);
        assert_eq!(r, verify_tiling(&t, 20_000, 1).unwrap());
    }
}

#[test]
fn deleting_a_tile_leaves_a_hole() {
    let c = complex(9);
    let mut t = develop(&c, Side::Left).unwrap();
    t.faces.remove(0);
    let r = verify_tiling(&t, 20_000, 1).unwrap();
    assert!(r.uncovered > 0);
    assert!(!r.accepted());
}

#[test]
fn fibonacci_points_are_unit() {
    for q in fibonacci_sphere(1000) {
        assert!((q.norm() - 1.0).abs() < 1e-12);
        assert_eq!(q.w, 0.0);
    }
}

#[test]
fn left_translation_changes_tilings_by_an_isometry() {
    let p = random_poly(5, 15, 0.8);
    let g = UnitQuat::normalize(Quat::new(0.2, -0.6, 0.3, 0.5)).unwrap();
    let q = p.left_translate(g);
    for side in [Side::Left, Side::Right] {
        let t1 = develop(&build_normal_complex(&dual(&p).unwrap()).unwrap(), side).unwrap();
        let t2 = develop(&build_normal_complex(&dual(&q).unwrap()).unwrap(), side).unwrap();
        let pts = |t: &Tiling| -> Vec<UnitQuat> {
            t.polygons().flat_map(|d| d.polygon.vertices().to_vec()).collect()
        };
        let (a, b) = (pts(&t1), pts(&t2));
        for i in 0..a.len() {
            for k in i + 1..a.len() {
                assert!((distance(a[i], a[k]) - distance(b[i], b[k])).abs() < 1e-9);
            }
            if side == Side::Left {
                assert!(a[i].quat().max_abs_diff(b[i].quat()) < 1e-12);
            }
        }
    }
}
