use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use dualtile::complex::build_normal_complex;
use dualtile::develop::{develop, isometry_deviation, slide_check};
use dualtile::generators::{random_convex_polyhedron, regular_polyhedron, RegularKind};
use dualtile::io::{PolyhedronDocument, TilingDocument};
use dualtile::polyhedron::{angle_duality_check, dual, exterior_dihedral_angle, total_area};
use dualtile::quaternion::{Quat, Side, UnitQuat};
use dualtile::sphere::distance;

fn unit(v: [f64; 4]) -> Option<UnitQuat> {
    UnitQuat::normalize(Quat::from_array(v)).ok()
}

fn quad() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-1.0..1.0_f64)
}

fn kind() -> impl Strategy<Value = RegularKind> {
    prop::sample::select(RegularKind::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_polyhedra_satisfy_dual_identities(n in 4usize..40, cap in 0.2..1.2_f64, seed in any::<u64>()) {
        let p = random_convex_polyhedron(n, cap, seed).unwrap();
        prop_assert_eq!(p.num_vertices() + p.num_faces(), p.num_edges() + 2);
        let dp = dual(&p).unwrap();
        let area = total_area(&dp.primal).unwrap() + total_area(&dp.dual).unwrap();
        prop_assert!((area - 2.0 * TAU).abs() < 1e-9);
        prop_assert!(angle_duality_check(&dp).unwrap() < 1e-9);
        for e in 0..p.num_edges() {
            let theta = exterior_dihedral_angle(&dp, e).unwrap();
            prop_assert!(theta > 0.0 && theta < PI);
        }
        for (f, pole) in p.face_poles().iter().enumerate() {
            for v in p.vertices() {
                prop_assert!(v.dot(*pole) <= 1e-9, "vertex outside face {}", f);
            }
        }
    }

    #[test]
    fn developed_tilings_are_isometric_and_slide(n in 4usize..30, cap in 0.2..1.2_f64, seed in any::<u64>()) {
        let dp = dual(&random_convex_polyhedron(n, cap, seed).unwrap()).unwrap();
        let c = build_normal_complex(&dp).unwrap();
        prop_assert!(c.report().unwrap().is_ok());
        for side in [Side::Left, Side::Right] {
            let t = develop(&c, side).unwrap();
            prop_assert_eq!(t.num_polygons(), dp.primal.num_faces() + dp.primal.num_vertices());
            prop_assert!(isometry_deviation(&t, &c) < 1e-10);
            prop_assert!(slide_check(&t, &dp).unwrap() < 1e-9);
            prop_assert!((t.total_area().unwrap() - 2.0 * TAU).abs() < 1e-6);
        }
    }

    #[test]
    fn left_translation_preserves_the_left_tiling(g in quad(), n in 4usize..20, seed in any::<u64>()) {
        let Some(g) = unit(g) else { return Ok(()) };
        let p = random_convex_polyhedron(n, 0.7, seed).unwrap();
        let a = develop(&build_normal_complex(&dual(&p).unwrap()).unwrap(), Side::Left).unwrap();
        let q = p.left_translate(g);
        let b = develop(&build_normal_complex(&dual(&q).unwrap()).unwrap(), Side::Left).unwrap();
        for (x, y) in a.polygons().zip(b.polygons()) {
            for (u, v) in x.polygon.vertices().iter().zip(y.polygon.vertices()) {
                prop_assert!(distance(*u, *v) < 1e-9);
            }
        }
    }

    #[test]
    fn regular_edge_lengths_are_exact(k in kind(), frac in 0.01..0.95_f64) {
        let edge = frac * k.max_edge_length();
        let p = regular_polyhedron(k, edge).unwrap();
        prop_assert_eq!((p.num_vertices(), p.num_edges(), p.num_faces()), k.counts());
        for e in p.edges() {
            let d = distance(p.vertices()[e.start], p.vertices()[e.end]);
            prop_assert!((d - edge).abs() < 1e-10);
        }
    }

    #[test]
    fn documents_round_trip(n in 4usize..30, cap in 0.2..1.2_f64, seed in any::<u64>()) {
        let p = random_convex_polyhedron(n, cap, seed).unwrap();
        let text = PolyhedronDocument::from_polyhedron(&p, None).to_json();
        let back = PolyhedronDocument::from_json(&text).unwrap().to_polyhedron().unwrap();
        prop_assert_eq!(&back, &p);
        let t = develop(&build_normal_complex(&dual(&p).unwrap()).unwrap(), Side::Right).unwrap();
        let doc = TilingDocument::from_tiling(&t, None);
        let text = doc.to_json();
        prop_assert_eq!(TilingDocument::from_json(&text).unwrap().to_json(), text);
    }
}
