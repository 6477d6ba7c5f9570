//! Test polyhedra: the five regular solids and random hulls of cap samples.
//!
//! Vertices sit at colatitude `r` from the pole `k = (0,0,0,1)` along the
//! unit directions `u` of a Euclidean solid, `x = (sin r · u, cos r)`. Two
//! neighbours at central angle `α` are at distance `d` with
//! `cos d = 1 - sin²r (1 - cos α)`, so `d` grows from `0` to `α` as `r` runs
//! over `(0, π/2)`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyhedron::{convex_hull, ConvexPolyhedron};
use crate::quaternion::{Quat, UnitQuat};

/// Resampling attempts before [`random_convex_polyhedron`] gives up.
pub const MAX_RESAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegularKind {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl RegularKind {
    pub const ALL: [RegularKind; 5] = [
        RegularKind::Tetrahedron,
        RegularKind::Cube,
        RegularKind::Octahedron,
        RegularKind::Dodecahedron,
        RegularKind::Icosahedron,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RegularKind::Tetrahedron => "tetrahedron",
            RegularKind::Cube => "cube",
            RegularKind::Octahedron => "octahedron",
            RegularKind::Dodecahedron => "dodecahedron",
            RegularKind::Icosahedron => "icosahedron",
        }
    }

    /// `(vertices, edges, faces)`.
    pub fn counts(self) -> (usize, usize, usize) {
        match self {
            RegularKind::Tetrahedron => (4, 6, 4),
            RegularKind::Cube => (8, 12, 6),
            RegularKind::Octahedron => (6, 12, 8),
            RegularKind::Dodecahedron => (20, 30, 12),
            RegularKind::Icosahedron => (12, 30, 20),
        }
    }

    /// Supremum of admissible edge lengths: the Euclidean central angle
    /// between neighbouring vertices, reached when the circumradius is `π/2`.
    pub fn max_edge_length(self) -> f64 {
        match self {
            // arccos(-1/3)
            RegularKind::Tetrahedron => 1.910_633_236_249_018_6,
            // arccos(1/3)
            RegularKind::Cube => 1.230_959_417_340_774_7,
            RegularKind::Octahedron => FRAC_PI_2,
            // arccos(√5/3)
            RegularKind::Dodecahedron => 0.729_727_656_226_966_3,
            // arctan 2
            RegularKind::Icosahedron => 1.107_148_717_794_090_4,
        }
    }

    /// Unit vertex directions of the Euclidean solid.
    pub fn directions(self) -> Vec<[f64; 3]> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let signs = [1.0, -1.0];
        let mut out = Vec::new();
        match self {
            RegularKind::Tetrahedron => {
                out = vec![[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
            }
            RegularKind::Cube => {
                for a in signs {
                    for b in signs {
                        for c in signs {
                            out.push([a, b, c]);
                        }
                    }
                }
            }
            RegularKind::Octahedron => {
                for i in 0..3 {
                    for s in signs {
                        let mut v = [0.0; 3];
                        v[i] = s;
                        out.push(v);
                    }
                }
            }
            RegularKind::Icosahedron => {
                for a in signs {
                    for b in signs {
                        out.push([0.0, a, b * phi]);
                        out.push([a, b * phi, 0.0]);
                        out.push([a * phi, 0.0, b]);
                    }
                }
            }
            RegularKind::Dodecahedron => {
                for a in signs {
                    for b in signs {
                        for c in signs {
                            out.push([a, b, c]);
                        }
                        out.push([0.0, a / phi, b * phi]);
                        out.push([a / phi, b * phi, 0.0]);
                        out.push([a * phi, 0.0, b / phi]);
                    }
                }
            }
        }
        out.into_iter()
            .map(|v| {
                let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                [v[0] / n, v[1] / n, v[2] / n]
            })
            .collect()
    }

    /// Cosine of the central angle between neighbouring directions.
    fn neighbour_cos(self) -> f64 {
        let d = self.directions();
        let mut best = -1.0_f64;
        for i in 0..d.len() {
            for k in i + 1..d.len() {
                best = best.max(d[i][0] * d[k][0] + d[i][1] * d[k][1] + d[i][2] * d[k][2]);
            }
        }
        best
    }
}

impl fmt::Display for RegularKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegularKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RegularKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown regular polyhedron {s:?}")))
    }
}

/// `(sin r · u, cos r)`.
pub fn lift(u: [f64; 3], r: f64) -> Result<UnitQuat> {
    let (s, c) = r.sin_cos();
    UnitQuat::new(Quat::new(s * u[0], s * u[1], s * u[2], c))
}

/// Edge length of the solid lifted at colatitude `r`.
pub fn edge_length_at(kind: RegularKind, r: f64) -> f64 {
    // sin(d/2) = sin r · sin(α/2)
    let half = ((1.0 - kind.neighbour_cos()) / 2.0).sqrt();
    2.0 * (r.sin() * half).asin()
}

/// Colatitude giving the requested edge length, by bisection.
pub fn circumradius_for_edge(kind: RegularKind, edge: f64) -> Result<f64> {
    let max = kind.max_edge_length();
    if !(edge > 0.0 && edge < max) {
        return Err(Error::EdgeLengthOutOfRange { kind: kind.to_string(), edge, max });
    }
    let (mut lo, mut hi) = (0.0_f64, FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if edge_length_at(kind, mid) < edge {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn regular_polyhedron(kind: RegularKind, edge: f64) -> Result<ConvexPolyhedron> {
    let r = circumradius_for_edge(kind, edge)?;
    let pts = kind
        .directions()
        .into_iter()
        .map(|u| lift(u, r))
        .collect::<Result<Vec<_>>>()?;
    let p = convex_hull(&pts)?;
    let (n, m, l) = kind.counts();
    if (p.num_vertices(), p.num_edges(), p.num_faces()) != (n, m, l) {
        return Err(Error::InvalidPolyhedron(format!(
            "{kind} hull has {} vertices, {} edges, {} faces",
            p.num_vertices(),
            p.num_edges(),
            p.num_faces()
        )));
    }
    Ok(p)
}

/// Colatitude `ρ ≤ cap` with `P(ρ' ≤ ρ)` equal to `u`, for the density
/// `∝ sin²ρ` of the uniform measure on `S^3`.
fn cap_colatitude(u: f64, cap: f64) -> f64 {
    let mass = |x: f64| x - x.sin() * x.cos();
    let target = u * mass(cap);
    let (mut lo, mut hi) = (0.0_f64, cap);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mass(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A uniform point of the cap of half-angle `cap` about `k`.
pub fn sample_cap<R: Rng>(rng: &mut R, cap: f64) -> Result<UnitQuat> {
    let rho = cap_colatitude(rng.gen_range(0.0..1.0), cap);
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let t: f64 = rng.gen_range(0.0..2.0 * PI);
    let s = (1.0 - z * z).max(0.0).sqrt();
    lift([s * t.cos(), s * t.sin(), z], rho)
}

/// Hull of `n` uniform samples from the cap of half-angle `cap` about `k`.
///
/// Degenerate samples are redrawn from the same stream, so the result only
/// depends on `(n, cap, seed)`.
pub fn random_convex_polyhedron(n: usize, cap: f64, seed: u64) -> Result<ConvexPolyhedron> {
    if n < 4 {
        return Err(Error::TooFewPoints(n));
    }
    if !(cap > 0.0 && cap < FRAC_PI_2) {
        return Err(Error::InvalidParameter(format!("cap half-angle {cap} not in (0, π/2)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RESAMPLES {
        let pts = (0..n).map(|_| sample_cap(&mut rng, cap)).collect::<Result<Vec<_>>>()?;
        match convex_hull(&pts) {
            Ok(p) => return Ok(p),
            Err(Error::Planar | Error::InvalidPolyhedron(_) | Error::NotHemispherical) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingFailed(MAX_RESAMPLES))
}
