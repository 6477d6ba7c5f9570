//! Quaternions as the real span of the matrix units `1, i, j, k`.
//!
//! `R^4` is identified with the matrix quaternions through the ordered basis
//! `(1, i, j, k)`; the unit sphere `S^3` is `SU(2)` and the pure unit
//! quaternions form the 2-sphere `Σ` in the Lie algebra `su(2)`.
//! Multiplication uses the Hamilton table `ij = k`, `jk = i`, `ki = j`,
//! `i² = j² = k² = -1`, which is the product of the corresponding 2x2 complex
//! matrices.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Validation tolerance for unit norm and orthogonality.
pub const TOL_UNIT: f64 = 1e-9;
/// Inputs this close to valid are renormalized instead of rejected.
pub const RENORMALIZE_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Default, serde::Serialize, serde::Deserialize)]
pub struct Quat {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quat {
    pub const ZERO: Quat = Quat::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quat = Quat::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quat = Quat::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quat = Quat::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quat = Quat::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Pure quaternion `x i + y j + z k`.
    pub fn pure(v: [f64; 3]) -> Self {
        Self::new(0.0, v[0], v[1], v[2])
    }

    pub fn vector_part(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// `<a,b> = ½ tr(a b*)`, the Euclidean dot product of coefficients.
    pub fn dot(self, other: Quat) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// Returns `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self.scale(1.0 / n))
    }

    pub fn max_abs_diff(self, other: Quat) -> f64 {
        (self - other)
            .to_array()
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()))
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        Quat::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        Quat::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, b: Quat) -> Quat {
        quat_mul(self, b)
    }
}

pub fn quat_mul(a: Quat, b: Quat) -> Quat {
    Quat::new(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )
}

pub fn inner(a: Quat, b: Quat) -> f64 {
    a.dot(b)
}

/// 4x4 determinant of the columns `a, b, c, d` in the basis `(1, i, j, k)`.
pub fn det4(a: Quat, b: Quat, c: Quat, d: Quat) -> f64 {
    cross4(a, b, c).dot(d)
}

/// The vector `n` with `<n, d> = det[a, b, c, d]` for every `d`.
///
/// Orthogonal to `a`, `b` and `c`; its norm is the 3-volume they span.
pub fn cross4(a: Quat, b: Quat, c: Quat) -> Quat {
    let [a0, a1, a2, a3] = a.to_array();
    let [b0, b1, b2, b3] = b.to_array();
    let [c0, c1, c2, c3] = c.to_array();
    // 2x2 minors of the first two columns.
    let m01 = a0 * b1 - a1 * b0;
    let m02 = a0 * b2 - a2 * b0;
    let m03 = a0 * b3 - a3 * b0;
    let m12 = a1 * b2 - a2 * b1;
    let m13 = a1 * b3 - a3 * b1;
    let m23 = a2 * b3 - a3 * b2;
    Quat::new(
        -(m12 * c3 - m13 * c2 + m23 * c1),
        m02 * c3 - m03 * c2 + m23 * c0,
        -(m01 * c3 - m03 * c1 + m13 * c0),
        m01 * c2 - m02 * c1 + m12 * c0,
    )
}

/// A point of `S^3 = SU(2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuat(Quat);

impl UnitQuat {
    pub const ONE: UnitQuat = UnitQuat(Quat::ONE);
    pub const I: UnitQuat = UnitQuat(Quat::I);
    pub const J: UnitQuat = UnitQuat(Quat::J);
    pub const K: UnitQuat = UnitQuat(Quat::K);

    /// Accepts `q` when `|<q,q> - 1| <= 1e-6`; values off by more than
    /// rounding are renormalized.
    pub fn new(q: Quat) -> Result<Self> {
        let n2 = q.norm_sq();
        if !q.is_finite() || (n2 - 1.0).abs() > RENORMALIZE_LIMIT {
            return Err(Error::NotUnit { norm_sq: n2 });
        }
        if (n2 - 1.0).abs() <= 4.0 * f64::EPSILON {
            Ok(Self(q))
        } else {
            Ok(Self(q.scale(1.0 / n2.sqrt())))
        }
    }

    /// Normalizes any nonzero finite vector.
    pub fn normalize(q: Quat) -> Result<Self> {
        q.normalized()
            .map(Self)
            .ok_or(Error::NotUnit { norm_sq: q.norm_sq() })
    }

    pub fn quat(self) -> Quat {
        self.0
    }

    pub fn to_array(self) -> [f64; 4] {
        self.0.to_array()
    }

    pub fn inverse(self) -> UnitQuat {
        Self(self.0.conj())
    }

    pub fn dot(self, other: UnitQuat) -> f64 {
        self.0.dot(other.0)
    }

    pub fn neg(self) -> UnitQuat {
        Self(-self.0)
    }

    /// Product of unit quaternions, renormalized against rounding drift.
    pub fn mul(self, other: UnitQuat) -> UnitQuat {
        let p = self.0 * other.0;
        Self(p.normalized().unwrap_or(p))
    }
}

impl From<UnitQuat> for Quat {
    fn from(u: UnitQuat) -> Quat {
        u.0
    }
}

/// Inverse of a unit quaternion, computed as the conjugate.
pub fn conj_inverse(q: Quat) -> Result<UnitQuat> {
    Ok(UnitQuat::new(q)?.inverse())
}

/// A point of `Σ = su(2) ∩ SU(2)`, the pure unit quaternions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureUnit(UnitQuat);

impl PureUnit {
    pub const I: PureUnit = PureUnit(UnitQuat::I);
    pub const J: PureUnit = PureUnit(UnitQuat::J);
    pub const K: PureUnit = PureUnit(UnitQuat::K);

    pub fn new(q: Quat) -> Result<Self> {
        if q.w.abs() > RENORMALIZE_LIMIT {
            return Err(Error::NotPure { real: q.w });
        }
        let u = UnitQuat::new(Quat::new(0.0, q.x, q.y, q.z))?;
        Ok(Self(u))
    }

    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        Self::new(Quat::pure(v))
    }

    pub fn unit(self) -> UnitQuat {
        self.0
    }

    pub fn quat(self) -> Quat {
        self.0.quat()
    }

    pub fn vector(self) -> [f64; 3] {
        self.0.quat().vector_part()
    }
}

/// A unit tangent vector `(x, ν)` of `S^3`: `<x,x> = <ν,ν> = 1`, `<x,ν> = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    base: UnitQuat,
    dir: UnitQuat,
}

impl TangentVector {
    pub fn new(base: UnitQuat, dir: UnitQuat) -> Result<Self> {
        let ip = base.dot(dir);
        if ip.abs() > RENORMALIZE_LIMIT {
            return Err(Error::NotOrthogonal { inner: ip });
        }
        if ip.abs() <= TOL_UNIT {
            return Ok(Self { base, dir });
        }
        let d = UnitQuat::normalize(dir.quat() - base.quat().scale(ip))?;
        Ok(Self { base, dir: d })
    }

    pub fn base(self) -> UnitQuat {
        self.base
    }

    pub fn dir(self) -> UnitQuat {
        self.dir
    }

    /// Moves along the geodesic flow by angle `s`.
    pub fn flow(self, s: f64) -> TangentVector {
        let (sn, cs) = s.sin_cos();
        let x = self.base.quat().scale(cs) + self.dir.quat().scale(sn);
        let v = self.dir.quat().scale(cs) - self.base.quat().scale(sn);
        TangentVector {
            base: UnitQuat(x.normalized().unwrap_or(x)),
            dir: UnitQuat(v.normalized().unwrap_or(v)),
        }
    }
}

fn to_pure_unit(q: Quat) -> PureUnit {
    // x⁻¹ν is pure and unit up to rounding for a valid tangent vector.
    let v = Quat::new(0.0, q.x, q.y, q.z);
    PureUnit(UnitQuat(v.normalized().unwrap_or(v)))
}

/// Left Maurer-Cartan map `ω(x, ν) = x⁻¹ ν`.
pub fn omega_left(t: TangentVector) -> PureUnit {
    to_pure_unit(t.base.quat().conj() * t.dir.quat())
}

/// Right Maurer-Cartan map `ω'(x, ν) = ν x⁻¹`.
pub fn omega_right(t: TangentVector) -> PureUnit {
    to_pure_unit(t.dir.quat() * t.base.quat().conj())
}

/// The alternative expression `-ν⁻¹ x` of `ω`.
pub fn omega_left_alt(t: TangentVector) -> Quat {
    -(t.dir.quat().conj() * t.base.quat())
}

/// The alternative expression `-x ν⁻¹` of `ω'`.
pub fn omega_right_alt(t: TangentVector) -> Quat {
    -(t.base.quat() * t.dir.quat().conj())
}

/// Which Maurer-Cartan map develops a tiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `ω(x, ν) = x⁻¹ν`
    Left,
    /// `ω'(x, ν) = νx⁻¹`
    Right,
}

impl Side {
    pub fn omega(self, t: TangentVector) -> PureUnit {
        match self {
            Side::Left => omega_left(t),
            Side::Right => omega_right(t),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::InvalidParameter(format!("unknown side {other:?}"))),
        }
    }
}

/// Develops the hyperplane `Π_ν` onto `Σ` with `Γ(x) = ω(x, ν)` or
/// `Γ'(x) = ω'(x, ν)`.
///
/// `Γ` is left translation by `-ν⁻¹`; `Γ'` is right translation by `-ν⁻¹`.
pub fn develop_hyperplane(x: UnitQuat, nu: UnitQuat, side: Side) -> Result<PureUnit> {
    let ip = x.dot(nu);
    if ip.abs() > TOL_UNIT {
        return Err(Error::OffCarrier { inner: ip });
    }
    let t = TangentVector { base: x, dir: nu };
    Ok(side.omega(t))
}
