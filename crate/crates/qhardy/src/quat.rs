//! Quaternion scalars and imaginary units.
//!
//! `Quaternion` is the ground algebra: `q = w + x i + y j + z k` with the
//! Hamilton rules `i^2 = j^2 = k^2 = -1`, `ij = k`. `UnitImaginary` is a
//! point of the two-sphere of imaginary units; each such `I` spans a complex
//! plane `R + R I` inside the algebra, and boundary points of the unit ball
//! have the form `e^{tI} = cos t + sin t I`.
//!
//! All values are immutable and every operation is a pure function, so
//! concurrent use is unrestricted.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Default absolute tolerance for componentwise comparisons.
pub const DEFAULT_TOL: f64 = 1e-12;

/// A quaternion `w + x i + y j + z k` over `f64`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    /// Embeds a real number.
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Quaternionic conjugate `w - x i - y j - z k`.
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Squared Euclidean norm `w^2 + x^2 + y^2 + z^2`.
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Real (scalar) part.
    pub fn re(self) -> f64 {
        self.w
    }

    /// Imaginary part as a 3-vector `(x, y, z)`.
    pub fn imag(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Multiplicative inverse `conj(q) / |q|^2`, or `None` for (near) zero.
    pub fn inverse(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        if n2 < 1e-300 {
            return None;
        }
        Some(self.conj() / n2)
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Componentwise comparison with absolute tolerance `tol`.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        (self.w - other.w).abs() <= tol
            && (self.x - other.x).abs() <= tol
            && (self.y - other.y).abs() <= tol
            && (self.z - other.z).abs() <= tol
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.w + rhs.w, self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.w - rhs.w, self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product; non-commutative, `i * j = k`.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.w * r.w - self.x * r.x - self.y * r.y - self.z * r.z,
            self.w * r.x + self.x * r.w + self.y * r.z - self.z * r.y,
            self.w * r.y - self.x * r.z + self.y * r.w + self.z * r.x,
            self.w * r.z + self.x * r.y - self.y * r.x + self.z * r.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, t: f64) -> Self {
        Self::new(self.w * t, self.x * t, self.y * t, self.z * t)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, t: f64) -> Self {
        Self::new(self.w / t, self.x / t, self.y / t, self.z / t)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i{:+}j{:+}k", self.w, self.x, self.y, self.z)
    }
}

// JSON encoding: [w, x, y, z].
impl Serialize for Quaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.w, self.x, self.y, self.z].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [w, x, y, z] = <[f64; 4]>::deserialize(d)?;
        Ok(Self::new(w, x, y, z))
    }
}

/// A purely imaginary quaternion of unit norm, i.e. a square root of -1.
///
/// The zero real part is structural (it is not stored); the direction is
/// kept normalized on construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitImaginary {
    x: f64,
    y: f64,
    z: f64,
}

impl UnitImaginary {
    pub const I: UnitImaginary = UnitImaginary { x: 1.0, y: 0.0, z: 0.0 };
    pub const J: UnitImaginary = UnitImaginary { x: 0.0, y: 1.0, z: 0.0 };
    pub const K: UnitImaginary = UnitImaginary { x: 0.0, y: 0.0, z: 1.0 };

    /// Normalizes `(x, y, z)`; `None` when the direction is (near) zero.
    pub fn new(x: f64, y: f64, z: f64) -> Option<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if n < 1e-150 {
            return None;
        }
        Some(Self { x: x / n, y: y / n, z: z / n })
    }

    /// Direction of the imaginary part of `q`; `None` when `q` is real.
    pub fn from_imaginary_part(q: Quaternion) -> Option<Self> {
        Self::new(q.x, q.y, q.z)
    }

    pub fn components(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn as_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    /// Euclidean inner product of the two imaginary directions.
    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Boundary point `e^{tI} = cos t + sin t I`; always unit norm.
    pub fn circle_point(self, t: f64) -> Quaternion {
        let (s, c) = t.sin_cos();
        Quaternion::new(c, s * self.x, s * self.y, s * self.z)
    }

    /// A deterministic unit imaginary orthogonal to `self`.
    ///
    /// Cross product of the canonical `k` axis with `self` (which maps `i`
    /// to `j`), falling back to `i` when `self` is `±k`.
    pub fn orthogonal(self) -> UnitImaginary {
        // cross((0,0,1), (x,y,z)) = (-y, x, 0)
        UnitImaginary::new(-self.y, self.x, 0.0).unwrap_or(UnitImaginary::I)
    }
}

impl From<UnitImaginary> for Quaternion {
    fn from(u: UnitImaginary) -> Quaternion {
        u.as_quaternion()
    }
}

// JSON encoding: [x, y, z], unit within 1e-12.
impl Serialize for UnitImaginary {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x, self.y, self.z].serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitImaginary {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y, z] = <[f64; 3]>::deserialize(d)?;
        let n2 = x * x + y * y + z * z;
        if (n2 - 1.0).abs() > 1e-12 {
            return Err(D::Error::custom(format!(
                "unit imaginary must have unit norm, got |v|^2 = {n2}"
            )));
        }
        Ok(Self { x, y, z })
    }
}
