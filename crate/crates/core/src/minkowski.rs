//! Lorentz–Minkowski 3-space: the index-one metric `x₁y₁ + x₂y₂ − x₃y₃`, its
//! cross product and the three one-parameter rotation groups.

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::lorentz::CausalClass;

/// Relative threshold below which `⟨v,v⟩` is treated as zero.
pub const NULL_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MinkowskiError {
    #[error("tangent is null or changes causal character at node {index}")]
    MixedCausalCharacter { index: usize },
    #[error("curve needs at least 3 points")]
    TooShort,
}

/// A vector of E³₁; `z` carries the negative sign of the metric.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MinkVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl MinkVec3 {
    pub const E1: MinkVec3 = MinkVec3::new(1.0, 0.0, 0.0);
    pub const E2: MinkVec3 = MinkVec3::new(0.0, 1.0, 0.0);
    pub const E3: MinkVec3 = MinkVec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn inner(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y - self.z * other.z
    }

    /// Lorentzian cross product; orthogonal to both factors under [`inner`](Self::inner).
    pub fn cross(self, v: Self) -> Self {
        let u = self;
        Self::new(
            u.y * v.z - u.z * v.y,
            -(u.x * v.z - u.z * v.x),
            -(u.x * v.y - u.y * v.x),
        )
    }

    /// Euclidean length, used only for scaling tolerances.
    pub fn euclid_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn classify(self) -> CausalClass {
        let q = self.inner(self);
        let scale = self.euclid_norm().powi(2);
        if scale == 0.0 {
            CausalClass::Spacelike
        } else if q.abs() <= NULL_TOL * scale {
            CausalClass::Lightlike
        } else if q > 0.0 {
            CausalClass::Spacelike
        } else {
            CausalClass::Timelike
        }
    }
}

impl Add for MinkVec3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for MinkVec3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for MinkVec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for MinkVec3 {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }
}

/// Causal character of a rotation axis. Axis directions are fixed:
/// timelike `(0,0,1)`, spacelike `(1,0,0)`, lightlike `(0,1,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisType {
    Timelike,
    Spacelike,
    Lightlike,
}

impl AxisType {
    pub fn direction(self) -> MinkVec3 {
        match self {
            AxisType::Timelike => MinkVec3::E3,
            AxisType::Spacelike => MinkVec3::E1,
            AxisType::Lightlike => MinkVec3::new(0.0, 1.0, 1.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AxisType::Timelike => "timelike",
            AxisType::Spacelike => "spacelike",
            AxisType::Lightlike => "lightlike",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "timelike" => Some(AxisType::Timelike),
            "spacelike" => Some(AxisType::Spacelike),
            "lightlike" => Some(AxisType::Lightlike),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn apply(&self, v: MinkVec3) -> MinkVec3 {
        let m = &self.0;
        MinkVec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Mat3(out)
    }
}

/// Rotation by `theta` about the axis of the given causal character:
/// circular for timelike, hyperbolic for spacelike, parabolic for lightlike.
pub fn rotation(axis: AxisType, theta: f64) -> Mat3 {
    match axis {
        AxisType::Timelike => {
            let (s, c) = theta.sin_cos();
            Mat3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
        }
        AxisType::Spacelike => {
            let (s, c) = (theta.sinh(), theta.cosh());
            Mat3([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, s, c]])
        }
        AxisType::Lightlike => {
            let t = theta;
            let h = 0.5 * t * t;
            Mat3([[1.0, t, -t], [-t, 1.0 - h, h], [-t, -h, 1.0 + h]])
        }
    }
}

/// The constant sign `η` of `⟨α',α'⟩` along a sampled curve, with tangents
/// taken by second-order finite differences in the sample index.
pub fn unit_tangent_character(points: &[MinkVec3]) -> Result<f64, MinkowskiError> {
    let n = points.len();
    if n < 3 {
        return Err(MinkowskiError::TooShort);
    }
    let tangent = |i: usize| -> MinkVec3 {
        if i == 0 {
            (points[0] * -3.0 + points[1] * 4.0 - points[2]) * 0.5
        } else if i == n - 1 {
            (points[n - 1] * 3.0 - points[n - 2] * 4.0 + points[n - 3]) * 0.5
        } else {
            (points[i + 1] - points[i - 1]) * 0.5
        }
    };
    let mut sign = 0.0;
    for i in 0..n {
        let t = tangent(i);
        let q = t.inner(t);
        let scale = t.euclid_norm().powi(2);
        if scale == 0.0 || q.abs() <= NULL_TOL * scale {
            return Err(MinkowskiError::MixedCausalCharacter { index: i });
        }
        let s = q.signum();
        if sign == 0.0 {
            sign = s;
        } else if s != sign {
            return Err(MinkowskiError::MixedCausalCharacter { index: i });
        }
    }
    Ok(sign)
}
