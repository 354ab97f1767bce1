//! Fundamental forms and curvatures of surfaces in E³₁, plus the Euler
//! normal-curvature formulas and the moments of the normal curvature.
//!
//! Conventions: `ε = ⟨N,N⟩` (−1 spacelike, +1 timelike surface),
//! `K = ε·det II / det I`, `H = (ε/2)·tr(I⁻¹ II)`, `S = √(H² − εK)`.
//! With these definitions `H = ε(κ₁+κ₂)/2` and `S = |κ₁−κ₂|/2`, where the
//! `κᵢ` are the eigenvalues of `I⁻¹ II`.

use std::f64::consts::{PI, SQRT_2};

use thiserror::Error;

use crate::minkowski::MinkVec3;
use crate::numerics::{integrate, Grid, SampledFunction};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurvatureError {
    #[error("tangent plane is lightlike (|⟨c,c⟩| = {0:e})")]
    LightlikeTangentPlane(f64),
    #[error("degenerate first fundamental form")]
    DegenerateMetric,
    #[error("shape operator is not diagonalizable (H² − εK = {0:e})")]
    NonDiagonalizable(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub h11: f64,
    pub h12: f64,
    pub h22: f64,
    pub epsilon: f64,
}

impl FundamentalForms {
    pub fn det_g(&self) -> f64 {
        self.g11 * self.g22 - self.g12 * self.g12
    }

    pub fn det_h(&self) -> f64 {
        self.h11 * self.h22 - self.h12 * self.h12
    }

    /// `I⁻¹ II` as a row-major 2×2 matrix.
    pub fn shape_matrix(&self) -> Result<[[f64; 2]; 2], CurvatureError> {
        let det = self.det_g();
        if det == 0.0 || !det.is_finite() {
            return Err(CurvatureError::DegenerateMetric);
        }
        let (a, b, d) = (self.g22 / det, -self.g12 / det, self.g11 / det);
        Ok([
            [a * self.h11 + b * self.h12, a * self.h12 + b * self.h22],
            [b * self.h11 + d * self.h12, b * self.h12 + d * self.h22],
        ])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureTriple {
    pub h: f64,
    pub k: f64,
    /// NaN when `discriminant < 0`; see [`CurvatureTriple::imaginary_skew`].
    pub s: f64,
    /// `H² − εK`
    pub discriminant: f64,
}

impl CurvatureTriple {
    pub fn imaginary_skew(&self) -> bool {
        self.discriminant < 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalData {
    pub kappa1: f64,
    pub kappa2: f64,
    pub spacelike_eigendirection_first: bool,
}

/// Fundamental forms of a parametric surface at `(u, θ)` by central
/// differences with step `h` in both parameters.
///
/// The unit normal is `Xu × Xθ / √|⟨Xu × Xθ, Xu × Xθ⟩|`.
pub fn forms_at(
    surface: impl Fn(f64, f64) -> MinkVec3,
    u: f64,
    theta: f64,
    h: f64,
) -> Result<FundamentalForms, CurvatureError> {
    if !(h > 0.0) {
        return Err(CurvatureError::InvalidParameter(format!("step {h}")));
    }
    let x = surface(u, theta);
    let up = surface(u + h, theta);
    let um = surface(u - h, theta);
    let tp = surface(u, theta + h);
    let tm = surface(u, theta - h);
    let pp = surface(u + h, theta + h);
    let pm = surface(u + h, theta - h);
    let mp = surface(u - h, theta + h);
    let mm = surface(u - h, theta - h);

    let xu = (up - um) * (0.5 / h);
    let xt = (tp - tm) * (0.5 / h);
    let xuu = (up - x * 2.0 + um) * (1.0 / (h * h));
    let xtt = (tp - x * 2.0 + tm) * (1.0 / (h * h));
    let xut = (pp - pm - mp + mm) * (0.25 / (h * h));

    let c = xu.cross(xt);
    let cc = c.inner(c);
    let scale = (xu.euclid_norm() * xt.euclid_norm()).powi(2);
    if !(cc.abs() >= 1e-12 * scale) || scale == 0.0 {
        return Err(CurvatureError::LightlikeTangentPlane(cc));
    }
    let n = c * (1.0 / cc.abs().sqrt());
    Ok(FundamentalForms {
        g11: xu.inner(xu),
        g12: xu.inner(xt),
        g22: xt.inner(xt),
        h11: xuu.inner(n),
        h12: xut.inner(n),
        h22: xtt.inner(n),
        epsilon: cc.signum(),
    })
}

pub fn curvatures_from_forms(f: &FundamentalForms) -> Result<CurvatureTriple, CurvatureError> {
    let det = f.det_g();
    if det == 0.0 || !det.is_finite() {
        return Err(CurvatureError::DegenerateMetric);
    }
    let k = f.epsilon * f.det_h() / det;
    let h = 0.5 * f.epsilon * (f.g11 * f.h22 - 2.0 * f.g12 * f.h12 + f.g22 * f.h11) / det;
    // H² − εK = (tr M / 2)² − det M, rewritten without the cancellation
    let m = f.shape_matrix()?;
    let discriminant = (0.5 * (m[0][0] - m[1][1])).powi(2) + m[0][1] * m[1][0];
    let s = if discriminant >= 0.0 {
        discriminant.sqrt()
    } else {
        f64::NAN
    };
    Ok(CurvatureTriple {
        h,
        k,
        s,
        discriminant,
    })
}

/// Eigenvalues of `I⁻¹ II`. Diagonal forms keep the coordinate order
/// (`κ₁ = h₁₁/g₁₁`, `κ₂ = h₂₂/g₂₂`); otherwise `κ₁ ≥ κ₂`.
pub fn principal_curvatures(f: &FundamentalForms) -> Result<PrincipalData, CurvatureError> {
    let m = f.shape_matrix()?;
    if f.g12 == 0.0 && f.h12 == 0.0 {
        return Ok(PrincipalData {
            kappa1: m[0][0],
            kappa2: m[1][1],
            spacelike_eigendirection_first: f.g11 > 0.0,
        });
    }
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let quarter_disc = 0.25 * tr * tr - det;
    let scale = (0.25 * tr * tr).max(det.abs()).max(1.0);
    if quarter_disc < -1e-12 * scale {
        return Err(CurvatureError::NonDiagonalizable(quarter_disc));
    }
    let root = quarter_disc.max(0.0).sqrt();
    let (k1, k2) = (0.5 * tr + root, 0.5 * tr - root);
    let v = if m[0][1] != 0.0 {
        [m[0][1], k1 - m[0][0]]
    } else if m[1][0] != 0.0 {
        [k1 - m[1][1], m[1][0]]
    } else if (k1 - m[0][0]).abs() <= (k1 - m[1][1]).abs() {
        [1.0, 0.0]
    } else {
        [0.0, 1.0]
    };
    let norm = f.g11 * v[0] * v[0] + 2.0 * f.g12 * v[0] * v[1] + f.g22 * v[1] * v[1];
    Ok(PrincipalData {
        kappa1: k1,
        kappa2: k2,
        spacelike_eigendirection_first: norm > 0.0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceClass {
    Spacelike,
    Timelike,
}

/// Which unit hyperbola a tangent direction of a timelike surface lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitBranch {
    UnitSpacelike,
    UnitTimelike,
}

/// Euler's formula for the normal curvature in the direction at angle
/// (or hyperbolic angle) `phi` from the first principal direction.
pub fn euler_normal_curvature(
    pd: &PrincipalData,
    class: SurfaceClass,
    phi: f64,
    branch: UnitBranch,
) -> f64 {
    let (k1, k2) = (pd.kappa1, pd.kappa2);
    match (class, branch) {
        (SurfaceClass::Spacelike, _) => phi.cos().powi(2) * k1 + phi.sin().powi(2) * k2,
        (SurfaceClass::Timelike, UnitBranch::UnitSpacelike) => {
            phi.cosh().powi(2) * k1 - phi.sinh().powi(2) * k2
        }
        (SurfaceClass::Timelike, UnitBranch::UnitTimelike) => {
            phi.sinh().powi(2) * k1 - phi.cosh().powi(2) * k2
        }
    }
}

/// Mean and standard deviation of `κn(φ)` under the uniform density on the
/// circle, by the periodic trapezoid rule on `nodes` points.
pub fn spacelike_moments(pd: &PrincipalData, nodes: usize) -> (f64, f64) {
    let n = nodes.max(8);
    let kn = |i: usize| {
        let phi = 2.0 * PI * i as f64 / n as f64;
        euler_normal_curvature(pd, SurfaceClass::Spacelike, phi, UnitBranch::UnitSpacelike)
    };
    let mu = (0..n).map(kn).sum::<f64>() / n as f64;
    let var = (0..n).map(|i| (kn(i) - mu).powi(2)).sum::<f64>() / n as f64;
    (mu, var.sqrt())
}

/// Closed forms the quadrature in [`spacelike_moments`] must reproduce.
pub fn spacelike_moments_closed(pd: &PrincipalData) -> (f64, f64) {
    let d = pd.kappa1 - pd.kappa2;
    (0.5 * (pd.kappa1 + pd.kappa2), (d * d / 8.0).sqrt())
}

/// Mean and skew curvature read off the normal-curvature statistics:
/// `H = ε μ`, `S = 2√2 σ`.
pub fn statistical_curvatures(epsilon: f64, mu: f64, sigma: f64) -> (f64, f64) {
    (epsilon * mu, 2.0 * SQRT_2 * sigma)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMoments {
    /// `⟨κn⟩_a` by quadrature
    pub mean_a: f64,
    /// `⟨(κn − ⟨κn⟩_a)²⟩_a` by quadrature
    pub var_a: f64,
    /// `κ₁(e^{2a²}+1)/2 − κ₂(e^{2a²}−1)/2`
    pub mean_closed: f64,
    /// Limit of `mean_closed` as `a → 0` (equals `κ₁`).
    pub limit_a_to_zero: f64,
    /// `(κ₁+κ₂)/2`, the value that limit is often quoted as.
    pub half_sum: f64,
}

/// Normal-curvature moments of a timelike surface along the
/// `(cosh φ, sinh φ)` branch, weighted by a centred Gaussian of width `a`.
pub fn timelike_gaussian_moments(
    pd: &PrincipalData,
    a: f64,
) -> Result<GaussianMoments, CurvatureError> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(CurvatureError::InvalidParameter(format!(
            "gaussian width must be positive, got {a}"
        )));
    }
    // ±8a leaves e^{-32} of the mass outside
    let grid = Grid::uniform(-8.0 * a, 8.0 * a, 4001).expect("valid grid");
    let norm = 1.0 / (2.0 * PI * a * a).sqrt();
    let weight = |phi: f64| (-phi * phi / (2.0 * a * a)).exp() * norm;
    let kn = |phi: f64| {
        euler_normal_curvature(pd, SurfaceClass::Timelike, phi, UnitBranch::UnitSpacelike)
    };
    let quad = |f: &dyn Fn(f64) -> f64| {
        integrate(&SampledFunction::from_fn(&grid, f)).expect("uniform grid")
    };
    let mean_a = quad(&|phi| kn(phi) * weight(phi));
    let var_a = quad(&|phi| (kn(phi) - mean_a).powi(2) * weight(phi));
    let e = (2.0 * a * a).exp();
    Ok(GaussianMoments {
        mean_a,
        var_a,
        mean_closed: pd.kappa1 * (e + 1.0) / 2.0 - pd.kappa2 * (e - 1.0) / 2.0,
        limit_a_to_zero: pd.kappa1,
        half_sum: 0.5 * (pd.kappa1 + pd.kappa2),
    })
}
