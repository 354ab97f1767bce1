//! Revolution surfaces sampled on an `(s, θ)` grid, and the finite-difference
//! round trip that recomputes their curvatures.

use std::f64::consts::PI;

use thiserror::Error;

use crate::curvature::{curvatures_from_forms, forms_at, CurvatureTriple};
use crate::expr::CurvatureProfile;
use crate::mean::{CurveMeta, Eta, PlanarCurve, Plane};
use crate::minkowski::{rotation, AxisType, MinkVec3};
use crate::numerics::{Grid, LocalInterpolant, NumericsError};

/// Finite-difference step used by the verifier.
pub const FD_STEP: f64 = 1e-4;

/// Pass threshold for `verify`.
pub const VERIFY_TOL: f64 = 1e-4;

/// Nodes on each side of the interpolation stencil (degree 6).
const STENCIL_HALF: usize = 3;

/// Discriminants above `−DISC_TOL` count as zero skew.
const DISC_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("a {axis} axis does not revolve curves in the {plane} plane")]
    IncompatiblePair { axis: &'static str, plane: Plane },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Causal character `ε = ⟨N,N⟩` of the surface swept by a curve with
/// character `η`: timelike (`+1`) for xy-plane curves about the spacelike
/// axis, `−η` otherwise.
pub fn expected_epsilon(plane: Plane, eta: Eta) -> f64 {
    match plane {
        Plane::Xy => 1.0,
        _ => -eta.value(),
    }
}

pub fn admissible_pair(axis: AxisType, plane: Plane) -> bool {
    matches!(
        (axis, plane),
        (AxisType::Timelike, Plane::Xz)
            | (AxisType::Spacelike, Plane::Xz)
            | (AxisType::Spacelike, Plane::Xy)
            | (AxisType::Lightlike, Plane::Yz)
    )
}

/// Default angle window: a full turn for the timelike axis, `[−2, 2]`
/// otherwise; 256 samples.
pub fn default_theta_grid(axis: AxisType) -> Grid {
    let m = 256;
    let grid = match axis {
        AxisType::Timelike => Grid::uniform(0.0, 2.0 * PI * (m - 1) as f64 / m as f64, m),
        _ => Grid::uniform(-2.0, 2.0, m),
    };
    grid.expect("static grid")
}

/// Image of a curve point under the rotation by `theta` about `axis`.
pub fn revolve(axis: AxisType, p: MinkVec3, theta: f64) -> MinkVec3 {
    rotation(axis, theta).apply(p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceGrid {
    pub axis: AxisType,
    pub plane: Plane,
    pub s_grid: Grid,
    pub theta_grid: Grid,
    /// `points[i][j]` is the image of curve node `i` at angle `j`.
    pub points: Vec<Vec<MinkVec3>>,
    pub epsilon: f64,
    pub meta: CurveMeta,
    pub curve: PlanarCurve,
}

pub fn build_surface(
    curve: &PlanarCurve,
    axis: AxisType,
    theta_grid: &Grid,
) -> Result<SurfaceGrid, SurfaceError> {
    if !admissible_pair(axis, curve.plane) {
        return Err(SurfaceError::IncompatiblePair {
            axis: axis.name(),
            plane: curve.plane,
        });
    }
    let points = curve
        .points
        .iter()
        .map(|&p| {
            theta_grid
                .points()
                .iter()
                .map(|&t| revolve(axis, p, t))
                .collect()
        })
        .collect();
    Ok(SurfaceGrid {
        axis,
        plane: curve.plane,
        s_grid: curve.grid.clone(),
        theta_grid: theta_grid.clone(),
        points,
        epsilon: expected_epsilon(curve.plane, curve.eta),
        meta: curve.meta.clone(),
        curve: curve.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Mean,
    Skew,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub which: Which,
    pub max_h_error: f64,
    /// Largest spread of `K` across the sampled angles at one node.
    pub max_k_residual: f64,
    pub max_s_error: f64,
    pub max_unit_speed_error: f64,
    pub nodes_checked: usize,
    pub flags: Vec<String>,
}

impl VerificationReport {
    /// The error compared against the prescribed profile.
    pub fn max_error(&self) -> f64 {
        match self.which {
            Which::Mean => self.max_h_error,
            Which::Skew => self.max_s_error,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_error() <= tol && self.nodes_checked > 0
    }
}

/// Curvatures recomputed at one curve node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeCurvature {
    pub s: f64,
    pub theta: f64,
    pub epsilon: f64,
    pub triple: CurvatureTriple,
}

/// Number of nodes skipped at each end of the parameter range.
pub fn boundary_margin(n: usize) -> usize {
    (n / 20).max(STENCIL_HALF)
}

/// Angles at which the verifier samples the surface.
pub fn check_angles(theta_grid: &Grid) -> [f64; 3] {
    let p = theta_grid.points();
    let m = p.len();
    [p[0], p[m / 3], p[2 * m / 3]]
}

/// Recomputes `H`, `K`, `S` at interior node `k` and angle `theta`, using a
/// degree-6 local interpolant of the curve so the finite-difference step can
/// be smaller than the grid step.
pub fn curvature_at_node(
    surface: &SurfaceGrid,
    k: usize,
    theta: f64,
) -> Result<NodeCurvature, crate::curvature::CurvatureError> {
    let curve = &surface.curve;
    let values: Vec<[f64; 3]> = curve.points.iter().map(|p| p.to_array()).collect();
    curvature_with_values(surface, &values, k, theta)
}

fn curvature_with_values(
    surface: &SurfaceGrid,
    values: &[[f64; 3]],
    k: usize,
    theta: f64,
) -> Result<NodeCurvature, crate::curvature::CurvatureError> {
    let grid = &surface.curve.grid;
    let interp = LocalInterpolant::new(grid, values, k, STENCIL_HALF);
    let axis = surface.axis;
    let eval = |u: f64, t: f64| revolve(axis, MinkVec3::from_array(interp.eval(u)), t);
    let s = grid.points()[k];
    let forms = forms_at(eval, s, theta, FD_STEP)?;
    Ok(NodeCurvature {
        s,
        theta,
        epsilon: forms.epsilon,
        triple: curvatures_from_forms(&forms)?,
    })
}

/// Recomputes the curvatures of `surface` on interior nodes and compares
/// `H` (mean) or `S` (skew) with the prescribed profile.
pub fn verify_roundtrip(
    surface: &SurfaceGrid,
    prescribed: &CurvatureProfile,
    which: Which,
) -> VerificationReport {
    let mut report = VerificationReport {
        which,
        max_h_error: 0.0,
        max_k_residual: 0.0,
        max_s_error: 0.0,
        max_unit_speed_error: 0.0,
        nodes_checked: 0,
        flags: Vec::new(),
    };
    let curve = &surface.curve;
    let n = curve.len();
    let margin = boundary_margin(n);
    if n <= 2 * margin {
        report
            .flags
            .push(format!("only {n} nodes, nothing to check"));
        return report;
    }
    if curve.meta.arc_length {
        match curve.unit_speed_error() {
            Ok(e) => report.max_unit_speed_error = e,
            Err(e) => report.flags.push(format!("unit speed: {e}")),
        }
    }
    let values: Vec<[f64; 3]> = curve.points.iter().map(|p| p.to_array()).collect();
    let angles = check_angles(&surface.theta_grid);
    let mut epsilon_mismatch = 0usize;
    let mut imaginary = 0usize;
    let mut failures = 0usize;
    for k in margin..n - margin {
        let s = curve.grid.points()[k];
        let target = match prescribed.eval(s) {
            Ok(v) => v,
            Err(e) => {
                report.flags.push(format!("profile at s = {s}: {e}"));
                report.max_h_error = f64::INFINITY;
                report.max_s_error = f64::INFINITY;
                continue;
            }
        };
        let (mut k_lo, mut k_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &theta in &angles {
            let node = match curvature_with_values(surface, &values, k, theta) {
                Ok(node) => node,
                Err(e) => {
                    if failures == 0 {
                        report.flags.push(format!("s = {s}, θ = {theta}: {e}"));
                    }
                    failures += 1;
                    report.max_h_error = f64::INFINITY;
                    report.max_s_error = f64::INFINITY;
                    continue;
                }
            };
            if node.epsilon != surface.epsilon {
                epsilon_mismatch += 1;
            }
            let t = node.triple;
            k_lo = k_lo.min(t.k);
            k_hi = k_hi.max(t.k);
            match which {
                Which::Mean => {
                    report.max_h_error = report.max_h_error.max((t.h - target).abs());
                }
                Which::Skew => {
                    let s_val = if t.discriminant >= -DISC_TOL {
                        t.discriminant.max(0.0).sqrt()
                    } else {
                        imaginary += 1;
                        f64::INFINITY
                    };
                    report.max_s_error = report.max_s_error.max((s_val - target).abs());
                }
            }
        }
        if k_hi >= k_lo {
            report.max_k_residual = report.max_k_residual.max(k_hi - k_lo);
        }
        report.nodes_checked += 1;
    }
    if epsilon_mismatch > 0 {
        report.flags.push(format!(
            "surface character differs from expected ε = {} at {epsilon_mismatch} samples",
            surface.epsilon
        ));
    }
    if imaginary > 0 {
        report
            .flags
            .push(format!("H² − εK < 0 at {imaginary} samples"));
    }
    if failures > 1 {
        report.flags.push(format!("{failures} samples failed"));
    }
    report
}
