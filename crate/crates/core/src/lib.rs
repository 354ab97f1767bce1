//! Generating curves for rotational surfaces in Minkowski 3-space from a given
//! mean or skew curvature profile.
//!
//! The solvers in [`mean`] and [`skew`] turn a curvature profile into a
//! generating curve; [`surface`] revolves it and recomputes the curvatures by
//! finite differences as an independent check.
//!
//! ```
//! use revsurf::{
//!     build_surface, default_theta_grid, solve_mean, verify_roundtrip, AxisType,
//!     CurvatureProfile, Eta, MeanSolveRequest, Plane, Which,
//! };
//!
//! let req = MeanSolveRequest {
//!     profile: CurvatureProfile::parse("0.5", "s").unwrap(),
//!     axis: AxisType::Timelike,
//!     plane: Plane::Xz,
//!     eta: Eta::Plus,
//!     constants: vec![2.0, 1.0, 0.0],
//!     s_range: (0.0, 1.0),
//!     n: 2001,
//! };
//! let curve = solve_mean(&req).unwrap();
//! let surface = build_surface(&curve, req.axis, &default_theta_grid(req.axis)).unwrap();
//! let report = verify_roundtrip(&surface, &req.profile, Which::Mean);
//! assert!(report.max_h_error < 1e-5);
//! ```

// `!(x > 0.0)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curvature;
pub mod export;
pub mod expr;
pub mod lorentz;
pub mod mean;
pub mod minkowski;
pub mod numerics;
pub mod skew;
pub mod surface;

use thiserror::Error;

pub use curvature::{
    curvatures_from_forms, euler_normal_curvature, forms_at, principal_curvatures,
    spacelike_moments, timelike_gaussian_moments, CurvatureError, CurvatureTriple,
    FundamentalForms, PrincipalData,
};
pub use export::{export_curve_csv, export_mesh_obj, import_curve_csv, ExportError};
pub use expr::{CurvatureProfile, EvalError, ParseError};
pub use lorentz::{solve_linear_ode, CausalClass, LorentzError, LorentzNumber, ELL};
pub use mean::{
    aux_fg_curvature_check, solve_mean, AuxKind, CurveMeta, Eta, MeanError, MeanSolveRequest,
    PlanarCurve, Plane,
};
pub use minkowski::{rotation, AxisType, Mat3, MinkVec3, MinkowskiError};
pub use numerics::{Grid, NumericsError, SampledFunction};
pub use skew::{
    build_a_profile, detect_cylinder, reconstruct_graph, solve_skew, GraphVar, Sign, SkewError,
    SkewFamily, SkewSolveRequest,
};
pub use surface::{
    build_surface, default_theta_grid, verify_roundtrip, SurfaceError, SurfaceGrid,
    VerificationReport, Which,
};

/// Any failure raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
    #[error(transparent)]
    Minkowski(#[from] MinkowskiError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Mean(#[from] MeanError),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Export(#[from] ExportError),
}

impl Error {
    /// Whether the failure is a radicand leaving its admissible domain.
    pub fn is_domain_violation(&self) -> bool {
        matches!(
            self,
            Error::Mean(MeanError::DomainViolation { .. })
                | Error::Skew(
                    SkewError::DomainViolation { .. } | SkewError::SingularRadicand { .. }
                )
        )
    }
}
