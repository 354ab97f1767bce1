//! Generating graphs of revolution surfaces with prescribed skew curvature.
//!
//! With `v` the distance to the axis and `A(v) = a0 ± 2∫S(v)/v dv`, the
//! coordinate along the axis satisfies `F′ = ± vA/√R` where
//!
//! * timelike axis, xz plane: curve `(v, 0, F)`, `R = η + v²A²`
//! * spacelike axis, xz plane: curve `(F, 0, v)`, `R = −η + v²A²`
//! * spacelike axis, xy plane: curve `(F, v, 0)`, `R = 1 − v²A²`
//!
//! The second graph orientation treats the axial coordinate as independent.
//! It describes the same curves with the sign in `A` multiplied by `η`, so it
//! is returned as the inverse graph on the same radial grid.

use std::fmt;

use thiserror::Error;

use crate::expr::{CurvatureProfile, EvalError};
use crate::mean::{CurveMeta, Eta, PlanarCurve, Plane};
use crate::minkowski::{AxisType, MinkVec3};
use crate::numerics::{
    cumulative_integral, fd_derivative, DerivativeOrder, Grid, NumericsError, SampledFunction,
};

/// Smallest admissible distance to the axis.
pub const MIN_RADIUS: f64 = 1e-3;

pub const RADICAND_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SkewError {
    #[error("range starts at {lo}, closer than {MIN_RADIUS} to the axis")]
    SingularAxis { lo: f64 },
    #[error("radicand {value:e} is negative at node {index}")]
    DomainViolation { index: usize, value: f64 },
    #[error("radicand {value:e} vanishes at node {index}")]
    SingularRadicand { index: usize, value: f64 },
    #[error("curve causal character disagrees with eta at node {index}")]
    EtaMismatch { index: usize },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SkewFamily {
    TimelikeAxisXz,
    SpacelikeAxisXz,
    SpacelikeAxisXy,
}

impl SkewFamily {
    pub const ALL: [SkewFamily; 3] = [
        SkewFamily::TimelikeAxisXz,
        SkewFamily::SpacelikeAxisXz,
        SkewFamily::SpacelikeAxisXy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SkewFamily::TimelikeAxisXz => "t-xz",
            SkewFamily::SpacelikeAxisXz => "s-xz",
            SkewFamily::SpacelikeAxisXy => "s-xy",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn axis(self) -> AxisType {
        match self {
            SkewFamily::TimelikeAxisXz => AxisType::Timelike,
            _ => AxisType::Spacelike,
        }
    }

    pub fn plane(self) -> Plane {
        match self {
            SkewFamily::SpacelikeAxisXy => Plane::Xy,
            _ => Plane::Xz,
        }
    }
}

impl fmt::Display for SkewFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GraphVar {
    /// radial coordinate independent
    First,
    /// axial coordinate independent
    Second,
}

impl GraphVar {
    pub fn index(self) -> u8 {
        match self {
            GraphVar::First => 1,
            GraphVar::Second => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "+" | "+1" | "1" => Some(Sign::Plus),
            "-" | "-1" => Some(Sign::Minus),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SkewSolveRequest {
    pub profile: CurvatureProfile,
    pub family: SkewFamily,
    pub graph_var: GraphVar,
    /// Ignored for the xy family, whose curves are spacelike.
    pub eta: Eta,
    /// sign in front of the integral defining `A`
    pub sign: Sign,
    /// sign in front of the integral for the axial coordinate
    pub outer_sign: Sign,
    pub a0: f64,
    pub offset0: f64,
    pub u_range: (f64, f64),
    pub n: usize,
}

impl SkewSolveRequest {
    pub fn effective_eta(&self) -> f64 {
        match self.family {
            SkewFamily::SpacelikeAxisXy => 1.0,
            _ => self.eta.value(),
        }
    }

    pub fn case_tag(&self) -> String {
        format!("skew-{}-g{}", self.family.name(), self.graph_var.index())
    }

    fn grid(&self) -> Result<Grid, SkewError> {
        let lo = self.u_range.0.min(self.u_range.1);
        if !(lo >= MIN_RADIUS) {
            return Err(SkewError::SingularAxis { lo });
        }
        Ok(Grid::uniform(self.u_range.0, self.u_range.1, self.n)?)
    }
}

/// `A(u) = a0 + σ·2∫S(v)/v dv` from the left end of the range, where `σ` is
/// the requested sign (times `η` in the second orientation of the xz
/// families).
pub fn build_a_profile(req: &SkewSolveRequest) -> Result<SampledFunction, SkewError> {
    let grid = req.grid()?;
    let mut sigma = req.sign.value();
    if req.graph_var == GraphVar::Second && req.family != SkewFamily::SpacelikeAxisXy {
        sigma *= req.eta.value();
    }
    let integrand =
        SampledFunction::try_from_fn(&grid, |v| req.profile.eval(v).map(|s| 2.0 * sigma * s / v))?;
    let mut a = cumulative_integral(&integrand)?;
    for v in &mut a.values {
        *v += req.a0;
    }
    Ok(a)
}

/// Integrates the axial coordinate from `A` and assembles the planar curve.
pub fn reconstruct_graph(
    req: &SkewSolveRequest,
    a: &SampledFunction,
) -> Result<PlanarCurve, SkewError> {
    let grid = a.grid.clone();
    let eta = req.effective_eta();
    let outer = req.outer_sign.value();
    let mut slope = Vec::with_capacity(grid.len());
    for (index, (&v, &av)) in grid.points().iter().zip(&a.values).enumerate() {
        let w = v * v * av * av;
        let (value, scale) = match req.family {
            SkewFamily::TimelikeAxisXz => (eta + w, 1.0 + w),
            SkewFamily::SpacelikeAxisXz => (-eta + w, 1.0 + w),
            SkewFamily::SpacelikeAxisXy => (1.0 - w, 1.0 + w),
        };
        if !value.is_finite() || value < -RADICAND_TOL * scale {
            return Err(SkewError::DomainViolation { index, value });
        }
        if value <= RADICAND_TOL * scale {
            return Err(SkewError::SingularRadicand { index, value });
        }
        slope.push(outer * v * av / value.sqrt());
    }
    let axial = cumulative_integral(&SampledFunction::new(grid.clone(), slope.clone())?)?;
    let axial: Vec<f64> = axial.values.iter().map(|f| f + req.offset0).collect();

    let assemble = |v: f64, f: f64| match req.family {
        SkewFamily::TimelikeAxisXz => MinkVec3::new(v, 0.0, f),
        SkewFamily::SpacelikeAxisXz => MinkVec3::new(f, 0.0, v),
        SkewFamily::SpacelikeAxisXy => MinkVec3::new(f, v, 0.0),
    };
    let points: Vec<_> = grid
        .points()
        .iter()
        .zip(&axial)
        .map(|(&v, &f)| assemble(v, f))
        .collect();
    let tangents: Vec<_> = slope.iter().map(|&d| assemble(1.0, d)).collect();

    for (index, t) in tangents.iter().enumerate() {
        if t.inner(*t).signum() != eta {
            return Err(SkewError::EtaMismatch { index });
        }
    }

    let mut notes = Vec::new();
    if req.family == SkewFamily::SpacelikeAxisXy && req.eta != Eta::Plus {
        notes.push("eta ignored: xy-plane curves are spacelike".to_string());
    }
    Ok(PlanarCurve {
        grid,
        points,
        plane: req.family.plane(),
        eta: Eta::from_sign(eta).expect("eta is ±1"),
        meta: CurveMeta {
            axis: req.family.axis(),
            case: req.case_tag(),
            constants: vec![req.a0, req.offset0],
            arc_length: false,
            notes,
        },
        tangents: Some(tangents),
    })
}

pub fn solve_skew(req: &SkewSolveRequest) -> Result<PlanarCurve, SkewError> {
    let a = build_a_profile(req)?;
    reconstruct_graph(req, &a)
}

/// Whether the sampled dependent coordinate is constant, i.e. the surface
/// is a cylinder about the axis.
pub fn detect_cylinder(curve_samples: &SampledFunction) -> bool {
    match fd_derivative(curve_samples, DerivativeOrder::First) {
        Ok(d) => d.values.iter().all(|v| v.abs() <= 1e-10),
        Err(_) => false,
    }
}
