//! Generating curves of revolution surfaces with prescribed mean curvature.
//!
//! Four cases, keyed by the rotation axis and the plane of the curve:
//!
//! | case                 | axis      | plane | constants          |
//! |----------------------|-----------|-------|--------------------|
//! | [`MeanCase::TimelikeAxis`]    | timelike  | xz | `a1, a2, a3`  |
//! | [`MeanCase::SpacelikeAxisXz`] | spacelike | xz | `b1, b2, b3`  |
//! | [`MeanCase::SpacelikeAxisXy`] | spacelike | xy | `c1, c2, c3`  |
//! | [`MeanCase::LightlikeAxis`]   | lightlike | yz | `a0, a1, b0, b1` |
//!
//! All integrals start at the left end of the parameter range; the constants
//! are initial data there. Curves are parameterized by arc length.

use std::fmt;

use thiserror::Error;

use crate::expr::{CurvatureProfile, EvalError};
use crate::lorentz::{solve_linear_ode, LorentzError, LorentzNumber, ELL};
use crate::minkowski::{AxisType, MinkVec3};
use crate::numerics::{
    cumulative_integral, fd_derivative, nested_exponential_integral, DerivativeOrder, ExpKind,
    Grid, NestedIntegralError, NumericsError, OuterIntegral, SampledFunction,
};

/// Relative threshold for a radicand to count as non-positive.
pub const RADICAND_TOL: f64 = 1e-12;

/// Tolerance on the lightlike compatibility `a0·b0 = 2η`.
pub const COMPAT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeanError {
    #[error("radicand {value:e} is not positive at node {index}")]
    DomainViolation { index: usize, value: f64 },
    #[error("inadmissible constants: {0}")]
    ConstantViolation(String),
    #[error("expected {expected} constants, got {got}")]
    ConstantCount { expected: usize, got: usize },
    #[error("no solver for a {axis} axis with a curve in the {plane} plane")]
    IncompatiblePair { axis: &'static str, plane: Plane },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
}

impl From<NestedIntegralError> for MeanError {
    fn from(e: NestedIntegralError) -> Self {
        match e {
            NestedIntegralError::Eval(e) => MeanError::Eval(e),
            NestedIntegralError::Numerics(e) => MeanError::Numerics(e),
        }
    }
}

/// Coordinate plane holding a generating curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Plane {
    Xz,
    Xy,
    Yz,
}

impl Plane {
    pub fn name(self) -> &'static str {
        match self {
            Plane::Xz => "xz",
            Plane::Xy => "xy",
            Plane::Yz => "yz",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "xz" => Some(Plane::Xz),
            "xy" => Some(Plane::Xy),
            "yz" => Some(Plane::Yz),
            _ => None,
        }
    }

    /// Whether `p` has a zero out-of-plane coordinate.
    pub fn contains(self, p: MinkVec3) -> bool {
        match self {
            Plane::Xz => p.y == 0.0,
            Plane::Xy => p.z == 0.0,
            Plane::Yz => p.x == 0.0,
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Causal character `η = ⟨α′,α′⟩` of a unit-speed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Eta {
    Plus,
    Minus,
}

impl Eta {
    pub fn value(self) -> f64 {
        match self {
            Eta::Plus => 1.0,
            Eta::Minus => -1.0,
        }
    }

    pub fn from_sign(v: f64) -> Option<Self> {
        if v == 1.0 {
            Some(Eta::Plus)
        } else if v == -1.0 {
            Some(Eta::Minus)
        } else {
            None
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Some(Eta::Plus),
            "-1" | "-" => Some(Eta::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Eta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eta::Plus => "+1",
            Eta::Minus => "-1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeanCase {
    TimelikeAxis,
    SpacelikeAxisXz,
    SpacelikeAxisXy,
    LightlikeAxis,
}

impl MeanCase {
    pub fn from_pair(axis: AxisType, plane: Plane) -> Result<Self, MeanError> {
        match (axis, plane) {
            (AxisType::Timelike, Plane::Xz) => Ok(MeanCase::TimelikeAxis),
            (AxisType::Spacelike, Plane::Xz) => Ok(MeanCase::SpacelikeAxisXz),
            (AxisType::Spacelike, Plane::Xy) => Ok(MeanCase::SpacelikeAxisXy),
            (AxisType::Lightlike, Plane::Yz) => Ok(MeanCase::LightlikeAxis),
            _ => Err(MeanError::IncompatiblePair {
                axis: axis.name(),
                plane,
            }),
        }
    }

    pub fn axis(self) -> AxisType {
        match self {
            MeanCase::TimelikeAxis => AxisType::Timelike,
            MeanCase::SpacelikeAxisXz | MeanCase::SpacelikeAxisXy => AxisType::Spacelike,
            MeanCase::LightlikeAxis => AxisType::Lightlike,
        }
    }

    pub fn plane(self) -> Plane {
        match self {
            MeanCase::TimelikeAxis | MeanCase::SpacelikeAxisXz => Plane::Xz,
            MeanCase::SpacelikeAxisXy => Plane::Xy,
            MeanCase::LightlikeAxis => Plane::Yz,
        }
    }

    pub fn constant_count(self) -> usize {
        match self {
            MeanCase::LightlikeAxis => 4,
            _ => 3,
        }
    }

    /// Tag written to curve files.
    pub fn tag(self) -> &'static str {
        match self {
            MeanCase::TimelikeAxis => "thm2.1",
            MeanCase::SpacelikeAxisXz => "thm2.2",
            MeanCase::SpacelikeAxisXy => "thm2.3",
            MeanCase::LightlikeAxis => "lightlike",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MeanSolveRequest {
    pub profile: CurvatureProfile,
    pub axis: AxisType,
    pub plane: Plane,
    /// Ignored for the xy plane, where the curve is always spacelike.
    pub eta: Eta,
    pub constants: Vec<f64>,
    pub s_range: (f64, f64),
    pub n: usize,
}

impl MeanSolveRequest {
    pub fn case(&self) -> Result<MeanCase, MeanError> {
        MeanCase::from_pair(self.axis, self.plane)
    }

    pub fn grid(&self) -> Result<Grid, MeanError> {
        Ok(Grid::uniform(self.s_range.0, self.s_range.1, self.n)?)
    }

    fn constants<const N: usize>(&self) -> Result<[f64; N], MeanError> {
        <[f64; N]>::try_from(self.constants.as_slice()).map_err(|_| MeanError::ConstantCount {
            expected: N,
            got: self.constants.len(),
        })
    }
}

/// Provenance carried alongside a curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveMeta {
    pub axis: AxisType,
    pub case: String,
    pub constants: Vec<f64>,
    /// Whether the grid parameter is arc length.
    pub arc_length: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarCurve {
    pub grid: Grid,
    pub points: Vec<MinkVec3>,
    pub plane: Plane,
    pub eta: Eta,
    pub meta: CurveMeta,
    /// Exact derivative with respect to the grid parameter, when the solver
    /// has it in closed form.
    pub tangents: Option<Vec<MinkVec3>>,
}

impl PlanarCurve {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Coordinate `i` (0 = x, 1 = y, 2 = z) as a sampled function.
    pub fn component(&self, i: usize) -> SampledFunction<f64> {
        let values = self.points.iter().map(|p| p.to_array()[i]).collect();
        SampledFunction {
            grid: self.grid.clone(),
            values,
        }
    }

    /// Largest `| |⟨α′,α′⟩| − 1 |` with `α′` from finite differences.
    pub fn unit_speed_error(&self) -> Result<f64, NumericsError> {
        let d: Vec<_> = (0..3)
            .map(|i| fd_derivative(&self.component(i), DerivativeOrder::First))
            .collect::<Result<_, _>>()?;
        Ok((0..self.len())
            .map(|k| {
                let t = MinkVec3::new(d[0].values[k], d[1].values[k], d[2].values[k]);
                (t.inner(t).abs() - 1.0).abs()
            })
            .fold(0.0, f64::max))
    }
}

fn check_radicand(values: &[f64], scales: &[f64]) -> Result<(), MeanError> {
    for (index, (&value, &scale)) in values.iter().zip(scales).enumerate() {
        if !(value > RADICAND_TOL * scale.max(1.0)) {
            return Err(MeanError::DomainViolation { index, value });
        }
    }
    Ok(())
}

fn meta(case: MeanCase, constants: &[f64]) -> CurveMeta {
    CurveMeta {
        axis: case.axis(),
        case: case.tag().to_string(),
        constants: constants.to_vec(),
        arc_length: true,
        notes: Vec::new(),
    }
}

/// Three sampled functions on a common grid.
type Sampled3 = (Vec<f64>, Vec<f64>, Vec<f64>);

/// `(I, f, g)` with `I = ∫H`, `f = ∫sinh 2ηI`, `g = ∫cosh 2ηI`.
fn hyperbolic_pair(
    profile: &CurvatureProfile,
    eta: f64,
    grid: &Grid,
) -> Result<Sampled3, MeanError> {
    let nested = nested_exponential_integral(profile, eta, ExpKind::Lorentz, grid)?;
    let OuterIntegral::Lorentz(outer) = nested.outer else {
        unreachable!("requested the Lorentz kind")
    };
    let f = outer.values.iter().map(|w| eta * w.hyp).collect();
    let g = outer.values.iter().map(|w| eta * w.re).collect();
    Ok((nested.inner.values, f, g))
}

/// `(I, F, G)` with `F = ∫sin 2I`, `G = ∫cos 2I`.
fn circular_pair(profile: &CurvatureProfile, grid: &Grid) -> Result<Sampled3, MeanError> {
    let nested = nested_exponential_integral(profile, 1.0, ExpKind::Complex, grid)?;
    let OuterIntegral::Complex(outer) = nested.outer else {
        unreachable!("requested the complex kind")
    };
    let f = outer.values.iter().map(|w| -w.im).collect();
    let g = outer.values.iter().map(|w| w.re).collect();
    Ok((nested.inner.values, f, g))
}

fn running(grid: &Grid, values: Vec<f64>, start: f64) -> Result<Vec<f64>, MeanError> {
    let c = cumulative_integral(&SampledFunction::new(grid.clone(), values)?)?;
    Ok(c.values.into_iter().map(|v| v + start).collect())
}

/// Timelike axis, curve `(x, 0, z)` in the xz plane.
///
/// `x = √(η[(g+ηa1)² − (f+ηa2)²])`, `z′ = η(g′(f+ηa2) − f′(g+ηa1))/x`,
/// `z(s₀) = a3`.
pub fn solve_mean_timelike_axis(req: &MeanSolveRequest) -> Result<PlanarCurve, MeanError> {
    let case = req.case()?;
    if case != MeanCase::TimelikeAxis {
        return Err(MeanError::IncompatiblePair {
            axis: req.axis.name(),
            plane: req.plane,
        });
    }
    let [a1, a2, a3] = req.constants::<3>()?;
    let eta = req.eta.value();
    if !(eta * (a1 * a1 - a2 * a2) > 0.0) {
        return Err(MeanError::ConstantViolation(format!(
            "need η(a1² − a2²) > 0, got η = {eta}, a1 = {a1}, a2 = {a2}"
        )));
    }
    let grid = req.grid()?;
    let (i, f, g) = hyperbolic_pair(&req.profile, eta, &grid)?;
    let p: Vec<f64> = g.iter().map(|g| g + eta * a1).collect();
    let q: Vec<f64> = f.iter().map(|f| f + eta * a2).collect();
    let rad: Vec<f64> = p
        .iter()
        .zip(&q)
        .map(|(p, q)| eta * (p * p - q * q))
        .collect();
    let scales: Vec<f64> = p.iter().zip(&q).map(|(p, q)| p * p + q * q).collect();
    check_radicand(&rad, &scales)?;
    let x: Vec<f64> = rad.iter().map(|r| r.sqrt()).collect();

    let mut dx = Vec::with_capacity(x.len());
    let mut dz = Vec::with_capacity(x.len());
    for k in 0..x.len() {
        let (fp, gp) = ((2.0 * eta * i[k]).sinh(), (2.0 * eta * i[k]).cosh());
        dx.push(eta * (p[k] * gp - q[k] * fp) / x[k]);
        dz.push(eta * (gp * q[k] - fp * p[k]) / x[k]);
    }
    let z = running(&grid, dz.clone(), a3)?;
    Ok(PlanarCurve {
        points: x
            .iter()
            .zip(&z)
            .map(|(&x, &z)| MinkVec3::new(x, 0.0, z))
            .collect(),
        tangents: Some(
            dx.iter()
                .zip(&dz)
                .map(|(&a, &b)| MinkVec3::new(a, 0.0, b))
                .collect(),
        ),
        grid,
        plane: Plane::Xz,
        eta: req.eta,
        meta: meta(case, &req.constants),
    })
}

/// Spacelike axis, curve `(x, 0, z)` in the xz plane.
///
/// `z = √(η[(f−ηb1)² − (g−ηb2)²])`, `x′ = −η(g′(f−ηb1) − f′(g−ηb2))/z`,
/// `x(s₀) = b3`.
pub fn solve_mean_spacelike_axis_tl_plane(
    req: &MeanSolveRequest,
) -> Result<PlanarCurve, MeanError> {
    let case = req.case()?;
    if case != MeanCase::SpacelikeAxisXz {
        return Err(MeanError::IncompatiblePair {
            axis: req.axis.name(),
            plane: req.plane,
        });
    }
    let [b1, b2, b3] = req.constants::<3>()?;
    let eta = req.eta.value();
    if !(eta * (b1 * b1 - b2 * b2) > 0.0) {
        return Err(MeanError::ConstantViolation(format!(
            "need η(b1² − b2²) > 0, got η = {eta}, b1 = {b1}, b2 = {b2}"
        )));
    }
    let grid = req.grid()?;
    let (i, f, g) = hyperbolic_pair(&req.profile, eta, &grid)?;
    let p: Vec<f64> = f.iter().map(|f| f - eta * b1).collect();
    let q: Vec<f64> = g.iter().map(|g| g - eta * b2).collect();
    let rad: Vec<f64> = p
        .iter()
        .zip(&q)
        .map(|(p, q)| eta * (p * p - q * q))
        .collect();
    let scales: Vec<f64> = p.iter().zip(&q).map(|(p, q)| p * p + q * q).collect();
    check_radicand(&rad, &scales)?;
    let z: Vec<f64> = rad.iter().map(|r| r.sqrt()).collect();

    let mut dx = Vec::with_capacity(z.len());
    let mut dz = Vec::with_capacity(z.len());
    for k in 0..z.len() {
        let (fp, gp) = ((2.0 * eta * i[k]).sinh(), (2.0 * eta * i[k]).cosh());
        dx.push(-eta * (gp * p[k] - fp * q[k]) / z[k]);
        dz.push(eta * (p[k] * fp - q[k] * gp) / z[k]);
    }
    let x = running(&grid, dx.clone(), b3)?;
    Ok(PlanarCurve {
        points: x
            .iter()
            .zip(&z)
            .map(|(&x, &z)| MinkVec3::new(x, 0.0, z))
            .collect(),
        tangents: Some(
            dx.iter()
                .zip(&dz)
                .map(|(&a, &b)| MinkVec3::new(a, 0.0, b))
                .collect(),
        ),
        grid,
        plane: Plane::Xz,
        eta: req.eta,
        meta: meta(case, &req.constants),
    })
}

/// Spacelike axis, curve `(x, y, 0)` in the xy plane.
///
/// `y = √((F−c1)² + (G+c2)²)`, `x′ = (F′(G+c2) − G′(F−c1))/y`, `x(s₀) = c3`.
pub fn solve_mean_spacelike_axis_sp_plane(
    req: &MeanSolveRequest,
) -> Result<PlanarCurve, MeanError> {
    let case = req.case()?;
    if case != MeanCase::SpacelikeAxisXy {
        return Err(MeanError::IncompatiblePair {
            axis: req.axis.name(),
            plane: req.plane,
        });
    }
    let [c1, c2, c3] = req.constants::<3>()?;
    let grid = req.grid()?;
    let (i, f, g) = circular_pair(&req.profile, &grid)?;
    let p: Vec<f64> = f.iter().map(|f| f - c1).collect();
    let q: Vec<f64> = g.iter().map(|g| g + c2).collect();
    let rad: Vec<f64> = p.iter().zip(&q).map(|(p, q)| p * p + q * q).collect();
    check_radicand(&rad, &vec![1.0; rad.len()])?;
    let y: Vec<f64> = rad.iter().map(|r| r.sqrt()).collect();

    let mut dx = Vec::with_capacity(y.len());
    let mut dy = Vec::with_capacity(y.len());
    for k in 0..y.len() {
        let (fp, gp) = (2.0 * i[k]).sin_cos();
        dx.push((fp * q[k] - gp * p[k]) / y[k]);
        dy.push((p[k] * fp + q[k] * gp) / y[k]);
    }
    let x = running(&grid, dx.clone(), c3)?;
    let mut m = meta(case, &req.constants);
    if req.eta != Eta::Plus {
        m.notes
            .push("eta ignored: xy-plane curves are spacelike".into());
    }
    Ok(PlanarCurve {
        points: x
            .iter()
            .zip(&y)
            .map(|(&x, &y)| MinkVec3::new(x, y, 0.0))
            .collect(),
        tangents: Some(
            dx.iter()
                .zip(&dy)
                .map(|(&a, &b)| MinkVec3::new(a, b, 0.0))
                .collect(),
        ),
        grid,
        plane: Plane::Xy,
        eta: Eta::Plus,
        meta: m,
    })
}

/// Lightlike axis, curve `(0, y, z)` in the yz plane.
///
/// `(y−z)² = a1 + a0∫e^{−2ηI}` and `(y+z)′ = b0 (y−z) e^{2ηI}` with
/// `(y+z)(s₀) = b1`. Unit speed requires `a0·b0 = 2η`.
pub fn solve_mean_lightlike_axis(req: &MeanSolveRequest) -> Result<PlanarCurve, MeanError> {
    let case = req.case()?;
    if case != MeanCase::LightlikeAxis {
        return Err(MeanError::IncompatiblePair {
            axis: req.axis.name(),
            plane: req.plane,
        });
    }
    let [a0, a1, b0, b1] = req.constants::<4>()?;
    let eta = req.eta.value();
    if (a0 * b0 - 2.0 * eta).abs() > COMPAT_TOL {
        return Err(MeanError::ConstantViolation(format!(
            "need a0·b0 = 2η = {}, got {}",
            2.0 * eta,
            a0 * b0
        )));
    }
    let grid = req.grid()?;
    let nested = nested_exponential_integral(&req.profile, eta, ExpKind::Real { sign: -1 }, &grid)?;
    let OuterIntegral::Real(outer) = nested.outer else {
        unreachable!("requested the real kind")
    };
    let i = nested.inner.values;
    let rad: Vec<f64> = outer.values.iter().map(|e| a1 + a0 * e).collect();
    let scales: Vec<f64> = outer
        .values
        .iter()
        .map(|e| a1.abs() + (a0 * e).abs())
        .collect();
    check_radicand(&rad, &scales)?;
    let u: Vec<f64> = rad.iter().map(|r| r.sqrt()).collect();

    let du: Vec<f64> = (0..u.len())
        .map(|k| 0.5 * a0 * (-2.0 * eta * i[k]).exp() / u[k])
        .collect();
    let dv: Vec<f64> = (0..u.len())
        .map(|k| b0 * u[k] * (2.0 * eta * i[k]).exp())
        .collect();
    let v = running(&grid, dv.clone(), b1)?;
    Ok(PlanarCurve {
        points: u
            .iter()
            .zip(&v)
            .map(|(&u, &v)| MinkVec3::new(0.0, 0.5 * (v + u), 0.5 * (v - u)))
            .collect(),
        tangents: Some(
            du.iter()
                .zip(&dv)
                .map(|(&du, &dv)| MinkVec3::new(0.0, 0.5 * (dv + du), 0.5 * (dv - du)))
                .collect(),
        ),
        grid,
        plane: Plane::Yz,
        eta: req.eta,
        meta: meta(case, &req.constants),
    })
}

pub fn solve_mean(req: &MeanSolveRequest) -> Result<PlanarCurve, MeanError> {
    match req.case()? {
        MeanCase::TimelikeAxis => solve_mean_timelike_axis(req),
        MeanCase::SpacelikeAxisXz => solve_mean_spacelike_axis_tl_plane(req),
        MeanCase::SpacelikeAxisXy => solve_mean_spacelike_axis_sp_plane(req),
        MeanCase::LightlikeAxis => solve_mean_lightlike_axis(req),
    }
}

/// Second route to the timelike-axis solution: `A = xx′ + ℓxz′` solves
/// `A′ + 2ℓηH A = η` with `A(s₀) = a1 + ℓa2`.
pub fn timelike_axis_ode_path(
    req: &MeanSolveRequest,
) -> Result<SampledFunction<LorentzNumber>, MeanError> {
    let [a1, a2, _] = req.constants::<3>()?;
    let eta = req.eta.value();
    let grid = req.grid()?;
    let h = SampledFunction::try_from_fn(&grid, |s| req.profile.eval(s))?;
    let p: Vec<f64> = h.values.iter().map(|h| 2.0 * eta * h).collect();
    let q = vec![LorentzNumber::real(eta); grid.len()];
    Ok(solve_linear_ode(&p, &q, LorentzNumber::new(a1, a2), &grid)?)
}

/// `A = xx′ + ℓxz′` read off a timelike-axis curve and its exact tangents.
pub fn lorentz_a_from_curve(curve: &PlanarCurve) -> Option<Vec<LorentzNumber>> {
    let t = curve.tangents.as_ref()?;
    Some(
        curve
            .points
            .iter()
            .zip(t)
            .map(|(p, d)| ELL * (p.x * d.z) + LorentzNumber::real(p.x * d.x))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxKind {
    /// `(f, g)` in the Lorentzian plane
    Hyperbolic,
    /// `(F, G)` in the Euclidean plane
    Circular,
}

/// Curvature of the auxiliary plane curve built from `H` minus `2H`,
/// maximised over interior nodes.
///
/// Hyperbolic kind: `c = (f, g)` with metric `df² − dg²`,
/// `κ = −η_{c′} ‖c″‖`. Circular kind: `c = (F, G)`, `κ = ‖c″‖`.
pub fn aux_fg_curvature_check(
    profile: &CurvatureProfile,
    eta: Eta,
    kind: AuxKind,
    grid: &Grid,
) -> Result<f64, MeanError> {
    let (_, f, g) = match kind {
        AuxKind::Hyperbolic => hyperbolic_pair(profile, eta.value(), grid)?,
        AuxKind::Circular => circular_pair(profile, grid)?,
    };
    let d = |v: Vec<f64>, order| -> Result<Vec<f64>, MeanError> {
        Ok(fd_derivative(&SampledFunction::new(grid.clone(), v)?, order)?.values)
    };
    let (f1, g1) = (
        d(f.clone(), DerivativeOrder::First)?,
        d(g.clone(), DerivativeOrder::First)?,
    );
    let (f2, g2) = (
        d(f, DerivativeOrder::Second)?,
        d(g, DerivativeOrder::Second)?,
    );
    let n = grid.len();
    let mut worst: f64 = 0.0;
    for k in 1..n - 1 {
        let kappa = match kind {
            AuxKind::Hyperbolic => {
                let eta_c = (f1[k] * f1[k] - g1[k] * g1[k]).signum();
                -eta_c * (f2[k] * f2[k] - g2[k] * g2[k]).abs().sqrt()
            }
            AuxKind::Circular => (f2[k] * f2[k] + g2[k] * g2[k]).sqrt(),
        };
        let h = profile.eval(grid.points()[k])?;
        worst = worst.max((kappa - 2.0 * h).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(
        axis: AxisType,
        plane: Plane,
        h: &str,
        eta: Eta,
        constants: &[f64],
        range: (f64, f64),
    ) -> MeanSolveRequest {
        MeanSolveRequest {
            profile: CurvatureProfile::parse(h, "s").unwrap(),
            axis,
            plane,
            eta,
            constants: constants.to_vec(),
            s_range: range,
            n: 2001,
        }
    }

    #[test]
    fn flat_plane() {
        let r = req(
            AxisType::Timelike,
            Plane::Xz,
            "0",
            Eta::Plus,
            &[1.0, 0.0, 0.0],
            (0.0, 1.0),
        );
        let c = solve_mean(&r).unwrap();
        for (s, p) in c.grid.points().iter().zip(&c.points) {
            assert!((p.x - (s + 1.0)).abs() < 1e-14 && p.z.abs() < 1e-14);
        }
    }

    #[test]
    fn lorentzian_catenoid_generator() {
        let r = req(
            AxisType::Timelike,
            Plane::Xz,
            "0",
            Eta::Plus,
            &[2.0, 1.0, 0.0],
            (0.0, 1.0),
        );
        let c = solve_mean(&r).unwrap();
        for (s, p) in c.grid.points().iter().zip(&c.points) {
            let x = ((s + 2.0).powi(2) - 1.0).sqrt();
            let z = (s + 2.0).acosh() - 2f64.acosh();
            assert!((p.x - x).abs() < 1e-12 && (p.z - z).abs() < 1e-12);
            assert!(c.plane.contains(*p));
        }
        assert!(c.unit_speed_error().unwrap() < 1e-6);
        let t0 = c.tangents.as_ref().unwrap()[0];
        assert!((c.points[0].x - 3f64.sqrt()).abs() < 1e-12);
        assert!((t0.inner(t0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_violation() {
        let r = req(
            AxisType::Timelike,
            Plane::Xz,
            "0",
            Eta::Plus,
            &[1.0, 2.0, 0.0],
            (0.0, 1.0),
        );
        assert!(matches!(
            solve_mean(&r),
            Err(MeanError::ConstantViolation(_))
        ));
        let r = req(
            AxisType::Spacelike,
            Plane::Xz,
            "0",
            Eta::Minus,
            &[2.0, 1.0, 0.0],
            (0.0, 1.0),
        );
        assert!(matches!(
            solve_mean(&r),
            Err(MeanError::ConstantViolation(_))
        ));
    }

    #[test]
    fn wrong_constant_count_and_pair() {
        let r = req(
            AxisType::Timelike,
            Plane::Xz,
            "0",
            Eta::Plus,
            &[2.0, 1.0],
            (0.0, 1.0),
        );
        assert!(matches!(
            solve_mean(&r),
            Err(MeanError::ConstantCount {
                expected: 3,
                got: 2
            })
        ));
        let r = req(
            AxisType::Timelike,
            Plane::Xy,
            "0",
            Eta::Plus,
            &[2.0, 1.0, 0.0],
            (0.0, 1.0),
        );
        assert!(matches!(
            solve_mean(&r),
            Err(MeanError::IncompatiblePair { .. })
        ));
    }

    #[test]
    fn spacelike_axis_xz_plane() {
        let r = req(
            AxisType::Spacelike,
            Plane::Xz,
            "0",
            Eta::Plus,
            &[2.0, 1.0, 0.0],
            (0.0, 0.5),
        );
        let c = solve_mean(&r).unwrap();
        for (s, p) in c.grid.points().iter().zip(&c.points) {
            assert!((p.z - (4.0 - (s - 1.0).powi(2)).sqrt()).abs() < 1e-12);
        }
        assert!((c.points[0].z - 3f64.sqrt()).abs() < 1e-12 && c.points[0].x == 0.0);
        assert!(c.unit_speed_error().unwrap() < 1e-6);
    }

    #[test]
    fn spacelike_axis_xz_domain_violation() {
        // z² = 4 − (s−1)² vanishes at s = 3
        let r = req(
            AxisType::Spacelike,
            Plane::Xz,
            "0",
            Eta::Plus,
            &[2.0, 1.0, 0.0],
            (0.0, 4.0),
        );
        let err = solve_mean(&r).unwrap_err();
        let MeanError::DomainViolation { index, .. } = err else {
            panic!("{err:?}")
        };
        let s = 4.0 * index as f64 / 2000.0;
        assert!((2.99..=3.0).contains(&s), "{s}");
    }

    #[test]
    fn catenary() {
        let r = req(
            AxisType::Spacelike,
            Plane::Xy,
            "0",
            Eta::Plus,
            &[1.0, 0.0, 0.0],
            (0.0, 1.0),
        );
        let c = solve_mean(&r).unwrap();
        for (s, p) in c.grid.points().iter().zip(&c.points) {
            assert!((p.y - (1.0 + s * s).sqrt()).abs() < 1e-12);
            assert!((p.x - s.asinh()).abs() < 1e-12);
            assert!((p.y - p.x.cosh()).abs() < 1e-12);
        }
        let r = req(
            AxisType::Spacelike,
            Plane::Xy,
            "0",
            Eta::Plus,
            &[0.0, 0.0, 0.0],
            (0.0, 1.0),
        );
        assert!(matches!(
            solve_mean(&r),
            Err(MeanError::DomainViolation { index: 0, .. })
        ));
    }

    #[test]
    fn lightlike_minimal() {
        let r = req(
            AxisType::Lightlike,
            Plane::Yz,
            "0",
            Eta::Plus,
            &[1.0, 1.0, 2.0, 0.0],
            (0.0, 1.0),
        );
        let c = solve_mean(&r).unwrap();
        for (s, p) in c.grid.points().iter().zip(&c.points) {
            let u = (1.0 + s).sqrt();
            let v = 4.0 / 3.0 * ((1.0 + s).powf(1.5) - 1.0);
            assert!((p.y - p.z - u).abs() < 1e-12);
            assert!((p.y + p.z - v).abs() < 1e-12);
        }
        for t in c.tangents.as_ref().unwrap() {
            assert!((t.inner(*t) - 1.0).abs() < 1e-12);
        }
        assert!(c.unit_speed_error().unwrap() < 1e-6);
    }

    #[test]
    fn lightlike_constant_h() {
        let (cst, eta) = (0.5, Eta::Minus);
        let r = req(
            AxisType::Lightlike,
            Plane::Yz,
            "0.5",
            eta,
            &[-1.0, 3.0, 2.0, 0.0],
            (0.0, 1.0),
        );
        let c = solve_mean(&r).unwrap();
        let e = eta.value();
        for (s, p) in c.grid.points().iter().zip(&c.points) {
            let exact = 3.0 + (-1.0 / (e * cst)) * (1.0 - (-2.0 * e * cst * s).exp()) / 2.0;
            assert!(((p.y - p.z).powi(2) - exact).abs() < 1e-9);
        }
        let r = req(
            AxisType::Lightlike,
            Plane::Yz,
            "0",
            Eta::Plus,
            &[1.0, 1.0, 1.0, 0.0],
            (0.0, 1.0),
        );
        assert!(matches!(
            solve_mean(&r),
            Err(MeanError::ConstantViolation(_))
        ));
    }

    #[test]
    fn ode_path_matches_closed_form() {
        let r = req(
            AxisType::Timelike,
            Plane::Xz,
            "0.3 + 0.1*sin(s)",
            Eta::Plus,
            &[2.0, 1.0, 0.0],
            (0.0, 1.0),
        );
        let c = solve_mean(&r).unwrap();
        let closed = lorentz_a_from_curve(&c).unwrap();
        let ode = timelike_axis_ode_path(&r).unwrap();
        for (a, b) in closed.iter().zip(&ode.values) {
            assert!((a.re - b.re).abs() < 1e-8 && (a.hyp - b.hyp).abs() < 1e-8);
        }
    }

    #[test]
    fn aux_curvature() {
        let grid = Grid::uniform(0.0, 1.0, 2001).unwrap();
        let p = |s: &str| CurvatureProfile::parse(s, "s").unwrap();
        for kind in [AuxKind::Hyperbolic, AuxKind::Circular] {
            assert!(aux_fg_curvature_check(&p("0"), Eta::Plus, kind, &grid).unwrap() <= 1e-8);
        }
        assert!(
            aux_fg_curvature_check(&p("1"), Eta::Plus, AuxKind::Circular, &grid).unwrap() <= 1e-5
        );
        assert!(
            aux_fg_curvature_check(&p("s"), Eta::Plus, AuxKind::Hyperbolic, &grid).unwrap() <= 1e-4
        );
    }
}
