//! Uniform grids, cumulative quadrature and finite differences.
//!
//! Every integral in the reconstruction formulas starts at the left end of the
//! parameter interval, so the workhorse here is [`cumulative_integral`]: a
//! running composite Simpson sum with value 0 at the first node.

use std::ops::{Add, Mul};

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::expr::{CurvatureProfile, EvalError};
use crate::lorentz::{LorentzNumber, ELL};

/// Smallest admissible grid.
pub const MIN_NODES: usize = 5;

/// Node count used when the caller does not pick one.
pub const DEFAULT_NODES: usize = 2001;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("{values} values for a grid of {nodes} nodes")]
    LengthMismatch { nodes: usize, values: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NestedIntegralError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Strictly increasing sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    uniform: bool,
}

impl Grid {
    pub fn uniform(lo: f64, hi: f64, n: usize) -> Result<Self, NumericsError> {
        if !(lo.is_finite() && hi.is_finite()) || hi <= lo {
            return Err(NumericsError::InvalidGrid(format!(
                "empty or non-finite interval [{lo}, {hi}]"
            )));
        }
        if n < MIN_NODES {
            return Err(NumericsError::InvalidGrid(format!(
                "{n} nodes, need at least {MIN_NODES}"
            )));
        }
        let h = (hi - lo) / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| lo + i as f64 * h).collect();
        points[n - 1] = hi;
        Ok(Self {
            points,
            uniform: true,
        })
    }

    /// Builds a grid from explicit points; uniformity is detected to 1e-9
    /// relative spacing.
    pub fn from_points(points: Vec<f64>) -> Result<Self, NumericsError> {
        if points.len() < MIN_NODES {
            return Err(NumericsError::InvalidGrid(format!(
                "{} nodes, need at least {MIN_NODES}",
                points.len()
            )));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(NumericsError::InvalidGrid("non-finite node".into()));
        }
        if let Some(i) = points.windows(2).position(|w| w[1] <= w[0]) {
            return Err(NumericsError::InvalidGrid(format!(
                "not strictly increasing at node {}",
                i + 1
            )));
        }
        let h = (points[points.len() - 1] - points[0]) / (points.len() - 1) as f64;
        let uniform = points
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(f64::MIN_POSITIVE));
        Ok(Self { points, uniform })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn lo(&self) -> f64 {
        self.points[0]
    }

    pub fn hi(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Mean spacing; the actual spacing when the grid is uniform.
    pub fn step(&self) -> f64 {
        (self.hi() - self.lo()) / (self.len() - 1) as f64
    }

    fn require_uniform(&self) -> Result<f64, NumericsError> {
        if self.uniform {
            Ok(self.step())
        } else {
            Err(NumericsError::InvalidGrid(
                "uniform spacing required".into(),
            ))
        }
    }
}

/// Values of a function aligned with a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction<T = f64> {
    pub grid: Grid,
    pub values: Vec<T>,
}

impl<T> SampledFunction<T> {
    pub fn new(grid: Grid, values: Vec<T>) -> Result<Self, NumericsError> {
        if grid.len() != values.len() {
            return Err(NumericsError::LengthMismatch {
                nodes: grid.len(),
                values: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: &Grid, f: impl Fn(f64) -> T) -> Self {
        let values = grid.points().iter().map(|&t| f(t)).collect();
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn last(&self) -> &T {
        &self.values[self.values.len() - 1]
    }
}

impl SampledFunction<f64> {
    pub fn try_from_fn<E>(grid: &Grid, f: impl Fn(f64) -> Result<f64, E>) -> Result<Self, E> {
        let values = grid
            .points()
            .iter()
            .map(|&t| f(t))
            .collect::<Result<Vec<_>, E>>()?;
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }
}

/// Running integral `t ↦ ∫_{t₀}^{t} f` on a uniform grid.
///
/// Even nodes take the composite Simpson sum. Odd nodes add the integral of
/// the cubic through four neighbouring nodes over a single panel
/// (`h/24 (9f₀ + 19f₁ − 5f₂ + f₃)` and its mirror images), which also closes
/// an odd panel count. Local error is O(h⁵) throughout.
pub fn cumulative_integral<T>(f: &SampledFunction<T>) -> Result<SampledFunction<T>, NumericsError>
where
    T: Copy + Zero + Add<Output = T> + Mul<f64, Output = T>,
{
    let h = f.grid.require_uniform()?;
    let y = &f.values;
    let n = y.len();
    let mut out = vec![T::zero(); n];
    let mut i = 0;
    while i + 2 < n {
        let base = out[i];
        out[i + 1] = base
            + if i + 3 < n {
                (y[i] * 9.0 + y[i + 1] * 19.0 + y[i + 2] * -5.0 + y[i + 3]) * (h / 24.0)
            } else {
                (y[i - 1] * -1.0 + y[i] * 13.0 + y[i + 1] * 13.0 + y[i + 2] * -1.0) * (h / 24.0)
            };
        out[i + 2] = base + (y[i] + y[i + 1] * 4.0 + y[i + 2]) * (h / 3.0);
        i += 2;
    }
    if i + 1 < n {
        // odd number of panels: close the last one with the cubic through
        // the final four nodes
        out[i + 1] =
            out[i] + (y[i - 2] + y[i - 1] * -5.0 + y[i] * 19.0 + y[i + 1] * 9.0) * (h / 24.0);
    }
    Ok(SampledFunction {
        grid: f.grid.clone(),
        values: out,
    })
}

/// Total integral over the grid (last node of [`cumulative_integral`]).
pub fn integrate<T>(f: &SampledFunction<T>) -> Result<T, NumericsError>
where
    T: Copy + Zero + Add<Output = T> + Mul<f64, Output = T>,
{
    Ok(*cumulative_integral(f)?.last())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    First,
    Second,
}

/// Second-order finite differences: central in the interior, one-sided
/// three/four-point stencils at the ends.
pub fn fd_derivative(
    f: &SampledFunction<f64>,
    order: DerivativeOrder,
) -> Result<SampledFunction<f64>, NumericsError> {
    let h = f.grid.require_uniform()?;
    let y = &f.values;
    let n = y.len();
    if n < MIN_NODES {
        return Err(NumericsError::InvalidGrid(format!("{n} nodes")));
    }
    let mut d = vec![0.0; n];
    match order {
        DerivativeOrder::First => {
            for i in 1..n - 1 {
                d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
            }
            d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
            d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * h);
        }
        DerivativeOrder::Second => {
            let h2 = h * h;
            for i in 1..n - 1 {
                d[i] = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / h2;
            }
            d[0] = (2.0 * y[0] - 5.0 * y[1] + 4.0 * y[2] - y[3]) / h2;
            d[n - 1] = (2.0 * y[n - 1] - 5.0 * y[n - 2] + 4.0 * y[n - 3] - y[n - 4]) / h2;
        }
    }
    Ok(SampledFunction {
        grid: f.grid.clone(),
        values: d,
    })
}

/// Which exponential the outer integral of [`nested_exponential_integral`] uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpKind {
    /// `∫ η·exp(2ℓη·I)`
    Lorentz,
    /// `∫ exp(−2i·I)`
    Complex,
    /// `∫ exp(sign·2η·I)` with `sign = ±1`
    Real { sign: i8 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum OuterIntegral {
    Lorentz(SampledFunction<LorentzNumber>),
    Complex(SampledFunction<Complex64>),
    Real(SampledFunction<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NestedIntegral {
    /// `I(t) = ∫₀ᵗ H`
    pub inner: SampledFunction<f64>,
    pub outer: OuterIntegral,
}

/// Samples `H` on `grid`, integrates it once (`I`) and integrates the chosen
/// exponential of `I` a second time.
pub fn nested_exponential_integral(
    profile: &CurvatureProfile,
    eta: f64,
    kind: ExpKind,
    grid: &Grid,
) -> Result<NestedIntegral, NestedIntegralError> {
    let h = SampledFunction::try_from_fn(grid, |t| profile.eval(t))?;
    let inner = cumulative_integral(&h)?;
    let outer = match kind {
        ExpKind::Lorentz => {
            let vals = inner
                .values
                .iter()
                .map(|&i| (ELL * (2.0 * eta * i)).exp() * eta)
                .collect();
            OuterIntegral::Lorentz(cumulative_integral(&SampledFunction::new(
                grid.clone(),
                vals,
            )?)?)
        }
        ExpKind::Complex => {
            let vals = inner
                .values
                .iter()
                .map(|&i| Complex64::new(0.0, -2.0 * i).exp())
                .collect();
            OuterIntegral::Complex(cumulative_integral(&SampledFunction::new(
                grid.clone(),
                vals,
            )?)?)
        }
        ExpKind::Real { sign } => {
            let k = 2.0 * eta * f64::from(sign.signum());
            let vals = inner.values.iter().map(|&i| (k * i).exp()).collect();
            OuterIntegral::Real(cumulative_integral(&SampledFunction::new(
                grid.clone(),
                vals,
            )?)?)
        }
    };
    Ok(NestedIntegral { inner, outer })
}

/// Lagrange interpolant through `2·half + 1` consecutive nodes of a uniform
/// grid, centred on `center`. Used to evaluate sampled curves between nodes.
#[derive(Debug, Clone)]
pub struct LocalInterpolant {
    t0: f64,
    h: f64,
    offsets: Vec<f64>,
    values: Vec<[f64; 3]>,
}

impl LocalInterpolant {
    pub fn new(grid: &Grid, values: &[[f64; 3]], center: usize, half: usize) -> Self {
        let n = grid.len();
        let width = 2 * half + 1;
        let start = center.saturating_sub(half).min(n.saturating_sub(width));
        let end = (start + width).min(n);
        let t0 = grid.points()[center];
        let h = grid.step();
        Self {
            t0,
            h,
            offsets: (start..end).map(|j| (grid.points()[j] - t0) / h).collect(),
            values: values[start..end].to_vec(),
        }
    }

    pub fn eval(&self, t: f64) -> [f64; 3] {
        let xi = (t - self.t0) / self.h;
        let mut acc = [0.0; 3];
        for (j, &xj) in self.offsets.iter().enumerate() {
            let mut w = 1.0;
            for (k, &xk) in self.offsets.iter().enumerate() {
                if k != j {
                    w *= (xi - xk) / (xj - xk);
                }
            }
            for (a, v) in acc.iter_mut().zip(self.values[j]) {
                *a += w * v;
            }
        }
        acc
    }
}
