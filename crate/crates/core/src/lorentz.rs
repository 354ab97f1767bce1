//! Lorentz (split-complex, hyperbolic) numbers `a + b·ℓ` with `ℓ² = 1`.
//!
//! The ring is commutative but not a field: the lightlike elements `a ± a·ℓ`
//! are exactly the zero divisors. Besides the arithmetic this module carries
//! the polar form, the exponential, the 2×2 real representation and a
//! closed-form solver for the first-order linear ODE `w' + p(s)·ℓ·w = q(s)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_traits::Zero;
use thiserror::Error;

use crate::numerics::{cumulative_integral, Grid, NumericsError, SampledFunction};

/// Relative tolerance used to decide that `a² − b²` vanishes.
pub const LIGHTLIKE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LorentzError {
    #[error("{0} is lightlike and has no inverse")]
    NotInvertible(LorentzNumber),
    #[error("{0} is lightlike and has no polar form")]
    NoPolarForm(LorentzNumber),
    #[error("exponential of {0} overflows")]
    Overflow(LorentzNumber),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Causal character shared by Lorentz numbers, vectors, curves and surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalClass {
    Spacelike,
    Timelike,
    Lightlike,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LorentzNumber {
    pub re: f64,
    pub hyp: f64,
}

/// `ℓ` itself.
pub const ELL: LorentzNumber = LorentzNumber { re: 0.0, hyp: 1.0 };

impl LorentzNumber {
    pub const fn new(re: f64, hyp: f64) -> Self {
        Self { re, hyp }
    }

    pub const fn real(re: f64) -> Self {
        Self { re, hyp: 0.0 }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.hyp)
    }

    /// `w·w̄ = a² − b²`; a signed real, not a norm.
    pub fn modulus_sq(self) -> f64 {
        self.re * self.re - self.hyp * self.hyp
    }

    pub fn is_lightlike(self) -> bool {
        if self.re == 0.0 && self.hyp == 0.0 {
            return false;
        }
        let scale = (self.re * self.re + self.hyp * self.hyp).max(1.0);
        self.modulus_sq().abs() <= LIGHTLIKE_TOL * scale
    }

    pub fn classify(self) -> CausalClass {
        if self.re == 0.0 && self.hyp == 0.0 {
            CausalClass::Spacelike
        } else if self.is_lightlike() {
            CausalClass::Lightlike
        } else if self.modulus_sq() > 0.0 {
            CausalClass::Spacelike
        } else {
            CausalClass::Timelike
        }
    }

    pub fn inverse(self) -> Result<Self, LorentzError> {
        if self.is_lightlike() || (self.re == 0.0 && self.hyp == 0.0) {
            return Err(LorentzError::NotInvertible(self));
        }
        Ok(self.conj() * (1.0 / self.modulus_sq()))
    }

    /// `exp(a + bℓ) = eᵃ (cosh b + ℓ sinh b)`.
    pub fn exp(self) -> Self {
        let ea = self.re.exp();
        Self::new(ea * self.hyp.cosh(), ea * self.hyp.sinh())
    }

    pub fn checked_exp(self) -> Result<Self, LorentzError> {
        let w = self.exp();
        if w.re.is_finite() && w.hyp.is_finite() {
            Ok(w)
        } else {
            Err(LorentzError::Overflow(self))
        }
    }

    pub fn polar(self) -> Result<PolarForm, LorentzError> {
        match self.classify() {
            CausalClass::Lightlike => Err(LorentzError::NoPolarForm(self)),
            // zero is spacelike by convention but still has no polar form
            _ if self.re == 0.0 && self.hyp == 0.0 => Err(LorentzError::NoPolarForm(self)),
            CausalClass::Spacelike => Ok(PolarForm {
                r: self.modulus_sq().sqrt(),
                theta: (self.hyp / self.re).atanh(),
                branch: CausalClass::Spacelike,
                sign: self.re.signum(),
            }),
            CausalClass::Timelike => Ok(PolarForm {
                r: (-self.modulus_sq()).sqrt(),
                theta: (self.re / self.hyp).atanh(),
                branch: CausalClass::Timelike,
                sign: self.hyp.signum(),
            }),
        }
    }

    /// Real 2×2 representation `[[a, b], [b, a]]`.
    pub fn matrix(self) -> [[f64; 2]; 2] {
        [[self.re, self.hyp], [self.hyp, self.re]]
    }
}

/// Polar decomposition with `r > 0`; the overall sign is kept apart.
///
/// Spacelike: `w = sign · r (cosh θ + ℓ sinh θ)`.
/// Timelike: `w = sign · r (sinh θ + ℓ cosh θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarForm {
    pub r: f64,
    pub theta: f64,
    pub branch: CausalClass,
    pub sign: f64,
}

impl PolarForm {
    pub fn to_number(self) -> LorentzNumber {
        let (c, s) = (self.theta.cosh(), self.theta.sinh());
        let k = self.sign * self.r;
        match self.branch {
            CausalClass::Timelike => LorentzNumber::new(k * s, k * c),
            _ => LorentzNumber::new(k * c, k * s),
        }
    }
}

impl fmt::Display for LorentzNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hyp.is_sign_negative() {
            write!(f, "{}-{}ℓ", self.re, -self.hyp)
        } else {
            write!(f, "{}+{}ℓ", self.re, self.hyp)
        }
    }
}

impl Add for LorentzNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.hyp + rhs.hyp)
    }
}

impl AddAssign for LorentzNumber {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for LorentzNumber {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.hyp - rhs.hyp)
    }
}

impl Neg for LorentzNumber {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.hyp)
    }
}

impl Mul for LorentzNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re + self.hyp * rhs.hyp,
            self.re * rhs.hyp + self.hyp * rhs.re,
        )
    }
}

impl Mul<f64> for LorentzNumber {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.re * rhs, self.hyp * rhs)
    }
}

impl Div for LorentzNumber {
    type Output = Result<Self, LorentzError>;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Result<Self, LorentzError> {
        Ok(self * rhs.inverse()?)
    }
}

impl Zero for LorentzNumber {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.hyp == 0.0
    }
}

impl From<f64> for LorentzNumber {
    fn from(re: f64) -> Self {
        Self::real(re)
    }
}

/// Solves `w' + p(s)·ℓ·w = q(s)`, `w(s₀) = w0`, on `grid`.
///
/// Closed form through the integrating factor `exp(ℓ P)`, `P = ∫ p`:
/// `w(s) = exp(−ℓ P(s)) · [w0 + ∫ exp(ℓ P) q]`. Both integrals are cumulative
/// Simpson sums on the (uniform) grid.
pub fn solve_linear_ode(
    p: &[f64],
    q: &[LorentzNumber],
    w0: LorentzNumber,
    grid: &Grid,
) -> Result<SampledFunction<LorentzNumber>, LorentzError> {
    let p = SampledFunction::new(grid.clone(), p.to_vec())?;
    let big_p = cumulative_integral(&p)?;
    let weighted: Vec<LorentzNumber> = big_p
        .values
        .iter()
        .zip(q)
        .map(|(&pp, &qq)| (ELL * pp).exp() * qq)
        .collect();
    let forced = cumulative_integral(&SampledFunction::new(grid.clone(), weighted)?)?;
    let values = big_p
        .values
        .iter()
        .zip(&forced.values)
        .map(|(&pp, &acc)| (ELL * -pp).exp() * (w0 + acc))
        .collect();
    Ok(SampledFunction::new(grid.clone(), values)?)
}

/// Same as [`solve_linear_ode`] with the coefficients given as functions.
pub fn solve_linear_ode_fn(
    p: impl Fn(f64) -> f64,
    q: impl Fn(f64) -> LorentzNumber,
    w0: LorentzNumber,
    grid: &Grid,
) -> Result<SampledFunction<LorentzNumber>, LorentzError> {
    let ps: Vec<f64> = grid.points().iter().map(|&s| p(s)).collect();
    let qs: Vec<LorentzNumber> = grid.points().iter().map(|&s| q(s)).collect();
    solve_linear_ode(&ps, &qs, w0, grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(a: f64, b: f64) -> LorentzNumber {
        LorentzNumber::new(a, b)
    }

    #[test]
    fn products() {
        assert_eq!(l(1.0, 2.0) * l(3.0, 1.0), l(5.0, 7.0));
        assert_eq!(l(1.0, 1.0) * l(1.0, -1.0), l(0.0, 0.0));
        assert_eq!(ELL * ELL, l(1.0, 0.0));
    }

    #[test]
    fn inverses() {
        assert_eq!(l(2.0, 0.0).inverse().unwrap(), l(0.5, 0.0));
        assert!(matches!(
            l(1.0, 1.0).inverse(),
            Err(LorentzError::NotInvertible(_))
        ));
        assert!(l(0.0, 0.0).inverse().is_err());
        let w = l(3.0, -1.0);
        let one = w * w.inverse().unwrap();
        assert!((one.re - 1.0).abs() < 1e-15 && one.hyp.abs() < 1e-15);
    }

    #[test]
    fn classification() {
        assert_eq!(l(3.0, 1.0).classify(), CausalClass::Spacelike);
        assert_eq!(l(1.0, 2.0).classify(), CausalClass::Timelike);
        assert_eq!(l(5.0, 5.0).classify(), CausalClass::Lightlike);
        assert_eq!(l(-5.0, 5.0).classify(), CausalClass::Lightlike);
        assert_eq!(l(0.0, 0.0).classify(), CausalClass::Spacelike);
        // roundoff-level departure from a = b still counts as lightlike
        assert_eq!(l(1e6, 1e6 + 1e-7).classify(), CausalClass::Lightlike);
    }

    #[test]
    fn polar_examples() {
        let p = l(2.0, 0.0).polar().unwrap();
        assert_eq!((p.r, p.theta, p.branch), (2.0, 0.0, CausalClass::Spacelike));

        let p = l(1f64.cosh(), 1f64.sinh()).polar().unwrap();
        assert!((p.r - 1.0).abs() < 1e-12 && (p.theta - 1.0).abs() < 1e-12);

        // r sinh θ = 0, r cosh θ = 3  ⇒  r = 3, θ = 0
        let p = l(0.0, 3.0).polar().unwrap();
        assert_eq!((p.r, p.theta, p.branch), (3.0, 0.0, CausalClass::Timelike));

        assert!(matches!(
            l(2.0, -2.0).polar(),
            Err(LorentzError::NoPolarForm(_))
        ));
    }

    #[test]
    fn polar_reconstruction_all_quadrants() {
        for w in [
            l(3.0, 1.0),
            l(-3.0, 1.0),
            l(1.0, 3.0),
            l(1.0, -3.0),
            l(-0.2, 0.1),
        ] {
            let back = w.polar().unwrap().to_number();
            let scale = w.re.abs().max(w.hyp.abs());
            assert!((back.re - w.re).abs() <= 1e-12 * scale, "{w} -> {back}");
            assert!((back.hyp - w.hyp).abs() <= 1e-12 * scale, "{w} -> {back}");
        }
    }

    #[test]
    fn exponential() {
        assert_eq!(l(0.0, 0.0).exp(), l(1.0, 0.0));
        let e = l(0.0, 1.0).exp();
        assert!((e.re - 1.543_080_634_815_243_7).abs() < 1e-15);
        assert!((e.hyp - 1.175_201_193_643_801_4).abs() < 1e-15);
        let (u, v) = (l(1.0, 2.0), l(-1.0, 0.5));
        let lhs = u.exp() * v.exp();
        let rhs = (u + v).exp();
        assert!((lhs.re - rhs.re).abs() < 1e-12 && (lhs.hyp - rhs.hyp).abs() < 1e-12);
        assert!(matches!(
            l(800.0, 0.0).checked_exp(),
            Err(LorentzError::Overflow(_))
        ));
        assert!(l(10.0, 705.0).checked_exp().is_err());
    }

    #[test]
    fn matrix_representation() {
        assert_eq!(l(1.0, 0.0).matrix(), [[1.0, 0.0], [0.0, 1.0]]);
        let m = l(2.0, 3.0).matrix();
        assert_eq!(m, [[2.0, 3.0], [3.0, 2.0]]);
        assert_eq!(
            m[0][0] * m[1][1] - m[0][1] * m[1][0],
            l(2.0, 3.0).modulus_sq()
        );

        // hand product: [[1,2],[2,1]]·[[3,1],[1,3]] = [[5,7],[7,5]]
        let prod = (l(1.0, 2.0) * l(3.0, 1.0)).matrix();
        assert_eq!(prod, [[5.0, 7.0], [7.0, 5.0]]);
    }

    #[test]
    fn ode_constant_solution() {
        let grid = Grid::uniform(0.0, 1.0, 11).unwrap();
        let w =
            solve_linear_ode_fn(|_| 0.0, |_| LorentzNumber::zero(), l(1.0, 2.0), &grid).unwrap();
        assert!(w.values.iter().all(|&v| v == l(1.0, 2.0)));
    }

    #[test]
    fn ode_inhomogeneous_flat_profile() {
        // p = 2ηH with H ≡ 0, q = η: w = w0 + ηs
        let eta = -1.0;
        let grid = Grid::uniform(0.0, 2.0, 201).unwrap();
        let w0 = l(0.3, -0.7);
        let w = solve_linear_ode_fn(|_| 0.0, |_| l(eta, 0.0), w0, &grid).unwrap();
        for (s, v) in grid.points().iter().zip(&w.values) {
            assert!((v.re - (w0.re + eta * s)).abs() < 1e-13);
            assert!((v.hyp - w0.hyp).abs() < 1e-13);
        }
    }

    #[test]
    fn ode_rejects_bad_grid() {
        assert!(matches!(
            Grid::from_points(vec![0.0, 0.1, 0.3, 0.2, 0.4]),
            Err(NumericsError::InvalidGrid(_))
        ));
    }
}
