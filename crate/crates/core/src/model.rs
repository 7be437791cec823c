//! States, model parameters and the eigenstructure of the variable-width
//! Aw-Rascle system
//!
//! ```text
//! (a rho)_t + (a rho u)_x = 0
//! (a rho (u + p))_t + (a rho u (u + p))_x = rho u p a_x
//! a_t = 0
//! ```
//!
//! with the velocity offset `p = rho^gamma`.

use crate::error::{Error, Result};

/// Default relative tolerance for membership of the sonic curve.
pub const SONIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    gamma: f64,
}

impl ModelParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidParams(format!(
                "gamma must be positive and finite, got {gamma}"
            )));
        }
        Ok(Self { gamma })
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// A point `(u, rho, a)`: velocity, density and road width.
///
/// At vacuum (`rho == 0`) the velocity is only a label, used for the edge
/// of a rarefaction fan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub u: f64,
    pub rho: f64,
    pub a: f64,
}

impl State {
    pub fn new(u: f64, rho: f64, a: f64) -> Result<Self> {
        if !(u.is_finite() && rho.is_finite() && a.is_finite()) {
            return Err(Error::InvalidState(format!(
                "non-finite component in ({u}, {rho}, {a})"
            )));
        }
        if u < 0.0 {
            return Err(Error::InvalidState(format!("negative velocity u = {u}")));
        }
        if rho < 0.0 {
            return Err(Error::InvalidState(format!("negative density rho = {rho}")));
        }
        if a <= 0.0 {
            return Err(Error::InvalidState(format!("non-positive width a = {a}")));
        }
        Ok(Self { u, rho, a })
    }

    /// Builds a state without validation; callers guarantee the invariants.
    #[inline]
    pub(crate) fn raw(u: f64, rho: f64, a: f64) -> Self {
        Self { u, rho, a }
    }

    #[inline]
    pub fn with_width(self, a: f64) -> Self {
        Self { a, ..self }
    }

    #[inline]
    pub fn is_vacuum(&self) -> bool {
        self.rho == 0.0
    }

    /// Componentwise comparison with a relative tolerance.
    pub fn approx_eq(&self, other: &State, tol: f64) -> bool {
        let close = |x: f64, y: f64| (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0);
        close(self.u, other.u) && close(self.rho, other.rho) && close(self.a, other.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// `0 < u < gamma rho^gamma`
    D1,
    /// `u > gamma rho^gamma`
    D2,
    /// Sonic curve `u = gamma rho^gamma`.
    GammaPlus,
    /// `u = 0`
    GammaZero,
    /// `rho = 0`
    Vacuum,
}

#[inline]
pub fn pressure(rho: f64, params: &ModelParams) -> f64 {
    if rho == 0.0 {
        0.0
    } else {
        rho.powf(params.gamma)
    }
}

/// `(lambda1, lambda2, lambda3) = (u - gamma rho^gamma, u, 0)`.
pub fn eigenvalues(s: &State, params: &ModelParams) -> (f64, f64, f64) {
    let g = params.gamma;
    (s.u - g * pressure(s.rho, params), s.u, 0.0)
}

#[inline]
pub fn lambda1(s: &State, params: &ModelParams) -> f64 {
    s.u - params.gamma * pressure(s.rho, params)
}

/// Region of the `(u, rho)` quarter plane. `|u - gamma rho^gamma| <= tol * max(1, u)`
/// counts as the sonic curve.
pub fn classify(s: &State, params: &ModelParams, tol: f64) -> Region {
    if s.rho == 0.0 {
        return Region::Vacuum;
    }
    if s.u == 0.0 {
        return Region::GammaZero;
    }
    let sonic = params.gamma * pressure(s.rho, params);
    let gap = s.u - sonic;
    if gap.abs() <= tol * s.u.max(1.0) {
        Region::GammaPlus
    } else if gap < 0.0 {
        Region::D1
    } else {
        Region::D2
    }
}

/// `u + rho^gamma`, the invariant carried along the first characteristic
/// family.
#[inline]
pub fn riemann_invariant_1(s: &State, params: &ModelParams) -> f64 {
    s.u + pressure(s.rho, params)
}
