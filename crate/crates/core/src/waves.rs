//! Elementary waves of the variable-width system.
//!
//! The first family (rarefactions and shocks) keeps `w = u + rho^gamma` and
//! the width fixed, so both branches share one curve in the `(u, rho)`
//! plane. Contacts keep `u`. Stationary waves sit at `xi = 0` and are the
//! only waves across which the width changes; their endpoints are tied by
//!
//! ```text
//! a0 rho0 u0 = a rho u
//! u0^(g/(1+g)) (rho0^g + g/(1+2g) u0) = u^(g/(1+g)) (rho^g + g/(1+2g) u)
//! ```

use crate::error::{Error, Result};
use crate::model::{classify, lambda1, pressure, riemann_invariant_1, ModelParams, Region, State, SONIC_TOL};
use crate::roots::{bisect, expand_until_positive};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveKind {
    Rarefaction1,
    Shock1,
    Contact2,
    Stationary0,
    VacuumRegion,
}

impl WaveKind {
    /// Short symbol used in wave-pattern strings such as `S0+S+J`.
    pub fn symbol(&self) -> &'static str {
        match self {
            WaveKind::Rarefaction1 => "R",
            WaveKind::Shock1 => "S",
            WaveKind::Contact2 => "J",
            WaveKind::Stationary0 => "S0",
            WaveKind::VacuumRegion => "Vac",
        }
    }
}

/// One elementary wave with its cached signal-speed range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave {
    pub kind: WaveKind,
    pub left: State,
    pub right: State,
    pub xi_lo: f64,
    pub xi_hi: f64,
}

impl Wave {
    /// Rarefaction fan from `left` to `right`; speeds are the first
    /// eigenvalue at either end (the velocity itself at a vacuum edge).
    pub fn rarefaction(left: State, right: State, params: &ModelParams) -> Self {
        Self {
            kind: WaveKind::Rarefaction1,
            left,
            right,
            xi_lo: lambda1(&left, params),
            xi_hi: lambda1(&right, params),
        }
    }

    pub fn shock(left: State, right: State, sigma: f64) -> Self {
        Self {
            kind: WaveKind::Shock1,
            left,
            right,
            xi_lo: sigma,
            xi_hi: sigma,
        }
    }

    pub fn contact(left: State, right: State) -> Self {
        Self {
            kind: WaveKind::Contact2,
            left,
            right,
            xi_lo: left.u,
            xi_hi: left.u,
        }
    }

    pub fn stationary(left: State, right: State) -> Self {
        Self {
            kind: WaveKind::Stationary0,
            left,
            right,
            xi_lo: 0.0,
            xi_hi: 0.0,
        }
    }

    /// Vacuum between the fan edge `left.u` and the contact at `right.u`.
    pub fn vacuum(left: State, right: State) -> Self {
        Self {
            kind: WaveKind::VacuumRegion,
            left,
            right,
            xi_lo: left.u,
            xi_hi: right.u,
        }
    }

    /// Speed of a discontinuity; for fans and vacuum the midpoint of the range.
    pub fn speed(&self) -> f64 {
        0.5 * (self.xi_lo + self.xi_hi)
    }

    pub fn is_discontinuity(&self) -> bool {
        matches!(
            self.kind,
            WaveKind::Shock1 | WaveKind::Contact2 | WaveKind::Stationary0
        )
    }
}

/// Which root of the stationary-jump equation to take: the supersonic one
/// (`rho_*`, in D2) or the subsonic one (`rho^*`, in D1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StationaryBranch {
    Supersonic,
    Subsonic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryRoots {
    pub rho_star: f64,
    pub rho_star_upper: f64,
    pub rho_min: f64,
}

pub fn rarefaction_target(u0: &State, rho: f64, params: &ModelParams) -> Result<State> {
    if !(0.0..=u0.rho).contains(&rho) {
        return Err(Error::RhoOutOfRange {
            rho,
            range: format!("[0, {}]", u0.rho),
        });
    }
    if rho == u0.rho {
        return Ok(*u0);
    }
    let w = riemann_invariant_1(u0, params);
    Ok(State::raw(w - pressure(rho, params), rho, u0.a))
}

/// State inside the rarefaction fan issued from `u0` at `xi = x/t`.
/// The fan may extend up to the vacuum edge `xi = u0 + rho0^gamma`.
pub fn rarefaction_interior(u0: &State, xi: f64, params: &ModelParams) -> Result<State> {
    let g = params.gamma();
    let w = riemann_invariant_1(u0, params);
    let head = lambda1(u0, params);
    if xi < head || xi > w {
        return Err(Error::XiOutsideFan { xi, lo: head, hi: w });
    }
    if xi == head {
        return Ok(*u0);
    }
    let rho = ((w - xi) / (1.0 + g)).powf(1.0 / g);
    Ok(State::raw(w - pressure(rho, params), rho, u0.a))
}

/// Right state on the shock curve at density `rho > rho0`, with its speed.
pub fn shock_target(u0: &State, rho: f64, params: &ModelParams) -> Result<(State, f64)> {
    if !(u0.rho > 0.0 && rho > u0.rho) {
        return Err(Error::RhoOutOfRange {
            rho,
            range: format!("({}, inf)", u0.rho),
        });
    }
    let w = riemann_invariant_1(u0, params);
    let rho_max = w.powf(1.0 / params.gamma());
    if rho > rho_max {
        // beyond this density the velocity would be negative
        return Err(Error::RhoOutOfRange {
            rho,
            range: format!("({}, {rho_max}]", u0.rho),
        });
    }
    let right = State::raw((w - pressure(rho, params)).max(0.0), rho, u0.a);
    let sigma = shock_speed(u0, &right, params)?;
    Ok((right, sigma))
}

/// `sigma = u + rho0 (rho0^g - rho^g) / (rho - rho0)` for two states on one
/// shock curve.
pub fn shock_speed(left: &State, right: &State, params: &ModelParams) -> Result<f64> {
    if right.rho == left.rho {
        return Err(Error::DegenerateJump { rho: left.rho });
    }
    let dp = pressure(left.rho, params) - pressure(right.rho, params);
    Ok(right.u + left.rho * dp / (right.rho - left.rho))
}

/// Root `x > 1` of `x (x^g - 1) / (x - 1) = kappa`, which requires
/// `kappa > g`. For `kappa <= g` the only admissible root is `x = 1`.
fn zero_speed_ratio(kappa: f64, gamma: f64) -> Result<f64> {
    if kappa <= gamma {
        return Ok(1.0);
    }
    // written in y = x - 1 so that the removable singularity at x = 1 is exact
    let h = |y: f64| (1.0 + y) * (gamma * y.ln_1p()).exp_m1() / y - kappa;
    let y_lo = 1e-300;
    let y_hi = expand_until_positive(h, 0.5)?;
    Ok(1.0 + bisect(h, y_lo, y_hi)?)
}

/// The state on the shock curve of `u0 in D2` reached by a zero-speed shock.
pub fn zero_speed_shock_image(u0: &State, params: &ModelParams) -> Result<State> {
    if classify(u0, params, SONIC_TOL) != Region::D2 {
        return Err(Error::NotInD2(*u0));
    }
    zero_speed_image_unchecked(u0, params)
}

/// As [`zero_speed_shock_image`], but a sonic (or subsonic) state maps to
/// itself.
pub(crate) fn zero_speed_image_unchecked(u0: &State, params: &ModelParams) -> Result<State> {
    let g = params.gamma();
    let p0 = pressure(u0.rho, params);
    let x = zero_speed_ratio(u0.u / p0, g)?;
    if x == 1.0 {
        return Ok(*u0);
    }
    let rho = x * u0.rho;
    let w = u0.u + p0;
    Ok(State::raw(w - pressure(rho, params), rho, u0.a))
}

pub fn contact_target(um: &State, rho: f64) -> State {
    State::raw(um.u, rho, um.a)
}

/// `(k0, k1, k2)` of the stationary-jump function for left state `u0` and
/// target width `a`.
pub fn stationary_coefficients(u0: &State, a: f64, params: &ModelParams) -> Result<(f64, f64, f64)> {
    if !(u0.u > 0.0 && u0.rho > 0.0) {
        return Err(Error::DegenerateLeftState(*u0));
    }
    let g = params.gamma();
    let e = g / (1.0 + g);
    let c = g / (1.0 + 2.0 * g);
    let flux = u0.a * u0.rho * u0.u / a;
    let k0 = flux.powf(e);
    let k1 = u0.u.powf(e) * (pressure(u0.rho, params) + c * u0.u);
    let k2 = c * flux.powf(1.0 + e);
    Ok((k0, k1, k2))
}

#[inline]
fn f_with(k: (f64, f64, f64), rho: f64, g: f64) -> f64 {
    let (k0, k1, k2) = k;
    k0 * rho.powf(g + 1.0) - k1 * rho.powf((1.0 + 2.0 * g) / (1.0 + g)) + k2
}

/// `F(rho) = k0 rho^(g+1) - k1 rho^((1+2g)/(1+g)) + k2`; its zeros are the
/// densities reachable from `u0` by a stationary jump to width `a`.
pub fn stationary_f(rho: f64, u0: &State, a: f64, params: &ModelParams) -> Result<f64> {
    let k = stationary_coefficients(u0, a, params)?;
    Ok(f_with(k, rho, params.gamma()))
}

fn rho_min_with(k: (f64, f64, f64), g: f64) -> f64 {
    let (k0, k1, _) = k;
    (k1 * (1.0 + 2.0 * g) / (k0 * (g + 1.0).powi(2))).powf((1.0 + g) / (g * g))
}

pub fn stationary_roots(u0: &State, a: f64, params: &ModelParams) -> Result<StationaryRoots> {
    let g = params.gamma();
    let k = stationary_coefficients(u0, a, params)?;
    let rho_min = rho_min_with(k, g);
    let f = |r: f64| f_with(k, r, g);
    let f_min = f(rho_min);
    // F(rho_min) at rounding level is the coincident-root (resonant) case
    let scale = k.2.max(k.1 * rho_min.powf((1.0 + 2.0 * g) / (1.0 + g))).max(1.0);
    if f_min.abs() <= 1e-10 * scale {
        return Ok(StationaryRoots {
            rho_star: rho_min,
            rho_star_upper: rho_min,
            rho_min,
        });
    }
    if f_min > 0.0 {
        return Err(Error::NoStationaryWave {
            from: *u0,
            a_target: a,
            f_min,
        });
    }
    // F decreases on (0, rho_min) from k2 > 0 and increases beyond it
    let rho_star = bisect(f, 0.0, rho_min)?;
    let hi = expand_until_positive(f, rho_min)?;
    let rho_star_upper = bisect(f, rho_min, hi)?;
    Ok(StationaryRoots {
        rho_star,
        rho_star_upper,
        rho_min,
    })
}

/// Stationary wave from `u0` to width `a_target` on the root chosen by the
/// region of `u0` (the global entropy condition).
pub fn stationary_wave(u0: &State, a_target: f64, params: &ModelParams) -> Result<State> {
    if a_target == u0.a {
        return Ok(*u0);
    }
    match classify(u0, params, SONIC_TOL) {
        Region::D2 => stationary_wave_branch(u0, a_target, StationaryBranch::Supersonic, params),
        Region::D1 | Region::GammaZero => {
            stationary_wave_branch(u0, a_target, StationaryBranch::Subsonic, params)
        }
        Region::GammaPlus => Err(Error::OnSonicBoundary(*u0)),
        Region::Vacuum => Ok(u0.with_width(a_target)),
    }
}

/// Stationary wave from `u0` to width `a_target` on an explicitly chosen
/// branch. Needed for sonic left states, where both branches are admissible.
pub fn stationary_wave_branch(
    u0: &State,
    a_target: f64,
    branch: StationaryBranch,
    params: &ModelParams,
) -> Result<State> {
    if u0.rho == 0.0 {
        return Ok(u0.with_width(a_target));
    }
    if a_target == u0.a {
        let region = classify(u0, params, SONIC_TOL);
        let same_side = matches!(
            (region, branch),
            (Region::GammaPlus, _)
                | (Region::D2, StationaryBranch::Supersonic)
                | (Region::D1 | Region::GammaZero, StationaryBranch::Subsonic)
        );
        if same_side {
            return Ok(*u0);
        }
    }
    if u0.u == 0.0 {
        // limit u0 -> 0 of the subsonic root: rho^g a stays constant
        return match branch {
            StationaryBranch::Subsonic => {
                let rho = u0.rho * (a_target / u0.a).powf(1.0 / params.gamma());
                Ok(State::raw(0.0, rho, a_target))
            }
            StationaryBranch::Supersonic => Err(Error::DegenerateLeftState(*u0)),
        };
    }
    let roots = stationary_roots(u0, a_target, params)?;
    let rho = match branch {
        StationaryBranch::Supersonic => roots.rho_star,
        StationaryBranch::Subsonic => roots.rho_star_upper,
    };
    let flux = u0.a * u0.rho * u0.u;
    Ok(State::raw(flux / (a_target * rho), rho, a_target))
}

/// Point of the composite curve `L`: a stationary jump from `start` to
/// `a_mid`, a zero-speed shock, then a stationary jump to `a1`.
///
/// `start` is the left state `U-` in D2, or the sonic point `U_C`.
pub fn composite_l_state(start: &State, a_mid: f64, a1: f64, params: &ModelParams) -> Result<State> {
    let a0 = start.a;
    let (lo, hi) = if a0 <= a1 { (a0, a1) } else { (a1, a0) };
    if !(lo..=hi).contains(&a_mid) {
        return Err(Error::InvalidState(format!(
            "intermediate width {a_mid} outside [{lo}, {hi}]"
        )));
    }
    let first = stationary_wave_branch(start, a_mid, StationaryBranch::Supersonic, params)?;
    let shocked = zero_speed_image_unchecked(&first, params)?;
    stationary_wave_branch(&shocked, a1, StationaryBranch::Subsonic, params)
}

/// The three intermediate states `(U1, U1~, U2)` of the composite `L` wave.
pub fn composite_l_chain(
    start: &State,
    a_mid: f64,
    a1: f64,
    params: &ModelParams,
) -> Result<(State, State, State)> {
    let first = stationary_wave_branch(start, a_mid, StationaryBranch::Supersonic, params)?;
    let shocked = zero_speed_image_unchecked(&first, params)?;
    let last = stationary_wave_branch(&shocked, a1, StationaryBranch::Subsonic, params)?;
    Ok((first, shocked, last))
}

/// `c = u / (gamma rho^gamma)`; `c > 1` exactly in D2.
pub fn zero_speed_coefficient(s: &State, params: &ModelParams) -> Result<f64> {
    if s.rho == 0.0 {
        return Err(Error::VacuumState(*s));
    }
    Ok(s.u / (params.gamma() * pressure(s.rho, params)))
}

/// Coefficient `c1 = c / x1^(g+1)` of the zero-speed shock image, where
/// `x1 > 1` is the nontrivial root of `x^(g+1) - (c g + 1) x + c g`.
pub fn shock_image_coefficient(c: f64, params: &ModelParams) -> Result<f64> {
    if c <= 1.0 {
        return Err(Error::NotSupersonic(c));
    }
    let g = params.gamma();
    let x1 = zero_speed_ratio(c * g, g)?;
    Ok(c / x1.powf(g + 1.0))
}
