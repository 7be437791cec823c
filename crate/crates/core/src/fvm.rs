//! Lax-Friedrichs finite-volume scheme for the conservative pair
//! `m = a rho`, `q = a rho (u + p)` with static, cell-centred width `a`.
//!
//! ```text
//! U_j^{n+1} = U_j^n - lambda (g(U_j, U_{j+1}) - g(U_{j-1}, U_j))
//!           + (lambda / 2) (0, (rho u p)_j (a_{j+1} - a_{j-1}))
//! g(U, V)   = (f(U) + f(V)) / 2 - (V - U) / (2 lambda)
//! ```
//!
//! with `lambda = dt / dx` and zero-gradient ghost cells.

use crate::error::{Error, Result};
use crate::model::{pressure, ModelParams};

/// Cells with `m < VACUUM_FLOOR * a` are treated as vacuum.
pub const VACUUM_FLOOR: f64 = 1e-12;

/// Largest admissible Courant number `lambda * max |eigenvalue|`.
pub const CFL_LIMIT: f64 = 1.0;

/// Piecewise-linear width `a(x)`, constant beyond the first and last
/// breakpoints. Two consecutive breakpoints may share `x` to encode a jump;
/// the right value applies at the jump itself.
#[derive(Debug, Clone, PartialEq)]
pub struct WidthProfile {
    breakpoints: Vec<(f64, f64)>,
}

impl WidthProfile {
    pub fn new(breakpoints: Vec<(f64, f64)>) -> Result<Self> {
        if breakpoints.is_empty() {
            return Err(Error::InvalidProfile("no breakpoints".into()));
        }
        for &(x, a) in &breakpoints {
            if !x.is_finite() || !(a.is_finite() && a > 0.0) {
                return Err(Error::InvalidProfile(format!(
                    "breakpoint ({x}, {a}) needs finite x and positive finite a"
                )));
            }
        }
        for (i, w) in breakpoints.windows(2).enumerate() {
            if w[1].0 < w[0].0 {
                return Err(Error::InvalidProfile(format!(
                    "breakpoints not increasing at index {}",
                    i + 1
                )));
            }
            if i + 2 < breakpoints.len() && w[0].0 == w[1].0 && breakpoints[i + 2].0 == w[1].0 {
                return Err(Error::InvalidProfile(format!(
                    "more than two breakpoints at x = {}",
                    w[0].0
                )));
            }
        }
        Ok(Self { breakpoints })
    }

    pub fn constant(a: f64) -> Result<Self> {
        Self::new(vec![(0.0, a)])
    }

    /// Width `a0` left of `x0` and `a1` from `x0` on.
    pub fn jump(x0: f64, a0: f64, a1: f64) -> Result<Self> {
        Self::new(vec![(x0, a0), (x0, a1)])
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    pub fn eval(&self, x: f64) -> f64 {
        let bp = &self.breakpoints;
        let first = bp[0];
        if x < first.0 {
            return first.1;
        }
        // last breakpoint with bx <= x
        let k = bp.partition_point(|&(bx, _)| bx <= x) - 1;
        match bp.get(k + 1) {
            None => bp[k].1,
            Some(&(x1, a1)) => {
                let (x0, a0) = bp[k];
                a0 + (a1 - a0) * (x - x0) / (x1 - x0)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_lo: f64,
    pub x_hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(x_lo: f64, x_hi: f64, n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidGrid(format!("need at least 4 cells, got {n}")));
        }
        if !(x_lo.is_finite() && x_hi.is_finite() && x_hi > x_lo) {
            return Err(Error::InvalidGrid(format!("empty domain [{x_lo}, {x_hi}]")));
        }
        Ok(Self { x_lo, x_hi, n })
    }

    #[inline]
    pub fn dx(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.n as f64
    }

    #[inline]
    pub fn center(&self, j: usize) -> f64 {
        self.x_lo + (j as f64 + 0.5) * self.dx()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.center(j)).collect()
    }
}

/// Conservative variables of one cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellState {
    pub m: f64,
    pub q: f64,
    pub a: f64,
}

impl CellState {
    pub fn from_primitive(u: f64, rho: f64, a: f64, params: &ModelParams) -> Self {
        let m = a * rho;
        Self {
            m,
            q: m * (u + pressure(rho, params)),
            a,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellField {
    pub grid: Grid,
    pub m: Vec<f64>,
    pub q: Vec<f64>,
    pub a: Vec<f64>,
}

impl CellField {
    /// Samples `init(x) -> (u, rho)` and the width profile at cell centres.
    pub fn from_fn<F>(grid: Grid, profile: &WidthProfile, params: &ModelParams, init: F) -> Self
    where
        F: Fn(f64) -> (f64, f64),
    {
        let n = grid.n;
        let (mut m, mut q, mut a) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
        for x in grid.centers() {
            let (u, rho) = init(x);
            let c = CellState::from_primitive(u, rho, profile.eval(x), params);
            m.push(c.m);
            q.push(c.q);
            a.push(c.a);
        }
        Self { grid, m, q, a }
    }

    #[inline]
    pub fn cell(&self, j: usize) -> CellState {
        CellState {
            m: self.m[j],
            q: self.q[j],
            a: self.a[j],
        }
    }

    /// `(u, rho)` per cell, without touching any counters.
    pub fn primitives(&self, params: &ModelParams) -> Vec<(f64, f64)> {
        (0..self.grid.n)
            .map(|j| {
                let r = primitive_recovery(self.m[j], self.q[j], self.a[j], params);
                (r.u, r.rho)
            })
            .collect()
    }

    /// `sum_j m_j dx`.
    pub fn total_mass(&self) -> f64 {
        self.m.iter().sum::<f64>() * self.grid.dx()
    }
}

/// Result of inverting the conservative map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recovered {
    pub u: f64,
    pub rho: f64,
    pub vacuum: bool,
    pub clamped: bool,
}

/// `rho = m / a`, `u = q / m - rho^gamma`. Below the vacuum floor the cell
/// is vacuum with `u = 0`; negative `u` is clamped to zero and flagged.
pub fn primitive_recovery(m: f64, q: f64, a: f64, params: &ModelParams) -> Recovered {
    if !(m >= VACUUM_FLOOR * a) {
        return Recovered {
            u: 0.0,
            rho: m.max(0.0) / a,
            vacuum: true,
            clamped: false,
        };
    }
    let rho = m / a;
    let u = q / m - pressure(rho, params);
    if u < 0.0 {
        Recovered {
            u: 0.0,
            rho,
            vacuum: false,
            clamped: true,
        }
    } else {
        Recovered {
            u,
            rho,
            vacuum: false,
            clamped: false,
        }
    }
}

/// Physical flux of the conservative pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FluxForm {
    /// `(a rho u, a rho u (u + p))`, the flux of the balance law.
    #[default]
    Consistent,
    /// `(a rho, a rho (u + p))`, without the transport factor `u`.
    Literal,
}

pub fn physical_flux(c: &CellState, u: f64, form: FluxForm) -> (f64, f64) {
    match form {
        FluxForm::Consistent => (c.m * u, c.q * u),
        FluxForm::Literal => (c.m, c.q),
    }
}

/// Lax-Friedrichs flux from precomputed physical fluxes.
#[inline]
fn lf_flux(l: &CellState, fl: (f64, f64), r: &CellState, fr: (f64, f64), lambda: f64) -> (f64, f64) {
    let k = 0.5 / lambda;
    (
        0.5 * (fl.0 + fr.0) - k * (r.m - l.m),
        0.5 * (fl.1 + fr.1) - k * (r.q - l.q),
    )
}

pub fn numerical_flux(
    left: &CellState,
    right: &CellState,
    lambda: f64,
    params: &ModelParams,
    form: FluxForm,
) -> (f64, f64) {
    let ul = primitive_recovery(left.m, left.q, left.a, params).u;
    let ur = primitive_recovery(right.m, right.q, right.a, params).u;
    lf_flux(
        left,
        physical_flux(left, ul, form),
        right,
        physical_flux(right, ur, form),
        lambda,
    )
}

/// Event counts accumulated over a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Diagnostics {
    pub steps: usize,
    /// Cell evaluations that hit the vacuum floor.
    pub vacuum_floor: usize,
    /// Cell evaluations whose recovered velocity was negative.
    pub negative_velocity_clamps: usize,
    /// Steps taken with the fallback `dt = dx` because no wave moved.
    pub degenerate_dt: usize,
}

/// Largest `max(|lambda1|, |lambda2|)` over the field.
pub fn max_speed(field: &CellField, params: &ModelParams) -> f64 {
    let g = params.gamma();
    (0..field.grid.n)
        .map(|j| {
            let r = primitive_recovery(field.m[j], field.q[j], field.a[j], params);
            if r.vacuum {
                0.0
            } else {
                (r.u - g * pressure(r.rho, params)).abs().max(r.u.abs())
            }
        })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DtChoice {
    pub dt: f64,
    /// No wave moves; `dt = dx` was used.
    pub degenerate: bool,
}

pub fn cfl_dt(field: &CellField, cfl: f64, params: &ModelParams) -> Result<DtChoice> {
    if !(cfl > 0.0 && cfl <= CFL_LIMIT) {
        return Err(Error::InvalidParams(format!("CFL number must lie in (0, 1], got {cfl}")));
    }
    let s = max_speed(field, params);
    let dx = field.grid.dx();
    Ok(if s > 0.0 {
        DtChoice {
            dt: cfl * dx / s,
            degenerate: false,
        }
    } else {
        DtChoice {
            dt: dx,
            degenerate: true,
        }
    })
}

/// Outcome of one step: the new field and the numerical mass fluxes through
/// the left and right domain boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutput {
    pub field: CellField,
    pub boundary_mass_flux: (f64, f64),
}

pub fn lf_step(
    field: &CellField,
    lambda: f64,
    params: &ModelParams,
    form: FluxForm,
    diag: &mut Diagnostics,
) -> Result<StepOutput> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParams(format!("lambda must be positive, got {lambda}")));
    }
    let n = field.grid.n;
    let g = params.gamma();

    let mut cells = Vec::with_capacity(n);
    let mut flux = Vec::with_capacity(n);
    let mut source = Vec::with_capacity(n);
    let mut speed: f64 = 0.0;
    for j in 0..n {
        let c = field.cell(j);
        let r = primitive_recovery(c.m, c.q, c.a, params);
        diag.vacuum_floor += r.vacuum as usize;
        diag.negative_velocity_clamps += r.clamped as usize;
        let p = pressure(r.rho, params);
        if !r.vacuum {
            speed = speed.max((r.u - g * p).abs()).max(r.u);
        }
        flux.push(physical_flux(&c, r.u, form));
        source.push(r.rho * r.u * p);
        cells.push(c);
    }
    let courant = lambda * speed;
    if courant > CFL_LIMIT * (1.0 + 1e-12) {
        return Err(Error::CflViolation {
            courant,
            limit: CFL_LIMIT,
        });
    }

    // interface fluxes g_{j-1/2}, j = 0..=n, ghosts copy the edge cells
    let iface: Vec<(f64, f64)> = (0..=n)
        .map(|i| {
            let l = i.saturating_sub(1);
            let r = i.min(n - 1);
            lf_flux(&cells[l], flux[l], &cells[r], flux[r], lambda)
        })
        .collect();

    let mut m = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    for j in 0..n {
        let a_l = field.a[j.saturating_sub(1)];
        let a_r = field.a[(j + 1).min(n - 1)];
        m.push(cells[j].m - lambda * (iface[j + 1].0 - iface[j].0));
        q.push(cells[j].q - lambda * (iface[j + 1].1 - iface[j].1) + 0.5 * lambda * source[j] * (a_r - a_l));
    }
    Ok(StepOutput {
        field: CellField {
            grid: field.grid,
            m,
            q,
            a: field.a.clone(),
        },
        boundary_mass_flux: (iface[0].0, iface[n].0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    pub cfl: f64,
    pub t_end: f64,
    /// Fix `lambda = dt/dx` from the initial field instead of adapting it.
    pub fixed_lambda: bool,
    pub flux: FluxForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub field: CellField,
    pub t: f64,
    pub diagnostics: Diagnostics,
    /// `|M(t) - M(0) + int (g_right - g_left) dt| / max(M(0), tiny)`.
    pub mass_balance_residual: f64,
    pub warnings: Vec<String>,
}

/// Fraction of the domain next to each boundary watched for arriving waves.
const BOUNDARY_BAND: f64 = 0.05;

fn boundary_disturbed(initial: &CellField, last: &CellField) -> Vec<&'static str> {
    let n = initial.grid.n;
    let band = ((n as f64 * BOUNDARY_BAND).ceil() as usize).clamp(1, n);
    let moved = |range: std::ops::Range<usize>| {
        range.into_iter().any(|j| {
            let dm = (last.m[j] - initial.m[j]).abs() / initial.m[j].abs().max(1.0);
            let dq = (last.q[j] - initial.q[j]).abs() / initial.q[j].abs().max(1.0);
            dm > 1e-9 || dq > 1e-9
        })
    };
    let mut sides = Vec::new();
    if moved(0..band) {
        sides.push("left");
    }
    if moved(n - band..n) {
        sides.push("right");
    }
    sides
}

/// Advances `initial` to `cfg.t_end`, calling `observer(t, field)` at the
/// start and after every step.
pub fn simulate<O>(initial: CellField, cfg: &RunConfig, mut observer: O) -> Result<RunResult>
where
    O: FnMut(f64, &CellField),
{
    if !(cfg.t_end >= 0.0 && cfg.t_end.is_finite()) {
        return Err(Error::InvalidParams(format!("end time must be nonnegative, got {}", cfg.t_end)));
    }
    let params = &cfg.params;
    let dx = initial.grid.dx();
    let mass0 = initial.total_mass();
    let mut diag = Diagnostics::default();

    let fixed = if cfg.fixed_lambda {
        let c = cfl_dt(&initial, cfg.cfl, params)?;
        diag.degenerate_dt += c.degenerate as usize;
        Some(c.dt / dx)
    } else {
        None
    };

    let mut field = initial.clone();
    let mut t = 0.0;
    let mut outflow = 0.0;
    observer(t, &field);
    while t < cfg.t_end {
        let dt_full = match fixed {
            Some(lambda) => lambda * dx,
            None => {
                let c = cfl_dt(&field, cfg.cfl, params)?;
                diag.degenerate_dt += c.degenerate as usize;
                c.dt
            }
        };
        let last = t + dt_full >= cfg.t_end;
        let dt = if last { cfg.t_end - t } else { dt_full };
        if dt <= 0.0 {
            break;
        }
        let step = lf_step(&field, dt / dx, params, cfg.flux, &mut diag)?;
        diag.steps += 1;
        if let Some(cell) = (0..step.field.grid.n)
            .find(|&j| !(step.field.m[j].is_finite() && step.field.q[j].is_finite()))
        {
            return Err(Error::NonFiniteState {
                step: diag.steps,
                cell,
            });
        }
        let (g_left, g_right) = step.boundary_mass_flux;
        outflow += dt * (g_right - g_left);
        field = step.field;
        t = if last { cfg.t_end } else { t + dt };
        observer(t, &field);
    }

    let mass = field.total_mass();
    let mass_balance_residual = (mass - mass0 + outflow).abs() / mass0.abs().max(f64::MIN_POSITIVE);
    let warnings = boundary_disturbed(&initial, &field)
        .into_iter()
        .map(|side| format!("waves reached the {side} 5% of the domain by t = {t}; boundary effects possible"))
        .collect();
    Ok(RunResult {
        field,
        t,
        diagnostics: diag,
        mass_balance_residual,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> ModelParams {
        ModelParams::new(2.0).unwrap()
    }

    #[test]
    fn profile_evaluation() {
        let ramp = WidthProfile::new(vec![(3.0, 2.0), (8.0, 3.0)]).unwrap();
        assert_eq!(ramp.eval(0.0), 2.0);
        assert_eq!(ramp.eval(5.5), 2.5);
        assert_eq!(ramp.eval(20.0), 3.0);
        let jump = WidthProfile::jump(6.0, 2.0, 3.0).unwrap();
        assert_eq!(jump.eval(5.999), 2.0);
        assert_eq!(jump.eval(6.0), 3.0);
        assert!(WidthProfile::new(vec![(1.0, 0.0)]).is_err());
        assert!(WidthProfile::new(vec![(2.0, 1.0), (1.0, 1.0)]).is_err());
        assert!(WidthProfile::new(vec![(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]).is_err());
    }

    #[test]
    fn grid_checks() {
        assert!(Grid::new(0.0, 1.0, 3).is_err());
        assert!(Grid::new(1.0, 1.0, 10).is_err());
        let g = Grid::new(0.0, 20.0, 2000).unwrap();
        assert_eq!(g.dx(), 0.01);
        assert!((g.center(0) - 0.005).abs() < 1e-15);
    }

    #[test]
    fn recovery_round_trip_and_floors() {
        let g = p2();
        let c = CellState::from_primitive(1.5, 0.5, 2.0, &g);
        let r = primitive_recovery(c.m, c.q, c.a, &g);
        assert!((r.u - 1.5).abs() < 1e-15 && (r.rho - 0.5).abs() < 1e-15);
        let r = primitive_recovery(0.0, 0.0, 2.0, &g);
        assert!(r.vacuum && r.rho == 0.0 && r.u == 0.0);
        let r = primitive_recovery(1.0, 0.1, 2.0, &g);
        assert!(r.clamped && r.u == 0.0);
    }

    #[test]
    fn flux_examples() {
        let g = p2();
        let c = CellState::from_primitive(1.5, 0.5, 2.0, &g);
        assert_eq!(physical_flux(&c, 1.5, FluxForm::Literal), (1.0, 1.75));
        assert_eq!(physical_flux(&c, 1.5, FluxForm::Consistent), (1.5, 2.625));
        let same = numerical_flux(&c, &c, 0.3, &g, FluxForm::Consistent);
        assert_eq!(same, (1.5, 2.625));
        let d = CellState::from_primitive(0.75, 1.0, 3.0, &g);
        let (x, y) = (
            numerical_flux(&c, &d, 0.3, &g, FluxForm::Consistent),
            numerical_flux(&d, &c, 0.3, &g, FluxForm::Consistent),
        );
        let fd = physical_flux(&d, 0.75, FluxForm::Consistent);
        assert!((x.0 + y.0 - 1.5 - fd.0).abs() < 1e-14);
        assert!((x.1 + y.1 - 2.625 - fd.1).abs() < 1e-14);
    }

    #[test]
    fn cfl_dt_examples() {
        let g = p2();
        let grid = Grid::new(0.0, 1.0, 10).unwrap();
        let prof = WidthProfile::constant(2.0).unwrap();
        let f = CellField::from_fn(grid, &prof, &g, |_| (1.5, 0.5));
        let c = cfl_dt(&f, 0.5, &g).unwrap();
        assert!((c.dt - 0.5 * 0.1 / 1.5).abs() < 1e-16 && !c.degenerate);
        let vac = CellField::from_fn(grid, &prof, &g, |_| (0.0, 0.0));
        let c = cfl_dt(&vac, 0.5, &g).unwrap();
        assert!(c.degenerate && c.dt == grid.dx());
        assert!(cfl_dt(&f, 1.5, &g).is_err());
    }

    #[test]
    fn uniform_field_is_preserved() {
        let g = p2();
        let grid = Grid::new(0.0, 1.0, 8).unwrap();
        let prof = WidthProfile::constant(2.0).unwrap();
        let f = CellField::from_fn(grid, &prof, &g, |_| (1.5, 0.5));
        let mut d = Diagnostics::default();
        let out = lf_step(&f, 0.3, &g, FluxForm::Consistent, &mut d).unwrap();
        assert_eq!(out.field, f);
    }

    #[test]
    fn varying_width_one_step_by_hand() {
        // five cells, (u, rho) = (1, 0.5), a = 1, 1, 2, 3, 3, lambda = 0.2
        let g = p2();
        let grid = Grid::new(0.0, 5.0, 5).unwrap();
        let prof = WidthProfile::new(vec![(1.5, 1.0), (3.5, 3.0)]).unwrap();
        let f = CellField::from_fn(grid, &prof, &g, |_| (1.0, 0.5));
        assert_eq!(f.a, vec![1.0, 1.0, 2.0, 3.0, 3.0]);
        let mut d = Diagnostics::default();
        let out = lf_step(&f, 0.2, &g, FluxForm::Consistent, &mut d).unwrap().field;
        // m = 0.5 a, f_m = m, g_{j+1/2} = (m_j + m_{j+1})/2 - 2.5 (m_{j+1} - m_j)
        let m: Vec<f64> = f.a.iter().map(|a| 0.5 * a).collect();
        let gi = |l: f64, r: f64| 0.5 * (l + r) - 2.5 * (r - l);
        let expect_m2 = m[2] - 0.2 * (gi(m[2], m[3]) - gi(m[1], m[2]));
        assert!((out.m[2] - expect_m2).abs() < 1e-15);
        assert_ne!(out.m[2], f.m[2]);
        // q source in the middle cell: 0.1 * rho u p * (a3 - a1) = 0.1 * 0.125 * 2
        let qs: Vec<f64> = f.q.clone();
        let gq = |l: f64, r: f64| 0.5 * (l + r) * 1.0 - 2.5 * (r - l);
        let expect_q2 = qs[2] - 0.2 * (gq(qs[2], qs[3]) - gq(qs[1], qs[2])) + 0.1 * 0.125 * 2.0;
        assert!((out.q[2] - expect_q2).abs() < 1e-15);
    }

    #[test]
    fn cfl_violation_detected() {
        let g = p2();
        let grid = Grid::new(0.0, 1.0, 8).unwrap();
        let prof = WidthProfile::constant(2.0).unwrap();
        let f = CellField::from_fn(grid, &prof, &g, |_| (1.5, 0.5));
        let mut d = Diagnostics::default();
        assert!(matches!(
            lf_step(&f, 1.0, &g, FluxForm::Consistent, &mut d),
            Err(Error::CflViolation { .. })
        ));
    }

    #[test]
    fn zero_end_time_returns_initial_field() {
        let g = p2();
        let grid = Grid::new(0.0, 20.0, 40).unwrap();
        let prof = WidthProfile::jump(6.0, 2.0, 3.0).unwrap();
        let f = CellField::from_fn(grid, &prof, &g, |x| if x < 6.0 { (1.5, 0.5) } else { (0.75, 1.0) });
        let cfg = RunConfig {
            params: g,
            cfl: 0.5,
            t_end: 0.0,
            fixed_lambda: false,
            flux: FluxForm::Consistent,
        };
        let r = simulate(f.clone(), &cfg, |_, _| {}).unwrap();
        assert_eq!(r.field, f);
        assert_eq!(r.diagnostics.steps, 0);
    }
}
