//! Riemann problem for left data `(u-, rho-, a0)` and right data
//! `(u+, rho+, a1)`.
//!
//! Every solution ends with a contact at speed `u+`, so the problem reduces
//! to finding the state with velocity `u+` on the forward curve issued from
//! the left datum. That curve is a chain of branches (a first-family wave
//! followed by a stationary jump, the composite `L` wave, a stationary jump
//! followed by a first-family wave, vacuum); each branch is either solved in
//! closed form or intersected with `{u = u+}` by bracketed bisection in its
//! own parameter. The case label follows from the branch that was hit.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{
    classify, lambda1, pressure, riemann_invariant_1, ModelParams, Region, State, SONIC_TOL,
};
use crate::roots::bisect;
use crate::waves::{
    composite_l_chain, rarefaction_interior, rarefaction_target, shock_speed, shock_target,
    stationary_wave_branch, zero_speed_image_unchecked, StationaryBranch, Wave, WaveKind,
};

/// Relative tolerance for assigning `u+` to a case boundary.
pub const TIE_TOL: f64 = 1e-10;

const SCAN_SAMPLES: usize = 32;

#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseLabel {
    C1_1,
    C1_2,
    C1_3_Vacuum,
    C1_4,
    C1_5_TripleZero,
    C2_1,
    C2_2,
    C2_3_Vacuum,
    C2_4_Shock,
    C2_4_Rarefaction,
    C2_5_TripleZero,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::C1_1 => "C1_1",
            CaseLabel::C1_2 => "C1_2",
            CaseLabel::C1_3_Vacuum => "C1_3_Vacuum",
            CaseLabel::C1_4 => "C1_4",
            CaseLabel::C1_5_TripleZero => "C1_5_TripleZero",
            CaseLabel::C2_1 => "C2_1",
            CaseLabel::C2_2 => "C2_2",
            CaseLabel::C2_3_Vacuum => "C2_3_Vacuum",
            CaseLabel::C2_4_Shock => "C2_4_Shock",
            CaseLabel::C2_4_Rarefaction => "C2_4_Rarefaction",
            CaseLabel::C2_5_TripleZero => "C2_5_TripleZero",
        }
    }

    /// Whether the solution uses the composite standing-wave curve `L`.
    pub fn is_triple_zero(&self) -> bool {
        matches!(self, CaseLabel::C1_5_TripleZero | CaseLabel::C2_5_TripleZero)
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Set when the forward curve folds (narrowing road) and `u+` is reached
/// more than once.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicityNote {
    pub chosen: CaseLabel,
    pub intersections: Vec<CaseLabel>,
}

impl fmt::Display for MultiplicityNote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all: Vec<_> = self.intersections.iter().map(|l| l.as_str()).collect();
        write!(
            f,
            "folded wave curve: {} solutions ({}); returning {} (standing-wave composite not selected)",
            all.len(),
            all.join(", "),
            self.chosen
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiemannSolution {
    pub left: State,
    pub right: State,
    pub waves: Vec<Wave>,
    pub label: CaseLabel,
    pub multiplicity_note: Option<MultiplicityNote>,
}

impl RiemannSolution {
    pub fn pattern(&self) -> Vec<WaveKind> {
        self.waves.iter().map(|w| w.kind).collect()
    }

    /// Pattern string such as `S0+S+J`.
    pub fn pattern_string(&self) -> String {
        pattern_string(&self.pattern())
    }

    /// States between consecutive waves.
    pub fn intermediate_states(&self) -> Vec<State> {
        self.waves.iter().take(self.waves.len().saturating_sub(1)).map(|w| w.right).collect()
    }
}

pub fn pattern_string(kinds: &[WaveKind]) -> String {
    kinds.iter().map(|k| k.symbol()).collect::<Vec<_>>().join("+")
}

/// The distinguished states of the case analysis. For a subsonic left state
/// the chain starts from the sonic point `U_C` instead of `U-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Vacuum threshold: velocity where the rarefaction from `star` meets `rho = 0`.
    pub u_bar: f64,
    /// `U-*` (or `U_C*`): supersonic stationary image at the right width.
    pub star: State,
    /// `U~-*` (or `U~_C*`): zero-speed shock image of `star`.
    pub tilde_star: State,
    /// `U~-^*` (or `U_C^*`): subsonic stationary image at the right width of the
    /// zero-speed shock image of the left state.
    pub tilde_upper: State,
    /// Sonic point `U_C` on the rarefaction curve of a subsonic left state.
    pub sonic: Option<State>,
}

impl Thresholds {
    pub fn u_star(&self) -> f64 {
        self.star.u
    }
    pub fn u_tilde_star(&self) -> f64 {
        self.tilde_star.u
    }
    pub fn u_tilde_upper(&self) -> f64 {
        self.tilde_upper.u
    }
    pub fn u_c(&self) -> Option<f64> {
        self.sonic.map(|s| s.u)
    }
}

/// Sonic point of the rarefaction curve through `s`: `u = g rho^g` with
/// `u + rho^g = w`.
fn sonic_point(s: &State, params: &ModelParams) -> State {
    if classify(s, params, SONIC_TOL) == Region::GammaPlus {
        return *s;
    }
    let g = params.gamma();
    let w = riemann_invariant_1(s, params);
    let rho_c = (w / (1.0 + g)).powf(1.0 / g);
    State::raw(g * pressure(rho_c, params), rho_c, s.a)
}

fn is_supersonic(s: &State, params: &ModelParams) -> bool {
    classify(s, params, SONIC_TOL) == Region::D2
}

pub fn compute_thresholds(u_minus: &State, a1: f64, params: &ModelParams) -> Result<Thresholds> {
    if u_minus.is_vacuum() {
        return Err(Error::VacuumLeftState(*u_minus));
    }
    let g = params.gamma();
    let (origin, sonic) = if is_supersonic(u_minus, params) {
        (*u_minus, None)
    } else {
        let c = sonic_point(u_minus, params);
        (c, Some(c))
    };
    let star = stationary_wave_branch(&origin, a1, StationaryBranch::Supersonic, params)?;
    let tilde_star = zero_speed_image_unchecked(&star, params)?;
    let tilde_origin = zero_speed_image_unchecked(&origin, params)?;
    let tilde_upper = stationary_wave_branch(&tilde_origin, a1, StationaryBranch::Subsonic, params)?;
    let u_bar = star.u + star.rho.powf(g);
    Ok(Thresholds {
        u_bar,
        star,
        tilde_star,
        tilde_upper,
        sonic,
    })
}

/// One way of reaching velocity `u+`: the waves up to (not including) the
/// final contact, and the state they end in.
#[derive(Debug, Clone)]
struct Candidate {
    label: CaseLabel,
    waves: Vec<Wave>,
    end: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ForwardKind {
    Shock,
    Rarefaction,
    Vacuum,
}

/// First-family wave from `from` (with positive speeds) ending at velocity
/// `u_plus`, opening a vacuum if `u_plus` exceeds the curve's `u`-intercept.
fn forward_wave(from: &State, u_plus: f64, params: &ModelParams) -> Result<(Vec<Wave>, State, ForwardKind)> {
    let g = params.gamma();
    let w = riemann_invariant_1(from, params);
    if u_plus > w {
        let edge = State::raw(w, 0.0, from.a);
        let m = State::raw(u_plus, 0.0, from.a);
        let waves = vec![Wave::rarefaction(*from, edge, params), Wave::vacuum(edge, m)];
        return Ok((waves, m, ForwardKind::Vacuum));
    }
    if u_plus == from.u {
        // zero-strength wave: the boundary between the shock and rarefaction cases
        return Ok((Vec::new(), *from, ForwardKind::Shock));
    }
    if u_plus > from.u {
        let rho = (w - u_plus).powf(1.0 / g);
        let to = State::raw(u_plus, rho, from.a);
        return Ok((vec![Wave::rarefaction(*from, to, params)], to, ForwardKind::Rarefaction));
    }
    let rho = (w - u_plus).powf(1.0 / g);
    let to = State::raw(u_plus, rho, from.a);
    let sigma = shock_speed(from, &to, params)?;
    Ok((vec![Wave::shock(*from, to, sigma)], to, ForwardKind::Shock))
}

fn in_window(u: f64, lo: f64, hi: f64) -> bool {
    let slack = TIE_TOL * u.abs().max(1.0);
    u >= lo - slack && u <= hi + slack
}

/// Parameters `s` in `[lo, hi]` with `f(s) = 0`, found by sampling and
/// bisecting each sign change. Samples where `f` fails are skipped.
fn scan_roots<F>(f: F, lo: f64, hi: f64, scale: f64) -> Vec<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut roots = Vec::new();
    if !(hi > lo) {
        if let Ok(v) = f(lo) {
            if v.abs() <= TIE_TOL * scale {
                roots.push(lo);
            }
        }
        return roots;
    }
    let n = SCAN_SAMPLES;
    let xs: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let vals: Vec<Option<f64>> = xs
        .iter()
        .map(|&s| f(s).ok().filter(|v| v.is_finite()))
        .collect();
    for (i, v) in vals.iter().enumerate() {
        if let Some(v) = v {
            if v.abs() <= TIE_TOL * scale && (i == 0 || i == n) {
                roots.push(xs[i]);
            }
        }
    }
    for i in 0..n {
        if let (Some(v0), Some(v1)) = (vals[i], vals[i + 1]) {
            if v0 != 0.0 && v1 != 0.0 && v0.signum() != v1.signum() {
                let g = |s: f64| f(s).unwrap_or(f64::NAN);
                if let Ok(r) = bisect(g, xs[i], xs[i + 1]) {
                    roots.push(r);
                }
            } else if v1 == 0.0 && i + 1 < n {
                roots.push(xs[i + 1]);
            }
        }
    }
    roots
}

/// Stationary jump to `a1` along the subsonic branch, preceded by a
/// negative-speed first-family wave from `u_minus` to density `rho`.
fn wave_then_jump(
    u_minus: &State,
    rho: f64,
    a1: f64,
    params: &ModelParams,
) -> Result<(Vec<Wave>, State)> {
    let mut waves = Vec::new();
    let mid = if rho > u_minus.rho {
        let (s, sigma) = shock_target(u_minus, rho, params)?;
        waves.push(Wave::shock(*u_minus, s, sigma));
        s
    } else if rho < u_minus.rho {
        let s = rarefaction_target(u_minus, rho, params)?;
        waves.push(Wave::rarefaction(*u_minus, s, params));
        s
    } else {
        *u_minus
    };
    let end = stationary_wave_branch(&mid, a1, StationaryBranch::Subsonic, params)?;
    waves.push(Wave::stationary(mid, end));
    Ok((waves, end))
}

/// The composite `L` wave at intermediate width `a_mid`, issued from `start`
/// (the left state, or the sonic point).
fn composite_waves(start: &State, a_mid: f64, a1: f64, params: &ModelParams) -> Result<(Vec<Wave>, State)> {
    let (first, shocked, last) = composite_l_chain(start, a_mid, a1, params)?;
    let waves = vec![
        Wave::stationary(*start, first),
        Wave::shock(first, shocked, 0.0),
        Wave::stationary(shocked, last),
    ];
    Ok((waves, last))
}

/// Density on the first-family curve through `s` at which `u = 0`.
fn zero_velocity_density(s: &State, params: &ModelParams) -> f64 {
    riemann_invariant_1(s, params).powf(1.0 / params.gamma())
}

fn supersonic_candidates(
    u_minus: &State,
    u_plus: f64,
    a1: f64,
    params: &ModelParams,
) -> Vec<Candidate> {
    let mut out = Vec::new();
    let scale = u_plus.abs().max(1.0);

    // S0 first, then a positive-speed wave
    if let Ok(star) = stationary_wave_branch(u_minus, a1, StationaryBranch::Supersonic, params) {
        if let Ok(tilde_star) = zero_speed_image_unchecked(&star, params) {
            let u_bar = riemann_invariant_1(&star, params);
            if in_window(u_plus, tilde_star.u, u_bar) || u_plus > u_bar {
                if let Ok((fwd, end, kind)) = forward_wave(&star, u_plus, params) {
                    let label = match kind {
                        ForwardKind::Shock => CaseLabel::C1_1,
                        ForwardKind::Rarefaction => CaseLabel::C1_2,
                        ForwardKind::Vacuum => CaseLabel::C1_3_Vacuum,
                    };
                    let mut waves = vec![Wave::stationary(*u_minus, star)];
                    waves.extend(fwd);
                    out.push(Candidate { label, waves, end });
                }
            }
        }
    }

    // negative-speed shock, then S0 on the subsonic branch
    if let Ok(tilde) = zero_speed_image_unchecked(u_minus, params) {
        let rho_hi = zero_velocity_density(u_minus, params);
        let f = |rho: f64| wave_then_jump(u_minus, rho, a1, params).map(|(_, e)| e.u - u_plus);
        for rho in scan_roots(f, tilde.rho, rho_hi, scale) {
            if let Ok((mut waves, end)) = wave_then_jump(u_minus, rho, a1, params) {
                if rho == tilde.rho {
                    waves[0].xi_lo = 0.0;
                    waves[0].xi_hi = 0.0;
                }
                out.push(Candidate {
                    label: CaseLabel::C1_4,
                    waves,
                    end,
                });
            }
        }
    }

    // three zero-speed waves
    if a1 != u_minus.a {
        let f = |a: f64| composite_waves(u_minus, a, a1, params).map(|(_, e)| e.u - u_plus);
        for a in scan_roots(f, u_minus.a.min(a1), u_minus.a.max(a1), scale) {
            if let Ok((waves, end)) = composite_waves(u_minus, a, a1, params) {
                out.push(Candidate {
                    label: CaseLabel::C1_5_TripleZero,
                    waves,
                    end,
                });
            }
        }
    }
    out
}

fn subsonic_candidates(
    u_minus: &State,
    u_plus: f64,
    a1: f64,
    params: &ModelParams,
) -> Vec<Candidate> {
    let mut out = Vec::new();
    let scale = u_plus.abs().max(1.0);
    let sonic = sonic_point(u_minus, params);
    let lead: Vec<Wave> = if sonic == *u_minus {
        Vec::new()
    } else {
        vec![Wave::rarefaction(*u_minus, sonic, params)]
    };

    // rarefaction to the sonic point, S0, then a positive-speed wave
    if let Ok(star) = stationary_wave_branch(&sonic, a1, StationaryBranch::Supersonic, params) {
        if let Ok(tilde_star) = zero_speed_image_unchecked(&star, params) {
            let u_bar = riemann_invariant_1(&star, params);
            if in_window(u_plus, tilde_star.u, u_bar) || u_plus > u_bar {
                if let Ok((fwd, end, kind)) = forward_wave(&star, u_plus, params) {
                    let label = match kind {
                        ForwardKind::Shock => CaseLabel::C2_2,
                        ForwardKind::Rarefaction => CaseLabel::C2_1,
                        ForwardKind::Vacuum => CaseLabel::C2_3_Vacuum,
                    };
                    let mut waves = lead.clone();
                    waves.push(Wave::stationary(sonic, star));
                    waves.extend(fwd);
                    out.push(Candidate { label, waves, end });
                }
            }
        }
    }

    // shock (always negative speed), then S0
    let rho_hi = zero_velocity_density(u_minus, params);
    let f = |rho: f64| wave_then_jump(u_minus, rho, a1, params).map(|(_, e)| e.u - u_plus);
    for rho in scan_roots(f, u_minus.rho, rho_hi, scale) {
        if let Ok((waves, end)) = wave_then_jump(u_minus, rho, a1, params) {
            out.push(Candidate {
                label: CaseLabel::C2_4_Shock,
                waves,
                end,
            });
        }
    }

    // rarefaction up to the sonic point, then S0
    let f = |rho: f64| {
        let (_, e) = if rho <= sonic.rho {
            let end = stationary_wave_branch(&sonic, a1, StationaryBranch::Subsonic, params)?;
            (Vec::new(), end)
        } else {
            wave_then_jump(u_minus, rho, a1, params)?
        };
        Ok(e.u - u_plus)
    };
    for rho in scan_roots(f, sonic.rho, u_minus.rho, scale) {
        let built = if rho <= sonic.rho {
            stationary_wave_branch(&sonic, a1, StationaryBranch::Subsonic, params).map(|end| {
                let mut w = lead.clone();
                w.push(Wave::stationary(sonic, end));
                (w, end)
            })
        } else {
            wave_then_jump(u_minus, rho, a1, params)
        };
        if let Ok((waves, end)) = built {
            out.push(Candidate {
                label: CaseLabel::C2_4_Rarefaction,
                waves,
                end,
            });
        }
    }

    // rarefaction to the sonic point, then three zero-speed waves
    if a1 != u_minus.a {
        let f = |a: f64| composite_waves(&sonic, a, a1, params).map(|(_, e)| e.u - u_plus);
        for a in scan_roots(f, u_minus.a.min(a1), u_minus.a.max(a1), scale) {
            if let Ok((zero, end)) = composite_waves(&sonic, a, a1, params) {
                let mut waves = lead.clone();
                waves.extend(zero);
                out.push(Candidate {
                    label: CaseLabel::C2_5_TripleZero,
                    waves,
                    end,
                });
            }
        }
    }
    out
}

/// Drops zero-strength waves and merges adjacent rarefactions.
fn simplify(waves: Vec<Wave>, params: &ModelParams) -> Vec<Wave> {
    let mut out: Vec<Wave> = Vec::with_capacity(waves.len());
    for w in waves {
        let trivial = match w.kind {
            WaveKind::VacuumRegion => w.left.u == w.right.u,
            _ => w.left == w.right,
        };
        if trivial {
            continue;
        }
        if w.kind == WaveKind::Rarefaction1 {
            if let Some(prev) = out.last_mut() {
                if prev.kind == WaveKind::Rarefaction1 {
                    *prev = Wave::rarefaction(prev.left, w.right, params);
                    continue;
                }
            }
        }
        out.push(w);
    }
    out
}

/// Exact solution of the Riemann problem with left datum `u_minus` (width
/// `a0 = u_minus.a`) and right datum `u_plus` (width `a1 = u_plus.a`).
pub fn solve(u_minus: &State, u_plus: &State, params: &ModelParams) -> Result<RiemannSolution> {
    for s in [u_minus, u_plus] {
        State::new(s.u, s.rho, s.a)?;
    }
    if u_minus == u_plus {
        return Ok(RiemannSolution {
            left: *u_minus,
            right: *u_plus,
            waves: Vec::new(),
            label: if is_supersonic(u_minus, params) {
                CaseLabel::C1_1
            } else {
                CaseLabel::C2_4_Shock
            },
            multiplicity_note: None,
        });
    }
    if u_minus.is_vacuum() {
        return Err(Error::VacuumLeftState(*u_minus));
    }
    let a1 = u_plus.a;
    let supersonic = is_supersonic(u_minus, params);
    let mut candidates = if supersonic {
        supersonic_candidates(u_minus, u_plus.u, a1, params)
    } else {
        subsonic_candidates(u_minus, u_plus.u, a1, params)
    };
    if candidates.is_empty() {
        // distinguish a blocked width change from an unreachable velocity
        let origin = if supersonic { *u_minus } else { sonic_point(u_minus, params) };
        if let Err(e @ Error::NoStationaryWave { .. }) =
            stationary_wave_branch(&origin, a1, StationaryBranch::Supersonic, params)
        {
            let tilde = zero_speed_image_unchecked(u_minus, params)?;
            stationary_wave_branch(&tilde, a1, StationaryBranch::Subsonic, params).map_err(|_| e)?;
        }
        return Err(Error::NoIntersection { u_plus: u_plus.u });
    }

    for c in candidates.iter_mut() {
        let mut waves = std::mem::take(&mut c.waves);
        waves.push(Wave::contact(c.end, *u_plus));
        c.waves = simplify(waves, params);
    }
    candidates.sort_by_key(|c| c.label);

    // one representative per distinct end state; ties go to the lower case
    let mut distinct: Vec<Candidate> = Vec::new();
    for c in candidates {
        if !distinct.iter().any(|d| d.end.approx_eq(&c.end, 1e-8)) {
            distinct.push(c);
        }
    }
    let note = (distinct.len() > 1).then(|| distinct.iter().map(|c| c.label).collect::<Vec<_>>());
    let chosen = distinct
        .iter()
        .find(|c| !c.label.is_triple_zero())
        .unwrap_or(&distinct[0])
        .clone();
    Ok(RiemannSolution {
        left: *u_minus,
        right: *u_plus,
        waves: chosen.waves,
        label: chosen.label,
        multiplicity_note: note.map(|intersections| MultiplicityNote {
            chosen: chosen.label,
            intersections,
        }),
    })
}

/// Self-similar profile at `xi = x/t`. At a discontinuity the right limit is
/// returned; for stacked zero-speed waves that is the rightmost state.
pub fn sample(sol: &RiemannSolution, xi: f64, params: &ModelParams) -> State {
    let mut current = sol.left;
    for w in &sol.waves {
        if xi < w.xi_lo {
            return current;
        }
        match w.kind {
            WaveKind::Rarefaction1 if xi < w.xi_hi => {
                return rarefaction_interior(&w.left, xi, params).unwrap_or(w.right);
            }
            WaveKind::VacuumRegion if xi < w.xi_hi => {
                return State::raw(xi, 0.0, w.left.a);
            }
            _ => current = w.right,
        }
    }
    current
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    /// Index of the wave the check refers to; `None` for whole-solution checks.
    pub wave: Option<usize>,
    pub name: &'static str,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub tol: f64,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.residual <= self.tol)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !(c.residual <= self.tol)).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(1.0)
}

fn state_gap(x: &State, y: &State) -> f64 {
    rel(x.u, y.u).max(rel(x.rho, y.rho)).max(rel(x.a, y.a))
}

/// `u^(g/(1+g)) (rho^g + g/(1+2g) u)`, conserved across stationary waves.
fn stationary_invariant(s: &State, params: &ModelParams) -> f64 {
    let g = params.gamma();
    s.u.powf(g / (1.0 + g)) * (pressure(s.rho, params) + g / (1.0 + 2.0 * g) * s.u)
}

/// Checks jump conditions, the Lax and entropy conditions, speed ordering and
/// the continuity of the wave chain.
pub fn validate(sol: &RiemannSolution, tol: f64, params: &ModelParams) -> ValidationReport {
    let g = params.gamma();
    let mut checks = Vec::new();
    let mut push = |wave: Option<usize>, name: &'static str, residual: f64| {
        checks.push(Check { wave, name, residual })
    };

    match (sol.waves.first(), sol.waves.last()) {
        (Some(first), Some(last)) => {
            push(None, "left datum", state_gap(&first.left, &sol.left));
            push(None, "right datum", state_gap(&last.right, &sol.right));
        }
        _ => push(None, "constant solution", state_gap(&sol.left, &sol.right)),
    }

    for (i, pair) in sol.waves.windows(2).enumerate() {
        push(Some(i), "chain continuity", state_gap(&pair[0].right, &pair[1].left));
        push(Some(i), "speed ordering", (pair[0].xi_hi - pair[1].xi_lo).max(0.0));
    }

    for (i, w) in sol.waves.iter().enumerate() {
        let (l, r) = (&w.left, &w.right);
        push(Some(i), "speed range", (w.xi_lo - w.xi_hi).max(0.0));
        if w.kind != WaveKind::Stationary0 {
            push(Some(i), "constant width", rel(l.a, r.a));
        }
        match w.kind {
            WaveKind::Shock1 => {
                let sigma = w.xi_lo;
                let (pl, pr) = (pressure(l.rho, params), pressure(r.rho, params));
                let mass = sigma * (r.rho - l.rho) - (r.rho * r.u - l.rho * l.u);
                let ql = l.rho * (l.u + pl);
                let qr = r.rho * (r.u + pr);
                let mom = sigma * (qr - ql) - (qr * r.u - ql * l.u);
                let scale = (l.rho * l.u).abs().max((r.rho * r.u).abs()).max(1.0);
                let scale_q = (ql * l.u).abs().max((qr * r.u).abs()).max(1.0);
                push(Some(i), "Rankine-Hugoniot mass", mass.abs() / scale);
                push(Some(i), "Rankine-Hugoniot momentum", mom.abs() / scale_q);
                let lax = (lambda1(r, params) - sigma).max(sigma - lambda1(l, params)).max(0.0);
                push(Some(i), "Lax condition", lax);
            }
            WaveKind::Rarefaction1 => {
                push(
                    Some(i),
                    "rarefaction invariant",
                    rel(riemann_invariant_1(l, params), riemann_invariant_1(r, params)),
                );
                push(Some(i), "fan head speed", rel(w.xi_lo, lambda1(l, params)));
                push(Some(i), "fan tail speed", rel(w.xi_hi, lambda1(r, params)));
                push(Some(i), "fan opens", (r.rho - l.rho).max(0.0));
            }
            WaveKind::Contact2 => {
                push(Some(i), "contact velocity", rel(l.u, r.u));
                push(Some(i), "contact speed", rel(w.xi_lo, l.u));
            }
            WaveKind::Stationary0 => {
                push(Some(i), "stationary speed", w.xi_lo.abs().max(w.xi_hi.abs()));
                push(
                    Some(i),
                    "stationary mass flux",
                    rel(l.a * l.rho * l.u, r.a * r.rho * r.u),
                );
                push(
                    Some(i),
                    "stationary invariant",
                    rel(stationary_invariant(l, params), stationary_invariant(r, params)),
                );
                let gl = l.u - g * pressure(l.rho, params);
                let gr = r.u - g * pressure(r.rho, params);
                let crossing = if gl * gr < 0.0 {
                    gl.abs().min(gr.abs()) / l.u.max(r.u).max(1.0)
                } else {
                    0.0
                };
                push(Some(i), "entropy condition", crossing);
            }
            WaveKind::VacuumRegion => {
                push(Some(i), "vacuum density", l.rho.max(r.rho));
                push(Some(i), "vacuum edges", rel(w.xi_lo, l.u).max(rel(w.xi_hi, r.u)));
            }
        }
    }
    ValidationReport { tol, checks }
}
