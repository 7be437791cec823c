//! Scenarios, exact-versus-numerical comparison, convergence studies and CSV
//! output.

use std::fmt;
use std::io::Write;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fvm::{simulate, CellField, FluxForm, Grid, RunConfig, RunResult, WidthProfile};
use crate::model::{ModelParams, State};
use crate::riemann::{sample, solve, RiemannSolution};
use crate::waves::WaveKind;

/// Relative L1(rho) tolerance for scenarios with a jump in width.
pub const L1_TOL_JUMP: f64 = 0.05;
/// Relative L1(rho) tolerance against the Riemann limit of a width ramp.
pub const L1_TOL_RAMP: f64 = 0.08;
/// Cells within this many widths of a discontinuity are left out of L-infinity.
pub const LINF_EXCLUSION_CELLS: f64 = 3.0;

/// Initial `(u, rho)` from `x_start` up to the next piece.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Piece {
    #[serde(default)]
    pub x_start: f64,
    pub u: f64,
    pub rho: f64,
}

/// How the exact self-similar solution is placed on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alignment {
    /// Data and width jump at `x0`; the comparison is exact.
    #[default]
    Jump,
    /// Continuous width ramp compared with the Riemann problem between the
    /// outer states, centred at `x0`; the comparison is approximate.
    RampLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub gamma: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    pub n: usize,
    pub cfl: f64,
    pub width: WidthProfile,
    pub pieces: Vec<Piece>,
    pub x0: f64,
    pub t_end: f64,
    pub expected_pattern: Option<Vec<WaveKind>>,
    pub alignment: Alignment,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidScenario(format!("{}: {m}", self.name)));
        ModelParams::new(self.gamma)?;
        Grid::new(self.x_lo, self.x_hi, self.n)?;
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return bad(format!("cfl must lie in (0, 1], got {}", self.cfl));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return bad(format!("end time must be positive, got {}", self.t_end));
        }
        if !(self.x0 > self.x_lo && self.x0 < self.x_hi) {
            return bad(format!("x0 = {} outside the domain", self.x0));
        }
        if self.pieces.is_empty() {
            return bad("no initial states".into());
        }
        for w in self.pieces.windows(2) {
            if !(w[1].x_start > w[0].x_start) {
                return bad("initial pieces must have increasing x_start".into());
            }
        }
        for pc in &self.pieces {
            State::new(pc.u, pc.rho, 1.0)?;
        }
        Ok(())
    }

    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.gamma)
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.x_lo, self.x_hi, self.n)
    }

    /// Initial `(u, rho)` at `x`.
    pub fn initial_at(&self, x: f64) -> (f64, f64) {
        let k = self.pieces.partition_point(|p| p.x_start <= x).max(1) - 1;
        (self.pieces[k].u, self.pieces[k].rho)
    }

    /// Far-field states `(U-, U+)` defining the Riemann problem.
    pub fn riemann_data(&self) -> Result<(State, State)> {
        let first = self.pieces[0];
        let last = self.pieces[self.pieces.len() - 1];
        Ok((
            State::new(first.u, first.rho, self.width.eval(self.x_lo))?,
            State::new(last.u, last.rho, self.width.eval(self.x_hi))?,
        ))
    }

    pub fn initial_field(&self) -> Result<CellField> {
        self.validate()?;
        Ok(CellField::from_fn(self.grid()?, &self.width, &self.params()?, |x| {
            self.initial_at(x)
        }))
    }

    pub fn l1_tolerance(&self) -> f64 {
        match self.alignment {
            Alignment::Jump => L1_TOL_JUMP,
            Alignment::RampLimit => L1_TOL_RAMP,
        }
    }

    pub fn with_n(&self, n: usize) -> Self {
        Self { n, ..self.clone() }
    }

    /// Replaces every width jump by a linear ramp of the given half-width
    /// centred on it.
    pub fn with_resolved_jumps(&self, half_width: f64) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidProfile(format!(
                "jump half-width must be positive, got {half_width}"
            )));
        }
        let bp = self.width.breakpoints();
        let mut out = Vec::with_capacity(bp.len());
        let mut i = 0;
        while i < bp.len() {
            if i + 1 < bp.len() && bp[i].0 == bp[i + 1].0 {
                out.push((bp[i].0 - half_width, bp[i].1));
                out.push((bp[i].0 + half_width, bp[i + 1].1));
                i += 2;
            } else {
                out.push(bp[i]);
                i += 1;
            }
        }
        Ok(Self {
            width: WidthProfile::new(out)?,
            ..self.clone()
        })
    }
}

/// Numerical switches applied on top of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub fixed_lambda: bool,
    pub flux: FluxForm,
}

pub fn run_scenario(s: &Scenario, opts: RunOptions) -> Result<RunResult> {
    let init = s.initial_field()?;
    let cfg = RunConfig {
        params: s.params()?,
        cfl: s.cfl,
        t_end: s.t_end,
        fixed_lambda: opts.fixed_lambda,
        flux: opts.flux,
    };
    simulate(init, &cfg, |_, _| {})
}

pub fn exact_solution(s: &Scenario) -> Result<RiemannSolution> {
    let (l, r) = s.riemann_data()?;
    solve(&l, &r, &s.params()?)
}

/// The exact solution sampled at cell centres at the scenario end time.
pub fn exact_field(s: &Scenario, sol: &RiemannSolution) -> Result<CellField> {
    let params = s.params()?;
    let grid = s.grid()?;
    let states: Vec<State> = grid
        .centers()
        .into_iter()
        .map(|x| sample(sol, (x - s.x0) / s.t_end, &params))
        .collect();
    let mut field = CellField::from_fn(grid, &s.width, &params, |_| (0.0, 0.0));
    for (j, st) in states.iter().enumerate() {
        let c = crate::fvm::CellState::from_primitive(st.u, st.rho, st.a, &params);
        field.m[j] = c.m;
        field.q[j] = c.q;
        field.a[j] = c.a;
    }
    Ok(field)
}

/// Wave pattern as shown in figure captions: a vacuum between a rarefaction
/// edge and the contact is not drawn as a wave of its own.
pub fn caption_pattern(sol: &RiemannSolution) -> Vec<WaveKind> {
    sol.waves
        .iter()
        .map(|w| w.kind)
        .filter(|k| *k != WaveKind::VacuumRegion)
        .collect()
}

pub fn parse_pattern(text: &str) -> Result<Vec<WaveKind>> {
    text.split('+')
        .map(|t| match t.trim() {
            "R" => Ok(WaveKind::Rarefaction1),
            "S" => Ok(WaveKind::Shock1),
            "J" => Ok(WaveKind::Contact2),
            "S0" => Ok(WaveKind::Stationary0),
            "Vac" => Ok(WaveKind::VacuumRegion),
            other => Err(Error::InvalidScenario(format!("unknown wave symbol {other:?}"))),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternMatch {
    Match,
    Mismatch,
    NotApplicable,
}

impl fmt::Display for PatternMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternMatch::Match => "match",
            PatternMatch::Mismatch => "mismatch",
            PatternMatch::NotApplicable => "n/a",
        })
    }
}

pub fn match_pattern(expected: Option<&[WaveKind]>, sol: &RiemannSolution) -> PatternMatch {
    match expected {
        None => PatternMatch::NotApplicable,
        Some(e) if e == caption_pattern(sol).as_slice() => PatternMatch::Match,
        Some(_) => PatternMatch::Mismatch,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub scenario: String,
    pub label: String,
    pub pattern: String,
    pub pattern_match: PatternMatch,
    pub l1_rho: f64,
    pub l1_u: f64,
    pub linf_rho: f64,
    pub linf_u: f64,
    pub mass_balance_residual: f64,
    pub vacuum_floor: usize,
    pub negative_velocity_clamps: usize,
    /// Set for ramp scenarios, which are compared with a limiting solution.
    pub approximate: bool,
    pub l1_tolerance: f64,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.l1_rho <= self.l1_tolerance && self.pattern_match != PatternMatch::Mismatch
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} case={} pattern={} ({}) L1(rho)={} L1(u)={} Linf(rho)={} Linf(u)={} mass_residual={} vacuum_floor={} u_clamps={}{}",
            self.scenario,
            if self.passed() { "PASS" } else { "FAIL" },
            self.label,
            self.pattern,
            self.pattern_match,
            fmt_sig(self.l1_rho),
            fmt_sig(self.l1_u),
            fmt_sig(self.linf_rho),
            fmt_sig(self.linf_u),
            fmt_sig(self.mass_balance_residual),
            self.vacuum_floor,
            self.negative_velocity_clamps,
            if self.approximate { " (approximate: ramp limit)" } else { "" },
        )
    }
}

/// Compares a numerical field at the scenario end time with the exact
/// solution sampled at `xi = (x - x0) / t`.
pub fn compare(s: &Scenario, run: &RunResult, exact: &RiemannSolution) -> Result<ComparisonReport> {
    let params = s.params()?;
    let grid = run.field.grid;
    let dx = grid.dx();
    let t = s.t_end;
    let fronts: Vec<f64> = exact
        .waves
        .iter()
        .filter(|w| w.is_discontinuity())
        .map(|w| s.x0 + w.xi_lo * t)
        .collect();
    let num = run.field.primitives(&params);

    let (mut d_rho, mut n_rho, mut d_u, mut n_u) = (0.0, 0.0, 0.0, 0.0);
    let (mut linf_rho, mut linf_u): (f64, f64) = (0.0, 0.0);
    for (j, x) in grid.centers().into_iter().enumerate() {
        let ex = sample(exact, (x - s.x0) / t, &params);
        let (u, rho) = num[j];
        d_rho += (rho - ex.rho).abs();
        n_rho += ex.rho.abs();
        if ex.rho > 0.0 {
            d_u += (u - ex.u).abs();
            n_u += ex.u.abs();
        }
        if fronts.iter().all(|xf| (x - xf).abs() > LINF_EXCLUSION_CELLS * dx) {
            linf_rho = linf_rho.max((rho - ex.rho).abs());
            if ex.rho > 0.0 {
                linf_u = linf_u.max((u - ex.u).abs());
            }
        }
    }
    let ratio = |d: f64, n: f64| if n > 0.0 { d / n } else { d };
    Ok(ComparisonReport {
        scenario: s.name.clone(),
        label: exact.label.to_string(),
        pattern: exact.pattern_string(),
        pattern_match: match_pattern(s.expected_pattern.as_deref(), exact),
        l1_rho: ratio(d_rho, n_rho),
        l1_u: ratio(d_u, n_u),
        linf_rho,
        linf_u,
        mass_balance_residual: run.mass_balance_residual,
        vacuum_floor: run.diagnostics.vacuum_floor,
        negative_velocity_clamps: run.diagnostics.negative_velocity_clamps,
        approximate: s.alignment == Alignment::RampLimit,
        l1_tolerance: s.l1_tolerance(),
    })
}

/// Runs and compares one scenario.
pub fn run_and_compare(s: &Scenario, opts: RunOptions) -> Result<(RunResult, ComparisonReport)> {
    let exact = exact_solution(s)?;
    let run = run_scenario(s, opts)?;
    let report = compare(s, &run, &exact)?;
    Ok((run, report))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub l1_rho: f64,
    pub l1_u: f64,
    /// Observed order against the previous row.
    pub order: Option<f64>,
}

pub fn convergence_study(s: &Scenario, n_list: &[usize], opts: RunOptions) -> Result<Vec<ConvergenceRow>> {
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidScenario("resolutions must be ascending".into()));
    }
    let exact = exact_solution(s)?;
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &n in n_list {
        let sn = s.with_n(n);
        let run = run_scenario(&sn, opts)?;
        let rep = compare(&sn, &run, &exact)?;
        let order = rows
            .last()
            .map(|prev| (prev.l1_rho / rep.l1_rho).ln() / (n as f64 / prev.n as f64).ln());
        rows.push(ConvergenceRow {
            n,
            l1_rho: rep.l1_rho,
            l1_u: rep.l1_u,
            order,
        });
    }
    Ok(rows)
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros removed.
pub fn fmt_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..DIGITS).contains(&exp) {
        let m = trim_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes `x,a,rho,u[,rho_exact,u_exact]` rows.
pub fn write_table<W: Write>(
    mut out: W,
    field: &CellField,
    params: &ModelParams,
    exact: Option<&[State]>,
) -> Result<()> {
    let header = if exact.is_some() {
        "x,a,rho,u,rho_exact,u_exact"
    } else {
        "x,a,rho,u"
    };
    writeln!(out, "{header}")?;
    let prim = field.primitives(params);
    for (j, x) in field.grid.centers().into_iter().enumerate() {
        let (u, rho) = prim[j];
        write!(out, "{},{},{},{}", fmt_sig(x), fmt_sig(field.a[j]), fmt_sig(rho), fmt_sig(u))?;
        if let Some(ex) = exact {
            write!(out, ",{},{}", fmt_sig(ex[j].rho), fmt_sig(ex[j].u))?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn emit_table(path: &Path, field: &CellField, params: &ModelParams, exact: Option<&[State]>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    write_table(&mut w, field, params, exact)?;
    w.flush()?;
    Ok(())
}

/// Exact states at the cell centres of `grid` at the scenario end time.
pub fn exact_states(s: &Scenario, sol: &RiemannSolution, grid: &Grid) -> Result<Vec<State>> {
    let params = s.params()?;
    Ok(grid
        .centers()
        .into_iter()
        .map(|x| sample(sol, (x - s.x0) / s.t_end, &params))
        .collect())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridSection {
    x_lo: f64,
    x_hi: f64,
    n: usize,
    #[serde(default = "default_cfl")]
    cfl: f64,
}

fn default_cfl() -> f64 {
    0.5
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WidthSection {
    breakpoints: Vec<[f64; 2]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    gamma: f64,
    t_end: f64,
    x0: f64,
    #[serde(default)]
    alignment: Alignment,
    expected_pattern: Option<String>,
    grid: GridSection,
    width: WidthSection,
    state: Vec<Piece>,
}

/// Parses a scenario from its TOML text form (see `docs/scenario-format.md`).
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let f: ScenarioFile = toml::from_str(text).map_err(|e| Error::InvalidScenario(e.to_string()))?;
    let width = WidthProfile::new(f.width.breakpoints.iter().map(|b| (b[0], b[1])).collect())?;
    let expected_pattern = f.expected_pattern.as_deref().map(parse_pattern).transpose()?;
    let mut pieces = f.state;
    if let Some(first) = pieces.first_mut() {
        first.x_start = first.x_start.min(f.grid.x_lo);
    }
    let s = Scenario {
        name: f.name,
        gamma: f.gamma,
        x_lo: f.grid.x_lo,
        x_hi: f.grid.x_hi,
        n: f.grid.n,
        cfl: f.grid.cfl,
        width,
        pieces,
        x0: f.x0,
        t_end: f.t_end,
        expected_pattern,
        alignment: f.alignment,
    };
    s.validate()?;
    Ok(s)
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    parse_scenario(&std::fs::read_to_string(path)?)
}

fn example(
    id: usize,
    gamma: f64,
    left: (f64, f64, f64),
    right: (f64, f64, f64),
    x0: f64,
    t_end: f64,
    pattern: &str,
) -> Scenario {
    Scenario {
        name: format!("example-{id}"),
        gamma,
        x_lo: 0.0,
        x_hi: 20.0,
        n: 2000,
        cfl: 0.5,
        width: WidthProfile::jump(x0, left.2, right.2).expect("positive widths"),
        pieces: vec![
            Piece {
                x_start: 0.0,
                u: left.0,
                rho: left.1,
            },
            Piece {
                x_start: x0,
                u: right.0,
                rho: right.1,
            },
        ],
        x0,
        t_end,
        expected_pattern: Some(parse_pattern(pattern).expect("valid pattern")),
        alignment: Alignment::Jump,
    }
}

/// Width ramp from `a0` at `x = 3` to `a1` at `x = 8`; the right state starts
/// at `x = 8` and the left state fills the ramp.
fn ramp_example(id: usize, left: (f64, f64, f64), right: (f64, f64, f64), pattern: &str) -> Scenario {
    let mut s = example(id, 2.0, left, right, RAMP_CENTRE, 6.0, pattern);
    s.width = WidthProfile::new(vec![(3.0, left.2), (8.0, right.2)]).expect("positive widths");
    s.pieces[1].x_start = 8.0;
    s.alignment = Alignment::RampLimit;
    s
}

/// Centre of the limiting Riemann problem for the ramp examples: the ramp
/// midpoint.
pub const RAMP_CENTRE: f64 = 5.5;

/// The nine worked examples: two width ramps followed by seven jumps.
pub fn builtin_examples() -> Vec<Scenario> {
    vec![
        ramp_example(1, (1.5, 0.5, 2.0), (0.75, 1.0, 3.0), "S0+S+J"),
        ramp_example(2, (3.0, 1.0, 2.0), (1.365, 1.65, 2.5), "S0+S+S0+J"),
        example(3, 2.0, (1.5, 0.5, 2.0), (0.75, 1.0, 3.0), 6.0, 7.5, "S0+S+J"),
        example(4, 3.25, (3.0, 0.75, 2.0), (8.0, 0.5, 3.5), 6.0, 1.0, "S0+R+J"),
        example(5, 1.5, (4.0, 1.0, 2.0), (0.6, 3.0, 2.5), 10.0, 7.5, "S+S0+J"),
        example(6, 1.75, (1.0, 2.0, 2.0), (1.25, 2.0, 2.5), 10.0, 1.6, "R+S0+J"),
        example(7, 6.0, (0.2, 0.75, 2.0), (1.0, 0.2, 3.0), 10.0, 5.0, "R+S0+R+J"),
        example(8, 2.0, (3.0, 1.0, 2.0), (1.365, 1.65, 2.5), 10.0, 1.0, "S0+S+S0+J"),
        example(9, 2.0, (2.0, 2.0, 2.0), (5.25, 0.75, 3.5), 10.0, 1.25, "R+S0+S+J"),
    ]
}

/// Builtin example `id` (1-based).
pub fn builtin_example(id: usize) -> Result<Scenario> {
    builtin_examples()
        .into_iter()
        .nth(id.wrapping_sub(1))
        .ok_or_else(|| Error::InvalidScenario(format!("no example {id}; choose 1 to 9")))
}
