//! Command-line front end.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::fvm::{FluxForm, WidthProfile};
use crate::harness::{
    builtin_example, builtin_examples, compare, emit_table, exact_solution, exact_states, fmt_sig,
    load_scenario, run_scenario, write_table, Alignment, ComparisonReport, Piece,
    RunOptions, Scenario,
};
use crate::model::{classify, ModelParams, State, SONIC_TOL};
use crate::riemann::{pattern_string, sample, validate, RiemannSolution};
use crate::waves::{
    composite_l_state, rarefaction_target, shock_target, stationary_wave_branch, StationaryBranch,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Points per curve in `curves` output.
const CURVE_POINTS: usize = 201;

#[derive(Debug, Parser)]
#[command(
    name = "roadwidth",
    version,
    about = "Exact Riemann solutions and Lax-Friedrichs runs for Aw-Rascle traffic on roads of variable width",
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Exponent of the velocity offset p = rho^gamma
    #[arg(long, global = true)]
    pub gamma: Option<f64>,

    /// Left state as u,rho,a
    #[arg(long, global = true, value_parser = parse_state, allow_hyphen_values = true)]
    pub left: Option<State>,

    /// Right state as u,rho,a
    #[arg(long, global = true, value_parser = parse_state, allow_hyphen_values = true)]
    pub right: Option<State>,

    /// Number of grid cells
    #[arg(long, global = true)]
    pub n: Option<usize>,

    /// CFL number
    #[arg(long, global = true)]
    pub cfl: Option<f64>,

    /// End time
    #[arg(long = "t-end", global = true)]
    pub t_end: Option<f64>,

    /// Scenario file (TOML)
    #[arg(long, global = true)]
    pub scenario: Option<PathBuf>,

    /// Builtin example 1..9
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=9))]
    pub example: Option<u8>,

    /// Output file (a directory for `examples --run-all`)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Samples of the self-similar profile printed by `solve`
    #[arg(long = "xi-samples", global = true, default_value_t = 2001)]
    pub xi_samples: usize,

    /// Keep lambda = dt/dx fixed from the initial field
    #[arg(long = "fixed-lambda", global = true)]
    pub fixed_lambda: bool,

    /// Use the flux (a rho, a rho (u + p)) without the transport factor u
    #[arg(long = "literal-flux", global = true)]
    pub literal_flux: bool,

    /// Spread width jumps over a linear ramp of this half-width
    #[arg(long = "jump-width", global = true)]
    pub jump_width: Option<f64>,

    /// Target widths for the stationary-wave curves of `curves`
    #[arg(long = "a-target", global = true)]
    pub a_target: Vec<f64>,

    /// Also print the composite zero-speed curve in `curves`
    #[arg(long, global = true)]
    pub composite: bool,

    /// Start data output with a version comment line
    #[arg(long, global = true)]
    pub header: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact Riemann solution: case, wave table and sampled profile
    Solve,
    /// Run the finite-volume scheme and write x,a,rho,u[,rho_exact,u_exact]
    Simulate,
    /// Run the scheme and compare with the exact solution
    Compare,
    /// Wave curves through the left state for phase-plane plots
    Curves,
    /// List or run the builtin examples
    Examples {
        /// Run every example (or the one chosen with --example)
        #[arg(long = "run-all")]
        run_all: bool,
        /// Compare each run with the exact solution
        #[arg(long)]
        compare: bool,
    },
}

fn parse_state(text: &str) -> std::result::Result<State, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected u,rho,a but got {text:?}"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("{p:?}: {e}"))?;
    }
    State::new(v[0], v[1], v[2]).map_err(|e| e.to_string())
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_from<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

/// Executes a parsed command, writing data to `out` (or `--out`).
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    match &cli.command {
        Command::Solve => cmd_solve(cli, out),
        Command::Simulate => cmd_simulate(cli, out),
        Command::Compare => cmd_compare(cli, out),
        Command::Curves => cmd_curves(cli, out),
        Command::Examples { run_all, compare } => cmd_examples(cli, *run_all, *compare, out),
    }
}

fn with_output<W, F>(cli: &Cli, out: &mut W, body: F) -> Result<()>
where
    W: Write,
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match &cli.out {
        Some(path) => {
            let mut w = io::BufWriter::new(fs::File::create(path)?);
            body(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => body(out),
    }
}

fn write_header(cli: &Cli, w: &mut dyn Write) -> Result<()> {
    if cli.header {
        writeln!(w, "# roadwidth {}", env!("CARGO_PKG_VERSION"))?;
    }
    Ok(())
}

fn params_from(cli: &Cli) -> Result<ModelParams> {
    let g = cli
        .gamma
        .ok_or_else(|| Error::InvalidParams("--gamma is required".into()))?;
    ModelParams::new(g)
}

fn states_from(cli: &Cli) -> Result<(State, State)> {
    match (cli.left, cli.right) {
        (Some(l), Some(r)) => Ok((l, r)),
        _ => Err(Error::InvalidState("--left and --right are required".into())),
    }
}

fn state_cells(s: &State) -> String {
    format!("{},{},{}", fmt_sig(s.u), fmt_sig(s.rho), fmt_sig(s.a))
}

pub fn write_solution(
    w: &mut dyn Write,
    sol: &RiemannSolution,
    params: &ModelParams,
    xi_samples: usize,
) -> Result<()> {
    let report = validate(sol, 1e-8, params);
    writeln!(w, "# case {}", sol.label)?;
    writeln!(w, "# pattern {}", sol.pattern_string())?;
    if let Some(note) = &sol.multiplicity_note {
        writeln!(w, "# multiplicity {note}")?;
    }
    writeln!(
        w,
        "# validation {} max_residual={}",
        if report.passed() { "pass" } else { "fail" },
        fmt_sig(report.max_residual())
    )?;
    writeln!(w, "# waves")?;
    writeln!(w, "kind,xi_lo,xi_hi,u_left,rho_left,a_left,u_right,rho_right,a_right")?;
    for wave in &sol.waves {
        writeln!(
            w,
            "{},{},{},{},{}",
            wave.kind.symbol(),
            fmt_sig(wave.xi_lo),
            fmt_sig(wave.xi_hi),
            state_cells(&wave.left),
            state_cells(&wave.right)
        )?;
    }
    let (lo, hi) = match (sol.waves.first(), sol.waves.last()) {
        (Some(f), Some(l)) => (f.xi_lo.min(0.0) - 1.0, l.xi_hi.max(0.0) + 1.0),
        _ => (-1.0, 1.0),
    };
    writeln!(w, "# profile")?;
    writeln!(w, "xi,u,rho,a")?;
    let k = xi_samples.max(2);
    for i in 0..k {
        let xi = lo + (hi - lo) * i as f64 / (k - 1) as f64;
        let s = sample(sol, xi, params);
        writeln!(w, "{},{}", fmt_sig(xi), state_cells(&s))?;
    }
    Ok(())
}

fn cmd_solve<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    let (params, left, right) = if cli.left.is_some() || cli.scenario.is_none() && cli.example.is_none() {
        let (l, r) = states_from(cli)?;
        (params_from(cli)?, l, r)
    } else {
        let s = scenario_from(cli)?;
        let (l, r) = s.riemann_data()?;
        (s.params()?, l, r)
    };
    let sol = crate::riemann::solve(&left, &right, &params)?;
    with_output(cli, out, |w| {
        write_header(cli, w)?;
        write_solution(w, &sol, &params, cli.xi_samples)
    })?;
    Ok(EXIT_OK)
}

/// Scenario from `--scenario`, `--example` or `--left/--right/--gamma`, with
/// command-line overrides applied.
pub fn scenario_from(cli: &Cli) -> Result<Scenario> {
    let mut s = if let Some(path) = &cli.scenario {
        load_scenario(path)?
    } else if let Some(id) = cli.example {
        builtin_example(id as usize)?
    } else {
        let (l, r) = states_from(cli)?;
        let t_end = cli
            .t_end
            .ok_or_else(|| Error::InvalidScenario("--t-end is required without a scenario".into()))?;
        let x0 = 10.0;
        Scenario {
            name: "command-line".into(),
            gamma: params_from(cli)?.gamma(),
            x_lo: 0.0,
            x_hi: 20.0,
            n: 2000,
            cfl: 0.5,
            width: WidthProfile::jump(x0, l.a, r.a)?,
            pieces: vec![
                Piece {
                    x_start: 0.0,
                    u: l.u,
                    rho: l.rho,
                },
                Piece {
                    x_start: x0,
                    u: r.u,
                    rho: r.rho,
                },
            ],
            x0,
            t_end,
            expected_pattern: None,
            alignment: Alignment::Jump,
        }
    };
    if let Some(g) = cli.gamma {
        s.gamma = g;
    }
    if let Some(n) = cli.n {
        s.n = n;
    }
    if let Some(c) = cli.cfl {
        s.cfl = c;
    }
    if let Some(t) = cli.t_end {
        s.t_end = t;
    }
    if let Some(h) = cli.jump_width {
        s = s.with_resolved_jumps(h)?;
    }
    s.validate()?;
    Ok(s)
}

fn run_options(cli: &Cli) -> RunOptions {
    RunOptions {
        fixed_lambda: cli.fixed_lambda,
        flux: if cli.literal_flux {
            FluxForm::Literal
        } else {
            FluxForm::Consistent
        },
    }
}

fn simulate_scenario(s: &Scenario, cli: &Cli, w: &mut dyn Write) -> Result<()> {
    let run = run_scenario(s, run_options(cli))?;
    for warning in &run.warnings {
        eprintln!("warning: {}: {warning}", s.name);
    }
    let params = s.params()?;
    let exact = exact_solution(s)
        .ok()
        .map(|sol| exact_states(s, &sol, &run.field.grid))
        .transpose()?;
    write_header(cli, w)?;
    write_table(w, &run.field, &params, exact.as_deref())
}

fn cmd_simulate<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    let s = scenario_from(cli)?;
    with_output(cli, out, |w| simulate_scenario(&s, cli, w))?;
    Ok(EXIT_OK)
}

fn compare_scenario(s: &Scenario, cli: &Cli) -> Result<ComparisonReport> {
    let exact = exact_solution(s)?;
    let run = run_scenario(s, run_options(cli))?;
    for warning in &run.warnings {
        eprintln!("warning: {}: {warning}", s.name);
    }
    compare(s, &run, &exact)
}

fn cmd_compare<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    let s = scenario_from(cli)?;
    let rep = compare_scenario(&s, cli)?;
    with_output(cli, out, |w| {
        write_header(cli, w)?;
        writeln!(w, "{rep}")?;
        Ok(())
    })?;
    Ok(if rep.passed() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_curves<W: Write>(cli: &Cli, out: &mut W) -> Result<i32> {
    let params = params_from(cli)?;
    let left = cli
        .left
        .ok_or_else(|| Error::InvalidState("--left is required".into()))?;
    if left.is_vacuum() {
        return Err(Error::VacuumState(left));
    }
    let mut targets = cli.a_target.clone();
    if targets.is_empty() {
        if let Some(r) = cli.right {
            targets.push(r.a);
        }
    }
    if targets.is_empty() {
        return Err(Error::InvalidParams("give --a-target or --right".into()));
    }
    for &a in &targets {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidParams(format!("target width must be positive, got {a}")));
        }
    }
    let g = params.gamma();
    let w_inv = left.u + left.rho.powf(g);
    let n = CURVE_POINTS;
    with_output(cli, out, |w| {
        write_header(cli, w)?;
        writeln!(w, "# rarefaction")?;
        writeln!(w, "rho,u")?;
        for i in 0..n {
            let rho = left.rho * (1.0 - i as f64 / (n - 1) as f64);
            let s = rarefaction_target(&left, rho, &params)?;
            writeln!(w, "{},{}", fmt_sig(rho), fmt_sig(s.u))?;
        }
        writeln!(w, "# shock")?;
        writeln!(w, "rho,u,sigma")?;
        let rho_top = w_inv.powf(1.0 / g);
        for i in 1..n {
            let rho = left.rho + (rho_top - left.rho) * i as f64 / (n - 1) as f64;
            let (s, sigma) = shock_target(&left, rho, &params)?;
            writeln!(w, "{},{},{}", fmt_sig(rho), fmt_sig(s.u), fmt_sig(sigma))?;
        }
        writeln!(w, "# stationary")?;
        writeln!(w, "a,rho_supersonic,u_supersonic,rho_subsonic,u_subsonic")?;
        for &a1 in &targets {
            for i in 0..n {
                let a = left.a + (a1 - left.a) * i as f64 / (n - 1) as f64;
                let sup = stationary_wave_branch(&left, a, StationaryBranch::Supersonic, &params);
                let sub = stationary_wave_branch(&left, a, StationaryBranch::Subsonic, &params);
                let cell = |r: &Result<State>| match r {
                    Ok(s) => format!("{},{}", fmt_sig(s.rho), fmt_sig(s.u)),
                    Err(_) => "nan,nan".to_string(),
                };
                writeln!(w, "{},{},{}", fmt_sig(a), cell(&sup), cell(&sub))?;
            }
        }
        if cli.composite {
            let start = if classify(&left, &params, SONIC_TOL) == crate::model::Region::D2 {
                left
            } else {
                let rho_c = (w_inv / (1.0 + g)).powf(1.0 / g);
                rarefaction_target(&left, rho_c, &params)?
            };
            writeln!(w, "# composite")?;
            writeln!(w, "a_target,a_mid,rho,u")?;
            for &a1 in &targets {
                for i in 0..n {
                    let a_mid = start.a + (a1 - start.a) * i as f64 / (n - 1) as f64;
                    match composite_l_state(&start, a_mid, a1, &params) {
                        Ok(s) => writeln!(w, "{},{},{},{}", fmt_sig(a1), fmt_sig(a_mid), fmt_sig(s.rho), fmt_sig(s.u))?,
                        Err(_) => writeln!(w, "{},{},nan,nan", fmt_sig(a1), fmt_sig(a_mid))?,
                    }
                }
            }
        }
        Ok(())
    })?;
    Ok(EXIT_OK)
}

fn example_csv_path(dir: &Path, s: &Scenario) -> PathBuf {
    dir.join(format!("{}.csv", s.name))
}

fn cmd_examples<W: Write>(cli: &Cli, run_all: bool, do_compare: bool, out: &mut W) -> Result<i32> {
    let chosen: Vec<Scenario> = match cli.example {
        Some(id) => vec![builtin_example(id as usize)?],
        None => builtin_examples(),
    };
    if !run_all && !do_compare {
        write_header(cli, out)?;
        writeln!(out, "name,gamma,left,right,x0,t_end,pattern")?;
        for s in &chosen {
            let (l, r) = s.riemann_data()?;
            writeln!(
                out,
                "{},{},\"{}\",\"{}\",{},{},{}",
                s.name,
                fmt_sig(s.gamma),
                state_cells(&l),
                state_cells(&r),
                fmt_sig(s.x0),
                fmt_sig(s.t_end),
                s.expected_pattern.as_deref().map(pattern_string).unwrap_or_default()
            )?;
        }
        return Ok(EXIT_OK);
    }
    if let Some(dir) = &cli.out {
        fs::create_dir_all(dir)?;
    }
    let mut code = EXIT_OK;
    write_header(cli, out)?;
    for base in &chosen {
        let mut s = base.clone();
        if let Some(n) = cli.n {
            s.n = n;
        }
        if let Some(c) = cli.cfl {
            s.cfl = c;
        }
        if let Some(h) = cli.jump_width {
            s = s.with_resolved_jumps(h)?;
        }
        if let Some(dir) = &cli.out {
            let run = run_scenario(&s, run_options(cli))?;
            let exact = exact_solution(&s)?;
            let states = exact_states(&s, &exact, &run.field.grid)?;
            emit_table(&example_csv_path(dir, &s), &run.field, &s.params()?, Some(&states))?;
        }
        if do_compare {
            let rep = compare_scenario(&s, cli)?;
            writeln!(out, "{rep}")?;
            if !rep.passed() {
                code = EXIT_FAIL;
            }
        } else if cli.out.is_none() {
            let run = run_scenario(&s, run_options(cli))?;
            writeln!(
                out,
                "{}: ran to t = {} in {} steps",
                s.name,
                fmt_sig(run.t),
                run.diagnostics.steps
            )?;
        }
    }
    Ok(code)
}
