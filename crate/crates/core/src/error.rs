use thiserror::Error;

use crate::model::State;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid model parameter: {0}")]
    InvalidParams(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("density {rho} outside admissible range {range}")]
    RhoOutOfRange { rho: f64, range: String },

    #[error("self-similar coordinate {xi} lies outside the fan [{lo}, {hi}]")]
    XiOutsideFan { xi: f64, lo: f64, hi: f64 },

    #[error("degenerate jump: left and right densities coincide ({rho})")]
    DegenerateJump { rho: f64 },

    #[error("state {0:?} is not in the supersonic region D2")]
    NotInD2(State),

    #[error("left state {0:?} has zero mass flux")]
    DegenerateLeftState(State),

    #[error("no stationary wave from {from:?} to width {a_target} (F(rho_min) = {f_min:e} > 0)")]
    NoStationaryWave {
        from: State,
        a_target: f64,
        f_min: f64,
    },

    #[error("state {0:?} lies on the sonic curve; the stationary branch is ambiguous")]
    OnSonicBoundary(State),

    #[error("coefficient c = {0} is not supersonic (c must exceed 1)")]
    NotSupersonic(f64),

    #[error("state {0:?} is vacuum")]
    VacuumState(State),

    #[error("left state {0:?} is vacuum; the solver needs a non-vacuum left datum")]
    VacuumLeftState(State),

    #[error("no wave curve from the left state reaches u = {u_plus}")]
    NoIntersection { u_plus: f64 },

    #[error("root bracket [{lo}, {hi}] does not enclose a sign change")]
    NoBracket { lo: f64, hi: f64 },

    #[error("CFL condition violated: lambda * max speed = {courant} > {limit}")]
    CflViolation { courant: f64, limit: f64 },

    #[error("non-finite state in cell {cell} at step {step}")]
    NonFiniteState { step: usize, cell: usize },

    #[error("invalid width profile: {0}")]
    InvalidProfile(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("scenario cannot be aligned with an exact solution: {0}")]
    MisalignedScenario(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
