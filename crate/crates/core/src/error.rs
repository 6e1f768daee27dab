use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit {0} appears more than once in a gate")]
    DuplicateQubit(usize),

    #[error("{kind} expects {expected} control(s), got {got}")]
    Arity {
        kind: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("gate angle is not finite: {0}")]
    NonFiniteAngle(f64),

    #[error("level {level} out of range (limit {limit})")]
    LevelOutOfRange { level: usize, limit: usize },

    #[error("register width {width} too small, need at least {needed}")]
    WidthTooSmall { width: usize, needed: usize },

    #[error("stray probability mass {mass:e} outside the encoding's level positions")]
    StrayMass { mass: f64 },

    #[error("amplitude vector is not normalized (sum of squares {0})")]
    NotNormalized(f64),

    #[error("invalid level count N={0}: {1}")]
    InvalidLevels(usize, &'static str),

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("rotation angle {0} outside [0, π]")]
    AngleOutOfRange(f64),

    #[error("fit needs at least {needed} points, got {got}")]
    TooFewPoints { got: usize, needed: usize },

    #[error("{0} has no per-level basis layout")]
    NoLevelLayout(&'static str),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
