use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("incompatible radicands: sqrt({left}) and sqrt({right}) cannot be combined")]
    IncompatibleRadicands { left: u64, right: u64 },

    #[error("invalid metallic parameters: {0}")]
    InvalidParams(String),

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("unknown identifier `{name}` at column {column}")]
    UnknownIdentifier { name: String, column: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("denominator vanishes identically after substitution")]
    Pole,

    #[error("chart mismatch: expected ({expected}), found ({found})")]
    ChartMismatch { expected: String, found: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("not almost product: (P^2 - I)[{row}][{col}] = {residual}")]
    NotAlmostProduct { row: usize, col: usize, residual: String },

    #[error("{kind} relation fails: [{row}][{col}] = {residual}")]
    DefiningRelation {
        kind: &'static str,
        row: usize,
        col: usize,
        residual: String,
    },

    #[error("not metallic: (T^2 - alpha T - beta I)[{row}][{col}] = {residual}")]
    NotMetallic { row: usize, col: usize, residual: String },

    #[error("cross-section not invariant: (L_V T)[{row}][{col}] = {residual}")]
    NotInvariant { row: usize, col: usize, residual: String },

    #[error("projectors are not complementary: (r + s - I)[{row}][{col}] = {residual}")]
    NotComplementary { row: usize, col: usize, residual: String },

    #[error("distribution generator {index} is not fixed by its projector")]
    GeneratorNotInImage { index: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("{file}:{line}:{column}: {message}")]
    Scenario {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}
