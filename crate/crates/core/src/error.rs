use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("precision of {digits} digits is outside the supported range 16..=200")]
    InvalidPrecision { digits: u32 },

    #[error("argument {value} is outside the domain of {function}")]
    Domain { function: &'static str, value: f64 },

    #[error("gamma function has a pole at {at}")]
    Pole { at: f64 },

    #[error("arithmetic failure: {0}")]
    Arithmetic(&'static str),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("basis index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error(
        "overlap matrix is not positive definite at pivot {pivot}; \
         increase --digits or reduce the basis size"
    )]
    IllConditionedBasis { pivot: usize },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("root is not bracketed by [{lo}, {hi}] (f(lo) = {f_lo}, f(hi) = {f_hi})")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("root finder stopped after {iterations} iterations at {last}")]
    RootIterationLimit { iterations: usize, last: f64 },

    #[error("unsupported request: {0}")]
    Unsupported(String),
}
