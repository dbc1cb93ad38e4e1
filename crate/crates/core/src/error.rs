use thiserror::Error;

/// Errors reported by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("deformation parameter q = {0} must satisfy 0 < |q| < 1")]
    InvalidQ(f64),
    #[error("Re(z) = {re} lies outside the admissible range {range}")]
    OutsideStrip { re: f64, range: &'static str },
    #[error("truncation size {got} is too small (need at least {min})")]
    TruncationTooSmall { got: usize, min: usize },
    #[error("q-binomial coefficient requires k <= n (got n = {n}, k = {k})")]
    BinomialRange { n: u32, k: u32 },
    #[error("series does not converge: limiting ratio {ratio} >= 1")]
    Divergent { ratio: f64 },
    #[error("matrix is singular or ill-conditioned (condition number {0:e})")]
    IllConditioned(f64),
    #[error("no admissible truncation degree found below {0}")]
    Infeasible(usize),
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
