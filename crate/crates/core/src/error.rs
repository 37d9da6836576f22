use thiserror::Error;

/// Errors raised by the well solvers and numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs are individually valid but mutually inconsistent, e.g. an
    /// energy that does not satisfy the eigenvalue condition.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// The function has the same sign at both ends of the bracket.
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// Iteration budget exhausted before the stopping criterion was met.
    #[error("no convergence after {iterations} iterations on [{lo}, {hi}] (best estimate {best})")]
    Convergence {
        lo: f64,
        hi: f64,
        best: f64,
        iterations: usize,
    },

    /// Adaptive quadrature ran out of panels.
    #[error("quadrature did not converge: error estimate {abs_error} > tolerance {tol} after {panels} panels")]
    Quadrature { abs_error: f64, tol: f64, panels: usize },

    /// A split evaluation was requested inside a removable-singularity window.
    #[error("z = {z} lies within the singular window around ±{beta}; use the combined amplitude")]
    SingularBranch { z: f64, beta: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
