//! Numerical kernel: bracketed roots, adaptive quadrature, the Fourier
//! transform oracle and truncated momentum moments.

mod moments;
mod quadrature;
mod roots;
mod transform;

pub use moments::{isw_moment, momentum_moment, MomentRequest, MomentResult};
pub use quadrature::{
    compensated_sum, integrate, integrate_with_budget, periodic_seams, QuadratureResult, DEFAULT_MAX_PANELS,
};
pub use roots::find_root_bracketed;
pub use transform::{fourier_oracle, fourier_transform, isw_fourier_oracle};
