//! Bound states of the one-dimensional finite square well in position and
//! momentum space.
//!
//! The crate solves the bound-state spectrum, evaluates ψ(x) and the closed
//! forms of φ(p) (including their removable singularities), and computes
//! `⟨p²⟩`, `⟨p⁴⟩` two ways: in closed form from position space, and as
//! truncated momentum-space moments. [`verify`] cross-checks the two.
//!
//! ```
//! use sqwell_core::{solve_all, SpectrumRequest, WellSpec, p2_expectation};
//!
//! let well = WellSpec::with_default_units(10.0, 2.0).unwrap();
//! let states = solve_all(&SpectrumRequest::new(well)).unwrap();
//! assert_eq!(states.len(), 3);
//! assert!((states[0].beta - 1.1862).abs() < 5e-4);
//! assert!(p2_expectation(&states[0]) < states[0].beta.powi(2));
//! ```

pub mod error;
pub mod model;
pub mod momentum;
pub mod numerics;
#[cfg(any(test, feature = "oracles"))]
pub mod oracles;
pub mod position;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result};
pub use model::{derive_state_quantities, gamma, BoundState, IswState, Parity, UnitSystem, WellSpec};
pub use momentum::{
    asymptotic_envelope, intensity, isw_intensity, isw_phi, phi, phi_in_out, Branch, MomentumAmplitude,
    SingularityWindow,
};
pub use numerics::{
    find_root_bracketed, fourier_oracle, integrate, isw_moment, momentum_moment, MomentRequest, MomentResult,
    QuadratureResult,
};
pub use position::{isw_p2, isw_psi, p2_expectation, p4_expectation, psi, PositionAmplitude, Region};
pub use spectrum::{count_bound_states, isw_state, solve_all, solve_state, SpectrumRequest};
pub use verify::{Check, VerificationReport};
