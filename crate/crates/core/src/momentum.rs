//! Momentum-space eigenfunctions φ(p) of the finite and infinite wells.
//!
//! With `z = p/ħ`, `w = za/2`, `K = 2Aγ²/√(2πħ)`, the transform of a
//! finite-well state collapses (after applying its eigenvalue condition) to
//!
//! ```text
//! even:  φ(p) =  K cos d · (−α cos w + z sin w) / ((z² + α²)(z² − β²))
//! odd:   φ(p) = iK sin d · ( α sin w + z cos w) / ((z² + α²)(z² − β²))
//! ```
//!
//! so `|φ|² ~ p⁻⁶`. Both numerators vanish at `z = ±β`, leaving removable
//! 0/0 points. Their limits are
//!
//! ```text
//! even:  [(αa + 2) sin d + 2d cos d] / (4β)
//! odd:   [(αa + 2) cos d − 2d sin d] / (4β)
//! ```
//!
//! The even-state limit carries `+2d cos d`; this was adjudicated against a
//! high-precision limit sequence (see the `oracles` module and the
//! acceptance suite).
//!
//! Inside a small window around `±β` the fraction is evaluated through the
//! exact factorisation, with `ε = |z| − β` and `η = εa/2`,
//!
//! ```text
//! even:  g(β+ε)/ε = (α sin d + β cos d)·sin η/ε + sin(d + η)
//! odd:   g(β+ε)/ε = (α cos d − β sin d)·sin η/ε + cos(d + η)
//! ```
//!
//! which drops only the eigenvalue residual `g(β)` and has no cancellation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{BoundState, IswState, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Regular,
    NearSingularLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumAmplitude {
    pub value: Complex64,
    pub branch: Branch,
    /// p/ħ.
    pub z: f64,
}

/// Half-width of the window around `z = ±β` where the removable singularity
/// is evaluated through its limit form, as a fraction of β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularityWindow {
    relative: f64,
}

impl SingularityWindow {
    pub fn new(relative: f64) -> Result<Self> {
        if !(relative > 0.0 && relative.is_finite()) {
            return Err(Error::Domain(format!("window width must be positive, got {relative}")));
        }
        Ok(Self { relative })
    }

    pub fn relative(&self) -> f64 {
        self.relative
    }

    /// Absolute half-width in z around a singular point at `beta`.
    pub fn half_width(&self, beta: f64) -> f64 {
        self.relative * beta
    }

    fn contains(&self, z: f64, beta: f64) -> bool {
        (z.abs() - beta).abs() <= self.half_width(beta)
    }
}

impl Default for SingularityWindow {
    fn default() -> Self {
        Self { relative: 1e-4 }
    }
}

/// sin(εa/2)/ε, equal to a/2 at ε = 0.
fn sin_ratio(eps: f64, a: f64) -> f64 {
    let eta = 0.5 * eps * a;
    if eta == 0.0 {
        0.5 * a
    } else {
        eta.sin() / eps
    }
}

/// `2Aγ²·edge/√(2πħ)`, the real amplitude shared by both closed forms.
fn amplitude(state: &BoundState) -> f64 {
    2.0 * state.norm * state.well.gamma_sq() * state.edge_factor() / (2.0 * PI * state.hbar()).sqrt()
}

/// Parity numerator `g(z)`: `−α cos w + z sin w` (even), `α sin w + z cos w` (odd).
fn numerator(state: &BoundState, z: f64) -> f64 {
    let (s, c) = (0.5 * z * state.well.width()).sin_cos();
    match state.parity {
        Parity::Even => -state.alpha * c + z * s,
        Parity::Odd => state.alpha * s + z * c,
    }
}

/// `g(z)/(z² − β²)` for `z ≥ 0` through the factorised limit form.
fn limit_fraction(state: &BoundState, z: f64) -> f64 {
    let (alpha, beta, d) = (state.alpha, state.beta, state.d);
    let a = state.well.width();
    let eps = z - beta;
    let ratio = sin_ratio(eps, a);
    let (sd, cd) = d.sin_cos();
    let g_over_eps = match state.parity {
        Parity::Even => (alpha * sd + beta * cd) * ratio + (d + 0.5 * eps * a).sin(),
        Parity::Odd => (alpha * cd - beta * sd) * ratio + (d + 0.5 * eps * a).cos(),
    };
    g_over_eps / (z + beta)
}

/// `lim_{z→β} g(z)/(z² − β²)`.
pub fn singular_limit(state: &BoundState) -> f64 {
    let (alpha, beta, d) = (state.alpha, state.beta, state.d);
    let a = state.well.width();
    let (sd, cd) = d.sin_cos();
    match state.parity {
        Parity::Even => ((alpha * a + 2.0) * sd + 2.0 * d * cd) / (4.0 * beta),
        Parity::Odd => ((alpha * a + 2.0) * cd - 2.0 * d * sd) / (4.0 * beta),
    }
}

fn assemble(state: &BoundState, z: f64, fraction: f64) -> Complex64 {
    let real = amplitude(state) * fraction / (z * z + state.alpha * state.alpha);
    match state.parity {
        Parity::Even => Complex64::new(real, 0.0),
        Parity::Odd => Complex64::new(0.0, real),
    }
}

/// Closed-form φ(p) by plain division. Returns NaN exactly at `z = ±β`.
pub fn phi_regular(state: &BoundState, p: f64) -> Complex64 {
    let z = p / state.hbar();
    let fraction = numerator(state, z) / (z * z - state.beta * state.beta);
    assemble(state, z, fraction)
}

/// φ(p) through the near-singular limit form, valid for any p. Away from
/// `±β` it agrees with [`phi_regular`]; it exists separately so the two
/// branches can be checked against each other.
pub fn phi_limit_branch(state: &BoundState, p: f64) -> Complex64 {
    let z = p / state.hbar();
    let fraction = limit_fraction(state, z.abs()) * odd_sign(state.parity, z);
    assemble(state, z, fraction)
}

fn odd_sign(parity: Parity, z: f64) -> f64 {
    match parity {
        Parity::Even => 1.0,
        Parity::Odd => {
            if z < 0.0 {
                -1.0
            } else {
                1.0
            }
        }
    }
}

/// Momentum-space wavefunction of a finite-well bound state.
///
/// Even states give a real amplitude, odd states a purely imaginary one.
pub fn phi(state: &BoundState, p: f64, window: SingularityWindow) -> MomentumAmplitude {
    let z = p / state.hbar();
    if window.contains(z, state.beta) {
        MomentumAmplitude {
            value: phi_limit_branch(state, p),
            branch: Branch::NearSingularLimit,
            z,
        }
    } else {
        MomentumAmplitude {
            value: phi_regular(state, p),
            branch: Branch::Regular,
            z,
        }
    }
}

/// The interior and exterior contributions to φ(p) before the eigenvalue
/// condition is used. Each decays only like 1/p; their sum like 1/p³.
pub fn phi_in_out(state: &BoundState, p: f64, window: SingularityWindow) -> Result<(Complex64, Complex64)> {
    let z = p / state.hbar();
    if window.contains(z, state.beta) {
        return Err(Error::SingularBranch { z, beta: state.beta });
    }
    let (alpha, beta) = (state.alpha, state.beta);
    let (sd, cd) = state.d.sin_cos();
    let (sw, cw) = (0.5 * z * state.well.width()).sin_cos();
    let k = 2.0 * state.norm / (2.0 * PI * state.hbar()).sqrt();
    Ok(match state.parity {
        Parity::Even => {
            let inner = k * (beta * cw * sd - z * sw * cd) / (beta * beta - z * z);
            let outer = k * (alpha * cw - z * sw) * cd / (z * z + alpha * alpha);
            (Complex64::new(inner, 0.0), Complex64::new(outer, 0.0))
        }
        Parity::Odd => {
            let inner = k * (beta * cd * sw - z * sd * cw) / (beta * beta - z * z);
            let outer = -k * (alpha * sw + z * cw) * sd / (z * z + alpha * alpha);
            (Complex64::new(0.0, inner), Complex64::new(0.0, outer))
        }
    })
}

/// Momentum distribution I(p) = |φ(p)|².
pub fn intensity(state: &BoundState, p: f64) -> f64 {
    phi(state, p, SingularityWindow::default()).value.norm_sqr()
}

/// `C = [2Aγ²·edge·ħ³/√(2πħ)]²`, the limit superior of `p⁶ I(p)`.
pub fn asymptotic_envelope(state: &BoundState) -> f64 {
    let h = state.hbar();
    let c = amplitude(state) * h * h * h;
    c * c
}

fn isw_amplitude(state: &IswState) -> f64 {
    let n = f64::from(state.n);
    let h = state.hbar();
    (4.0 * state.a * n * n * PI * h * h * h).sqrt() / (state.a * state.a * h * h)
}

/// Phase of the infinite-well amplitude, matching the transform of
/// `√(2/a) cos βₙx` (odd n) or `√(2/a) sin βₙx` (even n).
fn isw_phase(state: &IswState) -> Complex64 {
    let n = state.n;
    if state.is_cosine() {
        Complex64::new(if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0)
    } else {
        Complex64::new(0.0, if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 })
    }
}

/// Infinite-well amplitude by plain division; NaN exactly at `p = ±nπħ/a`.
pub fn isw_phi_regular(state: &IswState, p: f64) -> Complex64 {
    let z = p / state.hbar();
    let w = 0.5 * z * state.a;
    let trig = if state.is_cosine() { w.cos() } else { w.sin() };
    let beta = state.beta_n;
    isw_phase(state) * (isw_amplitude(state) * trig / (beta * beta - z * z))
}

/// Momentum-space wavefunction of the infinite well,
/// `∝ cos(pa/2ħ)/(n²π²ħ² − p²a²)` or the sine analogue.
///
/// At `p = ±nπħ/a` the trig factor vanishes too; there
/// `cos(nπ/2 + η) = −sin(nπ/2) sin η` (sine case: `cos(nπ/2) sin η`) gives
/// the exact limit form, and `I(nπħ/a) = a/(4πħ)`.
pub fn isw_phi(state: &IswState, p: f64, window: SingularityWindow) -> MomentumAmplitude {
    let z = p / state.hbar();
    let beta = state.beta_n;
    if !window.contains(z, beta) {
        return MomentumAmplitude {
            value: isw_phi_regular(state, p),
            branch: Branch::Regular,
            z,
        };
    }
    let zs = z.abs();
    let eps = zs - beta;
    let ratio = sin_ratio(eps, state.a) / (zs + beta);
    let n = state.n;
    let fraction = if state.is_cosine() {
        // sin(nπ/2) = (−1)^((n−1)/2)
        let s = if ((n - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        s * ratio
    } else {
        let c = if (n / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        -c * ratio * if z < 0.0 { -1.0 } else { 1.0 }
    };
    MomentumAmplitude {
        value: isw_phase(state) * (isw_amplitude(state) * fraction),
        branch: Branch::NearSingularLimit,
        z,
    }
}

pub fn isw_intensity(state: &IswState, p: f64) -> f64 {
    isw_phi(state, p, SingularityWindow::default()).value.norm_sqr()
}

/// `lim sup p⁴ I(p)` of the infinite well, `4n²πħ³/a³`.
pub fn isw_asymptotic_envelope(state: &IswState) -> f64 {
    let n = f64::from(state.n);
    4.0 * n * n * PI * state.hbar().powi(3) / state.a.powi(3)
}
