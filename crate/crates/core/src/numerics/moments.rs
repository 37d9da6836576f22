use std::f64::consts::PI;

use super::quadrature::{integrate, periodic_seams, QuadratureResult};
use crate::error::{Error, Result};
use crate::model::{BoundState, IswState};
use crate::momentum::{asymptotic_envelope, intensity, isw_asymptotic_envelope, isw_intensity};

/// Truncated momentum moment `∫_{−P}^{P} pˢ I(p) dp` of a finite-well state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRequest<'a> {
    pub state: &'a BoundState,
    /// Moment order: 0, 2 or 4.
    pub order: u32,
    /// Truncation half-width P.
    pub p_max: f64,
    pub tol: f64,
    pub include_tail_estimate: bool,
}

impl<'a> MomentRequest<'a> {
    /// P = 100, tol = 1e−9, with the tail estimate.
    pub fn new(state: &'a BoundState, order: u32) -> Self {
        Self {
            state,
            order,
            p_max: 100.0,
            tol: 1e-9,
            include_tail_estimate: true,
        }
    }

    pub fn p_max(mut self, p_max: f64) -> Self {
        self.p_max = p_max;
        self
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn tail(mut self, include: bool) -> Self {
        self.include_tail_estimate = include;
        self
    }
}

/// A truncated moment and, separately, the modelled contribution of `|p| > P`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentResult {
    pub quadrature: QuadratureResult,
    /// Zero unless a tail estimate was requested.
    pub tail_estimate: f64,
}

impl MomentResult {
    pub fn total(&self) -> f64 {
        self.quadrature.value + self.tail_estimate
    }
}

fn check_order(order: u32) -> Result<()> {
    if matches!(order, 0 | 2 | 4) {
        Ok(())
    } else {
        Err(Error::Domain(format!("moment order must be 0, 2 or 4, got {order}")))
    }
}

/// Seams at the removable singular points, the origin and every `2πħ/a`.
fn momentum_seams(p_max: f64, singular: f64, period: f64) -> Vec<f64> {
    let mut seams = periodic_seams(-p_max, p_max, period);
    seams.extend([-singular, 0.0, singular]);
    seams
}

/// `∫_{−P}^{P} pˢ I(p) dp`, optionally plus the mean-value tail
/// `C/((5 − s)P^(5−s))` obtained from `pˢ I ≈ C·pˢ⁻⁶·(oscillation of mean ½)`.
pub fn momentum_moment(req: &MomentRequest<'_>) -> Result<MomentResult> {
    check_order(req.order)?;
    let state = req.state;
    let hbar = state.hbar();
    let singular = hbar * state.beta;
    if !(req.p_max > singular) {
        return Err(Error::Domain(format!(
            "truncation P = {} must exceed ħβ = {singular}",
            req.p_max
        )));
    }
    let s = req.order as i32;
    let seams = momentum_seams(req.p_max, singular, 2.0 * PI * hbar / state.well.width());
    let quadrature = integrate(|p| p.powi(s) * intensity(state, p), -req.p_max, req.p_max, req.tol, &seams);
    let tail_estimate = if req.include_tail_estimate {
        let k = 5 - s;
        asymptotic_envelope(state) / (f64::from(k) * req.p_max.powi(k))
    } else {
        0.0
    };
    Ok(MomentResult {
        quadrature,
        tail_estimate,
    })
}

/// Momentum moment of an infinite-well state.
///
/// `I ~ p⁻⁴`, so s = 2 converges (tail `C/((3 − s)P^(3−s))` when requested)
/// while s = 4 grows linearly in P and never gets a tail.
pub fn isw_moment(state: &IswState, order: u32, p_max: f64, include_tail_estimate: bool) -> Result<MomentResult> {
    check_order(order)?;
    let hbar = state.hbar();
    let singular = hbar * state.beta_n;
    if !(p_max > singular) {
        return Err(Error::Domain(format!("truncation P = {p_max} must exceed nπħ/a = {singular}")));
    }
    let s = order as i32;
    let seams = momentum_seams(p_max, singular, 2.0 * PI * hbar / state.a);
    let quadrature = integrate(|p| p.powi(s) * isw_intensity(state, p), -p_max, p_max, 1e-10, &seams);
    let tail_estimate = if include_tail_estimate && s < 3 {
        let k = 3 - s;
        isw_asymptotic_envelope(state) / (f64::from(k) * p_max.powi(k))
    } else {
        0.0
    };
    Ok(MomentResult {
        quadrature,
        tail_estimate,
    })
}
