//! Cross-checks between the position-space and momentum-space descriptions.
//!
//! # Momentum-space Schrödinger equation
//!
//! The raw well potential is not integrable, so the residual uses the shifted
//! potential `W = V − V0` (equal to `−V0` inside, zero outside) and the shifted
//! energy `E′ = E − V0`; the eigenfunctions are unchanged. Transforming
//! `−ħ²/2m ψ″ + Wψ = E′ψ` with `φ = (2πħ)^(−1/2) ∫ψ e^(−ipx/ħ) dx` gives
//!
//! ```text
//! r(p) = [p²/2m − E′] φ(p) + (2πħ)^(−1/2) ∫ U(p − p′) φ(p′) dp′ = 0,
//! U(q) = (2πħ)^(−1/2) ∫ W e^(−iqx/ħ) dx = −V0 · a · sinc(qa/2ħ) / √(2πħ).
//! ```
//!
//! [`integral_equation_residual`] reports `max|r| / max|p²φ/2m|` on a grid.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{BoundState, IswState, UnitSystem, WellSpec};
use crate::momentum::{intensity, isw_intensity, phi, SingularityWindow};
use crate::numerics::{integrate, momentum_moment, periodic_seams, MomentRequest};
use crate::position::{p2_expectation, p4_expectation};
use crate::spectrum::{solve_all, solve_state, SpectrumRequest};

/// Tolerance of the Parseval check.
pub const PARSEVAL_TOL: f64 = 1e-4;
/// Relative tolerance of the ⟨p²⟩ cross-check.
pub const CROSS_P2_TOL: f64 = 1e-3;
/// Relative tolerance of the ⟨p⁴⟩ cross-check.
pub const CROSS_P4_TOL: f64 = 2e-2;
/// Tolerance of the normalized integral-equation residual.
pub const RESIDUAL_TOL: f64 = 1e-3;
/// Tolerance on the fitted tail exponents.
pub const TAIL_EXPONENT_TOL: f64 = 0.1;

/// One named check. Passes iff `|value| <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub state: Option<usize>,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, state: Option<usize>, value: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            state,
            value,
            tolerance,
            // NaN fails
            passed: value.abs() <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub well: WellSpec,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(well: WellSpec) -> Self {
        Self { well, checks: Vec::new() }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// `|∫_{−P}^{P} I dp − 1|`.
pub fn parseval_check(state: &BoundState, p_max: f64) -> Result<Check> {
    let m = momentum_moment(&MomentRequest::new(state, 0).p_max(p_max).tol(1e-12).tail(false))?;
    Ok(Check::new("parseval", Some(state.n), m.total() - 1.0, PARSEVAL_TOL))
}

/// Relative difference between the closed-form moment and the momentum-space
/// moment (with tail estimate) of order 2 or 4.
pub fn cross_representation_check(state: &BoundState, order: u32, p_max: f64) -> Result<Check> {
    let (closed, tol) = match order {
        2 => (p2_expectation(state), CROSS_P2_TOL),
        4 => (p4_expectation(state), CROSS_P4_TOL),
        _ => return Err(Error::Domain(format!("cross-check needs order 2 or 4, got {order}"))),
    };
    let m = momentum_moment(&MomentRequest::new(state, order).p_max(p_max))?;
    if !m.quadrature.converged {
        return Err(Error::Quadrature {
            abs_error: m.quadrature.abs_error_estimate,
            tol: 1e-9,
            panels: m.quadrature.panels,
        });
    }
    Ok(Check::new(format!("cross_p{order}"), Some(state.n), (m.total() - closed) / closed, tol))
}

/// `U(q)` of the shifted well.
fn shifted_potential_transform(well: &WellSpec, q: f64) -> f64 {
    let hbar = well.hbar();
    let u = 0.5 * q * well.width() / hbar;
    let sinc = if u == 0.0 { 1.0 } else { u.sin() / u };
    -well.v0() * well.width() * sinc / (2.0 * PI * hbar).sqrt()
}

/// Residual of the momentum-space equation for an arbitrary amplitude `phi`
/// at energy `energy`, normalized as in [`integral_equation_residual`].
/// `seams` are extra breakpoints for the convolution (e.g. `±ħβ`).
pub fn integral_equation_residual_with<F>(
    well: &WellSpec,
    energy: f64,
    phi: F,
    p_grid: &[f64],
    p_conv: f64,
    seams: &[f64],
) -> Result<f64>
where
    F: Fn(f64) -> Complex64,
{
    let hbar = well.hbar();
    let m2 = 2.0 * well.mass();
    let shifted_e = energy - well.v0();
    let tol = 1e-10;
    let base = {
        let mut b = periodic_seams(-p_conv, p_conv, 2.0 * PI * hbar / well.width());
        b.extend_from_slice(seams);
        b.push(0.0);
        b
    };
    let mut max_res: f64 = 0.0;
    let mut max_kin: f64 = 0.0;
    for &p in p_grid {
        let mut bp = base.clone();
        bp.push(p);
        let kernel = |q: f64| shifted_potential_transform(well, p - q);
        let re = integrate(|q| kernel(q) * phi(q).re, -p_conv, p_conv, tol, &bp);
        let im = integrate(|q| kernel(q) * phi(q).im, -p_conv, p_conv, tol, &bp);
        for r in [re, im] {
            if !r.converged {
                return Err(Error::Quadrature {
                    abs_error: r.abs_error_estimate,
                    tol,
                    panels: r.panels,
                });
            }
        }
        let conv = Complex64::new(re.value, im.value) / (2.0 * PI * hbar).sqrt();
        let here = phi(p);
        let kinetic = p * p / m2;
        let r = (kinetic - shifted_e) * here + conv;
        max_res = max_res.max(r.norm());
        max_kin = max_kin.max((kinetic * here).norm());
    }
    Ok(if max_res == 0.0 { 0.0 } else { max_res / max_kin })
}

/// Normalized residual of the momentum-space Schrödinger equation for the
/// closed-form φ of `state`.
pub fn integral_equation_residual(state: &BoundState, p_grid: &[f64], p_conv: f64) -> Result<Check> {
    let window = SingularityWindow::default();
    let singular = state.hbar() * state.beta;
    let value = integral_equation_residual_with(
        &state.well,
        state.energy,
        |p| phi(state, p, window).value,
        p_grid,
        p_conv,
        &[-singular, singular],
    )?;
    Ok(Check::new("integral_equation", Some(state.n), value, RESIDUAL_TOL))
}

/// `n` evenly spaced points on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

/// Slope of `log(sup I)` against `log p` over `[p_lo, p_hi]`, taking the
/// maximum of `f` within each window of width `period`.
pub fn envelope_slope<F: Fn(f64) -> f64>(f: F, p_lo: f64, p_hi: f64, period: f64) -> f64 {
    let windows = ((p_hi - p_lo) / period).floor() as usize;
    let samples = 400;
    let mut xs = Vec::with_capacity(windows);
    let mut ys = Vec::with_capacity(windows);
    for w in 0..windows {
        let start = p_lo + w as f64 * period;
        let (mut best_p, mut best) = (start, f64::NEG_INFINITY);
        for k in 0..samples {
            let p = start + period * k as f64 / samples as f64;
            let v = f(p);
            if v > best {
                best = v;
                best_p = p;
            }
        }
        xs.push(best_p.ln());
        ys.push(best.ln());
    }
    fit_slope(&xs, &ys)
}

/// Fitted tail exponent of I(p) over p ∈ [30, 100] (momentum units scaled by
/// ħ), compared with −6.
pub fn tail_exponent_check(state: &BoundState) -> Check {
    let h = state.hbar();
    let slope = envelope_slope(|p| intensity(state, p), 30.0 * h, 100.0 * h, 2.0 * PI * h / state.well.width());
    Check::new("tail_exponent", Some(state.n), slope + 6.0, TAIL_EXPONENT_TOL)
}

/// Fitted tail exponent of the infinite-well I(p), compared with −4.
pub fn isw_tail_exponent_check(state: &IswState) -> Check {
    let h = state.hbar();
    let slope = envelope_slope(|p| isw_intensity(state, p), 30.0 * h, 100.0 * h, 2.0 * PI * h / state.a);
    Check::new("isw_tail_exponent", None, slope + 4.0, TAIL_EXPONENT_TOL)
}

/// `|∫_{−P}^{P} conj(φ_m) φ_n dp|` for two states of the same well.
pub fn orthogonality_check(m: &BoundState, n: &BoundState, p_max: f64) -> Result<Check> {
    let window = SingularityWindow::default();
    let h = m.hbar();
    let mut seams = periodic_seams(-p_max, p_max, 2.0 * PI * h / m.well.width());
    seams.extend([-h * m.beta, h * m.beta, -h * n.beta, h * n.beta, 0.0]);
    let product = |p: f64| phi(m, p, window).value.conj() * phi(n, p, window).value;
    let re = integrate(|p| product(p).re, -p_max, p_max, 1e-12, &seams);
    let im = integrate(|p| product(p).im, -p_max, p_max, 1e-12, &seams);
    let tol = if m.parity == n.parity { 1e-4 } else { 1e-6 };
    Ok(Check::new(
        format!("orthogonality_{}_{}", m.n, n.n),
        None,
        Complex64::new(re.value, im.value).norm(),
        tol,
    ))
}

/// Ground-state behaviour of the finite well as V0 grows along `ladder`:
/// the relative gap `1 − ⟨p²⟩/ħ²β²` must shrink, `⟨p⁴⟩` must grow with
/// exponent ½ in V0, and β must approach π/a.
pub fn isw_limit_check(a: f64, units: UnitSystem, ladder: &[f64]) -> Result<Vec<Check>> {
    if ladder.len() < 2 || ladder.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("ISW ladder needs at least two ascending depths".into()));
    }
    let mut gaps = Vec::with_capacity(ladder.len());
    let mut p4 = Vec::with_capacity(ladder.len());
    let mut last_beta = 0.0;
    for &v0 in ladder {
        let s = solve_state(WellSpec::new(v0, a, units)?, 0)?;
        let hb = s.hbar() * s.beta;
        gaps.push((p2_expectation(&s) - hb * hb).abs() / p2_expectation(&s));
        p4.push(p4_expectation(&s));
        last_beta = s.beta;
    }
    let gap_rise = gaps.windows(2).map(|w| w[1] - w[0]).fold(0.0f64, f64::max);
    let p4_drop = p4.windows(2).map(|w| w[0] - w[1]).fold(0.0f64, f64::max);
    let log_v: Vec<f64> = ladder.iter().map(|v| v.ln()).collect();
    let log_p4: Vec<f64> = p4.iter().map(|v| v.ln()).collect();
    let exponent = fit_slope(&log_v, &log_p4);
    Ok(vec![
        Check::new("isw_limit.p2_gap_increase", Some(0), gap_rise, 0.0),
        Check::new("isw_limit.p4_decrease", Some(0), p4_drop, 0.0),
        Check::new("isw_limit.p4_growth_exponent", Some(0), exponent - 0.5, 0.05),
        Check::new("isw_limit.beta_vs_pi_over_a", Some(0), last_beta * a / PI - 1.0, 1e-2),
    ])
}

/// Parameters of a full verification run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub p_max: f64,
    /// Momentum grid of the integral-equation residual.
    pub residual_grid: Vec<f64>,
    pub p_conv: f64,
    pub isw_ladder: Vec<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            p_max: 100.0,
            residual_grid: linear_grid(-20.0, 20.0, 81),
            p_conv: 200.0,
            isw_ladder: vec![1e2, 1e4, 1e6],
        }
    }
}

/// Runs every check for every bound state of `well`.
pub fn run_all(well: WellSpec, config: &VerifyConfig) -> Result<VerificationReport> {
    let states = solve_all(&SpectrumRequest::new(well))?;
    let mut report = VerificationReport::new(well);
    let h = well.hbar();
    for s in &states {
        report.checks.push(parseval_check(s, config.p_max)?);
        report.checks.push(cross_representation_check(s, 2, config.p_max)?);
        report.checks.push(cross_representation_check(s, 4, config.p_max)?);
        let grid: Vec<f64> = config.residual_grid.iter().map(|p| p * h).collect();
        report.checks.push(integral_equation_residual(s, &grid, config.p_conv * h)?);
        report.checks.push(tail_exponent_check(s));
        report.checks.push(Check::new(
            "p4_ge_p2_squared",
            Some(s.n),
            (p2_expectation(s).powi(2) - p4_expectation(s)).max(0.0),
            0.0,
        ));
    }
    for (i, m) in states.iter().enumerate() {
        for n in &states[i + 1..] {
            report.checks.push(orthogonality_check(m, n, config.p_max)?);
        }
    }
    report.checks.extend(isw_limit_check(well.width(), well.units(), &config.isw_ladder)?);
    let isw = IswState::new(1, well.width(), well.units())?;
    report.checks.push(isw_tail_exponent_check(&isw));
    Ok(report)
}
