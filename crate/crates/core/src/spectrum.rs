//! Bound-state spectrum of the finite well and the infinite-well reference.
//!
//! Roots are sought in the half-width phase `d = βa/2 ∈ (0, γa/2]`. The
//! `k`-th state lives in `(kπ/2, (k+1)π/2)`, with parity alternating from
//! even at `k = 0`, so each window holds exactly one sign change of the
//! parity's pole-free eigenvalue function.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::model::{eigen_function, BoundState, IswState, Parity, UnitSystem, WellSpec};
use crate::numerics::find_root_bracketed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRequest {
    pub well: WellSpec,
    /// Largest accepted dimensionless eigenvalue residual.
    pub tol_root: f64,
    pub max_iter: usize,
}

impl SpectrumRequest {
    pub fn new(well: WellSpec) -> Self {
        Self {
            well,
            tol_root: 1e-12,
            max_iter: 200,
        }
    }
}

/// Number of bound states, `⌊γa/π⌋ + 1`.
pub fn count_bound_states(well: &WellSpec) -> usize {
    (well.gamma() * well.width() / PI).floor() as usize + 1
}

/// Pole-free eigenvalue function of `parity` as a function of the phase `d`.
fn phase_function(well: &WellSpec, parity: Parity) -> impl Fn(f64) -> f64 + '_ {
    let g2 = well.gamma_sq();
    let a = well.width();
    move |d: f64| {
        let beta = 2.0 * d / a;
        let alpha = (g2 - beta * beta).max(0.0).sqrt();
        eigen_function(parity, alpha, beta, d)
    }
}

/// Solves for every bound state, ordered by energy.
pub fn solve_all(req: &SpectrumRequest) -> Result<Vec<BoundState>> {
    if !(req.tol_root > 0.0) {
        return Err(Error::Domain(format!("root tolerance must be positive, got {}", req.tol_root)));
    }
    let well = req.well;
    let d_max = well.gamma() * well.half_width();
    let count = count_bound_states(&well);
    let mut states = Vec::with_capacity(count);

    for k in 0..count {
        let parity = Parity::of_index(k);
        let lo = k as f64 * FRAC_PI_2;
        let hi = ((k + 1) as f64 * FRAC_PI_2).min(d_max);
        let d = if hi - lo <= 1e-9 {
            // γa/π sits on an integer: the last state is at threshold
            d_max
        } else {
            let f = phase_function(&well, parity);
            find_root_bracketed(&f, lo, hi, 0.0, 0.0, req.max_iter).map_err(|e| match e {
                Error::Bracket { .. } => Error::Consistency(format!(
                    "no sign change of the {parity} eigenvalue function on [{lo}, {hi}] ({e})"
                )),
                other => other,
            })?
        };
        let state = BoundState::from_phase(well, d, parity, k);
        if state.residual().abs() > req.tol_root {
            return Err(Error::Consistency(format!(
                "state {k} has residual {:e} above tolerance {:e}",
                state.residual(),
                req.tol_root
            )));
        }
        states.push(state);
    }

    for pair in states.windows(2) {
        if !(pair[1].energy > pair[0].energy) || pair[1].parity == pair[0].parity {
            return Err(Error::Consistency(format!(
                "states {} and {} break energy ordering or parity alternation",
                pair[0].n, pair[1].n
            )));
        }
    }
    Ok(states)
}

/// Solves the spectrum with default tolerances and returns state `n`.
pub fn solve_state(well: WellSpec, n: usize) -> Result<BoundState> {
    let count = count_bound_states(&well);
    if n >= count {
        return Err(Error::Domain(format!("well supports {count} bound states, state {n} requested")));
    }
    Ok(solve_all(&SpectrumRequest::new(well))?.swap_remove(n))
}

/// Infinite-well eigenstate with `βₙ = nπ/a`.
///
/// The node condition ψ(±a/2) = 0 forces `Eₙ = n²π²ħ²/(2ma²)`.
pub fn isw_state(n: u32, a: f64, units: UnitSystem) -> Result<IswState> {
    IswState::new(n, a, units)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_well() -> WellSpec {
        WellSpec::with_default_units(10.0, 2.0).unwrap()
    }

    /// Independent oracle: counts sign changes of both eigenvalue functions on
    /// a dense grid in `d`, skipping the points where the pole-free forms
    /// trivially cross through the tangent poles.
    fn scan_roots(well: &WellSpec) -> Vec<(Parity, f64)> {
        let d_max = well.gamma() * well.half_width();
        let steps = 200_000;
        let mut roots = Vec::new();
        for parity in [Parity::Even, Parity::Odd] {
            let f = phase_function(well, parity);
            let mut prev = f(1e-12);
            for i in 1..=steps {
                let d = d_max * i as f64 / steps as f64;
                let cur = f(d);
                if prev.signum() != cur.signum() {
                    roots.push((parity, d));
                }
                prev = cur;
            }
        }
        roots.sort_by(|a, b| a.1.total_cmp(&b.1));
        roots
    }

    #[test]
    fn reference_well_count_matches_scan() {
        let w = reference_well();
        assert_eq!(count_bound_states(&w), 3);
        assert_eq!(scan_roots(&w).len(), 3);
        let heavy = WellSpec::new(10.0, 2.0, UnitSystem::new(1.0, 1.0).unwrap()).unwrap();
        assert_eq!(count_bound_states(&heavy), 3);
        assert_eq!(scan_roots(&heavy).len(), 3);
    }

    #[test]
    fn shallow_well_binds_one_state() {
        let w = WellSpec::with_default_units(1e-8, 2.0).unwrap();
        assert_eq!(count_bound_states(&w), 1);
        let states = solve_all(&SpectrumRequest::new(w)).unwrap();
        assert_eq!(states.len(), 1);
        assert!(states[0].energy > 0.0 && states[0].energy < 1e-8);
    }

    #[test]
    fn reference_well_wavenumbers() {
        let states = solve_all(&SpectrumRequest::new(reference_well())).unwrap();
        assert_eq!(states.len(), 3);
        assert!((states[0].beta - 1.1862).abs() < 5e-4);
        assert!((states[1].beta - 2.3185).abs() < 5e-4);
        assert_eq!(states[2].parity, Parity::Even);
        assert!(states[2].d > PI && states[2].d <= 10f64.sqrt());
        let scan = scan_roots(&reference_well());
        for (s, (parity, d)) in states.iter().zip(&scan) {
            assert_eq!(s.parity, *parity);
            assert!((s.d - d).abs() < 1e-4);
        }
    }

    #[test]
    fn state_invariants() {
        let w = reference_well();
        for s in solve_all(&SpectrumRequest::new(w)).unwrap() {
            assert!(s.energy > 0.0 && s.energy < w.v0());
            let alpha_direct = w.units().wavenumber_of_energy(w.v0() - s.energy);
            assert!((s.alpha / alpha_direct - 1.0).abs() < 1e-12);
            assert!(((s.alpha.powi(2) + s.beta.powi(2)) / w.gamma_sq() - 1.0).abs() < 1e-12);
            assert!(s.residual().abs() < 1e-12);
        }
    }

    #[test]
    fn bracketing_is_exhaustive() {
        let w = reference_well();
        let states = solve_all(&SpectrumRequest::new(w)).unwrap();
        let d_max = w.gamma() * w.half_width();
        for parity in [Parity::Even, Parity::Odd] {
            let f = phase_function(&w, parity);
            let step = PI / 200.0;
            let mut d = step;
            let mut prev = f(1e-12);
            while d < d_max {
                let cur = f(d);
                if prev.signum() != cur.signum() {
                    assert!(
                        states.iter().any(|s| s.parity == parity && (s.d - d).abs() <= step),
                        "unreported {parity} sign change near d = {d}"
                    );
                }
                prev = cur;
                d += step;
            }
        }
    }

    #[test]
    fn wavenumbers_grow_with_depth() {
        let mut prev: Vec<f64> = Vec::new();
        for v0 in 1..=50 {
            let w = WellSpec::with_default_units(v0 as f64, 2.0).unwrap();
            let betas: Vec<f64> = solve_all(&SpectrumRequest::new(w)).unwrap().iter().map(|s| s.beta).collect();
            for (b_new, b_old) in betas.iter().zip(&prev) {
                assert!(b_new >= b_old);
            }
            prev = betas;
        }
    }

    #[test]
    fn converges_to_infinite_well() {
        let mut last_err = [f64::INFINITY; 3];
        for v0 in [1e2, 1e4, 1e6] {
            let w = WellSpec::with_default_units(v0, 2.0).unwrap();
            let states = solve_all(&SpectrumRequest::new(w)).unwrap();
            for n in 0..3 {
                let isw = isw_state(n as u32 + 1, 2.0, UnitSystem::default()).unwrap();
                let err = (states[n].beta - isw.beta_n).abs();
                assert!(err < last_err[n]);
                last_err[n] = err;
            }
        }
        let w = WellSpec::with_default_units(1e6, 2.0).unwrap();
        let ground = solve_state(w, 0).unwrap();
        assert!((ground.beta / FRAC_PI_2 - 1.0).abs() < 1e-2);
    }

    #[test]
    fn threshold_state_is_flagged() {
        // γa/π = 2 exactly: the third state sits on the continuum edge.
        let w = WellSpec::with_default_units(PI * PI, 2.0).unwrap();
        let states = solve_all(&SpectrumRequest::new(w)).unwrap();
        assert_eq!(states.len(), 3);
        assert!(states[2].near_threshold);
        assert!(states[2].alpha >= crate::model::ALPHA_FLOOR);
        assert!(!states[0].near_threshold);
    }

    #[test]
    fn isw_reference() {
        let s = isw_state(1, 2.0, UnitSystem::default()).unwrap();
        assert!((s.energy - PI * PI / 4.0).abs() < 1e-14);
        assert!((isw_state(2, 2.0, UnitSystem::default()).unwrap().beta_n - PI).abs() < 1e-15);
        assert!(isw_state(0, 2.0, UnitSystem::default()).is_err());
    }

    #[test]
    fn bad_request() {
        let mut req = SpectrumRequest::new(reference_well());
        req.tol_root = 0.0;
        assert!(solve_all(&req).is_err());
        assert!(solve_state(reference_well(), 3).is_err());
    }
}
