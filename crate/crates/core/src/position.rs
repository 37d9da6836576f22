//! Position-space eigenfunctions and closed-form momentum moments.
//!
//! `⟨p²⟩` and `⟨p⁴⟩` are obtained without differentiating ψ across the walls:
//! the Schrödinger equation turns `p²ψ` into `2m(E − V)ψ`, so
//!
//! ```text
//! ⟨p²⟩ = 2m⟨E − V⟩,        ⟨p⁴⟩ = ⟨p²ψ|p²ψ⟩ = (2m)²⟨(E − V)²⟩.
//! ```
//!
//! Both reduce to the exterior probability `P_out = A²·edge²/α`:
//! `⟨E − V⟩ = E − V0·P_out` and `⟨(E − V)²⟩ = E² + (V0² − 2V0E)·P_out`.

use serde::{Deserialize, Serialize};

use crate::model::{BoundState, IswState, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    Inside,
    Outside,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositionAmplitude {
    pub value: f64,
    pub region: Region,
}

/// ψ(x) of a finite-well bound state. |x| = a/2 is assigned to the inside.
pub fn psi(state: &BoundState, x: f64) -> PositionAmplitude {
    let region = if x.abs() <= state.well.half_width() {
        Region::Inside
    } else {
        Region::Outside
    };
    PositionAmplitude {
        value: psi_region(state, x, region),
        region,
    }
}

/// Evaluates the closed form of one region at any `x`, extending it
/// analytically past the wall. Used for one-sided continuity checks.
pub fn psi_region(state: &BoundState, x: f64, region: Region) -> f64 {
    let a = state.norm;
    match (region, state.parity) {
        (Region::Inside, Parity::Even) => a * (state.beta * x).cos(),
        (Region::Inside, Parity::Odd) => a * (state.beta * x).sin(),
        (Region::Outside, parity) => {
            let sign = match parity {
                Parity::Even => 1.0,
                Parity::Odd => x.signum(),
            };
            let decay = (-state.alpha * (x.abs() - state.well.half_width())).exp();
            a * sign * state.edge_factor() * decay
        }
    }
}

/// ⟨p²⟩ = ħ²β² − 2mV0·A²·edge²/α.
pub fn p2_expectation(state: &BoundState) -> f64 {
    let hbar = state.hbar();
    let m2 = 2.0 * state.well.mass();
    hbar * hbar * state.beta * state.beta - m2 * state.well.v0() * state.exterior_probability()
}

/// ⟨p⁴⟩ = ħ⁴β⁴ + (2m)²·(A²/α)·(V0² − 2V0E)·edge².
pub fn p4_expectation(state: &BoundState) -> f64 {
    let hb = state.hbar() * state.beta;
    let m2 = 2.0 * state.well.mass();
    let v0 = state.well.v0();
    hb.powi(4) + m2 * m2 * (v0 * v0 - 2.0 * v0 * state.energy) * state.exterior_probability()
}

/// Infinite-well eigenfunction; zero outside |x| ≤ a/2.
pub fn isw_psi(state: &IswState, x: f64) -> f64 {
    if x.abs() > 0.5 * state.a {
        return 0.0;
    }
    let amp = (2.0 / state.a).sqrt();
    if state.is_cosine() {
        amp * (state.beta_n * x).cos()
    } else {
        amp * (state.beta_n * x).sin()
    }
}

/// ⟨p²⟩ = ħ²βₙ² of the infinite well. ⟨p⁴⟩ has no finite counterpart.
pub fn isw_p2(state: &IswState) -> f64 {
    let hb = state.hbar() * state.beta_n;
    hb * hb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{derive_state_quantities, normalization, UnitSystem, WellSpec};
    use crate::numerics::integrate;
    use crate::spectrum::{solve_all, solve_state, SpectrumRequest};
    use std::f64::consts::PI;

    fn states() -> Vec<BoundState> {
        solve_all(&SpectrumRequest::new(WellSpec::with_default_units(10.0, 2.0).unwrap())).unwrap()
    }

    fn norm_integral(s: &BoundState) -> f64 {
        let h = s.well.half_width();
        let l = h + 40.0 / s.alpha;
        integrate(|x| psi(s, x).value.powi(2), -l, l, 1e-12, &[-h, h]).value
    }

    #[test]
    fn values_at_origin() {
        let st = states();
        assert_eq!(psi(&st[0], 0.0).value, st[0].norm);
        assert_eq!(psi(&st[1], 0.0).value, 0.0);
        assert_eq!(psi(&st[0], 3.0).region, Region::Outside);
    }

    #[test]
    fn continuity_at_walls() {
        let h_fd = 1e-5;
        for s in states() {
            for wall in [-1.0, 1.0] {
                let x = wall * s.well.half_width();
                let vin = psi_region(&s, x, Region::Inside);
                let vout = psi_region(&s, x, Region::Outside);
                assert!((vin - vout).abs() <= 1e-9 * s.norm, "value jump {}", vin - vout);
                let d = |r| (psi_region(&s, x + h_fd, r) - psi_region(&s, x - h_fd, r)) / (2.0 * h_fd);
                let (din, dout) = (d(Region::Inside), d(Region::Outside));
                let scale = s.norm * s.well.gamma();
                assert!((din - dout).abs() <= 1e-9 * scale, "slope jump {}", din - dout);
            }
        }
    }

    #[test]
    fn normalized_by_quadrature() {
        for s in states() {
            assert!((norm_integral(&s) - 1.0).abs() < 1e-8, "state {}", s.n);
        }
    }

    #[test]
    fn swapped_normalization_is_detected() {
        let s = states()[0];
        let other = Parity::Odd;
        let wrong = BoundState {
            norm: normalization(other, s.alpha, s.beta, s.d, s.well.width()),
            ..s
        };
        assert!((norm_integral(&wrong) - 1.0).abs() > 1e-3);
    }

    #[test]
    fn moments_match_direct_integrals() {
        for s in states() {
            let h = s.well.half_width();
            let l = h + 40.0 / s.alpha;
            let m2 = 2.0 * s.well.mass();
            let e_minus_v = |x: f64| s.energy - s.well.potential(x);
            let p2 = m2 * integrate(|x| psi(&s, x).value.powi(2) * e_minus_v(x), -l, l, 1e-14, &[-h, h]).value;
            let p4 = m2 * m2
                * integrate(|x| psi(&s, x).value.powi(2) * e_minus_v(x).powi(2), -l, l, 1e-14, &[-h, h]).value;
            assert!((p2 / p2_expectation(&s) - 1.0).abs() < 1e-10, "p2 state {}", s.n);
            assert!((p4 / p4_expectation(&s) - 1.0).abs() < 1e-10, "p4 state {}", s.n);
        }
    }

    #[test]
    fn exterior_probability_matches_quadrature() {
        for s in states() {
            let h = s.well.half_width();
            let tail = integrate(|x| psi(&s, x).value.powi(2), h, h + 40.0 / s.alpha, 1e-14, &[]).value;
            assert!((2.0 * tail / s.exterior_probability() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn moment_bounds() {
        for s in states() {
            let p2 = p2_expectation(&s);
            assert!(p2 > 0.0 && p2 < s.beta * s.beta);
            assert!(p4_expectation(&s) >= p2 * p2);
        }
        let ground = states()[0];
        assert!((p2_expectation(&ground) - 1.050).abs() < 5e-3, "{}", p2_expectation(&ground));
    }

    #[test]
    fn half_depth_state_has_bare_fourth_moment() {
        let well = WellSpec::with_default_units(2.0, PI / 2.0).unwrap();
        let s = derive_state_quantities(well, 1.0, Parity::Even, 0, 1e-12).unwrap();
        assert_eq!(p4_expectation(&s), 1.0);
    }

    #[test]
    fn deep_well_limits() {
        let w = WellSpec::with_default_units(1e6, 2.0).unwrap();
        let s = solve_state(w, 0).unwrap();
        assert!((p2_expectation(&s) / (s.beta * s.beta) - 1.0).abs() < 1e-2);
        // ⟨p⁴⟩ grows like √V0; at V0 = 1e6 it is already some 400 β⁴.
        assert!(p4_expectation(&s) > 1e2 * s.beta.powi(4));
        let ladder: Vec<f64> = [1e2, 1e4, 1e6]
            .iter()
            .map(|&v| p4_expectation(&solve_state(WellSpec::with_default_units(v, 2.0).unwrap(), 0).unwrap()))
            .collect();
        let slope = (ladder[2] / ladder[0]).ln() / (1e4f64).ln();
        assert!((slope - 0.5).abs() < 0.05, "slope {slope}");
    }

    #[test]
    fn general_units_keep_moment_identity() {
        let units = UnitSystem::new(1.3, 0.7).unwrap();
        let w = WellSpec::new(6.0, 1.5, units).unwrap();
        for s in solve_all(&SpectrumRequest::new(w)).unwrap() {
            let h = s.well.half_width();
            let l = h + 40.0 / s.alpha;
            let m2 = 2.0 * units.mass();
            let p2 = m2 * integrate(|x| psi(&s, x).value.powi(2) * (s.energy - w.potential(x)), -l, l, 1e-14, &[-h, h]).value;
            assert!((p2 / p2_expectation(&s) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn infinite_well_functions() {
        let s = IswState::new(1, 2.0, UnitSystem::default()).unwrap();
        assert!(isw_psi(&s, 1.0).abs() < 1e-15);
        assert!(isw_psi(&s, -1.0).abs() < 1e-15);
        assert!((isw_psi(&s, 0.0) - 1.0).abs() < 1e-15);
        assert_eq!(isw_psi(&s, 1.5), 0.0);
        assert!((isw_p2(&s) - PI * PI / 4.0).abs() < 1e-14);
        for n in 1..=4 {
            let s = IswState::new(n, 2.0, UnitSystem::default()).unwrap();
            let norm = integrate(|x| isw_psi(&s, x).powi(2), -1.0, 1.0, 1e-13, &[]).value;
            assert!((norm - 1.0).abs() < 1e-12);
        }
        let s2 = IswState::new(2, 2.0, UnitSystem::default()).unwrap();
        assert!((isw_p2(&s2) - PI * PI).abs() < 1e-13);
    }
}
