use num_complex::Complex64;
use std::f64::consts::PI;

use super::quadrature::integrate;
use crate::error::{Error, Result};
use crate::model::{BoundState, IswState};
use crate::position::{isw_psi, psi};

/// `(2πħ)^(−1/2) ∫_{−L}^{L} ψ(x) e^(−ipx/ħ) dx` by adaptive quadrature,
/// real and imaginary parts integrated separately.
pub fn fourier_transform<F>(psi: F, half_extent: f64, breakpoints: &[f64], p: f64, hbar: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> f64,
{
    let z = p / hbar;
    let re = integrate(|x| psi(x) * (z * x).cos(), -half_extent, half_extent, tol, breakpoints);
    let im = integrate(|x| -psi(x) * (z * x).sin(), -half_extent, half_extent, tol, breakpoints);
    for r in [re, im] {
        if !r.converged {
            return Err(Error::Quadrature {
                abs_error: r.abs_error_estimate,
                tol,
                panels: r.panels,
            });
        }
    }
    Ok(Complex64::new(re.value, im.value) / (2.0 * PI * hbar).sqrt())
}

/// Numerical φ(p) of a finite-well state, independent of the closed forms.
///
/// The exterior is cut at `a/2 + 40/α`, where ψ² has fallen by e⁻⁸⁰.
pub fn fourier_oracle(state: &BoundState, p: f64, tol: f64) -> Result<Complex64> {
    let h = state.well.half_width();
    let extent = h + 40.0 / state.alpha;
    fourier_transform(|x| psi(state, x).value, extent, &[-h, 0.0, h], p, state.hbar(), tol)
}

/// Numerical φ(p) of an infinite-well state (support `[−a/2, a/2]`).
pub fn isw_fourier_oracle(state: &IswState, p: f64, tol: f64) -> Result<Complex64> {
    fourier_transform(|x| isw_psi(state, x), 0.5 * state.a, &[0.0], p, state.hbar(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{UnitSystem, WellSpec};
    use crate::momentum::{isw_phi, phi, SingularityWindow};
    use crate::spectrum::{solve_all, SpectrumRequest};

    fn states() -> Vec<BoundState> {
        solve_all(&SpectrumRequest::new(WellSpec::with_default_units(10.0, 2.0).unwrap())).unwrap()
    }

    #[test]
    fn even_state_at_zero_is_mean_of_psi() {
        let s = states()[0];
        // ∫ψ = 2A[sin d/β + cos d/α]
        let integral = 2.0 * s.norm * (s.d.sin() / s.beta + s.d.cos() / s.alpha);
        let v = fourier_oracle(&s, 0.0, 1e-12).unwrap();
        assert_eq!(v.im, 0.0);
        assert!((v.re - integral / (2.0 * PI).sqrt()).abs() < 1e-11);
    }

    #[test]
    fn odd_state_is_imaginary() {
        let s = states()[1];
        for p in [-7.0, 0.5, 2.0, 13.0] {
            let v = fourier_oracle(&s, p, 1e-12).unwrap();
            assert!(v.re.abs() < 1e-12);
        }
    }

    #[test]
    fn matches_closed_form() {
        for s in states().iter().take(2) {
            for p in [-11.3, -3.0, 0.0, 0.9, 3.0, 17.5] {
                let oracle = fourier_oracle(s, p, 1e-12).unwrap();
                let closed = phi(s, p, SingularityWindow::default()).value;
                assert!((oracle - closed).norm() < 1e-8, "state {} p {p}", s.n);
            }
        }
    }

    #[test]
    fn reality_symmetry() {
        for s in states().iter().take(2) {
            for p in [0.4, 2.5, 9.0] {
                let a = fourier_oracle(s, p, 1e-12).unwrap();
                let b = fourier_oracle(s, -p, 1e-12).unwrap();
                assert!((a - b.conj()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn isw_closed_form_matches_transform() {
        for n in 1..=4 {
            let s = IswState::new(n, 2.0, UnitSystem::default()).unwrap();
            for p in [-6.1, 0.0, 0.7, s.beta_n, 9.4] {
                let oracle = isw_fourier_oracle(&s, p, 1e-13).unwrap();
                let closed = isw_phi(&s, p, SingularityWindow::default()).value;
                assert!((oracle - closed).norm() < 1e-10, "n {n} p {p}: {oracle} vs {closed}");
            }
        }
    }

    #[test]
    fn general_units() {
        let units = UnitSystem::new(1.3, 0.7).unwrap();
        let w = WellSpec::new(6.0, 1.5, units).unwrap();
        for s in solve_all(&SpectrumRequest::new(w)).unwrap() {
            for p in [-2.0, 0.3, 1.1, 4.0] {
                let oracle = fourier_oracle(&s, p, 1e-12).unwrap();
                let closed = phi(&s, p, SingularityWindow::default()).value;
                assert!((oracle - closed).norm() < 1e-8, "state {} {:?} p {p}", s.n, s.parity);
            }
        }
    }
}
