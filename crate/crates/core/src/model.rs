//! Physical parameters of the well and the per-state derived quantities.
//!
//! Every formula carries explicit mass and ħ factors. With the default
//! [`UnitSystem`] (2m = 1, ħ = 1) they collapse to the textbook
//! dimensionless forms, e.g. `E = β²` and `γ² = V0`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Smallest decay wavenumber a state may carry. Threshold states would
/// otherwise divide by zero in the normalization.
pub const ALPHA_FLOOR: f64 = 1e-300;

/// Mass and action quantum used by every formula in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSystem {
    mass: f64,
    hbar: f64,
}

impl UnitSystem {
    pub fn new(mass: f64, hbar: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::Domain(format!("hbar must be positive, got {hbar}")));
        }
        Ok(Self { mass, hbar })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Energy of a plane wave with wavenumber `k`: ħ²k²/2m.
    pub fn energy_of_wavenumber(&self, k: f64) -> f64 {
        self.hbar * self.hbar * k * k / (2.0 * self.mass)
    }

    /// Wavenumber of kinetic energy `e`: √(2me)/ħ.
    pub fn wavenumber_of_energy(&self, e: f64) -> f64 {
        (2.0 * self.mass * e).sqrt() / self.hbar
    }
}

impl Default for UnitSystem {
    /// 2m = 1, ħ = 1.
    fn default() -> Self {
        Self {
            mass: 0.5,
            hbar: 1.0,
        }
    }
}

/// A symmetric finite square well: V = 0 for |x| < a/2 and V = V0 outside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellSpec {
    v0: f64,
    a: f64,
    units: UnitSystem,
}

impl WellSpec {
    pub fn new(v0: f64, a: f64, units: UnitSystem) -> Result<Self> {
        if !(v0.is_finite() && v0 > 0.0) {
            return Err(Error::Domain(format!("well depth must be positive, got {v0}")));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!("well width must be positive, got {a}")));
        }
        Ok(Self { v0, a, units })
    }

    /// Well with the default 2m = ħ = 1 units.
    pub fn with_default_units(v0: f64, a: f64) -> Result<Self> {
        Self::new(v0, a, UnitSystem::default())
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn width(&self) -> f64 {
        self.a
    }

    pub fn half_width(&self) -> f64 {
        0.5 * self.a
    }

    pub fn units(&self) -> UnitSystem {
        self.units
    }

    pub fn hbar(&self) -> f64 {
        self.units.hbar
    }

    pub fn mass(&self) -> f64 {
        self.units.mass
    }

    /// γ² = 2mV0/ħ².
    pub fn gamma_sq(&self) -> f64 {
        2.0 * self.units.mass * self.v0 / (self.units.hbar * self.units.hbar)
    }

    /// γ = √(2mV0)/ħ, the wavenumber scale that bounds α and β.
    pub fn gamma(&self) -> f64 {
        gamma(self)
    }

    /// Potential energy at `x`. The wall points |x| = a/2 belong to the barrier.
    pub fn potential(&self, x: f64) -> f64 {
        if x.abs() < self.half_width() {
            0.0
        } else {
            self.v0
        }
    }
}

/// γ = √(2mV0)/ħ.
pub fn gamma(well: &WellSpec) -> f64 {
    well.gamma_sq().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of the `n`-th state (0-based) of a symmetric single well.
    pub fn of_index(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// +1 for even, −1 for odd.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Pole-free eigenvalue function in the half-width phase `d = βa/2`.
///
/// Even: `β sin d − α cos d`; odd: `α sin d + β cos d`. Zeros coincide with
/// those of `tan d = α/β` and `tan d = −β/α` without the tangent poles.
pub fn eigen_function(parity: Parity, alpha: f64, beta: f64, d: f64) -> f64 {
    let (s, c) = d.sin_cos();
    match parity {
        Parity::Even => beta * s - alpha * c,
        Parity::Odd => alpha * s + beta * c,
    }
}

/// Normalization constant of a finite-well eigenfunction.
///
/// `A = √2 · [(1 ± cos 2d)/α ± sin 2d/β + a]^(−1/2)`, upper signs for even
/// states. The bracket is twice `∫ψ²/A²`: `a/2 ± sin(2d)/(2β)` from the
/// interior and `(cos² d or sin² d)/α` from the two exponential tails.
pub fn normalization(parity: Parity, alpha: f64, beta: f64, d: f64, a: f64) -> f64 {
    let (s2, c2) = (2.0 * d).sin_cos();
    let bracket = match parity {
        Parity::Even => (1.0 + c2) / alpha + s2 / beta + a,
        Parity::Odd => (1.0 - c2) / alpha - s2 / beta + a,
    };
    (2.0 / bracket).sqrt()
}

/// One solved bound state of a finite square well.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState {
    pub parity: Parity,
    /// 0-based index in order of increasing energy.
    pub n: usize,
    pub energy: f64,
    /// Decay wavenumber outside the well.
    pub alpha: f64,
    /// Oscillation wavenumber inside the well.
    pub beta: f64,
    /// βa/2.
    pub d: f64,
    /// Normalization constant A.
    pub norm: f64,
    pub well: WellSpec,
    /// Set when the state sits within 1e−9 of the continuum threshold and α
    /// had to be clamped to [`ALPHA_FLOOR`].
    pub near_threshold: bool,
}

impl BoundState {
    /// Builds a state from its interior phase `d`, deriving every other
    /// quantity. No eigenvalue check is made.
    pub(crate) fn from_phase(well: WellSpec, d: f64, parity: Parity, n: usize) -> Self {
        let beta = 2.0 * d / well.width();
        let alpha_sq = well.gamma_sq() - beta * beta;
        let alpha = alpha_sq.max(0.0).sqrt();
        let near_threshold = (well.gamma() * well.half_width() - d).abs() <= 1e-9 || alpha < ALPHA_FLOOR;
        let alpha = alpha.max(ALPHA_FLOOR);
        Self {
            parity,
            n,
            energy: well.units().energy_of_wavenumber(beta),
            alpha,
            beta,
            d,
            norm: normalization(parity, alpha, beta, d, well.width()),
            well,
            near_threshold,
        }
    }

    /// Dimensionless eigenvalue residual: the pole-free function divided by γ.
    pub fn residual(&self) -> f64 {
        eigen_function(self.parity, self.alpha, self.beta, self.d) / self.well.gamma()
    }

    pub fn hbar(&self) -> f64 {
        self.well.hbar()
    }

    /// `cos d` for even states, `sin d` for odd ones: the amplitude ratio
    /// ψ(a/2)/A that multiplies the exterior exponential.
    pub fn edge_factor(&self) -> f64 {
        match self.parity {
            Parity::Even => self.d.cos(),
            Parity::Odd => self.d.sin(),
        }
    }

    /// Probability of finding the particle outside the well,
    /// `∫_{|x|>a/2} ψ² dx = A²·edge²/α`.
    pub fn exterior_probability(&self) -> f64 {
        let e = self.edge_factor();
        self.norm * self.norm * e * e / self.alpha
    }
}

/// Builds a [`BoundState`] from a trial energy, checking that it satisfies
/// the parity's eigenvalue condition to within `residual_tol` (dimensionless,
/// measured as the pole-free function over γ).
pub fn derive_state_quantities(
    well: WellSpec,
    energy: f64,
    parity: Parity,
    n: usize,
    residual_tol: f64,
) -> Result<BoundState> {
    if !(energy > 0.0 && energy < well.v0()) {
        return Err(Error::Domain(format!(
            "bound-state energy must lie in (0, {}), got {energy}",
            well.v0()
        )));
    }
    let units = well.units();
    let beta = units.wavenumber_of_energy(energy);
    let alpha = units.wavenumber_of_energy(well.v0() - energy).max(ALPHA_FLOOR);
    let d = 0.5 * beta * well.width();
    let state = BoundState {
        parity,
        n,
        energy,
        alpha,
        beta,
        d,
        norm: normalization(parity, alpha, beta, d, well.width()),
        well,
        near_threshold: alpha <= ALPHA_FLOOR,
    };
    let r = state.residual();
    if r.abs() > residual_tol {
        return Err(Error::Consistency(format!(
            "E = {energy} is not a {parity} eigenvalue: residual {r:e} exceeds {residual_tol:e}"
        )));
    }
    Ok(state)
}

/// Eigenstate of the infinite square well of width `a` (walls at ±a/2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IswState {
    /// 1-based quantum number.
    pub n: u32,
    pub a: f64,
    pub units: UnitSystem,
    /// nπ/a, forced by ψ(±a/2) = 0.
    pub beta_n: f64,
    /// ħ²βₙ²/2m.
    pub energy: f64,
}

impl IswState {
    pub fn new(n: u32, a: f64, units: UnitSystem) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("ISW quantum number starts at 1".into()));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Domain(format!("well width must be positive, got {a}")));
        }
        let beta_n = f64::from(n) * PI / a;
        Ok(Self {
            n,
            a,
            units,
            beta_n,
            energy: units.energy_of_wavenumber(beta_n),
        })
    }

    pub fn hbar(&self) -> f64 {
        self.units.hbar()
    }

    /// Odd `n` gives cosine (even-parity) states.
    pub fn is_cosine(&self) -> bool {
        self.n % 2 == 1
    }
}
