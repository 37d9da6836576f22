//! Independent high-precision oracles for tests.
//!
//! The removable singularity of φ(p) at `z = β` cannot be approached closely
//! in plain `f64`: the numerator is a difference of O(1) terms, so at
//! `z = β(1 ± 10⁻⁸)` cancellation leaves only ~8 digits. This module
//! re-solves the eigenvalue condition and evaluates the raw fraction in
//! double-double arithmetic (~32 digits), which keeps the limit sequence
//! clean down to `10⁻⁸`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::model::{BoundState, Parity};

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

const DD_FRAC_PI_2: Dd = Dd {
    hi: 1.570_796_326_794_896_6,
    lo: 6.123_233_995_736_766e-17,
};

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

impl Dd {
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::new(0.0);
        }
        let y = Dd::new(self.hi.sqrt());
        y + (self - y * y) / (Dd::new(2.0) * y)
    }

    /// (sin x, cos x) by reduction modulo π/2 and Taylor series.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let k = (self.to_f64() / DD_FRAC_PI_2.hi).round();
        let r = self - DD_FRAC_PI_2 * Dd::new(k);
        let r2 = r * r;

        let mut term = r;
        let mut sin = r;
        let mut i = 1.0;
        while term.hi.abs() > 1e-36 {
            term = -(term * r2) / Dd::new((2.0 * i) * (2.0 * i + 1.0));
            sin = sin + term;
            i += 1.0;
        }
        let mut term = Dd::new(1.0);
        let mut cos = Dd::new(1.0);
        let mut i = 1.0;
        while term.hi.abs() > 1e-36 {
            term = -(term * r2) / Dd::new((2.0 * i - 1.0) * (2.0 * i));
            cos = cos + term;
            i += 1.0;
        }
        match (k as i64).rem_euclid(4) {
            0 => (sin, cos),
            1 => (cos, -sin),
            2 => (-sin, -cos),
            _ => (-cos, sin),
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let r = quick_two_sum(s, e + t);
        quick_two_sum(r.hi, r.lo + f)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let p = self.hi * o.hi;
        let e = self.hi.mul_add(o.hi, -p);
        quick_two_sum(p, e + (self.hi * o.lo + self.lo * o.hi))
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        quick_two_sum(q1, q2) + Dd::new(q3)
    }
}

/// A finite-well state re-solved in double-double precision.
#[derive(Debug, Clone, Copy)]
pub struct PreciseState {
    pub parity: Parity,
    pub a: Dd,
    pub alpha: Dd,
    pub beta: Dd,
    pub d: Dd,
}

/// Refines `state` by Newton iteration on the pole-free eigenvalue function
/// in double-double arithmetic.
pub fn refine(state: &BoundState) -> PreciseState {
    let w = state.well;
    let a = Dd::new(w.width());
    let h = Dd::new(w.hbar());
    let gamma_sq = Dd::new(2.0) * Dd::new(w.mass()) * Dd::new(w.v0()) / (h * h);
    let two = Dd::new(2.0);
    let parts = |d: Dd| {
        let beta = two * d / a;
        let alpha = (gamma_sq - beta * beta).sqrt();
        (alpha, beta)
    };
    let f = |d: Dd| {
        let (alpha, beta) = parts(d);
        let (s, c) = d.sin_cos();
        match state.parity {
            Parity::Even => beta * s - alpha * c,
            Parity::Odd => alpha * s + beta * c,
        }
    };
    // f64 slope is enough: Newton then converges linearly at rate ~1e−8.
    let slope = |d: f64| {
        let beta = 2.0 * d / w.width();
        let alpha = (w.gamma_sq() - beta * beta).sqrt();
        let db = 2.0 / w.width();
        let da = -beta * db / alpha;
        let (s, c) = d.sin_cos();
        match state.parity {
            Parity::Even => db * s + beta * c - da * c + alpha * s,
            Parity::Odd => da * s + alpha * c + db * c - beta * s,
        }
    };
    let mut d = Dd::new(state.d);
    for _ in 0..6 {
        d = d - f(d) / Dd::new(slope(d.to_f64()));
    }
    let (alpha, beta) = parts(d);
    PreciseState {
        parity: state.parity,
        a,
        alpha,
        beta,
        d,
    }
}

impl PreciseState {
    /// `g(z)/(z² − β²)` evaluated literally, where `g` is the parity numerator.
    pub fn fraction(&self, z: Dd) -> Dd {
        let (s, c) = (z * self.a / Dd::new(2.0)).sin_cos();
        let g = match self.parity {
            Parity::Even => z * s - self.alpha * c,
            Parity::Odd => self.alpha * s + z * c,
        };
        g / (z * z - self.beta * self.beta)
    }

    /// Fraction at `z = β(1 + offset)`.
    pub fn fraction_at_offset(&self, offset: f64) -> f64 {
        let z = self.beta + self.beta * Dd::new(offset);
        self.fraction(z).to_f64()
    }
}

/// One step of the limit sequence: the fraction at `β(1 − 10⁻ᵏ)` and `β(1 + 10⁻ᵏ)`.
#[derive(Debug, Clone, Copy)]
pub struct LimitStep {
    pub k: i32,
    pub below: f64,
    pub above: f64,
}

/// Evaluates the raw fraction at `z = β(1 ± 10⁻ᵏ)` for each `k` in `ks`.
pub fn limit_sequence(state: &BoundState, ks: impl IntoIterator<Item = i32>) -> Vec<LimitStep> {
    let precise = refine(state);
    ks.into_iter()
        .map(|k| {
            let off = 10f64.powi(-k);
            LimitStep {
                k,
                below: precise.fraction_at_offset(-off),
                above: precise.fraction_at_offset(off),
            }
        })
        .collect()
}

/// The two candidate closed forms for the even-state limit:
/// `[(αa+2) sin d ± 2d cos d]/(4β)`, returned as `(plus, minus)`.
pub fn even_limit_candidates(state: &BoundState) -> (f64, f64) {
    let (sd, cd) = state.d.sin_cos();
    let base = (state.alpha * state.well.width() + 2.0) * sd;
    let corr = 2.0 * state.d * cd;
    let denom = 4.0 * state.beta;
    ((base + corr) / denom, (base - corr) / denom)
}
