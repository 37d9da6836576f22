use crate::error::{Error, Result};

/// Finds a root of `f` inside `[lo, hi]` by bisection.
///
/// Stops when `|f(x)| <= tol_f`, when the bracket is narrower than `tol_x`,
/// or when the bracket can no longer be split in floating point. Passing
/// `tol_f = 0.0` and `tol_x = 0.0` runs bisection to full precision.
pub fn find_root_bracketed<F>(f: F, lo: f64, hi: f64, tol_x: f64, tol_f: f64, max_iter: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(lo < hi) {
        return Err(Error::Domain(format!("bracket requires lo < hi, got [{lo}, {hi}]")));
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Bracket { lo, hi, f_lo, f_hi });
    }

    for _ in 0..max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            // bracket exhausted at float resolution
            return Ok(if f_lo.abs() <= f(hi).abs() { lo } else { hi });
        }
        let f_mid = f(mid);
        if f_mid.abs() <= tol_f || hi - lo <= tol_x {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence {
        lo,
        hi,
        best: lo + 0.5 * (hi - lo),
        iterations: max_iter,
    })
}
