//! Bracketed bisection used by every wave-curve root problem.

use crate::error::{Error, Result};

/// Relative bracket width at which bisection stops. Iteration also stops
/// once the midpoint is no longer representable between the endpoints.
pub const REL_WIDTH: f64 = 1e-15;

const MAX_ITER: usize = 2000;

/// Root of `f` in `[lo, hi]`. `f(lo)` and `f(hi)` must have opposite signs
/// (a zero at either end is returned directly).
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if lo > hi {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return Err(Error::NoBracket { lo, hi });
    }
    for _ in 0..MAX_ITER {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi || hi - lo <= REL_WIDTH * hi.abs().max(lo.abs()) {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + 0.5 * (hi - lo))
}

/// Doubles `start` until `f` becomes positive; `f(start)` is expected
/// non-positive and `f -> +inf`.
pub fn expand_until_positive<F>(mut f: F, start: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut hi = if start > 0.0 { start } else { 1.0 };
    for _ in 0..2100 {
        hi *= 2.0;
        let v = f(hi);
        if v > 0.0 {
            return Ok(hi);
        }
        if !hi.is_finite() {
            break;
        }
    }
    Err(Error::NoBracket { lo: start, hi })
}
