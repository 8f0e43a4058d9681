//! Closed-form hyperbolic trigonometry shared by the other modules.
//!
//! Traces are exact integers; lengths are `f64`. The only non-textbook
//! formula here is [`loop_to_horoball_distance`], which is validated against
//! an independent upper-half-plane oracle in the test suite.

use crate::error::{Error, Result};

/// Default relative tolerance for real-valued identity checks.
pub const REL_TOL: f64 = 1e-9;

/// Length of the closed geodesic carried by a hyperbolic element of trace `t`.
///
/// A matrix in SL(2,ℤ) is hyperbolic iff |t| > 2, i.e. |t| >= 3 for integer
/// traces; its axis projects to a geodesic of length `2·arccosh(|t|/2)`.
pub fn trace_to_length(t: i64) -> Result<f64> {
    let abs = t.unsigned_abs();
    if abs <= 2 {
        return Err(Error::NonHyperbolicTrace(abs));
    }
    Ok(2.0 * (abs as f64 / 2.0).acosh())
}

/// Inverse of [`trace_to_length`]: the real trace whose geodesic has length `len`.
///
/// Any integer trace `t >= ceil(2·cosh(len/2))` produces a geodesic at least
/// as long as `len`, so this bounds trace searches from above.
pub fn length_to_trace_bound(len: f64) -> Result<f64> {
    if len.is_nan() || len <= 0.0 {
        return Err(Error::NonPositive("geodesic length"));
    }
    Ok(2.0 * (len / 2.0).cosh())
}

/// Universal lower bound `2·arcsinh(1)` on the maximal systole of any signature.
pub fn collar_lower_bound() -> f64 {
    2.0 * 1.0_f64.asinh()
}

/// Signed distance from the base point of a geodesic loop of length `loop_len`
/// encircling a cusp to the horocycle of length `horo_len` around that cusp.
///
/// In the punctured-disk model `H²/(z ↦ z+1)` a loop of length `L` based at
/// height `y` satisfies `sinh(L/2) = 1/(2y)`, and the horocycle of length `ℓ`
/// sits at height `1/ℓ`, giving `d = ln(2·sinh(L/2)/ℓ)`. Negative values mean
/// the base point lies inside the horoball; strictly increasing in `loop_len`.
pub fn loop_to_horoball_distance(loop_len: f64, horo_len: f64) -> Result<f64> {
    if loop_len.is_nan() || loop_len <= 0.0 {
        return Err(Error::NonPositive("loop length"));
    }
    if horo_len.is_nan() || horo_len <= 0.0 {
        return Err(Error::NonPositive("horocycle length"));
    }
    Ok((2.0 * (loop_len / 2.0).sinh() / horo_len).ln())
}

/// Area of the horocyclic cusp neighborhood with boundary length `horo_len`.
///
/// In the model `{Im z >= 1/ℓ}` of the cusp cylinder the area integral
/// collapses to `ℓ` itself.
pub fn horoball_area(horo_len: f64) -> Result<f64> {
    if horo_len.is_nan() || horo_len <= 0.0 {
        return Err(Error::NonPositive("horocycle length"));
    }
    Ok(horo_len)
}
