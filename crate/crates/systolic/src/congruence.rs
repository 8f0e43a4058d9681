//! Signatures of principal congruence surfaces.
//!
//! Two independent routes: the closed forms for odd prime level, and a
//! brute-force count of |SL(2, ℤ/kℤ)| that derives the signature from the
//! index of the projective congruence subgroup. Divisibility is checked at
//! every step, so a disagreement between the routes cannot pass silently.

use crate::error::{Error, Result};

/// Largest level accepted by the brute-force group-order oracle.
/// The enumeration is O(k⁴); 64⁴ ≈ 17M iterations keeps it trivially auditable.
pub const ORACLE_LEVEL_CAP: u64 = 64;

/// Genus and cusp count of a finite-area hyperbolic surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Signature {
    pub genus: u64,
    pub cusps: u64,
}

impl Signature {
    /// `2g − 2 + n > 0`, the hyperbolicity condition.
    pub fn is_hyperbolic(&self) -> bool {
        2 * self.genus as i64 - 2 + self.cusps as i64 > 0
    }
}

/// Deterministic trial-division primality test. Exact for all u64 inputs
/// used here; levels are capped far below any range where this is slow.
pub fn is_prime(k: u64) -> bool {
    if k < 2 {
        return false;
    }
    if k.is_multiple_of(2) {
        return k == 2;
    }
    let mut d = 3u64;
    while d * d <= k {
        if k.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Signature of `M_p` for an odd prime `p` by the closed forms
/// `n_p = (p²−1)/2` and `g_p = 1 + (p²−1)(p−6)/24`.
pub fn signature_prime(p: u64) -> Result<Signature> {
    if p == 2 || !is_prime(p) {
        return Err(Error::PrimeFormulaInapplicable(p));
    }
    let p = p as i64;
    let m = p * p - 1;
    let cusps = m / 2;
    debug_assert_eq!(m % 2, 0);
    // (p²−1)(p−6) is always divisible by 24 for odd p; negative for p < 6
    let num = m * (p - 6);
    debug_assert_eq!(num % 24, 0);
    let genus = 1 + num / 24;
    debug_assert!(genus >= 0);
    let sig = Signature {
        genus: genus as u64,
        cusps: cusps as u64,
    };
    debug_assert!(sig.is_hyperbolic());
    Ok(sig)
}

/// |SL(2, ℤ/kℤ)| by exhaustive enumeration of residue quadruples.
///
/// Counts (a, b, c, d) mod k with `ad − bc ≡ 1`. No multiplicative shortcut
/// is taken; this is the independent oracle the closed forms are checked
/// against.
pub fn group_order_oracle(k: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::LevelOutOfRange(k, 2, ORACLE_LEVEL_CAP));
    }
    if k > ORACLE_LEVEL_CAP {
        return Err(Error::OracleCapExceeded(k));
    }
    let mut count = 0u64;
    for a in 0..k {
        for d in 0..k {
            let ad = (a * d) % k;
            for b in 0..k {
                for c in 0..k {
                    if (ad + k * k - (b * c) % k - 1).is_multiple_of(k) {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Index of the projective principal congruence subgroup Γ(k) in PSL(2,ℤ).
///
/// For k > 2 the center {±I} is non-trivial in SL(2, ℤ/kℤ), so the index is
/// half the group order; Γ(2) contains the image of −I and has index 6.
pub fn projective_index(k: u64) -> Result<u64> {
    if k == 2 {
        return Ok(6);
    }
    let order = group_order_oracle(k)?;
    if order % 2 != 0 {
        return Err(Error::InconsistentIndex(k, "group order is odd"));
    }
    Ok(order / 2)
}

/// Signature of `M_k` for any level `2 <= k <= 64` via the group-order oracle.
///
/// Uses `n = index/k` (cusps are orbits of width-k parabolic classes) and the
/// area relation `2g − 2 + n = index/6`. Every division must be exact; a
/// remainder signals an oracle bug and is reported as an error.
pub fn signature_general(k: u64) -> Result<Signature> {
    let index = projective_index(k)?;
    if index % k != 0 {
        return Err(Error::InconsistentIndex(k, "index not divisible by level"));
    }
    let cusps = index / k;
    if index % 6 != 0 {
        return Err(Error::InconsistentIndex(k, "index not divisible by 6"));
    }
    let euler = index / 6; // 2g − 2 + n
    let two_g = euler as i64 + 2 - cusps as i64;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::InconsistentIndex(k, "2g−2+n relation has no integer genus"));
    }
    Ok(Signature {
        genus: (two_g / 2) as u64,
        cusps,
    })
}

/// The ratio `72·g_p² / n_p³` for an odd prime `p >= 7`.
///
/// Approaches 1 from below as `p` grows; the numerator and denominator are
/// computed in exact integers before the single division.
pub fn asymptotic_ratio(p: u64) -> Result<f64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 7 {
        return Err(Error::DegenerateGenus(p));
    }
    let sig = signature_prime(p)?;
    let num = 72u128 * (sig.genus as u128) * (sig.genus as u128);
    let den = (sig.cusps as u128).pow(3);
    Ok(num as f64 / den as f64)
}
