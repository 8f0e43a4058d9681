//! Evaluators for the classical systole bounds and the disk-packing step,
//! plus the sandwich report that cross-checks them against exact systoles.
//!
//! The Buser–Sarnak constant `U` has no published numeric value; it is always
//! caller-supplied and never defaulted.

use serde::{Deserialize, Serialize};

use crate::congruence::{signature_general, signature_prime, Signature};
use crate::error::{Error, Result};
use crate::hyp_trig::collar_lower_bound;
use crate::search::{min_trace_exact_capped, SystoleResult};

/// Tolerance on sandwich comparisons.
pub const CMP_TOL: f64 = 1e-9;

/// Default slack in the finite-level check `sys >= (4/3)·ln g − slack`.
/// Derived from `sys = 2·arccosh(t/2) >= 2·ln t − 2·ln 2` with `t <= p²−2`
/// and `g <= p³/24 + 1`; the asymptotic relation carries no error term, so a
/// fixed desk-check needs an explicit margin.
pub const DEFAULT_FINITE_SLACK: f64 = 4.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsConfig {
    /// Buser–Sarnak universal constant (user supplied; 1.0 is illustrative
    /// only, not the true constant).
    pub u: f64,
    /// Exponent for the `[g^α]`-cusps bound, in [0, 1).
    pub alpha: f64,
}

impl BoundsConfig {
    pub fn new(u: f64) -> Self {
        BoundsConfig { u, alpha: 0.0 }
    }
}

/// Schmutz Schaller upper bound `4·arccosh((6g−6+3n)/n)`, valid for `n >= 2`
/// and `(g, n) ≠ (0, 3)`.
pub fn schmutz_upper(genus: u64, cusps: u64) -> Result<f64> {
    if cusps < 2 || (genus, cusps) == (0, 3) {
        return Err(Error::BoundInapplicable(
            "Schmutz Schaller bound needs n >= 2 and (g, n) != (0, 3)",
        ));
    }
    if 2 * genus as i64 - 2 + cusps as i64 <= 0 {
        return Err(Error::BoundInapplicable("signature is not hyperbolic"));
    }
    let g = genus as f64;
    let n = cusps as f64;
    Ok(4.0 * ((6.0 * g - 6.0 + 3.0 * n) / n).acosh())
}

/// Buser–Sarnak sandwich `(U·ln g, 2·ln(4g−2))` for closed surfaces of genus `g >= 2`.
pub fn buser_sarnak_bounds(genus: u64, cfg: &BoundsConfig) -> Result<(f64, f64)> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let g = genus as f64;
    Ok((cfg.u * g.ln(), 2.0 * (4.0 * g - 2.0).ln()))
}

/// Lower bound `min{U·ln g, 2·arccosh(2(g−1)/n + 1)}` on `sys(g, n)`.
///
/// For `n = 0` the arccosh branch is vacuous and the closed-surface bound
/// `U·ln g` is returned, keeping the function total.
pub fn prop_log_lower(genus: u64, cusps: u64, cfg: &BoundsConfig) -> Result<f64> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let g = genus as f64;
    let log_branch = cfg.u * g.ln();
    if cusps == 0 {
        return Ok(log_branch);
    }
    let arccosh_branch = 2.0 * (2.0 * (g - 1.0) / cusps as f64 + 1.0).acosh();
    Ok(log_branch.min(arccosh_branch))
}

/// Lower bound `U·ln(g/(n+1))`; may be non-positive (vacuous), returned signed.
pub fn main_theorem_lower(genus: u64, cusps: u64, cfg: &BoundsConfig) -> Result<f64> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    Ok(cfg.u * (genus as f64 / (cusps as f64 + 1.0)).ln())
}

/// The `[g^α]`-cusps bound: returns `(⌊g^α⌋, c_α·ln g)` with
/// `c_α = min{U, 2(1−α)}`.
pub fn remark_lower(genus: u64, cfg: &BoundsConfig) -> Result<(u64, f64)> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    if !(0.0..1.0).contains(&cfg.alpha) {
        return Err(Error::AlphaOutOfRange(cfg.alpha));
    }
    let g = genus as f64;
    let cusp_count = g.powf(cfg.alpha).floor() as u64;
    let c_alpha = cfg.u.min(2.0 * (1.0 - cfg.alpha));
    Ok((cusp_count, c_alpha * g.ln()))
}

/// Finite-level form `4·ln(g/n)` of the arithmetic lower bound; signed,
/// vacuous when negative.
pub fn arithmetic_asymptote(genus: u64, cusps: u64) -> Result<f64> {
    if genus == 0 {
        return Err(Error::DegenerateGenus(0));
    }
    if cusps == 0 {
        return Err(Error::NonPositive("cusp count"));
    }
    Ok(4.0 * (genus as f64 / cusps as f64).ln())
}

/// The radius from the disk-packing proof and the disk count it forces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PackingPlan {
    pub radius: f64,
    pub min_disk_count: u64,
}

/// Area count: a maximal system of disjoint radius-`r` disks on a closed
/// genus-`g` surface has at least `⌈2(g−1)/(cosh 2r − 1)⌉` members, because
/// the doubled disks cover the surface of area `4π(g−1)`.
pub fn packing_disk_lower(genus: u64, radius: f64) -> Result<u64> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    if radius.is_nan() || radius <= 0.0 {
        return Err(Error::NonPositive("packing radius"));
    }
    let q = 2.0 * (genus as f64 - 1.0) / ((2.0 * radius).cosh() - 1.0);
    // absolute guard so cosh∘arccosh rounding cannot push an exact integer up
    Ok((q - CMP_TOL).ceil() as u64)
}

/// Radius `r = min{(U/4)·ln g, (1/2)·arccosh(2(g−1)/n + 1)}` together with
/// the disk count it forces; when the arccosh branch is active the count is
/// exactly `n`.
pub fn packing_radius(genus: u64, cusps: u64, cfg: &BoundsConfig) -> Result<PackingPlan> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    if cusps == 0 {
        return Err(Error::NonPositive("cusp count"));
    }
    let g = genus as f64;
    let log_branch = cfg.u / 4.0 * g.ln();
    let arccosh_branch = 0.5 * (2.0 * (g - 1.0) / cusps as f64 + 1.0).acosh();
    let radius = log_branch.min(arccosh_branch);
    Ok(PackingPlan {
        radius,
        min_disk_count: packing_disk_lower(genus, radius)?,
    })
}

/// One verified inequality in a sandwich report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs <= rhs` within [`CMP_TOL`].
    pub passed: bool,
}

fn check(name: &'static str, lhs: f64, rhs: f64) -> BoundCheck {
    BoundCheck {
        name,
        lhs,
        rhs,
        passed: lhs <= rhs + CMP_TOL,
    }
}

/// All evaluated bounds for one congruence level, with the exact systole and
/// every applicable inequality checked. Violations are data, not errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub level: u64,
    pub signature: Signature,
    pub collar_lower: f64,
    pub schmutz_upper: Option<f64>,
    pub prop_log_lower: Option<f64>,
    pub main_theorem_lower: Option<f64>,
    pub arithmetic_asymptote: Option<f64>,
    pub min_trace: u64,
    pub computed_systole: f64,
    pub gap_to_upper: Option<f64>,
    pub checks: Vec<BoundCheck>,
    pub passed: bool,
}

/// Computes the exact systole of `M_p` and verifies it against every bound
/// that applies to the signature `(g_p, n_p)`; inapplicable bounds are
/// skipped rather than reported as failures.
pub fn verify_sandwich(p: u64, cfg: &BoundsConfig, trace_cap: Option<u64>) -> Result<BoundsReport> {
    verify_sandwich_with_slack(p, cfg, trace_cap, DEFAULT_FINITE_SLACK)
}

pub fn verify_sandwich_with_slack(
    p: u64,
    cfg: &BoundsConfig,
    trace_cap: Option<u64>,
    finite_slack: f64,
) -> Result<BoundsReport> {
    let signature = if p == 2 {
        signature_general(2)?
    } else {
        signature_prime(p)?
    };
    let result: SystoleResult = min_trace_exact_capped(p, trace_cap)?;
    let sys = result.length;
    let collar = collar_lower_bound();
    let g = signature.genus;
    let n = signature.cusps;

    let mut checks = vec![check("collar <= sys", collar, sys)];

    let schmutz = schmutz_upper(g, n).ok();
    if let Some(upper) = schmutz {
        checks.push(check("sys <= schmutz", sys, upper));
    }
    let prop = (g >= 2).then(|| prop_log_lower(g, n, cfg)).transpose()?;
    if let Some(lower) = prop {
        checks.push(check("prop_log <= sys", lower, sys));
    }
    let main_thm = (g >= 2).then(|| main_theorem_lower(g, n, cfg)).transpose()?;
    if let Some(lower) = main_thm {
        checks.push(check("main_theorem <= sys", lower, sys));
    }
    let asymptote = (g >= 1).then(|| arithmetic_asymptote(g, n)).transpose()?;
    if g >= 2 {
        if let Some(lower) = asymptote {
            checks.push(check("4 ln(g/n) <= sys", lower, sys));
        }
        checks.push(check(
            "(4/3) ln g - slack <= sys",
            4.0 / 3.0 * (g as f64).ln() - finite_slack,
            sys,
        ));
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(BoundsReport {
        level: p,
        signature,
        collar_lower: collar,
        schmutz_upper: schmutz,
        prop_log_lower: prop,
        main_theorem_lower: main_thm,
        arithmetic_asymptote: asymptote,
        min_trace: result.min_trace,
        computed_systole: sys,
        gap_to_upper: schmutz.map(|u| u - sys),
        checks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg(u: f64) -> BoundsConfig {
        BoundsConfig::new(u)
    }

    #[test]
    fn schmutz_examples() {
        assert!((schmutz_upper(0, 4).unwrap() - 4.0 * 1.5_f64.acosh()).abs() < 1e-12);
        assert!((schmutz_upper(0, 4).unwrap() - 3.849695).abs() < 1e-6);
        assert!((schmutz_upper(3, 24).unwrap() - 4.0 * 3.5_f64.acosh()).abs() < 1e-12);
        assert!((schmutz_upper(3, 24).unwrap() - 7.699389).abs() < 1e-6);
        assert!(matches!(schmutz_upper(0, 3), Err(Error::BoundInapplicable(_))));
        assert!(matches!(schmutz_upper(5, 1), Err(Error::BoundInapplicable(_))));
        assert!(matches!(schmutz_upper(0, 2), Err(Error::BoundInapplicable(_))));
    }

    #[test]
    fn buser_sarnak_examples() {
        let (lo, hi) = buser_sarnak_bounds(2, &cfg(1.0)).unwrap();
        assert!((lo - 2.0_f64.ln()).abs() < 1e-15);
        assert!((hi - 2.0 * 6.0_f64.ln()).abs() < 1e-15);
        assert!(lo <= hi);
        assert!(matches!(buser_sarnak_bounds(1, &cfg(1.0)), Err(Error::GenusTooSmall(1))));
    }

    #[test]
    fn prop_log_lower_examples() {
        let v = prop_log_lower(2, 1, &cfg(1.0)).unwrap();
        assert!((v - 2.0_f64.ln()).abs() < 1e-15);
        // n = 0 falls back to the closed-surface branch
        assert!((prop_log_lower(2, 0, &cfg(1.0)).unwrap() - 2.0_f64.ln()).abs() < 1e-15);
        let v = prop_log_lower(100, 1000, &cfg(1.0)).unwrap();
        assert!((v - 2.0 * 1.198_f64.acosh()).abs() < 1e-12);
        assert!((v - 1.238678).abs() < 1e-6);
        assert!(prop_log_lower(1, 1, &cfg(1.0)).is_err());
    }

    #[test]
    fn main_theorem_lower_examples() {
        assert!((main_theorem_lower(8, 1, &cfg(1.0)).unwrap() - 4.0_f64.ln()).abs() < 1e-15);
        assert_eq!(main_theorem_lower(2, 1, &cfg(1.0)).unwrap(), 0.0);
        // vacuous bounds come back signed
        assert!(main_theorem_lower(2, 5, &cfg(1.0)).unwrap() < 0.0);
    }

    #[test]
    fn remark_lower_examples() {
        let (n, b) = remark_lower(10, &cfg(1.0)).unwrap();
        assert_eq!(n, 1); // alpha = 0
        assert!((b - 10.0_f64.ln()).abs() < 1e-15);
        let mut c = cfg(1.0);
        c.alpha = 0.5;
        let (n, b) = remark_lower(100, &c).unwrap();
        assert_eq!(n, 10);
        assert!((b - 100.0_f64.ln()).abs() < 1e-12);
        c.alpha = 0.9;
        let (n, b) = remark_lower(100, &c).unwrap();
        assert_eq!(n, 63);
        assert!((b - 0.2 * 100.0_f64.ln()).abs() < 1e-12);
        c.alpha = 1.0;
        assert!(matches!(remark_lower(100, &c), Err(Error::AlphaOutOfRange(_))));
    }

    #[test]
    fn asymptote_examples() {
        assert!((arithmetic_asymptote(26, 60).unwrap() + 3.345).abs() < 1e-3);
        assert!((arithmetic_asymptote(196, 180).unwrap() - 0.340631).abs() < 1e-6);
        assert_eq!(arithmetic_asymptote(7, 7).unwrap(), 0.0);
        assert!(matches!(arithmetic_asymptote(0, 5), Err(Error::DegenerateGenus(0))));
    }

    #[test]
    fn packing_radius_example() {
        let plan = packing_radius(2, 1, &cfg(1.0)).unwrap();
        assert!((plan.radius - 0.25 * 2.0_f64.ln()).abs() < 1e-12);
        assert!((plan.radius - 0.17329).abs() < 1e-5);
    }

    #[test]
    fn packing_equality_when_arccosh_branch_active() {
        // force the arccosh branch with a large U
        let big_u = cfg(100.0);
        for g in 2..=50u64 {
            for n in 1..=g {
                let plan = packing_radius(g, n, &big_u).unwrap();
                assert_eq!(plan.min_disk_count, n, "g = {g}, n = {n}");
            }
        }
    }

    #[test]
    fn packing_grid_dominates_cusp_count() {
        for g in 2..=50u64 {
            for n in 1..=g {
                let plan = packing_radius(g, n, &cfg(1.0)).unwrap();
                assert!(plan.min_disk_count >= n, "g = {g}, n = {n}");
            }
        }
    }

    #[test]
    fn prop_log_below_schmutz_on_grid() {
        for u in [0.5, 1.0, 2.0] {
            let c = cfg(u);
            for g in 2..=40u64 {
                for n in 2..=40u64 {
                    let lower = prop_log_lower(g, n, &c).unwrap();
                    let upper = schmutz_upper(g, n).unwrap();
                    assert!(lower <= upper + CMP_TOL, "U = {u}, g = {g}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn sandwich_reports_small_primes() {
        let c = cfg(1.0);
        let r3 = verify_sandwich(3, &c, None).unwrap();
        assert!(r3.passed);
        assert!(r3.gap_to_upper.unwrap().abs() < 1e-9);
        let r5 = verify_sandwich(5, &c, None).unwrap();
        assert!(r5.passed);
        assert!(r5.gap_to_upper.unwrap().abs() < 1e-9);
        // Γ(2) has signature (0, 3): Schmutz bound inapplicable, collar only
        let r2 = verify_sandwich(2, &c, None).unwrap();
        assert!(r2.passed);
        assert!(r2.schmutz_upper.is_none());
        assert!(r2.gap_to_upper.is_none());
        assert!((r2.computed_systole - 3.52549).abs() < 1e-5);
    }

    proptest! {
        #[test]
        fn main_theorem_monotone_decreasing_in_cusps(g in 2u64..500, n in 0u64..100, u in 0.1f64..2.0) {
            let c = BoundsConfig::new(u);
            let a = main_theorem_lower(g, n, &c).unwrap();
            let b = main_theorem_lower(g, n + 1, &c).unwrap();
            prop_assert!(b <= a);
            prop_assert!(a <= u * (g as f64).ln() + 1e-12);
        }

        #[test]
        fn packing_count_decreasing_in_radius(g in 2u64..200, r in 0.01f64..3.0, dr in 0.01f64..1.0) {
            prop_assert!(packing_disk_lower(g, r + dr).unwrap() <= packing_disk_lower(g, r).unwrap());
        }
    }
}
