//! Exact systolic geometry of principal congruence surfaces.
//!
//! The surface `M_p = H²/Γ(p)` is the quotient of the hyperbolic plane by the
//! principal congruence subgroup of level `p`. Its systole (length of a
//! shortest closed geodesic) is `2·arccosh(t/2)` where `t` is the minimal
//! trace of a hyperbolic element of `Γ(p)`. This crate computes that minimal
//! trace exactly by a complete residue-condition search, computes congruence
//! signatures `(g, n)` two independent ways, and evaluates the classical
//! systole bounds (Schmutz Schaller, Buser–Sarnak, collar, log-packing) so
//! that every inequality can be cross-checked against the exact values.

pub mod bounds;
pub mod congruence;
pub mod error;
pub mod hyp_trig;
pub mod search;
pub mod table;

pub use bounds::{BoundsConfig, BoundsReport, PackingPlan};
pub use congruence::Signature;
pub use error::{Error, Result};
pub use search::{SearchCertificate, SystoleResult, TraceWitness};
