//! Certified minimal-trace search over the principal congruence subgroup Γ(p).
//!
//! An element of SL(2,ℤ) with `a ≡ d ≡ ε`, `b ≡ c ≡ 0 (mod p)` and trace `t`
//! exists iff some `a ≡ ε (mod p)` satisfies `a·(t−a) ≡ 1 (mod p²)`:
//! necessity because `p | b` and `p | c` force `p² | ad − 1`, sufficiency by
//! taking `b = p`, `c = (ad−1)/p`. Scanning traces in ascending order over
//! the two admissible residue classes `t ≡ ±2 (mod p)` therefore yields the
//! exact minimum together with an explicit witness, and the scanned interval
//! is the completeness certificate. A breadth-first search over words in the
//! standard generators serves as an independent (incomplete) cross-check.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::congruence::is_prime;
use crate::error::{Error, Result};
use crate::hyp_trig::trace_to_length;

/// Default cap on the prime level accepted by the certified search.
pub const DEFAULT_LEVEL_CAP: u64 = 10_007;

/// Cap on BFS word length; entries grow Fibonacci-fast with the word.
pub const MAX_WORD_LEN: u32 = 40;

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        BigInt::from_str(&s).map_err(de::Error::custom)
    }
}

/// An explicit element of Γ(p) certifying that its trace is attained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceWitness {
    #[serde(with = "bigint_string")]
    pub a: BigInt,
    #[serde(with = "bigint_string")]
    pub b: BigInt,
    #[serde(with = "bigint_string")]
    pub c: BigInt,
    #[serde(with = "bigint_string")]
    pub d: BigInt,
    pub level: u64,
    /// ε ∈ {+1, −1}: the matrix is ≡ ε·I (mod p).
    pub sign: i8,
}

impl TraceWitness {
    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }
}

/// Checks determinant, the mod-p congruences with the recorded sign, and
/// hyperbolicity of the trace. Never panics; malformed witnesses are `false`.
pub fn witness_verify(w: &TraceWitness) -> bool {
    if w.level < 2 || (w.sign != 1 && w.sign != -1) {
        return false;
    }
    let det = &w.a * &w.d - &w.b * &w.c;
    if !det.is_one() {
        return false;
    }
    let p = BigInt::from(w.level);
    let modp = |x: &BigInt| -> BigInt {
        let r = x % &p;
        if r.is_negative() {
            r + &p
        } else {
            r
        }
    };
    let eps = modp(&BigInt::from(w.sign));
    if modp(&w.a) != eps || modp(&w.d) != eps {
        return false;
    }
    if !modp(&w.b).is_zero() || !modp(&w.c).is_zero() {
        return false;
    }
    w.trace() >= BigInt::from(3)
}

/// Summary of the exhausted search region: every trace in
/// `[trace_lo, trace_hi]` lying in one of the admissible residue classes was
/// tested against the mod-p² solvability condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub trace_lo: u64,
    pub trace_hi: u64,
    /// Residue classes of candidate traces mod p (`2ε mod p` per sign searched).
    pub residue_classes: Vec<u64>,
    /// Number of (t, ε, x) candidates tested before the minimum was found.
    pub candidates_tested: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystoleResult {
    pub level: u64,
    pub min_trace: u64,
    /// `2·arccosh(min_trace/2)`.
    pub length: f64,
    pub witness: TraceWitness,
    pub certificate: SearchCertificate,
}

/// The always-present construction bounding the search from above:
/// trace `p²−2` via `(−1, p, −p, p²−1)` for `p >= 3`, trace 6 via
/// `(1, 2, 2, 5)` for `p = 2`, and trace `p²+2` via `(1, p, p, p²+1)` when
/// the search is restricted to `ε = +1`.
fn default_trace_cap(p: u64, signs: &[i8]) -> u64 {
    if p == 2 {
        6
    } else if signs.contains(&-1) {
        p * p - 2
    } else {
        p * p + 2
    }
}

/// Certified minimal trace over Γ(p) with the default level cap and both signs.
pub fn min_trace_exact(p: u64) -> Result<SystoleResult> {
    min_trace_with_signs(p, &[1, -1], None)
}

/// As [`min_trace_exact`], with an explicit trace cap (used by the CLI).
pub fn min_trace_exact_capped(p: u64, trace_cap: Option<u64>) -> Result<SystoleResult> {
    min_trace_with_signs(p, &[1, -1], trace_cap)
}

/// Restricted-sign search, exposed so the two-sign minimum can be compared
/// against each single-sign minimum. `signs` is scanned in the given order at
/// each candidate trace; ties resolve to the first sign and smallest `x`.
pub fn min_trace_with_signs(p: u64, signs: &[i8], trace_cap: Option<u64>) -> Result<SystoleResult> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > DEFAULT_LEVEL_CAP {
        return Err(Error::LevelOutOfRange(p, 2, DEFAULT_LEVEL_CAP));
    }
    assert!(
        !signs.is_empty() && signs.iter().all(|s| *s == 1 || *s == -1),
        "signs must be drawn from {{+1, -1}}"
    );
    // ε = +1 and ε = −1 coincide mod 2
    let signs: Vec<i8> = if p == 2 {
        vec![1]
    } else {
        let mut seen = Vec::new();
        for &s in signs {
            if !seen.contains(&s) {
                seen.push(s);
            }
        }
        seen
    };
    let cap = trace_cap.unwrap_or_else(|| default_trace_cap(p, &signs));
    let p_i = p as i128;
    let p_sq = p_i * p_i;
    let mut residue_classes: Vec<u64> = signs
        .iter()
        .map(|&s| (2 * s as i128).rem_euclid(p_i) as u64)
        .collect();
    residue_classes.dedup();
    let mut tested = 0u64;

    for t in 3..=cap {
        let t_i = t as i128;
        for &sign in &signs {
            if (t_i - 2 * sign as i128).rem_euclid(p_i) != 0 {
                continue;
            }
            for x in 0..p_i {
                tested += 1;
                let a = sign as i128 + p_i * x;
                let d = t_i - a;
                if (a * d - 1).rem_euclid(p_sq) == 0 {
                    let c = (a * d - 1) / p_i;
                    let witness = TraceWitness {
                        a: BigInt::from(a),
                        b: BigInt::from(p),
                        c: BigInt::from(c),
                        d: BigInt::from(d),
                        level: p,
                        sign,
                    };
                    debug_assert!(witness_verify(&witness));
                    return Ok(SystoleResult {
                        level: p,
                        min_trace: t,
                        length: trace_to_length(t as i64)?,
                        witness,
                        certificate: SearchCertificate {
                            trace_lo: 3,
                            trace_hi: cap,
                            residue_classes,
                            candidates_tested: tested,
                        },
                    });
                }
            }
        }
    }
    Err(Error::TraceCapExhausted(cap))
}

/// Systole of `M_p` as a geodesic length.
pub fn systole_of_level(p: u64) -> Result<f64> {
    Ok(min_trace_exact(p)?.length)
}

type Mat = [BigInt; 4];

fn mat_mul(m: &Mat, n: &Mat) -> Mat {
    [
        &m[0] * &n[0] + &m[1] * &n[2],
        &m[0] * &n[1] + &m[1] * &n[3],
        &m[2] * &n[0] + &m[3] * &n[2],
        &m[2] * &n[1] + &m[3] * &n[3],
    ]
}

/// Normalize the sign so ±M map to the same key (PSL identification).
fn normalize(mut m: Mat) -> Mat {
    let flip = match m.iter().find(|e| !e.is_zero()) {
        Some(e) => e.is_negative(),
        None => false,
    };
    if flip {
        for e in &mut m {
            *e = -std::mem::take(e);
        }
    }
    m
}

fn residue(x: &BigInt, p: u64) -> u64 {
    let r = x % p;
    let r = if r.is_negative() { r + p } else { r };
    // remainder of a BigInt by a u64 fits in u64
    u64::try_from(r).unwrap()
}

fn congruent_to_pm_identity(m: &Mat, p: u64) -> bool {
    if residue(&m[1], p) != 0 || residue(&m[2], p) != 0 {
        return false;
    }
    let ra = residue(&m[0], p);
    let rd = residue(&m[3], p);
    ra == rd && (ra == 1 % p || ra == (p - 1) % p)
}

/// Incomplete lower-confidence oracle: breadth-first search over reduced words
/// in `T = [[1,1],[0,1]]` and `S = [[0,−1],[1,0]]`, collecting elements
/// ≡ ±I (mod p) with |trace| >= 3. Returns the minimal |trace| within the
/// word-length horizon, or `None` if no such element was reached. When it
/// returns a value `v`, completeness of the residue search guarantees
/// `v >= min_trace_exact(p).min_trace`.
pub fn bfs_oracle(p: u64, max_word_len: u32) -> Result<Option<u64>> {
    if p < 2 {
        return Err(Error::LevelOutOfRange(p, 2, DEFAULT_LEVEL_CAP));
    }
    if max_word_len > MAX_WORD_LEN {
        return Err(Error::DepthCapExceeded(max_word_len, MAX_WORD_LEN));
    }
    const T: u8 = 0;
    const T_INV: u8 = 1;
    const S: u8 = 2;
    const START: u8 = 3;
    let letters: [Mat; 3] = [
        [1.into(), 1.into(), 0.into(), 1.into()],
        [1.into(), (-1).into(), 0.into(), 1.into()],
        [0.into(), (-1).into(), 1.into(), 0.into()],
    ];
    let identity: Mat = [1.into(), 0.into(), 0.into(), 1.into()];

    let mut best: Option<u64> = None;
    let mut visited: HashSet<Mat> = HashSet::new();
    visited.insert(identity.clone());
    let mut queue: VecDeque<(Mat, u8, u32)> = VecDeque::new();
    queue.push_back((identity, START, 0));

    while let Some((mat, last, depth)) = queue.pop_front() {
        if depth == max_word_len {
            continue;
        }
        for letter in [T, T_INV, S] {
            // reduced words: no T·T⁻¹, T⁻¹·T, or S·S (S² = −I ~ I)
            let cancels = matches!(
                (last, letter),
                (T, T_INV) | (T_INV, T) | (S, S)
            );
            if cancels {
                continue;
            }
            let next = normalize(mat_mul(&mat, &letters[letter as usize]));
            if !visited.insert(next.clone()) {
                continue;
            }
            if congruent_to_pm_identity(&next, p) {
                let trace = (&next[0] + &next[3]).abs();
                if trace >= BigInt::from(3) {
                    let t = u64::try_from(trace).expect("trace bounded by Fibonacci growth");
                    best = Some(best.map_or(t, |b| b.min(t)));
                }
            }
            queue.push_back((next, letter, depth + 1));
        }
    }
    Ok(best)
}
