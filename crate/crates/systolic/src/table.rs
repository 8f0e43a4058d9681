//! Table assembly and serialization for the CLI: level-range parsing, fixed
//! 9-significant-digit number formatting, and CSV/JSON emission with
//! identical numeric values in both formats.

use serde_json::{json, Map, Value};

use crate::bounds::{arithmetic_asymptote, prop_log_lower, schmutz_upper, BoundsConfig};
use crate::congruence::{
    asymptotic_ratio, group_order_oracle, is_prime, signature_general, signature_prime, Signature,
};
use crate::error::{Error, Result};
use crate::search::{min_trace_exact_capped, TraceWitness};

/// Fixed CSV header; empty cells mark inapplicable bounds.
pub const CSV_HEADER: &str =
    "level,genus,cusps,index,min_trace,systole,schmutz_upper,gap_to_upper,prop_log_lower,arith_asymptote,ratio72";

/// One row of the per-level table. Real-valued fields are kept as `f64` and
/// formatted once, so CSV and JSON cannot drift apart.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub level: u64,
    pub genus: u64,
    pub cusps: u64,
    pub index: u64,
    pub min_trace: u64,
    pub systole: f64,
    pub schmutz_upper: Option<f64>,
    pub gap_to_upper: Option<f64>,
    pub prop_log_lower: Option<f64>,
    pub arith_asymptote: Option<f64>,
    pub ratio72: Option<f64>,
    pub witness: TraceWitness,
}

/// Parses an inclusive level range `a..b` with `2 <= a <= b`.
pub fn parse_level_range(s: &str) -> Result<(u64, u64)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| Error::InvalidRange(format!("expected a..b, got {s:?}")))?;
    let parse = |part: &str| -> Result<u64> {
        part.trim()
            .parse::<u64>()
            .map_err(|_| Error::InvalidRange(format!("bad integer {part:?} in {s:?}")))
    };
    let lo = parse(lo)?;
    let hi = parse(hi)?;
    if lo < 2 {
        return Err(Error::InvalidRange(format!("range must start at 2: {s:?}")));
    }
    if lo > hi {
        return Err(Error::InvalidRange(format!("empty range: {s:?}")));
    }
    Ok((lo, hi))
}

/// Primes in the inclusive range; the certified search is prime-only, so
/// ranges select primes (2 and 3 included).
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&k| is_prime(k)).collect()
}

/// Formats to 9 significant digits; deterministic across runs and platforms.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (8 - exp).max(0) as usize;
    format!("{:.*}", decimals, x)
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

/// Signature by the route matching the level: closed forms for odd primes,
/// the oracle for 2 and composites (within the oracle cap).
pub fn signature_of_level(k: u64) -> Result<Signature> {
    if is_prime(k) && k != 2 {
        signature_prime(k)
    } else {
        signature_general(k)
    }
}

/// Builds the full row for one prime level. With `oracle_check`, the
/// signature is re-derived from the brute-force group order and any mismatch
/// is an error.
pub fn build_row(
    p: u64,
    cfg: &BoundsConfig,
    trace_cap: Option<u64>,
    oracle_check: bool,
) -> Result<TableRow> {
    let sig = signature_of_level(p)?;
    let index = if p == 2 {
        6
    } else {
        (sig.cusps) * p // index = n·k for principal congruence subgroups
    };
    // the brute-force oracle is capped; levels above it keep the closed forms
    if oracle_check && p <= crate::congruence::ORACLE_LEVEL_CAP {
        let oracle_sig = signature_general(p)?;
        if oracle_sig != sig {
            return Err(Error::InconsistentIndex(p, "closed forms disagree with oracle"));
        }
        let oracle_index = if p == 2 { 6 } else { group_order_oracle(p)? / 2 };
        if oracle_index != index {
            return Err(Error::InconsistentIndex(p, "index disagrees with oracle"));
        }
    }
    let result = min_trace_exact_capped(p, trace_cap)?;
    let schmutz = schmutz_upper(sig.genus, sig.cusps).ok();
    Ok(TableRow {
        level: p,
        genus: sig.genus,
        cusps: sig.cusps,
        index,
        min_trace: result.min_trace,
        systole: result.length,
        schmutz_upper: schmutz,
        gap_to_upper: schmutz.map(|u| u - result.length),
        prop_log_lower: (sig.genus >= 2)
            .then(|| prop_log_lower(sig.genus, sig.cusps, cfg))
            .transpose()?,
        arith_asymptote: (sig.genus >= 1)
            .then(|| arithmetic_asymptote(sig.genus, sig.cusps))
            .transpose()?,
        ratio72: (p >= 7).then(|| asymptotic_ratio(p)).transpose()?,
        witness: result.witness,
    })
}

/// Rows for every prime level in the range, ascending.
pub fn build_table(
    lo: u64,
    hi: u64,
    cfg: &BoundsConfig,
    trace_cap: Option<u64>,
    oracle_check: bool,
) -> Result<Vec<TableRow>> {
    primes_in_range(lo, hi)
        .into_iter()
        .map(|p| build_row(p, cfg, trace_cap, oracle_check))
        .collect()
}

pub fn rows_to_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.level,
            r.genus,
            r.cusps,
            r.index,
            r.min_trace,
            fmt_sig(r.systole),
            fmt_opt(r.schmutz_upper),
            fmt_opt(r.gap_to_upper),
            fmt_opt(r.prop_log_lower),
            fmt_opt(r.arith_asymptote),
            fmt_opt(r.ratio72),
        ));
    }
    out
}

fn opt_value(x: Option<f64>) -> Value {
    x.map_or(Value::Null, |v| Value::String(fmt_sig(v)))
}

/// JSON mirror of the table: same field names as the CSV header, real values
/// carried as the same 9-significant-digit strings, plus the witness and a
/// top-level config object.
pub fn rows_to_json(rows: &[TableRow], cfg: &BoundsConfig, trace_cap: Option<u64>) -> String {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("level".into(), json!(r.level));
            m.insert("genus".into(), json!(r.genus));
            m.insert("cusps".into(), json!(r.cusps));
            m.insert("index".into(), json!(r.index));
            m.insert("min_trace".into(), json!(r.min_trace));
            m.insert("systole".into(), Value::String(fmt_sig(r.systole)));
            m.insert("schmutz_upper".into(), opt_value(r.schmutz_upper));
            m.insert("gap_to_upper".into(), opt_value(r.gap_to_upper));
            m.insert("prop_log_lower".into(), opt_value(r.prop_log_lower));
            m.insert("arith_asymptote".into(), opt_value(r.arith_asymptote));
            m.insert("ratio72".into(), opt_value(r.ratio72));
            m.insert(
                "witness".into(),
                serde_json::to_value(&r.witness).expect("witness serializes"),
            );
            Value::Object(m)
        })
        .collect();
    let doc = json!({
        "config": {
            "U": cfg.u,
            "trace_cap": trace_cap,
            "version": env!("CARGO_PKG_VERSION"),
        },
        "rows": rows,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_level_range("2..101").unwrap(), (2, 101));
        assert_eq!(parse_level_range("7..7").unwrap(), (7, 7));
        assert!(parse_level_range("5").is_err());
        assert!(parse_level_range("5..3").is_err());
        assert!(parse_level_range("0..4").is_err());
        assert!(parse_level_range("a..b").is_err());
        assert!(parse_level_range("..").is_err());
        assert!(parse_level_range("3..9999999999999999999999").is_err());
    }

    #[test]
    fn primes_selected_from_range() {
        assert_eq!(primes_in_range(2, 13), vec![2, 3, 5, 7, 11, 13]);
        assert_eq!(primes_in_range(8, 10), Vec::<u64>::new());
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1.00000000");
        assert_eq!(fmt_sig(-3.84972684), "-3.84972684");
        assert_eq!(fmt_sig(123456789.0), "123456789");
        assert_eq!(fmt_sig(0.000123456789), "0.000123456789");
    }

    #[test]
    fn row_for_level_five() {
        let cfg = BoundsConfig::new(1.0);
        let row = build_row(5, &cfg, None, true).unwrap();
        assert_eq!((row.genus, row.cusps, row.index, row.min_trace), (0, 12, 60, 23));
        assert!(row.prop_log_lower.is_none());
        assert!(row.ratio72.is_none());
        assert!(row.gap_to_upper.unwrap().abs() < 1e-9);
    }

    #[test]
    fn csv_and_json_carry_identical_values() {
        let cfg = BoundsConfig::new(1.0);
        let rows = build_table(2, 13, &cfg, None, false).unwrap();
        let csv = rows_to_csv(&rows);
        let doc: serde_json::Value =
            serde_json::from_str(&rows_to_json(&rows, &cfg, None)).unwrap();
        let json_rows = doc["rows"].as_array().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len() - 1, json_rows.len());
        for (line, jrow) in lines[1..].iter().zip(json_rows) {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells[0], jrow["level"].to_string());
            assert_eq!(cells[5], jrow["systole"].as_str().unwrap());
            let schmutz = jrow["schmutz_upper"].as_str().unwrap_or("");
            assert_eq!(cells[6], schmutz);
            let ratio = jrow["ratio72"].as_str().unwrap_or("");
            assert_eq!(cells[10], ratio);
        }
    }

    #[test]
    fn rows_sorted_by_level() {
        let cfg = BoundsConfig::new(1.0);
        let rows = build_table(2, 31, &cfg, None, false).unwrap();
        assert!(rows.windows(2).all(|w| w[0].level < w[1].level));
    }

    proptest! {
        #[test]
        fn fmt_sig_parses_back_close(x in -1e8f64..1e8) {
            let s = fmt_sig(x);
            let back: f64 = s.parse().unwrap();
            let scale = x.abs().max(1e-300);
            prop_assert!((back - x).abs() / scale < 1e-7);
        }

        #[test]
        fn range_parser_never_panics(s in ".{0,32}") {
            let _ = parse_level_range(&s);
        }
    }
}
