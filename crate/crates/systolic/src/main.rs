use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use systolic::bounds::{
    arithmetic_asymptote, buser_sarnak_bounds, main_theorem_lower, packing_radius, prop_log_lower,
    remark_lower, schmutz_upper, verify_sandwich_with_slack, BoundsConfig, DEFAULT_FINITE_SLACK,
};
use systolic::congruence::{asymptotic_ratio, group_order_oracle, is_prime, ORACLE_LEVEL_CAP};
use systolic::hyp_trig::collar_lower_bound;
use systolic::search::{bfs_oracle, min_trace_exact_capped};
use systolic::table::{
    build_table, fmt_sig, parse_level_range, primes_in_range, rows_to_csv, rows_to_json,
    signature_of_level,
};
use systolic::Error;

#[derive(Parser)]
#[command(
    name = "systolic",
    about = "Exact systoles of principal congruence surfaces and verification of the classical bounds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Signature (genus, cusps) of the congruence surface of a given level
    Signature {
        #[arg(long)]
        level: u64,
        /// Re-derive the signature from the brute-force group order
        #[arg(long, default_value_t = false)]
        oracle_check: bool,
    },
    /// Certified minimal trace, witness matrix, and systole of M_p
    Systole {
        #[arg(long)]
        level: u64,
        /// Override the search cap on candidate traces
        #[arg(long)]
        trace_cap: Option<u64>,
        /// Cross-check against the word BFS oracle
        #[arg(long, default_value_t = false)]
        oracle_check: bool,
        /// Word-length horizon for the BFS oracle
        #[arg(long, default_value_t = 16)]
        max_word_len: u32,
    },
    /// Evaluate every applicable bound for a signature (g, n)
    Bounds {
        #[arg(long)]
        genus: u64,
        #[arg(long)]
        cusps: u64,
        /// Buser-Sarnak universal constant (no true value is known; 1.0 is illustrative)
        #[arg(long = "U")]
        u: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
    },
    /// Per-level table over the primes in a range, as CSV or JSON
    Table(TableArgs),
    /// Verify the bound sandwich for every prime in a range; exit 1 on violation
    Verify {
        #[arg(long)]
        levels: String,
        #[arg(long = "U")]
        u: f64,
        #[arg(long)]
        trace_cap: Option<u64>,
        /// Slack in the finite-level (4/3)ln g check
        #[arg(long, default_value_t = DEFAULT_FINITE_SLACK, allow_negative_numbers = true)]
        slack: f64,
    },
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    levels: String,
    #[arg(long = "U")]
    u: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path (default stdout)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = false)]
    oracle_check: bool,
    #[arg(long)]
    trace_cap: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Signature { level, oracle_check } => {
            let sig = signature_of_level(level)?;
            let index = if level == 2 { 6 } else { sig.cusps * level };
            if oracle_check {
                if level > ORACLE_LEVEL_CAP {
                    return Err(Error::OracleCapExceeded(level));
                }
                let order = group_order_oracle(level)?;
                let oracle_index = if level == 2 { 6 } else { order / 2 };
                if oracle_index != index {
                    return Err(Error::InconsistentIndex(level, "oracle disagrees"));
                }
                println!("oracle |SL(2,Z/{level}Z)| = {order}: consistent");
            }
            println!(
                "level {level}: genus {}, cusps {}, index {index}",
                sig.genus, sig.cusps
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Systole {
            level,
            trace_cap,
            oracle_check,
            max_word_len,
        } => {
            let r = min_trace_exact_capped(level, trace_cap)?;
            let w = &r.witness;
            println!("level {level}: min_trace {}", r.min_trace);
            println!("witness ({}, {}, {}, {})  sign {:+}", w.a, w.b, w.c, w.d, w.sign);
            println!("length {}", fmt_sig(r.length));
            println!(
                "certificate: traces 3..={} in classes {:?} mod {level}, {} candidates",
                r.certificate.trace_hi, r.certificate.residue_classes, r.certificate.candidates_tested
            );
            if oracle_check {
                match bfs_oracle(level, max_word_len)? {
                    Some(v) if v == r.min_trace => {
                        println!("bfs oracle (depth {max_word_len}): {v} - consistent")
                    }
                    Some(v) => {
                        // BFS can only overestimate; anything else is a bug
                        if v < r.min_trace {
                            return Err(Error::InconsistentIndex(level, "bfs found smaller trace"));
                        }
                        println!("bfs oracle (depth {max_word_len}): {v} - horizon too short for minimum")
                    }
                    None => println!("bfs oracle (depth {max_word_len}): no element found"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds { genus, cusps, u, alpha } => {
            println!("signature ({genus}, {cusps})");
            println!("collar_lower {}", fmt_sig(collar_lower_bound()));
            match schmutz_upper(genus, cusps) {
                Ok(v) => println!("schmutz_upper {}", fmt_sig(v)),
                Err(_) => println!("schmutz_upper inapplicable"),
            }
            match arithmetic_asymptote(genus, cusps) {
                Ok(v) => println!("arith_asymptote {}", fmt_sig(v)),
                Err(_) => println!("arith_asymptote inapplicable"),
            }
            if let Ok(r) = asymptotic_ratio_from_signature(genus, cusps) {
                println!("ratio72 {}", fmt_sig(r));
            }
            if genus >= 2 {
                match u {
                    Some(u) => {
                        let cfg = BoundsConfig { u, alpha };
                        if cusps == 0 {
                            let (lo, hi) = buser_sarnak_bounds(genus, &cfg)?;
                            println!("buser_sarnak_lower {}", fmt_sig(lo));
                            println!("buser_sarnak_upper {}", fmt_sig(hi));
                        }
                        println!("prop_log_lower {}", fmt_sig(prop_log_lower(genus, cusps, &cfg)?));
                        println!(
                            "main_theorem_lower {}",
                            fmt_sig(main_theorem_lower(genus, cusps, &cfg)?)
                        );
                        let (rn, rb) = remark_lower(genus, &cfg)?;
                        println!("remark_lower [g^alpha]={rn} bound {}", fmt_sig(rb));
                        if cusps >= 1 {
                            let plan = packing_radius(genus, cusps, &cfg)?;
                            println!(
                                "packing radius {} min_disks {}",
                                fmt_sig(plan.radius),
                                plan.min_disk_count
                            );
                        }
                    }
                    None => println!("U-dependent bounds: requires --U"),
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Table(args) => {
            let (lo, hi) = parse_level_range(&args.levels)?;
            let cfg = BoundsConfig::new(args.u);
            let rows = build_table(lo, hi, &cfg, args.trace_cap, args.oracle_check)?;
            let body = match args.format {
                Format::Csv => rows_to_csv(&rows),
                Format::Json => rows_to_json(&rows, &cfg, args.trace_cap),
            };
            match args.out {
                Some(path) => fs::write(&path, body).map_err(|e| {
                    Error::InvalidRange(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{body}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            levels,
            u,
            trace_cap,
            slack,
        } => {
            let (lo, hi) = parse_level_range(&levels)?;
            let cfg = BoundsConfig::new(u);
            let mut all_passed = true;
            for p in primes_in_range(lo, hi) {
                let report = verify_sandwich_with_slack(p, &cfg, trace_cap, slack)?;
                let verdict = if report.passed { "PASS" } else { "FAIL" };
                println!(
                    "level {p}: {verdict}  sys {}  gap_to_upper {}",
                    fmt_sig(report.computed_systole),
                    report
                        .gap_to_upper
                        .map(fmt_sig)
                        .unwrap_or_else(|| "inapplicable".into())
                );
                for c in report.checks.iter().filter(|c| !c.passed) {
                    println!(
                        "  violated: {} ({} vs {})",
                        c.name,
                        fmt_sig(c.lhs),
                        fmt_sig(c.rhs)
                    );
                    all_passed = false;
                }
            }
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// ratio72 for a signature that matches a prime level's (g_p, n_p); used by
/// `bounds` opportunistically, absent otherwise.
fn asymptotic_ratio_from_signature(genus: u64, cusps: u64) -> Result<f64, Error> {
    // invert n = (p²−1)/2
    let p2 = 2 * cusps + 1;
    let p = (p2 as f64).sqrt().round() as u64;
    if p * p != p2 || !is_prime(p) || p < 7 {
        return Err(Error::DegenerateGenus(genus));
    }
    let sig = signature_of_level(p)?;
    if sig.genus != genus || sig.cusps != cusps {
        return Err(Error::DegenerateGenus(genus));
    }
    asymptotic_ratio(p)
}
