//! Command-line front end for the verification engine.
//!
//! Exit codes: 0 all checks pass, 1 any verification failure or cross-check
//! mismatch, 2 usage error, 3 internal arithmetic error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use qrr::builders::{SeriesBuilder, SeriesName};
use qrr::partitions::{count_dp, count_enumerate, PartitionClass, DEFAULT_ENUM_LIMIT};
use qrr::recursion::recursion_tables;
use qrr::registry::{registry, verify_selection, Status, VerificationReport};
use qrr::Error;

#[derive(Parser)]
#[command(
    name = "qrr",
    about = "Exact verification of the Rogers-Ramanujan identity catalogue",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Truncation order in whole powers of q.
    #[arg(long, env = "QRR_DEFAULT_ORDER", default_value_t = 100,
          value_parser = clap::value_parser!(i64).range(1..=100_000))]
    order: i64,
    /// Exponent denominator D (exponents live in 1/D units).
    #[arg(long, default_value_t = 4,
          value_parser = clap::value_parser!(u32).range(1..=240))]
    denom: u32,
    /// Emit one JSON object per line instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Verify registry identities (all by default).
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated identity ids (e.g. RR_MAIN_G,RH).
        #[arg(long, value_delimiter = ',')]
        ids: Option<Vec<String>>,
    },
    /// Print the coefficient table of a named series.
    Coeffs {
        #[command(flatten)]
        common: CommonArgs,
        /// One of: G, H, A, B, F, tilde-G, tilde-H.
        #[arg(long)]
        series: String,
        /// Largest power of q to print.
        #[arg(long, default_value_t = 20)]
        upto: i64,
    },
    /// Build the recursion tables and cross-check them against the series
    /// and the partition oracles.
    Recursion {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest index n.
        #[arg(long, default_value_t = 50)]
        upto: usize,
        /// Cap for the brute-force enumeration oracle.
        #[arg(long, default_value_t = DEFAULT_ENUM_LIMIT)]
        enum_limit: u32,
    },
    /// Print partition class counts by both counting routes.
    Partitions {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest n to count.
        #[arg(long, default_value_t = 40)]
        upto: u32,
        /// Restrict to one class (NOT_DIV_4, MOD5_PM1, MOD5_PM2,
        /// SUPERDISTINCT, SUPERDISTINCT_MIN2).
        #[arg(long)]
        class: Option<String>,
        /// Cap for the brute-force enumeration oracle.
        #[arg(long, default_value_t = DEFAULT_ENUM_LIMIT)]
        enum_limit: u32,
    },
    /// List the identity registry.
    List {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. `qrr list | head`)
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify { common, ids } => cmd_verify(common, ids),
        Command::Coeffs {
            common,
            series,
            upto,
        } => cmd_coeffs(common, &series, upto),
        Command::Recursion {
            common,
            upto,
            enum_limit,
        } => cmd_recursion(common, upto, enum_limit),
        Command::Partitions {
            common,
            upto,
            class,
            enum_limit,
        } => cmd_partitions(common, upto, class.as_deref(), enum_limit),
        Command::List { common } => cmd_list(common),
    };
    match outcome {
        Ok(all_good) => {
            if all_good {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::UnknownIdentity(_) | Error::UnknownSeries(_) => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}

fn report_json(r: &VerificationReport) -> serde_json::Value {
    json!({
        "id": r.id,
        "instantiation": r.instantiation,
        "order": r.order_q,
        "status": r.status.as_str(),
        "first_mismatch": r.first_mismatch.as_ref().map(|m| {
            json!({
                "var_power": m.var_power,
                "exponent": qrr::qseries::format_exponent(m.exponent_units, m.denom),
                "lhs": m.lhs.to_string(),
                "rhs": m.rhs.to_string(),
            })
        }),
        "millis": r.millis as u64,
    })
}

fn cmd_verify(common: CommonArgs, ids: Option<Vec<String>>) -> qrr::Result<bool> {
    // reject unknown ids before any computation
    if let Some(list) = &ids {
        let known = registry();
        for id in list {
            if !known.iter().any(|s| s.id.eq_ignore_ascii_case(id)) {
                return Err(Error::UnknownIdentity(id.clone()));
            }
        }
    }
    let reports = verify_selection(ids.as_deref(), common.order, common.denom)?;
    let mut all_pass = true;
    for r in &reports {
        if matches!(r.status, Status::Fail) {
            all_pass = false;
        }
        if common.json {
            println!("{}", report_json(r));
        } else {
            println!("{r}");
        }
    }
    if !common.json {
        let passed = reports.iter().filter(|r| r.passed()).count();
        let skipped = reports
            .iter()
            .filter(|r| matches!(r.status, Status::Skipped(_)))
            .count();
        println!(
            "{passed}/{} passed, {skipped} skipped, order {}",
            reports.len(),
            common.order
        );
    }
    Ok(all_pass)
}

fn cmd_coeffs(common: CommonArgs, series: &str, upto: i64) -> qrr::Result<bool> {
    let name = SeriesName::parse(series)?;
    let order = common.order.max(upto);
    let s = SeriesBuilder::named(name).build(order * common.denom as i64, common.denom)?;
    let table = s.coeff_table(upto)?;
    if common.json {
        println!(
            "{}",
            json!({
                "series": name.label(),
                "upto": upto,
                "coefficients": table.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            })
        );
    } else {
        let rendered: Vec<String> = table.iter().map(|c| c.to_string()).collect();
        println!("{}", rendered.join(" "));
    }
    Ok(true)
}

fn cmd_recursion(common: CommonArgs, upto: usize, enum_limit: u32) -> qrr::Result<bool> {
    let tables = recursion_tables(upto, common.denom)?;
    let m = upto as i64 * common.denom as i64;
    let checks: [(&str, &[BigInt], SeriesName, SeriesName); 2] = [
        ("g", &tables.g, SeriesName::G, SeriesName::TildeG),
        ("h", &tables.h, SeriesName::H, SeriesName::TildeH),
    ];
    let mut ok = true;
    let mut mismatches: Vec<String> = Vec::new();
    for (label, values, sum_name, prod_name) in checks {
        let sum_side = SeriesBuilder::named(sum_name).build(m, common.denom)?;
        let prod_side = SeriesBuilder::named(prod_name).build(m, common.denom)?;
        for (n, v) in values.iter().enumerate() {
            let qs = sum_side.coeff_q(n as i64)?;
            let qp = prod_side.coeff_q(n as i64)?;
            if *v != qs || *v != qp {
                ok = false;
                mismatches.push(format!(
                    "{label}_{n}: recursion {v}, sum {qs}, product {qp}"
                ));
            }
        }
    }
    // partition oracles on the shared range
    let oracle_to = (upto as u32).min(enum_limit);
    for n in 0..=oracle_to {
        let g_count = count_enumerate(PartitionClass::Mod5Pm1, n, enum_limit)?;
        let h_count = count_enumerate(PartitionClass::Mod5Pm2, n, enum_limit)?;
        let f_count = count_enumerate(PartitionClass::NotDiv4, n, enum_limit)?;
        if tables.g[n as usize] != BigInt::from(g_count)
            || tables.h[n as usize] != BigInt::from(h_count)
            || tables.f[n as usize] != BigInt::from(f_count)
        {
            ok = false;
            mismatches.push(format!("partition oracle disagrees at n = {n}"));
        }
    }
    if common.json {
        println!(
            "{}",
            json!({
                "upto": upto,
                "f": tables.f.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "g": tables.g.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "h": tables.h.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "status": if ok { "ok" } else { "mismatch" },
                "mismatches": mismatches,
            })
        );
    } else {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        println!("f: {}", join(&tables.f[..=upto.min(tables.f.len() - 1)]));
        println!("g: {}", join(&tables.g));
        println!("h: {}", join(&tables.h));
        for line in &mismatches {
            println!("mismatch {line}");
        }
        println!("status {}", if ok { "ok" } else { "mismatch" });
    }
    Ok(ok)
}

fn cmd_partitions(
    common: CommonArgs,
    upto: u32,
    class: Option<&str>,
    enum_limit: u32,
) -> qrr::Result<bool> {
    let classes: Vec<PartitionClass> = match class {
        Some(name) => vec![name.parse()?],
        None => PartitionClass::ALL.to_vec(),
    };
    let mut ok = true;
    for class in classes {
        let dp = count_dp(class, upto);
        let mut enum_counts: Vec<Option<u64>> = Vec::new();
        for n in 0..=upto {
            if n <= enum_limit {
                let e = count_enumerate(class, n, enum_limit)?;
                if dp[n as usize] != BigInt::from(e) {
                    ok = false;
                }
                enum_counts.push(Some(e));
            } else {
                enum_counts.push(None);
            }
        }
        if common.json {
            println!(
                "{}",
                json!({
                    "class": class.to_string(),
                    "description": class.description(),
                    "counts": dp.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "enumerated": enum_counts,
                    "agree": ok,
                })
            );
        } else {
            let rendered: Vec<String> = dp.iter().map(|c| c.to_string()).collect();
            println!("{class} ({}):", class.description());
            println!("  {}", rendered.join(" "));
        }
    }
    if !common.json {
        println!("status {}", if ok { "ok" } else { "mismatch" });
    }
    Ok(ok)
}

fn cmd_list(common: CommonArgs) -> qrr::Result<bool> {
    for spec in registry() {
        if common.json {
            println!(
                "{}",
                json!({
                    "id": spec.id,
                    "anchor": spec.anchor,
                    "instantiations": spec
                        .instantiations
                        .iter()
                        .map(|i| i.label().to_string())
                        .collect::<Vec<_>>(),
                    "required_denom": spec.required_denom,
                    "default_order": spec.default_order_q,
                })
            );
        } else {
            println!(
                "{:<22} [{} inst.] {}",
                spec.id,
                spec.instantiations.len(),
                spec.anchor
            );
        }
    }
    Ok(true)
}
