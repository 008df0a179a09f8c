use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use sl23::arith::prime_power_decompose;
use sl23::certify::{certify, maxsub_table, scan_report, verify, Certificate};
use sl23::construct::build;
use sl23::{Error, GfMat};

#[derive(Parser)]
#[command(name = "sl23gen", version, about = "(2,3)-generators of SL_n(q) for n = 9, 10, 11")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Print progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the generating pair x, y.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and write a certificate.
    Certify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recheck every claim in a certificate.
    Verify { path: PathBuf },
    /// Maximal subgroup orders of SL_11(q) against Q.
    Maxsub {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certify and verify every prime power q <= q-max.
    Sweep {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q_max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Fail {
    Usage(String),
    Verify(String),
    Io(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrimePower(_)
            | Error::UnsupportedN(_)
            | Error::OutOfRange { .. }
            | Error::NotSpecialCase { .. }
            | Error::FieldTooLarge { .. } => Fail::Usage(e.to_string()),
            _ => Fail::Verify(e.to_string()),
        }
    }
}

fn check_args(n: u32, q: u64) -> Result<(), Fail> {
    if !(9..=11).contains(&n) {
        return Err(Error::UnsupportedN(n).into());
    }
    prime_power_decompose(q)?;
    Ok(())
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Fail> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Fail::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn int_rows(m: &GfMat) -> Vec<Vec<u64>> {
    m.rows().into_iter().map(|r| r.into_iter().map(|e| e.canonical()).collect()).collect()
}

fn gen(n: u32, q: u64, format: Format, out: &Option<PathBuf>) -> Result<(), Fail> {
    check_args(n, q)?;
    let pair = build(n, q)?;
    let f = &pair.field;
    let text = match format {
        Format::Text => {
            let mut s = format!("SL {n} {q} field=({},{},{})\n", f.p(), f.degree(), f.modulus_string());
            for (name, m) in [("x", &pair.x), ("y", &pair.y)] {
                s.push_str(name);
                s.push('\n');
                for row in int_rows(m) {
                    let row: Vec<String> = row.iter().map(u64::to_string).collect();
                    s.push_str(&row.join(" "));
                    s.push('\n');
                }
            }
            s
        }
        Format::Json => {
            let v = serde_json::json!({
                "n": n,
                "q": q,
                "construction": pair.tag.as_str(),
                "field": { "p": f.p(), "k": f.degree(), "modulus": f.modulus() },
                "x": int_rows(&pair.x),
                "y": int_rows(&pair.y),
            });
            serde_json::to_string_pretty(&v).expect("json value serializes") + "\n"
        }
    };
    emit(&text, out)
}

fn cmd_certify(n: u32, q: u64, out: &Option<PathBuf>, seed: u64) -> Result<(), Fail> {
    check_args(n, q)?;
    let cert = certify(n, q, seed)?;
    emit(&cert.to_json(), out)
}

fn cmd_verify(path: &PathBuf) -> Result<(), Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| Fail::Io(format!("{}: {e}", path.display())))?;
    let cert = Certificate::from_json(&text)?;
    let report = verify(&cert);
    match report.failure {
        None => {
            println!("OK n={} q={} ({} checks)", cert.n, cert.q, report.passed.len());
            Ok(())
        }
        Some(f) => Err(Fail::Verify(format!("check failed: {f}"))),
    }
}

fn cmd_maxsub(q: u64, format: Format) -> Result<(), Fail> {
    prime_power_decompose(q)?;
    let report = scan_report(q)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Text => {
            println!("Q = {}", report.q_order);
            for entry in maxsub_table(q)? {
                let orders: Vec<String> = entry
                    .instances
                    .iter()
                    .map(|i| match i.q0 {
                        Some(q0) => format!("{}[q0={q0}]", i.order),
                        None => i.order.to_string(),
                    })
                    .collect();
                let mark = if report.divisible.contains(&entry.case_id) { "DIVISIBLE" } else { "-" };
                let applicable = if entry.applicable { "yes" } else { "no" };
                let orders = if orders.is_empty() { "-".to_string() } else { orders.join(",") };
                println!("{:>2}  {:<9}  {:<3}  {}  {}", entry.case_id, mark, applicable, entry.structure, orders);
            }
        }
    }
    Ok(())
}

fn sweep_one(n: u32, q: u64, seed: u64) -> Result<(), String> {
    let cert = certify(n, q, seed).map_err(|e| e.to_string())?;
    let back = Certificate::from_json(&cert.to_json()).map_err(|e| e.to_string())?;
    match verify(&back).failure {
        None => Ok(()),
        Some(f) => Err(format!("check failed: {f}")),
    }
}

fn cmd_sweep(n: u32, q_max: u64, seed: u64, verbose: bool) -> Result<(), Fail> {
    if !(9..=11).contains(&n) {
        return Err(Error::UnsupportedN(n).into());
    }
    let qs: Vec<u64> = (2..=q_max).filter(|&q| prime_power_decompose(q).is_ok()).collect();
    let results: Vec<(u64, Result<(), String>)> = qs
        .par_iter()
        .map(|&q| {
            if verbose {
                eprintln!("certifying n={n} q={q}");
            }
            (q, sweep_one(n, q, seed))
        })
        .collect();
    let mut failed = 0;
    for (q, r) in &results {
        match r {
            Ok(()) => println!("n={n} q={q} PASS"),
            Err(e) => {
                failed += 1;
                println!("n={n} q={q} FAIL {e}");
            }
        }
    }
    println!("summary n={n} q<={q_max}: {}/{} PASS", results.len() - failed, results.len());
    if failed > 0 {
        return Err(Fail::Verify(format!("{failed} of {} failed", results.len())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Cmd::Gen { n, q, format, out } => gen(*n, *q, *format, out),
        Cmd::Certify { n, q, out, seed } => cmd_certify(*n, *q, out, *seed),
        Cmd::Verify { path } => cmd_verify(path),
        Cmd::Maxsub { q, format } => cmd_maxsub(*q, *format),
        Cmd::Sweep { n, q_max, seed } => cmd_sweep(*n, *q_max, *seed, cli.verbose),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Verify(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
