//! Command-line surface for the flexion kernel: compute, verify, export.
//!
//! Exit codes: 0 success/verified, 1 a mathematical check failed, 2 usage or
//! input error.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use flexion::bridge;
use flexion::expr::parse_derivation;
use flexion::mould::Mould;
use flexion::ncalg::NcPoly;
use flexion::relations;
use flexion::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "flexion",
    about = "Exact computations in the elliptic derivation algebra and mould calculus",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct JsonOut {
    /// Write the result as JSON to this path ("-" for stdout).
    #[arg(long, value_name = "PATH")]
    json: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite.
    Verify {
        /// One of: core, mould, main, appendix-a, appendix-b, all.
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Evaluate a bracket expression over eps(2i), phi0, h(p,q,d).
    Eval {
        /// Expression, e.g. "[eps(4), eps(6)]" or "4*h(2,10,3) - 25*h(4,8,3)".
        expr: String,
        /// Output form: a-image, mould (via psi), or json (the derivation).
        #[arg(long = "as", value_name = "FORM", default_value = "a-image")]
        form: String,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Apply a mould operation to JSON mould files.
    Mould {
        /// One of: ari, swap, push, alternal, singular.
        op: String,
        /// Input mould JSON file(s); `ari` takes two.
        inputs: Vec<String>,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Compute relation kernels among the h^d_{p,q} and optional lifts.
    Relations {
        #[arg(long, value_name = "N", conflicts_with = "sweep")]
        weight: Option<u64>,
        /// Weight range "A..B" (inclusive, even weights).
        #[arg(long, value_name = "A..B")]
        sweep: Option<String>,
        #[arg(long, value_name = "D")]
        depth: u32,
        /// Also solve the triple-bracket lift for each kernel vector.
        #[arg(long)]
        lift: bool,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Apply the word-to-mould dictionary to a polynomial JSON file.
    Ma {
        input: String,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Like `ma`, then divide the depth-r part by u_1...u_r.
    Da {
        input: String,
        #[command(flatten)]
        out: JsonOut,
    },
    /// Like `ma`, then divide the depth-r part by Delta_r.
    #[command(name = "Da")]
    DaDelta {
        input: String,
        #[command(flatten)]
        out: JsonOut,
    },
    /// psi of a derivation JSON file: Da of its value on a.
    Psi {
        input: String,
        #[command(flatten)]
        out: JsonOut,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|err| format!("cannot read {path}: {err}"))
}

fn parse_mould(path: &str) -> Result<Mould, String> {
    serde_json::from_str(&read_file(path)?).map_err(|err| format!("{path}: {err}"))
}

fn emit_json<T: ?Sized + serde::Serialize>(out: &JsonOut, value: &T) -> Result<(), String> {
    let Some(path) = &out.json else {
        return Ok(());
    };
    let text = serde_json::to_string_pretty(value).map_err(|err| err.to_string())?;
    if path == "-" {
        println!("{text}");
    } else {
        fs::write(path, text + "\n").map_err(|err| format!("cannot write {path}: {err}"))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Verify { suite, out } => {
            let suite = Suite::from_name(&suite).ok_or_else(|| {
                format!(
                    "unknown suite `{suite}`; expected one of {:?}",
                    Suite::names()
                )
            })?;
            let result = run_suite(suite);
            for c in &result.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                print!("{status} {} ({} ms)", c.id, c.elapsed_ms);
                if let Some(d) = &c.detail {
                    print!(" - {d}");
                }
                println!();
            }
            println!(
                "suite {}: {}",
                result.suite,
                if result.pass { "PASS" } else { "FAIL" }
            );
            emit_json(&out, &result)?;
            Ok(if result.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Eval { expr, form, out } => {
            let d = parse_derivation(&expr).map_err(|err| err.to_string())?;
            match form.as_str() {
                "a-image" => {
                    println!("{}", d.val_a());
                    emit_json(&out, d.val_a())?;
                }
                "mould" => {
                    let m = bridge::psi(&d).map_err(|err| err.to_string())?;
                    println!("{}", m.render());
                    emit_json(&out, &m)?;
                }
                "json" => {
                    let text = serde_json::to_string_pretty(&d).map_err(|err| err.to_string())?;
                    println!("{text}");
                    emit_json(&out, &d)?;
                }
                other => return Err(format!("unknown output form `{other}`")),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mould { op, inputs, out } => {
            let need = |n: usize| -> Result<(), String> {
                if inputs.len() == n {
                    Ok(())
                } else {
                    Err(format!(
                        "`{op}` takes {n} input file(s), got {}",
                        inputs.len()
                    ))
                }
            };
            match op.as_str() {
                "ari" => {
                    need(2)?;
                    let a = parse_mould(&inputs[0])?;
                    let b = parse_mould(&inputs[1])?;
                    let m = flexion::mould::mould_ari(&a, &b).map_err(|err| err.to_string())?;
                    println!("{}", m.render());
                    emit_json(&out, &m)?;
                }
                "swap" => {
                    need(1)?;
                    let m = parse_mould(&inputs[0])?.swap();
                    println!("{}", m.render());
                    emit_json(&out, &m)?;
                }
                "push" => {
                    need(1)?;
                    let m = parse_mould(&inputs[0])?
                        .push()
                        .map_err(|err| err.to_string())?;
                    println!("{}", m.render());
                    emit_json(&out, &m)?;
                }
                "alternal" => {
                    need(1)?;
                    let m = parse_mould(&inputs[0])?;
                    let alternal = m.is_alternal();
                    println!("alternal: {alternal}");
                    emit_json(&out, &serde_json::json!({ "alternal": alternal }))?;
                }
                "singular" => {
                    need(1)?;
                    let m = parse_mould(&inputs[0])?;
                    let rep = m.singularity_report().map_err(|err| err.to_string())?;
                    for d in &rep.per_depth {
                        println!(
                            "depth {}: Delta_r * A_r polynomial: {}",
                            d.depth, d.polynomial
                        );
                    }
                    emit_json(&out, &rep)?;
                }
                other => return Err(format!("unknown mould operation `{other}`")),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Relations {
            weight,
            sweep,
            depth,
            lift,
            out,
        } => {
            let weights: Vec<u64> = match (weight, sweep) {
                (Some(n), None) => vec![n],
                (None, Some(range)) => {
                    let (a, b) = range
                        .split_once("..")
                        .ok_or_else(|| format!("bad sweep range `{range}`, expected A..B"))?;
                    let a: u64 = a.parse().map_err(|_| format!("bad sweep start `{a}`"))?;
                    let b: u64 = b.parse().map_err(|_| format!("bad sweep end `{b}`"))?;
                    (a..=b).filter(|n| n % 2 == 0).collect()
                }
                _ => return Err("give exactly one of --weight or --sweep".into()),
            };
            let mut certs = Vec::new();
            let mut missing_lift = false;
            for n in weights {
                let cert = if lift && depth == 3 {
                    relations::relation_kernel_with_lift(n, depth)
                } else {
                    relations::relation_kernel(n, depth)
                };
                let cert = match cert {
                    Ok(c) => c,
                    Err(flexion::Error::NoLift) => {
                        // a kernel vector without a triple-bracket expression
                        // falsifies the expected spanning statement
                        eprintln!("weight {n}: no lift over the triple-bracket family");
                        missing_lift = true;
                        continue;
                    }
                    Err(err) => return Err(err.to_string()),
                };
                print_certificate(&cert);
                certs.push(cert);
            }
            if certs.len() == 1 {
                emit_json(&out, &certs[0])?;
            } else {
                emit_json(&out, &certs)?;
            }
            Ok(if missing_lift {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Ma { input, out } => {
            let p: NcPoly =
                serde_json::from_str(&read_file(&input)?).map_err(|err| err.to_string())?;
            let m = bridge::ma(&p).map_err(|err| err.to_string())?;
            println!("{}", m.render());
            emit_json(&out, &m)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Da { input, out } => {
            let p: NcPoly =
                serde_json::from_str(&read_file(&input)?).map_err(|err| err.to_string())?;
            let m = bridge::da(&p).map_err(|err| err.to_string())?;
            println!("{}", m.render());
            emit_json(&out, &m)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DaDelta { input, out } => {
            let p: NcPoly =
                serde_json::from_str(&read_file(&input)?).map_err(|err| err.to_string())?;
            let m = bridge::da_delta(&p).map_err(|err| err.to_string())?;
            println!("{}", m.render());
            emit_json(&out, &m)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Psi { input, out } => {
            let d: flexion::derivations::Derivation =
                serde_json::from_str(&read_file(&input)?).map_err(|err| err.to_string())?;
            let m = bridge::psi(&d).map_err(|err| err.to_string())?;
            println!("{}", m.render());
            emit_json(&out, &m)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn print_certificate(cert: &relations::RelationCertificate) {
    let labels: Vec<String> = cert
        .basis
        .iter()
        .map(|(p, q)| format!("h^{}_{{{},{}}}", cert.depth, p, q))
        .collect();
    println!(
        "weight {}, depth {}: basis [{}]",
        cert.weight,
        cert.depth,
        labels.join(", ")
    );
    if cert.kernel.is_empty() {
        println!("  kernel: empty");
        return;
    }
    for kv in &cert.kernel {
        let coeffs: Vec<String> = kv.coeffs.iter().map(|c| c.to_string()).collect();
        println!("  kernel vector: ({})", coeffs.join(", "));
        if let Some(w) = &kv.theta3_witness {
            println!(
                "    depth-3 filtration witness with {} terms",
                w.terms.len()
            );
        }
        if let Some(l) = &kv.lift {
            let terms: Vec<String> = l
                .family
                .iter()
                .zip(&l.coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|([a, b, c_], coeff)| format!("{coeff} * [eps({a}),[eps({b}),eps({c_})]]"))
                .collect();
            println!("    lift: {}", terms.join(" + "));
            for cand in &l.candidates {
                let terms: Vec<String> = cand
                    .terms
                    .iter()
                    .map(|([a, b, c_], coeff)| format!("{coeff} * [eps({a}),[eps({b}),eps({c_})]]"))
                    .collect();
                println!(
                    "    candidate {} matches: {}",
                    terms.join(" + "),
                    cand.matches
                );
            }
        }
    }
}
