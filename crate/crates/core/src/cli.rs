//! The `qsign` command line: expansion, Δ tables, dominance, identity
//! cross-checks, certificates and a small benchmark.
//!
//! Data goes to stdout (or `--out`); progress and diagnostics go to stderr.
//! Exit codes: 0 success, 1 error, 2 sign violation, 3 dominance unknown.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analytic::{dominance, eventual_dominance_certificate, FamilyModel, PRECISION_CAP};
use crate::certifier::{certify_with, richmond_szekeres_scan, verify_known_theorems, CertifyOptions, SignTable, Target};
use crate::circle::{run_identity, Identity, DEFAULT_SEED};
use crate::error::{usage, Error, Result};
use crate::modular::{delta_table, omega_of, write_delta_csv};
use crate::qseries::{expand_product, registered, write_csv_header, write_csv_row, ProductSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "qsign", version, about = "Sign patterns of Rogers-Ramanujan type products")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Working precision in bits
    #[arg(long, global = true, env = "QSIGN_PRECISION", default_value_t = 192)]
    pub precision: u32,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write data here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a product to order --trunc
    Expand {
        /// Registered name (A, B, C, D, c, d) or inline JSON factor list
        #[arg(long)]
        spec: String,
        #[arg(long)]
        trunc: usize,
    },
    /// Δ(ℵ, l) for every class, with the Δ > 0 classes marked
    Delta {
        #[arg(long)]
        spec: String,
        /// Add columns for the Δ formula as printed (missing square)
        #[arg(long)]
        audit: bool,
    },
    /// Certified comparison of the main term against the error bound
    Dominance {
        /// A, B, D or D-printed
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u64,
        /// Also certify dominance for every later index of this residue mod 5
        #[arg(long)]
        eventual: Option<u64>,
    },
    /// Seeded residual run of a transformation identity
    Xcheck {
        /// eta, theta, quasi, product, psi, theta-sum or split
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Certificate for A5n, B5n or D5n1
    Certify {
        #[arg(long)]
        target: String,
        /// Replace the registered product (inline JSON or name)
        #[arg(long)]
        spec: Option<String>,
    },
    /// Exact check of the proved sign patterns of A, B, C, D
    Theorems {
        #[arg(long, default_value_t = 800)]
        trunc: usize,
    },
    /// Eventual sign patterns of c(n) and d(n)
    Scan {
        #[arg(long, default_value_t = 2000)]
        trunc: usize,
    },
    /// Time the series engine
    Bench {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        trunc: usize,
    },
}

/// Resolves a registered name or an inline JSON factor list.
pub fn resolve_spec(text: &str) -> Result<(String, ProductSpec)> {
    let t = text.trim();
    if t.starts_with('[') {
        Ok(("custom".into(), ProductSpec::from_json(t)?))
    } else {
        Ok((t.to_string(), registered(t)?))
    }
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<W: Write>(w: &mut W, v: &impl serde::Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, v)?;
    writeln!(w)?;
    Ok(())
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    let g = &cli.global;
    if let Some(n) = g.workers {
        if n == 0 {
            return usage("--workers must be positive");
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    if g.precision < 53 || g.precision > PRECISION_CAP {
        return usage(format!("--precision must lie in [53, {PRECISION_CAP}]"));
    }
    let mut out = sink(&g.out)?;
    let code = match &cli.command {
        Command::Expand { spec, trunc } => {
            let (name, spec) = resolve_spec(spec)?;
            let s = expand_product(&spec, *trunc);
            match g.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    write_csv_header(&mut out)?;
                    for (i, c) in s.coeffs().iter().enumerate() {
                        write_csv_row(&mut out, i, c)?;
                    }
                }
                Format::Table => {
                    for (i, c) in s.coeffs().iter().enumerate() {
                        writeln!(out, "{name}({i}) = {c}")?;
                    }
                }
                Format::Json => {
                    write!(out, "{{\"spec\":{},\"trunc\":{trunc},\"coefficients\":[", json!(name))?;
                    for (i, c) in s.coeffs().iter().enumerate() {
                        let sep = if i == 0 { "" } else { "," };
                        write!(out, "{sep}\"{c}\"")?;
                    }
                    writeln!(out, "]}}")?;
                }
            }
            0
        }
        Command::Delta { spec, audit } => {
            let (name, spec) = resolve_spec(spec)?;
            let rows = delta_table(&spec)?;
            match g.format.unwrap_or(Format::Table) {
                Format::Csv => write_delta_csv(&name, &rows, *audit, &mut out)?,
                Format::Json => {
                    let v: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            json!({
                                "aleph": r.aleph, "l": r.l, "h": r.h, "k": r.k,
                                "delta": r.delta.to_string(),
                                "delta_as_printed": r.delta_as_printed.to_string(),
                                "in_Lpos": r.in_lpos,
                            })
                        })
                        .collect();
                    let om = omega_of(&spec);
                    write_json(&mut out, &json!({"spec": name, "omega": om.value.to_string(), "classes": v}))?;
                }
                Format::Table => {
                    writeln!(out, "spec {name}: omega = {}", omega_of(&spec).value)?;
                    writeln!(out, "{:>6} {:>4} {:>10}  Lpos", "aleph", "l", "delta")?;
                    for r in rows.iter().filter(|r| r.delta != 0 || *audit) {
                        let mark = if r.in_lpos { "*" } else { "" };
                        writeln!(out, "{:>6} {:>4} {:>10}  {mark}", r.aleph, r.l, r.delta.to_string())?;
                    }
                }
            }
            0
        }
        Command::Dominance { family, n, eventual } => {
            let model = FamilyModel::by_name(family)?;
            let rep = dominance(&model, *n, g.precision, PRECISION_CAP)?;
            let ev = match eventual {
                Some(r) => Some(eventual_dominance_certificate(&model, *r, *n, g.precision, PRECISION_CAP)?),
                None => None,
            };
            match g.format.unwrap_or(Format::Table) {
                Format::Table => {
                    writeln!(out, "{model}")?;
                    writeln!(
                        out,
                        "n={} M in [{}, {}], E <= {}, verdict {} at {} bits",
                        rep.n, rep.main_lo, rep.main_hi, rep.bound_hi, rep.verdict, rep.precision_bits
                    )?;
                    if let Some(e) = &ev {
                        writeln!(out, "{}: {}", e.claim, e.verdict)?;
                    }
                }
                _ => write_json(&mut out, &json!({"dominance": rep, "eventual": ev}))?,
            }
            if rep.verdict.is_true() && ev.as_ref().is_none_or(|e| e.verdict.is_true()) {
                0
            } else {
                3
            }
        }
        Command::Xcheck { identity, samples } => {
            let id: Identity = identity.parse()?;
            let t = Instant::now();
            let rep = run_identity(id, *samples, g.seed, g.precision)?;
            eprintln!("{id}: {samples} samples in {:.2?}", t.elapsed());
            match g.format.unwrap_or(Format::Json) {
                Format::Table => writeln!(
                    out,
                    "{} samples={} max_residual={:e} bits={} seed={}",
                    rep.identity, rep.samples, rep.max_residual, rep.precision_bits, rep.seed
                )?,
                _ => write_json(&mut out, &rep)?,
            }
            0
        }
        Command::Certify { target, spec } => {
            let target: Target = target.parse()?;
            let opts = CertifyOptions {
                precision: g.precision,
                cap: PRECISION_CAP,
                seed: g.seed,
                spec_override: spec.as_deref().map(resolve_spec).transpose()?.map(|(_, s)| s),
            };
            eprintln!("certifying {target} ...");
            let cert = certify_with(target, &opts)?;
            out.write_all(cert.to_json().as_bytes())?;
            writeln!(out)?;
            let status = cert.status();
            if !cert.finite.exceptions.is_empty() {
                let shown: Vec<_> = cert.finite.exceptions.iter().take(10).collect();
                eprintln!("sign violation at indices {shown:?}");
            }
            eprintln!("{target}: {status:?}");
            status.exit_code()
        }
        Command::Theorems { trunc } => {
            let tables = verify_known_theorems(*trunc)?;
            emit_tables(&mut out, &tables, g.format)?;
            0
        }
        Command::Scan { trunc } => {
            let tables = richmond_szekeres_scan(*trunc)?;
            emit_tables(&mut out, &tables, g.format)?;
            0
        }
        Command::Bench { spec, trunc } => {
            let (name, spec) = resolve_spec(spec)?;
            let t = Instant::now();
            let s = expand_product(&spec, *trunc);
            let secs = t.elapsed().as_secs_f64();
            let digits = s.coeff(*trunc).map_or(0, |c| c.to_string().trim_start_matches('-').len());
            write_json(&mut out, &json!({"spec": name, "trunc": trunc, "seconds": secs, "last_digits": digits}))?;
            0
        }
    };
    out.flush()?;
    Ok(code)
}

fn emit_tables<W: Write>(out: &mut W, tables: &[SignTable], format: Option<Format>) -> Result<()> {
    match format.unwrap_or(Format::Table) {
        Format::Table => {
            for t in tables {
                let pats: Vec<String> = t
                    .verdicts
                    .iter()
                    .map(|v| format!("5n+{}:{}{}", v.offset, v.expected, if v.holds { "" } else { "!" }))
                    .collect();
                write!(out, "{} [{}..{}] {}", t.spec, t.lo, t.hi, pats.join(" "))?;
                if let Some(c) = t.cutoff {
                    write!(out, " cutoff={c} exceptions={}", t.exceptions.len())?;
                }
                writeln!(out)?;
            }
            Ok(())
        }
        _ => write_json(out, &tables),
    }
}

/// Parses `args` and runs; errors are printed to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("qsign: {e}");
            1
        }
    }
}
