//! Command-line front end. `run` takes argv and a writer so it can be driven
//! from tests as well as from `main`.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::acceptance::run_all;
use crate::certify::{
    default_sos4_samples, is_psd, shifted_char_poly, verify_decic, verify_quartic, verify_sos4_extreme_rays,
    RationalSymMatrix, Report,
};
use crate::error::{Error, Result};
use crate::exactnum::{fmt_rat, parse_rat, rat_to_f64, Rational};
use crate::partitions::{
    enum_even_partitions, enum_partitions, hasse, superdominance_trace, superdominates, Partition,
};
use crate::polyhedra::{Cone, IntVec};
use crate::symfunc::find_binomial_violation;
use crate::symreduce::{build_pencil, trop_of_sos, PencilKind};
use crate::tropical::{facet_string, stabilization_tau, t_k_cone, trop_bp_dual, trop_vandermonde};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "symtrop", version, about = "Superdominance, tropical dual cones and exact certificates for symmetric forms")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Add decimal approximations next to exact rationals.
    #[arg(long, global = true)]
    float: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partitions of d, largest first in revlex order.
    Partitions {
        d: u32,
        /// Only even partitions (d must then be even).
        #[arg(long)]
        even: bool,
    },
    /// Cover relations of the superdominance order on partitions of d.
    Hasse {
        d: u32,
        #[arg(long)]
        dot: bool,
    },
    /// Does λ superdominate μ? Prints the prefix-sum trace.
    Superdom { lambda: String, mu: String },
    /// Is p_λ ≥ p_μ on the nonnegative orthant in every number of variables?
    Binomial { lambda: String, mu: String },
    /// Facets and generators of trop(N_d).
    TropN { d: usize },
    /// Facets of the tropicalized dual of the even nonnegative limit cone of degree 2d.
    TropBp { d: usize },
    /// Facets of the tropicalized dual of the even SOS limit cone, degree 2d.
    TropBsos { two_d: u32 },
    /// Facets of T^(k) in degree 2d.
    Tk { two_d: u32, k: usize },
    /// Stabilization index of T^(k).
    Tau {
        d: usize,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
    /// Limit Gram pencil blocks: B4, B6, B8, B10 or S4.
    Pencil {
        kind: String,
        #[arg(long)]
        pretty: bool,
    },
    /// Exact PSD test of a symmetric rational matrix given as a JSON file ("-" for stdin).
    Psd { matrix: String },
    /// Run one of the explicit certificates.
    Certify { which: Certificate },
    /// Run every acceptance criterion.
    VerifyAll,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Certificate {
    Quartic,
    Decic,
    #[value(name = "sos4-rays")]
    Sos4Rays,
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    json: bool,
    float: bool,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", s.as_ref()).map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))
    }

    fn value(&mut self, v: &serde_json::Value) -> Result<()> {
        let s = serde_json::to_string_pretty(v).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        self.line(s)
    }

    fn rat(&self, r: &Rational) -> String {
        if self.float {
            format!("{} (~{:.6})", fmt_rat(r), rat_to_f64(r))
        } else {
            fmt_rat(r)
        }
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// exit code.
pub fn run(argv: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
        }
    };
    let mut ctx = Ctx { out, json: cli.json, float: cli.float };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.out, "error: {e}");
            match e {
                Error::Parse(_) | Error::InvalidArgument(_) | Error::SizeMismatch { .. } | Error::Unsupported(_) => {
                    EXIT_USAGE
                }
                _ => EXIT_FAIL,
            }
        }
    }
}

fn partition_arg(s: &str) -> Result<Partition> {
    Partition::parse(s)
}

fn index_labels(d: usize) -> Vec<Partition> {
    (1..=d as u32).map(|k| Partition::of(&[k])).collect()
}

fn print_facets(ctx: &mut Ctx, title: &str, c: &Cone, labels: &[Partition]) -> Result<()> {
    if ctx.json {
        let facets: Vec<String> = c.facets().iter().map(|f| facet_string(f, labels)).collect();
        let mut v = c.to_json();
        v["title"] = json!(title);
        v["coordinates"] = json!(labels);
        v["facet_strings"] = json!(facets);
        return ctx.value(&v);
    }
    ctx.line(format!("{title}: {} facets", c.facets().len()))?;
    for f in c.facets() {
        ctx.line(format!("  {}", facet_string(f, labels)))?;
    }
    Ok(())
}

fn fmt_vec(v: &IntVec) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", s.join(","))
}

fn report(ctx: &mut Ctx, r: &Report) -> Result<i32> {
    if ctx.json {
        ctx.value(&serde_json::to_value(r).map_err(|e| Error::InvalidArgument(e.to_string()))?)?;
    } else {
        ctx.line(r.summary())?;
        ctx.value(&r.witness)?;
    }
    Ok(if r.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn read_matrix(path: &str) -> Result<RationalSymMatrix> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Error::Parse(format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?
    };
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    RationalSymMatrix::from_json(&v)
}

fn dispatch(cmd: Command, ctx: &mut Ctx) -> Result<i32> {
    match cmd {
        Command::Partitions { d, even } => {
            let ps = if even {
                if d % 2 == 1 {
                    return Err(Error::InvalidArgument(format!("--even needs an even size, got {d}")));
                }
                enum_even_partitions(d)
            } else {
                enum_partitions(d)
            };
            if ctx.json {
                ctx.value(&json!(ps))?;
            } else {
                for p in &ps {
                    ctx.line(p.to_string())?;
                }
            }
        }
        Command::Hasse { d, dot } => {
            let h = hasse(d);
            if dot {
                ctx.line(h.to_dot().trim_end())?;
            } else if ctx.json {
                ctx.value(&json!({"nodes": h.nodes, "edges": h.edge_partitions()}))?;
            } else {
                ctx.line(format!("{} nodes, {} cover relations", h.nodes.len(), h.edges.len()))?;
                for (a, b) in h.edge_partitions() {
                    ctx.line(format!("  {a} > {b}"))?;
                }
            }
        }
        Command::Superdom { lambda, mu } => {
            let (l, m) = (partition_arg(&lambda)?, partition_arg(&mu)?);
            let holds = superdominates(&l, &m)?;
            let trace = superdominance_trace(&l, &m);
            if ctx.json {
                let t: Vec<_> = trace.iter().map(|(j, a, b)| json!({"j": j, "lambda": a, "mu": b})).collect();
                ctx.value(&json!({"lambda": l, "mu": m, "superdominates": holds, "trace": t}))?;
            } else {
                ctx.line(holds.to_string())?;
                for (j, a, b) in trace {
                    let rel = if a <= b { "<=" } else { ">" };
                    ctx.line(format!("  j={j}: {a} {rel} {b}"))?;
                }
            }
        }
        Command::Binomial { lambda, mu } => {
            let (l, m) = (partition_arg(&lambda)?, partition_arg(&mu)?);
            let holds = superdominates(&l, &m)?;
            let witness = if holds { None } else { find_binomial_violation(&l, &m, 12) };
            if ctx.json {
                let w = witness.as_ref().map(|x| x.iter().map(fmt_rat).collect::<Vec<_>>());
                ctx.value(&json!({"lambda": l, "mu": m, "holds": holds, "witness": w}))?;
            } else {
                ctx.line(format!("p{l} >= p{m}: {holds}"))?;
                if let Some(x) = witness {
                    let xs: Vec<String> = x.iter().map(|r| ctx.rat(r)).collect();
                    ctx.line(format!("  violated at x = ({})", xs.join(", ")))?;
                } else if !holds {
                    ctx.line("  no witness found among the structured samples")?;
                    return Ok(EXIT_FAIL);
                }
            }
        }
        Command::TropN { d } => {
            let c = trop_vandermonde(d)?;
            print_facets(ctx, &format!("trop(N_{d})"), &c, &index_labels(d))?;
            if !ctx.json {
                for l in c.lineality_space() {
                    ctx.line(format!("  lineality {}", fmt_vec(l)))?;
                }
                for r in c.extreme_rays() {
                    ctx.line(format!("  ray {}", fmt_vec(r)))?;
                }
            }
        }
        Command::TropBp { d } => {
            if !(2..=5).contains(&d) {
                return Err(Error::Unsupported(format!("trop-bp is computed for 2 <= d <= 5, got {d}")));
            }
            let c = trop_bp_dual(d)?;
            print_facets(ctx, &format!("trop(BP*_{})", 2 * d), &c, &enum_even_partitions(2 * d as u32))?;
        }
        Command::TropBsos { two_d } => {
            let p = build_pencil(&PencilKind::B(two_d))?;
            let c = trop_of_sos(&p)?;
            print_facets(ctx, &format!("trop(BSigma*_{two_d})"), &c, &p.coords)?;
        }
        Command::Tk { two_d, k } => {
            if two_d % 2 == 1 || !(4..=10).contains(&two_d) || k == 0 {
                return Err(Error::Unsupported(format!("tk needs an even 4 <= 2d <= 10 and k >= 1, got {two_d}, {k}")));
            }
            let c = t_k_cone(two_d as usize / 2, k)?;
            print_facets(ctx, &format!("T_{two_d}^({k})"), &c, &enum_even_partitions(two_d))?;
        }
        Command::Tau { d, kmax } => {
            let t = stabilization_tau(d, kmax)?;
            if ctx.json {
                ctx.value(&serde_json::to_value(&t).map_err(|e| Error::InvalidArgument(e.to_string()))?)?;
            } else {
                match t.tau {
                    Some(k) => ctx.line(format!("tau_{d} = {k} (certified: T^({k}) equals trop(BP*_{}))", 2 * d))?,
                    None => ctx.line(format!("tau_{d}: not found for k <= {kmax}"))?,
                }
                for (k, eq) in &t.trace {
                    ctx.line(format!("  k={k}: {}", if *eq { "equal" } else { "strictly larger" }))?;
                }
            }
        }
        Command::Pencil { kind, pretty } => {
            let p = build_pencil(&PencilKind::parse(&kind)?)?;
            if pretty {
                ctx.line(p.pretty().trim_end())?;
            } else {
                ctx.value(&p.to_json())?;
            }
        }
        Command::Psd { matrix } => {
            let m = read_matrix(&matrix)?;
            let psd = is_psd(&m);
            let coeffs = shifted_char_poly(&m);
            if ctx.json {
                let c: Vec<String> = coeffs.iter().map(fmt_rat).collect();
                ctx.value(&json!({"psd": psd, "det_tI_plus_M": c}))?;
            } else {
                ctx.line(psd.to_string())?;
                let c: Vec<String> = coeffs.iter().map(|r| ctx.rat(r)).collect();
                ctx.line(format!("  det(tI + M) coefficients: [{}]", c.join(", ")))?;
            }
            return Ok(if psd { EXIT_PASS } else { EXIT_FAIL });
        }
        Command::Certify { which } => {
            let r = match which {
                Certificate::Quartic => verify_quartic(),
                Certificate::Decic => verify_decic(),
                Certificate::Sos4Rays => verify_sos4_extreme_rays(&default_sos4_samples())?,
            };
            if !ctx.json {
                if let Some(s) = r.witness.get("pairing").and_then(|v| v.as_str()) {
                    let v = parse_rat(s)?;
                    ctx.line(format!("<a, c> = {}", ctx.rat(&v)))?;
                }
            }
            return report(ctx, &r);
        }
        Command::VerifyAll => {
            let results = run_all();
            let all = results.iter().all(|r| r.passed);
            if ctx.json {
                let v: Vec<_> = results
                    .iter()
                    .map(|r| json!({"criterion": r.id, "name": r.name, "passed": r.passed, "details": r.details}))
                    .collect();
                ctx.value(&json!(v))?;
            } else {
                for r in &results {
                    ctx.line(r.line())?;
                    for d in &r.details {
                        ctx.line(format!("    {d}"))?;
                    }
                }
                let passed = results.iter().filter(|r| r.passed).count();
                ctx.line(format!("{passed}/{} criteria passed", results.len()))?;
            }
            return Ok(if all { EXIT_PASS } else { EXIT_FAIL });
        }
    }
    Ok(EXIT_PASS)
}
