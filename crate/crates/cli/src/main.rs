//! `qinv`: exact quantum invariants of surgery presentations from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qinv_core::cyclotomic::RootSystem;
use qinv_core::io::{load_presentation, ohtsuki_to_json, presentation_to_json, series_to_json, table_to_json};
use qinv_core::oracle::{tau, tau_prime, InvariantFlavor};
use qinv_core::qjones::{CycCoeffTable, KnownKnot};
use qinv_core::ring::text::format_laurent;
use qinv_core::surgery::{builtin, StructureKind, StructureVector, SurgeryPresentation, BUILTIN_NAMES};
use qinv_core::unified::{default_truncation, evaluate, ohtsuki, unified, unified_coho, unified_spin, HabiroSeries};
use qinv_core::verify::{run_suite, Limits};
use qinv_core::{Error, Result};

#[derive(Parser)]
#[command(name = "qinv", version, about = "Exact WRT and unified invariants of surgery presentations")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// State-sum invariant at one root of unity
    Tau {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        order: u64,
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        /// Structure vector for spin or coho, e.g. `0,1`
        #[arg(long)]
        sector: Option<String>,
        /// Divide by the ℝP³ factors
        #[arg(long)]
        prime: bool,
    },
    /// Truncated unified series
    Unified {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        truncation: u32,
        #[command(flatten)]
        refine: Refine,
    },
    /// Evaluate the unified series at a root of unity
    Evaluate {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        order: u64,
        /// Defaults to 2r + 2
        #[arg(long)]
        truncation: Option<u32>,
        #[command(flatten)]
        refine: Refine,
    },
    /// Ohtsuki series in q - 1
    Ohtsuki {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        degree: usize,
    },
    /// Run verification suites
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_order: Option<u64>,
        #[arg(long)]
        max_k: Option<u32>,
        /// Machine-readable report
        #[arg(long)]
        json: bool,
    },
    /// Builtin knots and presentations
    Catalog {
        /// Number of cyclotomic coefficients to list per knot
        #[arg(long, default_value_t = 4)]
        terms: u32,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    presentation: Option<PathBuf>,
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args)]
struct Refine {
    #[arg(long, value_enum, requires = "sector")]
    refine: Option<RefineArg>,
    #[arg(long, requires = "refine")]
    sector: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Su2,
    So3,
    Spin,
    Coho,
}

impl FlavorArg {
    fn flavor(self) -> InvariantFlavor {
        match self {
            FlavorArg::Su2 => InvariantFlavor::Su2,
            FlavorArg::So3 => InvariantFlavor::So3,
            FlavorArg::Spin => InvariantFlavor::Spin,
            FlavorArg::Coho => InvariantFlavor::Coho,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RefineArg {
    Spin,
    Coho,
}

fn load(src: &Source) -> Result<SurgeryPresentation> {
    match (&src.presentation, &src.builtin) {
        (Some(path), _) => load_presentation(path),
        (None, Some(name)) => builtin(name).ok_or_else(|| {
            Error::InvalidArgument(format!("unknown builtin \"{name}\"; try one of {}", BUILTIN_NAMES.join(", ")))
        }),
        (None, None) => unreachable!("clap enforces the source group"),
    }
}

fn parse_sector(p: &SurgeryPresentation, bits: &str, kind: StructureKind) -> Result<StructureVector> {
    let c = bits
        .split(',')
        .map(|b| match b.trim() {
            "0" => Ok(0),
            "1" => Ok(1),
            other => Err(Error::InvalidArgument(format!("sector entries must be 0 or 1, got \"{other}\""))),
        })
        .collect::<Result<Vec<u8>>>()?;
    let v = StructureVector { c, kind };
    if !v.satisfies(p) {
        return Err(Error::InvalidArgument(format!("({bits}) is not a {kind:?} vector for {p}")));
    }
    Ok(v)
}

fn warn_size(p: &SurgeryPresentation, r: u64) {
    let states = (2.0 * r as f64).powi(p.arity() as i32);
    if states > 1e6 {
        eprintln!("warning: the state sum visits (2r)^m = {states:.0} colourings");
    }
}

fn series(p: &SurgeryPresentation, k: u32, refine: &Refine) -> Result<HabiroSeries> {
    match (refine.refine, &refine.sector) {
        (Some(RefineArg::Spin), Some(s)) => unified_spin(p, &parse_sector(p, s, StructureKind::Spin)?, k),
        (Some(RefineArg::Coho), Some(s)) => unified_coho(p, &parse_sector(p, s, StructureKind::Coho)?, k),
        _ => unified(p, k),
    }
}

fn catalog(terms: u32) -> Value {
    let knots: Vec<Value> = KnownKnot::ALL
        .iter()
        .map(|&k| {
            let t = CycCoeffTable::builtin(k);
            let coeffs: Vec<String> = if k.arity() == 1 {
                (0..terms).map(|j| format_laurent(&k.habiro_coefficient(j))).collect()
            } else {
                Vec::new()
            };
            json!({ "name": k.name(), "arity": k.arity(), "table": table_to_json(&t), "coefficients": coeffs })
        })
        .collect();
    let presentations: Vec<Value> = BUILTIN_NAMES
        .iter()
        .map(|n| {
            let p = builtin(n).expect("listed builtin");
            json!({
                "name": n,
                "framings": p.framing_values(),
                "h1_rank": p.h1_rank(),
                "presentation": presentation_to_json(&p),
            })
        })
        .collect();
    json!({ "knots": knots, "presentations": presentations })
}

/// Output and exit status of a successful dispatch.
struct Outcome {
    out: String,
    ok: bool,
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn dispatch(verb: Verb) -> Result<Outcome> {
    let done = |v: Value| Ok(Outcome { out: pretty(&v), ok: true });
    match verb {
        Verb::Tau { src, order, flavor, sector, prime } => {
            let p = load(&src)?;
            warn_size(&p, order);
            let fl = flavor.flavor();
            let sv = match (fl, &sector) {
                (InvariantFlavor::Spin, Some(s)) => Some(parse_sector(&p, s, StructureKind::Spin)?),
                (InvariantFlavor::Coho, Some(s)) => Some(parse_sector(&p, s, StructureKind::Coho)?),
                (InvariantFlavor::Spin | InvariantFlavor::Coho, None) => {
                    return Err(Error::InvalidArgument(format!("flavor {} needs --sector", fl.name())))
                }
                (_, Some(_)) => return Err(Error::InvalidArgument(format!("flavor {} takes no --sector", fl.name()))),
                (_, None) => None,
            };
            let rs = RootSystem::new(order);
            let t = if prime { tau_prime(&p, &rs, fl, sv.as_ref())? } else { tau(&p, &rs, fl, sv.as_ref())? };
            done(t.to_json())
        }
        Verb::Unified { src, truncation, refine } => done(series_to_json(&series(&load(&src)?, truncation, &refine)?)),
        Verb::Evaluate { src, order, truncation, refine } => {
            let p = load(&src)?;
            let k = truncation.unwrap_or_else(|| default_truncation(order));
            done(evaluate(&series(&p, k, &refine)?, &RootSystem::new(order))?.to_json())
        }
        Verb::Ohtsuki { src, degree } => {
            let s = unified(&load(&src)?, degree as u32 + 1)?;
            done(ohtsuki_to_json(&ohtsuki(&s, degree)?))
        }
        Verb::Verify { suite, max_order, max_k, json } => {
            let checks = run_suite(&suite, &Limits { max_order, max_k })?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            let out = if json {
                let list: Vec<Value> =
                    checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
                pretty(&json!({ "checks": list, "passed": checks.len() - failed, "failed": failed }))
            } else {
                let mut lines: Vec<String> = checks
                    .iter()
                    .map(|c| format!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail))
                    .collect();
                lines.push(format!("{} passed, {failed} failed", checks.len() - failed));
                lines.join("\n")
            };
            Ok(Outcome { out, ok: failed == 0 })
        }
        Verb::Catalog { terms } => done(catalog(terms)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.verb) {
        Ok(o) => {
            println!("{}", o.out);
            if o.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            println!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(1)
        }
    }
}
