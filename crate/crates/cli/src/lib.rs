//! The `ptl` command-line front end.

pub mod commands;
pub mod error;
pub mod expr;
pub mod render;
pub mod spec;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "ptl", version, about = "p-torsion invariants of curves over finite fields")]
pub struct Cli {
    /// Emit JSON instead of a text table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel scans (default: available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Report timing_ms as null so output is reproducible byte for byte.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Genus, a-number, p-rank, L-polynomial and Newton polygon of a curve.
    Invariants { spec: String },
    /// Point counts and L-polynomial of a curve.
    Zeta { spec: String },
    /// Newton polygon strata and Ekedahl-Oort tables.
    Strata(StrataArgs),
    /// A single Ekedahl-Oort type, or all of a given genus.
    Eo(EoArgs),
    /// Orbits, mu-ordinary and basic polygons for a cyclic cover signature.
    Kottwitz(KottwitzArgs),
    /// Monodromy data, signatures and special-family detection.
    Special(SpecialArgs),
    /// Newton polygon of a CM Jacobian with three branch points.
    Cm(CmArgs),
    /// Census of a one-parameter hyperelliptic family in `u`.
    Scan {
        #[arg(long)]
        family: String,
    },
    /// Supersingular elliptic curves and the mass formula.
    Mass {
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        p_max: Option<u64>,
    },
    /// Base-p run decomposition of delta and the genus identity.
    Ckp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        delta: u64,
    },
}

#[derive(Debug, Args)]
pub struct StrataArgs {
    /// A symmetric Newton polygon, e.g. "ord+(1/3,2/3)".
    #[arg(long)]
    pub np: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub add_ordinary: usize,
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub compare: Option<Vec<String>>,
    /// All symmetric Newton polygons of genus G.
    #[arg(long, value_name = "G")]
    pub list: Option<usize>,
    #[arg(long, value_name = "G")]
    pub eo_table: Option<usize>,
    #[arg(long, value_name = "G")]
    pub ss_dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EoArgs {
    /// Comma-separated final type, e.g. 0,1,1.
    #[arg(long)]
    pub nu: Option<String>,
    #[arg(long)]
    pub genus: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub add_ordinary: usize,
}

#[derive(Debug, Args)]
pub struct KottwitzArgs {
    #[arg(long)]
    pub m: u32,
    /// Comma-separated f_1,...,f_{m-1}.
    #[arg(long)]
    pub sig: String,
    #[arg(long)]
    pub p: u64,
    /// Also list every admissible polygon.
    #[arg(long)]
    pub admissible: bool,
}

#[derive(Debug, Args)]
pub struct SpecialArgs {
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub m_max: Option<u32>,
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CmArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub p: u64,
    /// Count points on y^m = x^{a_1}(x-1)^{a_2} and compare.
    #[arg(long)]
    pub verify: bool,
}

/// Result of one invocation: what goes to stdout, what goes to stderr, exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn int_list(text: &str) -> Result<Vec<u32>, CliError> {
    Ok(spec::parse_int_list(text)?)
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Invariants { .. } => "invariants",
            Command::Zeta { .. } => "zeta",
            Command::Strata(_) => "strata",
            Command::Eo(_) => "eo",
            Command::Kottwitz(_) => "kottwitz",
            Command::Special(_) => "special",
            Command::Cm(_) => "cm",
            Command::Scan { .. } => "scan",
            Command::Mass { .. } => "mass",
            Command::Ckp { .. } => "ckp",
        }
    }

    fn input(&self) -> Value {
        match self {
            Command::Invariants { spec } | Command::Zeta { spec } => json!({ "spec": spec }),
            Command::Strata(a) => json!({
                "np": a.np, "add_ordinary": a.add_ordinary, "compare": a.compare,
                "list": a.list, "eo_table": a.eo_table, "ss_dim": a.ss_dim,
            }),
            Command::Eo(a) => json!({ "nu": a.nu, "genus": a.genus, "add_ordinary": a.add_ordinary }),
            Command::Kottwitz(a) => json!({ "m": a.m, "sig": a.sig, "p": a.p, "admissible": a.admissible }),
            Command::Special(a) => json!({ "m": a.m, "a": a.a, "m_max": a.m_max, "n_max": a.n_max }),
            Command::Cm(a) => json!({ "m": a.m, "a": a.a, "p": a.p, "verify": a.verify }),
            Command::Scan { family } => json!({ "family": family }),
            Command::Mass { p, p_max } => json!({ "p": p, "p_max": p_max }),
            Command::Ckp { p, delta } => json!({ "p": p, "delta": delta }),
        }
    }

    fn execute(&self) -> Result<Value, CliError> {
        match self {
            Command::Invariants { spec } => commands::invariants(spec),
            Command::Zeta { spec } => commands::zeta(spec),
            Command::Strata(a) => {
                let compare = a.compare.as_ref().map(|c| (c[0].as_str(), c[1].as_str()));
                commands::strata(&commands::StrataQuery {
                    np: a.np.as_deref(),
                    add_ordinary: a.add_ordinary,
                    compare,
                    list: a.list,
                    eo_table: a.eo_table,
                    ss_dim: a.ss_dim,
                })
            }
            Command::Eo(a) => {
                let nu = a.nu.as_deref().map(int_list).transpose()?;
                commands::eo(nu.as_deref(), a.genus, a.add_ordinary)
            }
            Command::Kottwitz(a) => commands::kottwitz(a.m, &int_list(&a.sig)?, a.p, a.admissible),
            Command::Special(a) => {
                let datum = match (a.m, &a.a) {
                    (Some(m), Some(list)) => Some((m, int_list(list)?)),
                    (None, None) => None,
                    _ => return Err(CliError::Invalid("--m and --a go together".into())),
                };
                let range = match (a.m_max, a.n_max) {
                    (Some(m), Some(n)) => Some((m, n)),
                    (None, None) => None,
                    _ => return Err(CliError::Invalid("--m-max and --n-max go together".into())),
                };
                commands::special(datum.as_ref().map(|(m, a)| (*m, a.as_slice())), range)
            }
            Command::Cm(a) => commands::cm(a.m, &int_list(&a.a)?, a.p, a.verify),
            Command::Scan { family } => commands::scan(family),
            Command::Mass { p, p_max } => commands::mass(*p, *p_max),
            Command::Ckp { p, delta } => commands::ckp(*p, *delta),
        }
    }
}

const TABLE_COLUMNS: &[(&str, &[&str])] = &[
    ("types", commands::EO_COLUMNS),
    ("polygons", commands::POLYGON_COLUMNS),
    ("admissible", commands::POLYGON_COLUMNS),
    ("data", commands::DATUM_COLUMNS),
    ("primes", commands::MASS_COLUMNS),
    ("orbits", &["elements", "size", "dual", "self_dual"]),
    ("runs", &["s", "r"]),
];

fn configure(cli: &Cli) -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("PTL_BUDGET") {
        let limit: u64 = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("PTL_BUDGET must be a nonnegative integer, found {raw:?}")))?;
        ptl_core::budget::set_enumeration_limit(limit);
    }
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Invalid("--threads must be positive".into()));
        }
        // a second call in the same process fails harmlessly; the pool is already set
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Runs a parsed command line and renders its output.
pub fn run(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let result = configure(cli).and_then(|()| cli.command.execute());
    let elapsed = (!cli.no_timing).then(|| start.elapsed().as_millis() as u64);
    match result {
        Ok(value) => {
            let stdout = if cli.json {
                let doc = json!({
                    "command": cli.command.name(),
                    "input": cli.command.input(),
                    "result": value,
                    "timing_ms": elapsed,
                });
                format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
            } else {
                render::render(&value, TABLE_COLUMNS)
            };
            Outcome { stdout, stderr: String::new(), code: 0 }
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                let doc = json!({ "error": e.kind(), "detail": e.to_string() });
                let stdout = format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"));
                Outcome { stdout, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code }
            }
        }
    }
}
