//! `bisep`: check properties of extensions and bimodules, browse the
//! example catalog, search for counterexamples, and run the verification
//! suite.
//!
//! Exit codes: 0 success, 1 expectation or suite failure, 2 input error,
//! 3 budget exhausted under `--strict`.

use std::path::PathBuf;
use std::process::ExitCode;

use bisep::catalog::{self, check_entry};
use bisep::deciders::{
    check_bimodule, check_extension, parse_props, BimoduleContext, Config, ExtContext, PropertyReport, ReportOptions,
    BIMODULE_PROPERTIES, EXTENSION_PROPERTIES,
};
use bisep::io::{parse_field_name, Object};
use bisep::search::{search, Mode, SearchConfig};
use bisep::suite::{self, SuiteOptions};
use bisep::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bisep", version, about = "Separability, splitting and Frobenius deciders for finite-dimensional extensions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// enumeration budget for searches inside deciders
    #[arg(long, env = "BISEP_BUDGET", default_value_t = bisep::deciders::DEFAULT_BUDGET)]
    budget: u64,
    /// worker threads (0 = all cores, 1 = serial)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// omit timings so output is byte-for-byte reproducible
    #[arg(long)]
    no_timing: bool,
    /// exit 3 if any verdict is unknown because of the budget
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide properties of an object from a file or the catalog.
    Check {
        #[arg(long, conflicts_with = "catalog", required_unless_present = "catalog")]
        input: Option<PathBuf>,
        #[arg(long)]
        catalog: Option<String>,
        /// comma-separated property names, or `all`
        #[arg(long, default_value = "all")]
        props: String,
        #[arg(long)]
        witnesses: bool,
        #[command(flatten)]
        common: Common,
    },
    /// List catalog entries or print one as JSON.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Search small extensions for filter-pass / expectation-fail instances.
    Search {
        #[arg(long, default_value = "F2")]
        field: String,
        #[arg(long, default_value_t = 4)]
        max_dim_r: usize,
        /// defaults to --max-dim-r
        #[arg(long)]
        max_dim_s: Option<usize>,
        /// enumerate, random or trivial_ext
        #[arg(long, default_value = "enumerate")]
        mode: String,
        /// comma-separated conjunction of properties
        #[arg(long, default_value = "biseparable")]
        filter: String,
        #[arg(long, default_value = "frobenius")]
        expect: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// random algebras added to the builtin list
        #[arg(long, default_value_t = 1000)]
        random: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run the full verification suite and print one row per claim.
    VerifyPaper {
        /// machine-readable output (same as --format json)
        #[arg(long)]
        json: bool,
        /// comma-separated criterion numbers and/or `catalog`
        #[arg(long)]
        only: Option<String>,
        /// substitute a catalog entry's object: NAME=FILE
        #[arg(long = "replace", value_name = "NAME=FILE")]
        replace: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    Emit {
        name: String,
    },
}

fn fail_input(e: &Error) -> ExitCode {
    let kind = format!("{e:?}");
    let kind = kind.split(['(', ' ']).next().unwrap_or("Error");
    eprintln!("{}", json!({ "error": kind, "message": e.to_string() }));
    ExitCode::from(2)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn print_report_text(r: &PropertyReport) {
    println!("{}", r.subject);
    for (name, e) in &r.properties {
        let extra = match (&e.count, &e.reason) {
            (Some(c), _) => format!(" ({c})"),
            (None, Some(reason)) => format!(" — {reason}"),
            _ => String::new(),
        };
        println!("  {name:<28} {}{extra}", e.verdict.as_str());
    }
    for p in &r.not_applicable {
        println!("  {p:<28} n/a");
    }
    for v in &r.implication_violations {
        println!("  VIOLATION: {v}");
    }
}

fn run_check(input: Option<PathBuf>, catalog_spec: Option<String>, props: &str, witnesses: bool, c: &Common) -> Result<ExitCode, Error> {
    let (subject, object, entry) = match (input, catalog_spec) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), Object::from_str(&text)?, None)
        }
        (None, Some(spec)) => {
            let e = catalog::build(&spec)?;
            (e.name.clone(), e.object.clone(), Some(e))
        }
        (None, None) => return Err(Error::Parse("need --input or --catalog".into())),
    };
    let cfg = Config { budget: c.budget };
    let opts = ReportOptions { witnesses, timing: !c.no_timing, parallel: c.jobs != 1 };
    let report = match &object {
        Object::Extension(ext) => {
            let ps = parse_props(props, EXTENSION_PROPERTIES)?;
            check_extension(&subject, &ExtContext::new(ext.clone(), cfg), &ps, opts)?
        }
        Object::Bimodule(b) => {
            let ps = parse_props(props, BIMODULE_PROPERTIES)?;
            check_bimodule(&subject, &BimoduleContext::new(b.clone(), cfg), &ps, opts)?
        }
    };
    // expectations of a catalog entry, restricted to the requested properties
    let mismatches: Vec<String> = entry
        .map(|e| {
            let (_, all) = check_entry(&e, cfg, ReportOptions { witnesses: false, timing: false, parallel: opts.parallel })?;
            // an unknown verdict is a budget matter, reported through --strict
            Ok::<_, Error>(
                all.into_iter()
                    .filter(|m| report.properties.contains_key(&m.property) && m.actual != json!("unknown"))
                    .map(|m| format!("{}: expected {}, got {}", m.property, json!(m.expected), m.actual))
                    .collect(),
            )
        })
        .transpose()?
        .unwrap_or_default();
    match c.format {
        Format::Json => {
            let mut v = report.to_json();
            if !mismatches.is_empty() {
                v["expectation_mismatches"] = json!(mismatches);
            }
            print_json(&v);
        }
        Format::Text => {
            print_report_text(&report);
            for m in &mismatches {
                println!("  MISMATCH: {m}");
            }
        }
    }
    Ok(if !report.implication_violations.is_empty() || !mismatches.is_empty() {
        ExitCode::from(1)
    } else if c.strict && report.any_unknown() {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

#[allow(clippy::too_many_arguments)]
fn run_search(
    field: &str,
    max_dim_r: usize,
    max_dim_s: Option<usize>,
    mode: &str,
    filter: &str,
    expect: &str,
    seed: u64,
    random: usize,
    c: &Common,
) -> Result<ExitCode, Error> {
    let mut cfg = SearchConfig::new(parse_field_name(field)?);
    cfg.max_dim_r = max_dim_r;
    cfg.max_dim_s = max_dim_s.unwrap_or(max_dim_r);
    cfg.mode = mode.parse::<Mode>()?;
    cfg.filter = filter.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    cfg.expect = expect.trim().to_string();
    cfg.seed = seed;
    cfg.budget = c.budget;
    cfg.jobs = c.jobs;
    cfg.random_algebras = random;
    cfg.timing = !c.no_timing;
    let r = search(&cfg)?;
    match c.format {
        Format::Json => print_json(&serde_json::to_value(&r).expect("json")),
        Format::Text => {
            println!("field {}  dim R <= {}  dim S <= {}  mode {:?}  seed {}", r.field, r.max_dim_r, r.max_dim_s, r.mode, r.seed);
            println!("algebras {}  (random tables accepted {}/{})", r.algebras, r.random_tables_accepted, r.random_tables_tried);
            println!("candidates {}  filter hits {}  expectation held {}", r.candidates, r.filter_hits, r.expectation_held);
            println!("violations {}  unknowns {}", r.violations.len(), r.unknowns.len());
            for v in &r.violations {
                println!("VIOLATION {} ({})", v["key"], v["origin"]);
                println!("{}", serde_json::to_string(&v["instance"]).expect("json"));
            }
            for cav in &r.caveats {
                println!("note: {cav}");
            }
            if let Some(ms) = r.wall_ms {
                println!("wall {ms} ms");
            }
        }
    }
    Ok(if !r.violations.is_empty() {
        ExitCode::from(1)
    } else if c.strict && !r.unknowns.is_empty() {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn run_verify(json_flag: bool, only: Option<String>, replace: &[String], format: Format) -> Result<ExitCode, Error> {
    let mut opts = SuiteOptions::default();
    if let Some(o) = only {
        opts.only = Some(o.split(',').map(|s| s.trim().to_string()).collect());
    }
    for r in replace {
        let (name, path) = r.split_once('=').ok_or_else(|| Error::BadParams(format!("--replace expects NAME=FILE, got `{r}`")))?;
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        opts.replacements.insert(name.to_string(), Object::from_str(&text)?);
    }
    let rows = suite::run(&opts)?;
    if json_flag || format == Format::Json {
        print_json(&suite::rows_json(&rows));
    } else {
        print!("{}", suite::render_table(&rows));
    }
    Ok(if rows.iter().all(|r| r.pass) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Check { input, catalog, props, witnesses, common } => run_check(input, catalog, &props, witnesses, &common),
        Cmd::Catalog { cmd: CatalogCmd::List { format } } => {
            let entries = catalog::list();
            match format {
                Format::Json => print_json(&Value::Array(entries.iter().map(|e| e.summary_json()).collect())),
                Format::Text => {
                    for e in &entries {
                        println!("{:<45} {}", e.name, e.anchor);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Catalog { cmd: CatalogCmd::Emit { name } } => catalog::build(&name).map(|e| {
            print_json(&e.object.to_json());
            ExitCode::SUCCESS
        }),
        Cmd::Search { field, max_dim_r, max_dim_s, mode, filter, expect, seed, random, common } => {
            run_search(&field, max_dim_r, max_dim_s, &mode, &filter, &expect, seed, random, &common)
        }
        Cmd::VerifyPaper { json, only, replace, format } => run_verify(json, only, &replace, format),
    };
    res.unwrap_or_else(|e| fail_input(&e))
}
