//! Command-line front end: solve Thom polynomials, verify the published
//! tables, run the enumerative pipelines, and manage registry files.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use thom::enumerative::{ci_form, evaluate_formula, locus_degree, ordinary_form, Pipeline};
use thom::registry::{builtin_registry, Registry};
use thom::scalar::{self, Scalar};
use thom::solver::solve_tp;
use thom::text::render_latex;
use thom::verify::run_tables;
use thom::{Error, Result};

#[derive(Parser)]
#[command(
    name = "thom",
    version,
    about = "Exact Thom polynomial calculator with enumerative pipelines for projective surfaces and 3-folds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the Thom polynomial of a singularity type by the restriction method
    Solve {
        /// Source,target dimensions, e.g. 2,3
        #[arg(long)]
        pair: String,
        /// Type name (aliases accepted, e.g. S1 = B1 = H1)
        #[arg(long = "type")]
        type_name: String,
        /// `auto` for the default rule, or a comma-separated list of types
        #[arg(long, default_value = "auto")]
        constraints: String,
        /// text | json | latex
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Reproduce the published tables and print one PASS/FAIL line per row
    Verify {
        /// 4..11 or `all`
        #[arg(long, default_value = "all")]
        tables: String,
    },
    /// Evaluate an enumerative pipeline for a singularity type
    Enumerate {
        /// p3-surface | p4-surface | p4-primal
        #[arg(long)]
        pipeline: String,
        #[arg(long = "type")]
        type_name: String,
        /// Numeric characters, e.g. d=4,eps0=0,C=0,T=0
        #[arg(long)]
        chars: Option<String>,
        /// Complete-intersection degree (with --d2)
        #[arg(long)]
        d1: Option<i64>,
        #[arg(long)]
        d2: Option<i64>,
        /// Hypersurface degree for the primal pipeline
        #[arg(long)]
        d: Option<i64>,
        /// text | json | latex
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Dump, load, merge, and validate registry files
    Registry {
        /// Print the effective registry as JSON
        #[arg(long)]
        dump: bool,
        /// Merge a registry file over the built-in one
        #[arg(long)]
        load: Option<PathBuf>,
        /// Run the symbolic validator
        #[arg(long)]
        validate: bool,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::UnknownType { .. } | Error::UnknownPipeline(_) => 3,
        Error::ModulusDirection(_)
        | Error::NotSolvable(_)
        | Error::InconsistentSystem { .. }
        | Error::Underdetermined { .. }
        | Error::NonIntegralSolution(_) => 2,
        Error::MalformedChars(_) | Error::Validation(_) | Error::Parse(_) | Error::Json(_) => 4,
        _ => 1,
    }
}

/// Built-in registry, with the file named by THOM_REGISTRY merged over it.
fn effective_registry() -> Result<Registry> {
    let base = builtin_registry();
    match std::env::var_os("THOM_REGISTRY") {
        Some(path) => base.merge_from_file(std::path::Path::new(&path)),
        None => Ok(base),
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() == 2 {
        if let (Ok(m), Ok(n)) = (parts[0].trim().parse(), parts[1].trim().parse()) {
            return Ok((m, n));
        }
    }
    Err(Error::MalformedChars(format!(
        "bad --pair `{s}`; expected m,n"
    )))
}

fn parse_char_assignments(s: &str) -> Result<BTreeMap<String, Scalar>> {
    let mut out = BTreeMap::new();
    for item in s.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| Error::MalformedChars(format!("bad character `{item}`")))?;
        let value = scalar::parse(value.trim())
            .ok_or_else(|| Error::MalformedChars(format!("bad value in `{item}`")))?;
        out.insert(key.trim().to_string(), value);
    }
    if out.is_empty() {
        return Err(Error::MalformedChars("no characters given".into()));
    }
    Ok(out)
}

fn cmd_solve(pair: &str, type_name: &str, constraints: &str, format: &str) -> Result<u8> {
    let (m, n) = parse_pair(pair)?;
    let registry = effective_registry()?;
    let target = registry.lookup(m, n, type_name)?.clone();
    let explicit: Option<Vec<String>> = match constraints {
        "auto" => None,
        list => Some(list.split(',').map(|s| s.trim().to_string()).collect()),
    };
    let (tp, report) = solve_tp(&registry, &target, explicit.as_deref())?;
    match format {
        "json" => println!("{}", serde_json::to_string_pretty(&report)?),
        "latex" => println!("{}", render_latex(&tp)),
        _ => {
            println!("Tp({}) over pair ({m},{n}):", report.name);
            println!("  {}", report.tp);
            println!(
                "system: {} equations, rank {}/{} unknowns, back substitution verified",
                report.equations.len(),
                report.rank,
                report.unknowns
            );
            match report.golden_match {
                Some(true) => println!("golden comparison: PASS"),
                Some(false) => println!("golden comparison: FAIL"),
                None => println!("golden comparison: no published polynomial on record"),
            }
        }
    }
    Ok(if report.golden_match == Some(false) { 1 } else { 0 })
}

fn cmd_verify(tables: &str) -> Result<u8> {
    let registry = effective_registry()?;
    let rows = run_tables(&registry, tables)?;
    let mut failed = 0usize;
    for row in &rows {
        let verdict = if row.pass { "PASS" } else { "FAIL" };
        println!(
            "{verdict} table {:>2} {:28} {}",
            row.table, row.name, row.detail
        );
        if !row.pass {
            failed += 1;
        }
    }
    println!(
        "{} rows checked, {} passed, {} failed",
        rows.len(),
        rows.len() - failed,
        failed
    );
    Ok(if failed == 0 { 0 } else { 1 })
}

fn cmd_enumerate(
    pipeline: &str,
    type_name: &str,
    chars: Option<&str>,
    d1: Option<i64>,
    d2: Option<i64>,
    d: Option<i64>,
    format: &str,
) -> Result<u8> {
    let pipeline = Pipeline::parse(pipeline)?;
    let registry = effective_registry()?;
    let (poly, record) = locus_degree(&registry, pipeline, type_name)?;

    // Select the output form: xi characters by default, ordinary characters
    // when eps0/C/T values appear, complete-intersection degrees with
    // --d1/--d2, and the plain degree for the primal pipeline.
    let mut working = poly.clone();
    let mut values: BTreeMap<String, Scalar> = BTreeMap::new();
    if let (Some(a), Some(b)) = (d1, d2) {
        if pipeline != Pipeline::P4Surface {
            return Err(Error::MalformedChars(
                "--d1/--d2 specialize the p4-surface pipeline".into(),
            ));
        }
        working = ci_form(&poly)?;
        values.insert("d1".into(), scalar::int(a));
        values.insert("d2".into(), scalar::int(b));
    } else if let Some(deg) = d {
        if pipeline != Pipeline::P4Primal {
            return Err(Error::MalformedChars(
                "--d specializes the primal pipeline".into(),
            ));
        }
        values.insert("d".into(), scalar::int(deg));
    } else if let Some(assignments) = chars {
        values = parse_char_assignments(assignments)?;
        let ordinary_keys = ["eps0", "C", "T"];
        if values.keys().any(|k| ordinary_keys.contains(&k.as_str())) {
            if pipeline != Pipeline::P3Surface {
                return Err(Error::MalformedChars(
                    "ordinary characters eps0/C/T belong to the p3-surface pipeline".into(),
                ));
            }
            working = ordinary_form(&poly)?;
        }
    }

    let numeric = if values.is_empty() {
        None
    } else {
        Some(evaluate_formula(&working, &values)?)
    };

    match format {
        "json" => {
            #[derive(serde::Serialize)]
            struct Output<'a> {
                #[serde(flatten)]
                record: &'a thom::enumerative::FormulaRecord,
                specialized: String,
                value: Option<String>,
            }
            let out = Output {
                record: &record,
                specialized: thom::text::render_poly(&working),
                value: numeric.as_ref().map(scalar::render),
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        "latex" => println!("{}", render_latex(&working)),
        _ => {
            println!(
                "{} ({} via {}):",
                record.locus, record.type_name, record.pipeline
            );
            println!("  {}", thom::text::render_poly(&working));
            if let Some(v) = numeric {
                println!("  value = {}", scalar::render(&v));
            }
        }
    }
    Ok(0)
}

fn cmd_registry(dump: bool, load: Option<PathBuf>, validate: bool) -> Result<u8> {
    let mut registry = effective_registry()?;
    if let Some(path) = load {
        registry = registry.merge_from_file(&path)?;
        if !dump && !validate {
            println!("merged registry: {} types", registry.types().len());
        }
    }
    if validate {
        let diags = registry.validate();
        if !diags.is_empty() {
            return Err(Error::Validation(diags));
        }
        println!("registry valid: {} types", registry.types().len());
    }
    if dump {
        println!("{}", registry.to_json());
    }
    Ok(0)
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            pair,
            type_name,
            constraints,
            format,
        } => cmd_solve(&pair, &type_name, &constraints, &format),
        Command::Verify { tables } => cmd_verify(&tables),
        Command::Enumerate {
            pipeline,
            type_name,
            chars,
            d1,
            d2,
            d,
            format,
        } => cmd_enumerate(&pipeline, &type_name, chars.as_deref(), d1, d2, d, &format),
        Command::Registry {
            dump,
            load,
            validate,
        } => cmd_registry(dump, load, validate),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
