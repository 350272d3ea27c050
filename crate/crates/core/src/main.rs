use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gamma_groups::brackets::{
    bracket_table, classify_component, classify_realization, verify_bracket_table,
};
use gamma_groups::catalog::{
    catalog_entries, catalog_get, catalog_validate, entry_assignment, enumerate_extensions,
    profile, sweep_signatures, GeneratorFile, Pool, ProfileOptions, SignatureSpec,
};
use gamma_groups::group::{is_isomorphic, DEFAULT_CAP};
use gamma_groups::report::{run_claims, Report};
use gamma_groups::{Error, MatrixGroup, Result};

#[derive(Parser)]
#[command(
    name = "gamma-groups",
    version,
    about = "Exact analysis of finite gamma-matrix groups"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Maximum closure size when generating groups from files.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Search pool: `dirac8`, `dirac4` or a generator file.
    #[arg(long, global = true, default_value = "dirac8")]
    pool: String,
    /// Record wall-clock timings (makes output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Profile a catalog group or a generator file.
    Analyze { input: String },
    /// Run the registry of checkable claims.
    VerifyPaper {
        /// Glob over claim ids, e.g. `pauli.*`.
        #[arg(long)]
        filter: Option<String>,
    },
    /// List subgroups of a given order.
    Subgroups {
        name: String,
        #[arg(long)]
        order: usize,
        /// Classify order-16 subgroups by realizable commutator tables.
        #[arg(long)]
        classify: bool,
    },
    /// Verify a commutator table on a catalog realization.
    Brackets {
        name: String,
        #[arg(long, value_parser = ["4", "6", "7", "9", "11"])]
        table: String,
    },
    /// Search the pool for groups with a given generator signature.
    Search {
        /// e.g. `+++-:anti`, `++-+:comm`, or `all`.
        #[arg(long)]
        signature: String,
    },
    /// Extend stable groups by a fifth anticommuting generator.
    Extensions {
        /// Base group name or `all`.
        #[arg(long)]
        base: String,
        #[arg(long, value_enum, default_value_t = Square::Both)]
        square: Square,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Names, aliases and dimensions.
    List,
    /// Check entries against their recorded data.
    Validate { name: Option<String> },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Square {
    Plus,
    Minus,
    Both,
}

const STABLE: [&str; 5] = ["D_I", "D_II", "D_III", "D_IV", "D_V"];

fn load_group(input: &str, cap: usize) -> Result<MatrixGroup> {
    match catalog_get(input) {
        Ok((g, _)) => Ok(g),
        Err(Error::UnknownName(_)) if Path::new(input).is_file() => {
            GeneratorFile::from_json(&std::fs::read_to_string(input)?)?.close(cap)
        }
        Err(e) => Err(e),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Build the report for one command and say whether it succeeded.
fn run(cli: &Cli, report: &mut Report) -> Result<bool> {
    match &cli.command {
        Command::Catalog {
            action: CatalogAction::List,
        } => {
            let list: Vec<Value> = catalog_entries()
                .iter()
                .map(|e| json!({"name": e.name, "aliases": e.aliases, "dimension": e.dimension}))
                .collect();
            report.result = Some(Value::Array(list));
            Ok(true)
        }
        Command::Catalog {
            action: CatalogAction::Validate { name },
        } => {
            let names: Vec<String> = match name {
                Some(n) => vec![n.clone()],
                None => catalog_entries().iter().map(|e| e.name.clone()).collect(),
            };
            let reports = names
                .iter()
                .map(|n| catalog_validate(n))
                .collect::<Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.pass);
            report.result = Some(to_value(&reports));
            Ok(ok)
        }
        Command::Analyze { input } => {
            let g = load_group(input, cli.cap)?;
            report.profile = Some(profile(&g, &ProfileOptions::default()));
            if let Ok((_, entry)) = catalog_get(input) {
                let tables: Vec<String> = classify_realization(&entry_assignment(entry)?)
                    .iter()
                    .map(|c| c.table_id().to_string())
                    .collect();
                report.result =
                    Some(json!({"catalog_name": entry.name, "realized_tables": tables}));
            }
            Ok(true)
        }
        Command::VerifyPaper { filter } => {
            report.claims = run_claims(filter.as_deref(), cli.timings)?;
            Ok(report.all_pass())
        }
        Command::Subgroups {
            name,
            order,
            classify,
        } => {
            let g = load_group(name, cli.cap)?;
            let subs = g.subgroups_of_order(*order)?;
            let groups: Vec<MatrixGroup> = subs.iter().map(|s| s.to_group()).collect();
            let mut reps: Vec<usize> = Vec::new();
            let mut class_of = Vec::with_capacity(groups.len());
            for (i, h) in groups.iter().enumerate() {
                match reps
                    .iter()
                    .position(|&r| is_isomorphic(&groups[r], h).is_some())
                {
                    Some(c) => class_of.push(c),
                    None => {
                        class_of.push(reps.len());
                        reps.push(i);
                    }
                }
            }
            let list: Vec<Value> = subs
                .iter()
                .zip(&class_of)
                .map(|(s, c)| {
                    let mut v = json!({"members": s.indices(), "iso_class": c});
                    if *classify {
                        v["components"] = to_value(&classify_component(s));
                    }
                    v
                })
                .collect();
            report.result = Some(
                json!({"order": order, "count": subs.len(), "iso_classes": reps.len(), "subgroups": list}),
            );
            Ok(true)
        }
        Command::Brackets { name, table } => {
            let (_, entry) = catalog_get(name)?;
            let r = verify_bracket_table(&entry_assignment(entry)?, bracket_table(table)?)?;
            let ok = r.pass;
            report.result = Some(to_value(&r));
            Ok(ok)
        }
        Command::Search { signature } => {
            let specs = if signature == "all" {
                SignatureSpec::all()
            } else {
                vec![signature.parse()?]
            };
            let pool = Pool::load(&cli.pool)?;
            let start = Instant::now();
            let sweep = sweep_signatures(&specs, &pool)?;
            if cli.timings {
                report
                    .timings
                    .insert("search".into(), start.elapsed().as_millis() as u64);
            }
            report.result = Some(to_value(&sweep));
            Ok(true)
        }
        Command::Extensions { base, square } => {
            let bases: Vec<&str> = if base == "all" {
                STABLE.to_vec()
            } else {
                vec![base.as_str()]
            };
            let squares: Vec<i8> = match square {
                Square::Plus => vec![1],
                Square::Minus => vec![-1],
                Square::Both => vec![1, -1],
            };
            let pool = Pool::load(&cli.pool)?;
            let start = Instant::now();
            let mut out = Vec::new();
            for b in &bases {
                for &s in &squares {
                    out.push(json!({"base": b, "square": s, "classes": to_value(&enumerate_extensions(b, s, &pool)?)}));
                }
            }
            if cli.timings {
                report
                    .timings
                    .insert("extensions".into(), start.elapsed().as_millis() as u64);
            }
            report.result = Some(Value::Array(out));
            Ok(true)
        }
    }
}

fn input_label(cmd: &Command) -> String {
    match cmd {
        Command::Catalog {
            action: CatalogAction::List,
        } => "catalog list".into(),
        Command::Catalog {
            action: CatalogAction::Validate { name },
        } => {
            format!("catalog validate {}", name.as_deref().unwrap_or("all"))
        }
        Command::Analyze { input } => input.clone(),
        Command::VerifyPaper { filter } => {
            format!("verify-paper {}", filter.as_deref().unwrap_or("*"))
        }
        Command::Subgroups { name, order, .. } => format!("subgroups {name} order {order}"),
        Command::Brackets { name, table } => format!("brackets {name} table {table}"),
        Command::Search { signature } => format!("search {signature}"),
        Command::Extensions { base, .. } => format!("extensions {base}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut report = Report::new(input_label(&cli.command));
    match run(&cli, &mut report) {
        Ok(ok) => {
            match cli.format {
                Format::Json => print!("{}", report.to_json()),
                Format::Markdown => print!("{}", report.to_markdown()),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
