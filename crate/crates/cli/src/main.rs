use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gradpi_cli::{emit_report, parse_scenario, run_text, Context, Format, RunOptions, SHIPPED};
use gradpi_core::groups::catalog;
use gradpi_core::par::Mode;
use serde_json::json;

#[derive(Parser)]
#[command(name = "gradpi", version, about = "Verify group-graded algebra scenarios with exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json, global = true)]
    format: FormatArg,
    /// Cap on basis tuples evaluated by a codimension computation.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized sweeps.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check in a scenario and print the report.
    Run { file: PathBuf },
    /// Parse and build a scenario without running its checks.
    Validate { file: PathBuf },
    /// List built-in groups and shipped scenarios.
    Catalog,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

fn read(file: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(file).map_err(|e| {
        eprintln!("{}: {e}", file.display());
        ExitCode::from(2)
    })
}

fn options(cli: &Cli) -> RunOptions {
    let mut opts = RunOptions {
        seed: cli.seed,
        ..RunOptions::default()
    };
    if let Some(b) = cli.budget {
        opts.budget.max_tuples = b;
    }
    match cli.threads {
        Some(1) => opts.mode = Mode::Sequential,
        #[cfg(feature = "parallel")]
        Some(n) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("warning: {e}");
            }
        }
        _ => {}
    }
    opts
}

fn print_catalog(format: Format) {
    let groups = catalog();
    match format {
        Format::Json => {
            let doc = json!({
                "groups": groups.iter().map(|(name, g)| json!({
                    "name": name,
                    "order": g.order(),
                    "elements": g.labels(),
                })).collect::<Vec<_>>(),
                "scenarios": SHIPPED.iter().map(|(n, _)| n).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("catalog serializes"));
        }
        Format::Text => {
            println!("groups (use as `kind = catalog NAME`; elements are indexed from 0):");
            for (name, g) in &groups {
                let elems: Vec<String> = g.labels().iter().enumerate().map(|(i, l)| format!("{i}:{l}")).collect();
                println!("  {name:<9} order {:<3} {}", g.order(), elems.join(" "));
            }
            println!("shipped scenarios:");
            for (name, text) in SHIPPED {
                let checks = parse_scenario(text).map(|s| s.checks.len()).unwrap_or(0);
                println!("  {name:<11} {checks} checks");
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    match &cli.command {
        Command::Catalog => {
            print_catalog(format);
            ExitCode::SUCCESS
        }
        Command::Validate { file } => {
            let text = match read(file) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let result = parse_scenario(&text)
                .map_err(|e| e.to_string())
                .and_then(|sc| Context::build(&sc).map(|_| sc).map_err(|e| e.to_string()));
            match result {
                Ok(sc) => {
                    println!(
                        "{}: ok ({} groups, {} cocycles, {} algebras, {} checks)",
                        file.display(),
                        sc.groups.len(),
                        sc.cocycles.len(),
                        sc.algebras.len(),
                        sc.checks.len()
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    ExitCode::from(2)
                }
            }
        }
        Command::Run { file } => {
            let text = match read(file) {
                Ok(t) => t,
                Err(code) => return code,
            };
            let name = file.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            match run_text(&name, &text, &options(&cli)) {
                Ok(report) => {
                    print!("{}", emit_report(&report, format));
                    if report.success() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    ExitCode::from(2)
                }
            }
        }
    }
}
