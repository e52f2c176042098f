use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pblock::exec::{init_thread_pool_from_env, Exec};
use pblock::harness::{
    run_identity_suite, run_single_check, run_theorem_a_campaign, run_theorem_b_campaign,
    CampaignReport, Catalog, LoadedEntry,
};
use pblock::linalg::default_precision;
use pblock::Error;

const INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "pblock",
    version,
    about = "Checks unit and torsion statements in (Z/p^k)[G] over a group catalog"
)]
struct Cli {
    /// Catalog file (JSON array of entries); the built-in catalog otherwise.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List or validate catalog entries.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run one checker.
    Check {
        checker: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a campaign.
    Campaign {
        kind: CampaignKind,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print a saved report and exit with its verdict code.
    Report {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Validate,
}

#[derive(Clone, Copy, ValueEnum)]
enum CampaignKind {
    Identity,
    TheoremA,
    TheoremB,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    group: String,
    #[arg(short)]
    p: Option<u64>,
    /// Precision exponent; 8 for p = 2 and 5 for odd p by default.
    #[arg(short)]
    k: Option<u32>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_catalog(path: &Option<PathBuf>) -> pblock::Result<Catalog> {
    match path {
        Some(p) => Catalog::from_path(p),
        None => Ok(Catalog::embedded()),
    }
}

fn resolve(catalog: &Catalog, run: &RunArgs) -> pblock::Result<(LoadedEntry, u32)> {
    let entry = catalog.find(&run.group, run.p)?.load()?;
    let k = run.k.unwrap_or_else(|| default_precision(entry.p()));
    if k == 0 {
        return Err(Error::Input("precision must be positive".into()));
    }
    Ok((entry, k))
}

fn emit(report: &CampaignReport, run: &RunArgs) -> pblock::Result<u8> {
    if let Some(path) = &run.out {
        std::fs::write(path, report.to_json())?;
    }
    match run.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(report.verdict.exit_code() as u8)
}

fn execute(cli: Cli) -> pblock::Result<u8> {
    let exec = Exec::available();
    match cli.command {
        Command::Catalog { action } => {
            let catalog = load_catalog(&cli.catalog)?;
            match action {
                CatalogAction::List => {
                    for e in &catalog.entries {
                        println!(
                            "{:<10} p = {:<2} admissible = {:<5} |N| = {:<3} {}",
                            e.name, e.p, e.expected_admissible, e.expected_n_order, e.notes
                        );
                    }
                }
                CatalogAction::Validate => {
                    for l in catalog.validate()? {
                        println!(
                            "{:<10} p = {:<2} |G| = {:<3} |N| = {:<3} ok",
                            l.entry.name,
                            l.p(),
                            l.group.order(),
                            l.n.order()
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Check { checker, run } => {
            let catalog = load_catalog(&cli.catalog)?;
            let (entry, k) = resolve(&catalog, &run)?;
            let report = run_single_check(&checker, &entry, k, run.trials, run.seed, exec)?;
            emit(&report, &run)
        }
        Command::Campaign { kind, run } => {
            let catalog = load_catalog(&cli.catalog)?;
            let (entry, k) = resolve(&catalog, &run)?;
            let report = match kind {
                CampaignKind::Identity => {
                    run_identity_suite(&entry, k, run.trials, run.seed, exec)?
                }
                CampaignKind::TheoremA => {
                    run_theorem_a_campaign(&entry, k, run.trials, run.seed, exec)?
                }
                CampaignKind::TheoremB => {
                    run_theorem_b_campaign(&entry, k, run.trials, run.seed, exec)?
                }
            };
            emit(&report, &run)
        }
        Command::Report { file, format } => {
            let report: CampaignReport = serde_json::from_str(&std::fs::read_to_string(file)?)?;
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            Ok(report.verdict.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    init_thread_pool_from_env();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
