use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use johnson_core::braid::{kappa, parse_braid_word, psi, BraidJson, PureBraid};
use johnson_core::mcg::{EndoJson, FreeEndo};
use johnson_core::verify::{invariants_report, rank_table, run_suite, Budget, Params, Suite};
use johnson_core::Error;

const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "johnson", version, about = "Johnson-Morita invariants and their verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Invariants of a map or braid read from JSON.
    Invariants(InvariantsArgs),
    /// Rank table for the Lie and exterior lattices.
    Ranks(RanksArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 3)]
    genus: usize,
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    #[arg(long, default_value_t = 8)]
    cutoff: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 60)]
    samples: usize,
    #[arg(long)]
    json: bool,
    /// Raise the genus budget.
    #[arg(long)]
    budget_genus: Option<usize>,
    /// Raise the Lie degree budget.
    #[arg(long)]
    budget_degree: Option<usize>,
    /// Raise the word cutoff budget.
    #[arg(long)]
    budget_cutoff: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Embedding {
    Psi,
    Kappa,
}

#[derive(Args)]
struct InvariantsArgs {
    /// JSON file holding a map or a braid; `-` reads standard input.
    input: Option<PathBuf>,
    /// Braid word such as "A12 A23^-1", instead of a file.
    #[arg(long, requires = "strands")]
    braid: Option<String>,
    #[arg(long)]
    strands: Option<usize>,
    /// How a braid becomes a map.
    #[arg(long, value_enum, default_value = "psi")]
    embed: Embedding,
    #[arg(long, default_value_t = 5)]
    cutoff: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RanksArgs {
    #[arg(long, default_value_t = 2)]
    min_genus: usize,
    #[arg(long, default_value_t = 4)]
    genus: usize,
    #[arg(long, default_value_t = 1)]
    min_degree: usize,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    #[arg(long)]
    json: bool,
}

fn fail(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(USAGE_ERROR)
}

fn print_json<T: serde::Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("report serializes"));
}

fn verify(a: VerifyArgs) -> ExitCode {
    let suite: Suite = match a.suite.parse() {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let params = Params {
        genus: a.genus,
        max_degree: a.max_degree,
        cutoff: a.cutoff,
        seed: a.seed,
        samples: a.samples,
    };
    let mut budget = Budget::default();
    budget.max_genus = a.budget_genus.unwrap_or(budget.max_genus);
    budget.max_degree = a.budget_degree.unwrap_or(budget.max_degree);
    budget.max_cutoff = a.budget_cutoff.unwrap_or(budget.max_cutoff);
    let report = match run_suite(suite, &params, &budget) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    if a.json {
        print_json(&report);
    } else {
        print!("{}", report.render_table());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

/// A map, or a braid together with its linking matrix.
fn load(a: &InvariantsArgs) -> Result<(FreeEndo, Option<PureBraid>), Error> {
    let braid = match (&a.braid, &a.input) {
        (Some(word), None) => Some(parse_braid_word(a.strands.unwrap_or(0), word)?),
        (None, Some(path)) => {
            let text = read_input(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            if value.get("strands").is_some() {
                let j: BraidJson = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
                Some(PureBraid::from_json(&j)?)
            } else {
                let j: EndoJson = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
                return Ok((FreeEndo::from_json(&j)?, None));
            }
        }
        _ => return Err(Error::Parse("give either an input file or --braid".into())),
    };
    let b = braid.expect("braid branch");
    let f = match a.embed {
        Embedding::Psi => psi(&b)?,
        Embedding::Kappa => kappa(&b)?,
    };
    Ok((f, Some(b)))
}

fn invariants(a: InvariantsArgs) -> ExitCode {
    let (f, braid) = match load(&a) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };
    let report = match invariants_report(&f, a.cutoff) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let linking = match braid.as_ref().map(PureBraid::linking_matrix).transpose() {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    if a.json {
        let mut v = serde_json::to_value(&report).expect("report serializes");
        if let Some(m) = &linking {
            v["linking_matrix"] = serde_json::json!(m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>());
        }
        print_json(&v);
    } else {
        if let Some(m) = &linking {
            println!("linking matrix:");
            for r in m.to_rows() {
                let cells: Vec<String> = r.iter().map(|x| format!("{x:>3}")).collect();
                println!("  {}", cells.join(""));
            }
        }
        print!("{}", report.render());
    }
    ExitCode::SUCCESS
}

/// Largest genus the rank table handles without an explicit budget change.
const RANKS_MAX_GENUS: usize = 8;
const RANKS_MAX_DEGREE: usize = 6;

fn ranks(a: RanksArgs) -> ExitCode {
    if a.min_genus == 0 || a.min_genus > a.genus || a.min_degree == 0 || a.min_degree > a.max_degree {
        return fail("empty or invalid genus or degree range");
    }
    if a.genus > RANKS_MAX_GENUS || a.max_degree > RANKS_MAX_DEGREE {
        return fail(format!(
            "ranks are limited to genus {RANKS_MAX_GENUS} and degree {RANKS_MAX_DEGREE}"
        ));
    }
    let table = rank_table(a.min_genus..=a.genus, a.min_degree..=a.max_degree);
    if a.json {
        print_json(&table);
    } else {
        print!("{}", table.render());
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Invariants(a) => invariants(a),
        Command::Ranks(a) => ranks(a),
    }
}
