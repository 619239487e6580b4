//! Batch front end: optimize, simulate, validate, and ledger-demo commands
//! over scenario files.

use clap::{Parser, Subcommand};
use powcalc::ledger::{self, Chain};
use powcalc::optimizer::{self, ScenarioConstants};
use powcalc::scenario::{self, Scenario};
use powcalc::simulator::{self, Mode, RaceConfig};
use powcalc::validation;
use powcalc::powmodel::MiningDesign;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "powcalc",
    about = "Optimal proof-of-work configurations for governed ledgers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Scenario file path, or one of the bundled names c1, c2, c3.
    #[arg(long, default_value = "c1")]
    scenario: String,
    /// Base seed for all random draws.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate robustly feasible configurations and report the cheapest.
    Optimize {
        #[command(flatten)]
        common: CommonArgs,
        /// Write the result table to this file as delimited text.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Decimal digits for the exact confirmation tier.
        #[arg(long, default_value_t = optimizer::DEFAULT_EXACT_DIGITS)]
        tier_digits: u32,
    },
    /// Run mining-race campaigns over a triple grid and write campaign files.
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// Directory receiving one campaign file per triple.
        #[arg(long)]
        out: PathBuf,
        /// realhash or geometric.
        #[arg(long)]
        mode: Option<Mode>,
        /// Races per triple; default ⌊10000/s⌋.
        #[arg(long)]
        races: Option<u64>,
        /// Triple grid: `benchmark`, `benchmark16`, or `s,r,d[;s,r,d…]`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Compute error metrics and the dispute-error database from campaigns.
    Validate {
        #[command(flatten)]
        common: CommonArgs,
        /// Directory of campaign files produced by `simulate`.
        corpus: PathBuf,
        /// Write the error database to this file as delimited text.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scripted submit/mine/confirm/audit transcript on a fresh chain.
    LedgerDemo {
        #[command(flatten)]
        common: CommonArgs,
    },
}

// Exit 1: usage/parse problems. Exit 2: internal invariant failures.
enum CliError {
    Usage(String),
    Internal(String),
}

impl From<scenario::ScenarioError> for CliError {
    fn from(e: scenario::ScenarioError) -> Self {
        CliError::Usage(format!("scenario: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("io: {e}"))
    }
}

macro_rules! internal_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::Internal(e.to_string())
            }
        }
    )*};
}
internal_from!(
    powcalc::optimizer::OptimizerError,
    powcalc::powmodel::PowModelError,
    powcalc::simulator::SimulatorError,
    powcalc::validation::ValidationError,
    powcalc::ledger::LedgerError
);

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the same error path.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(message)) => {
            eprintln!("internal error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load_scenario(name: &str) -> Result<Scenario, CliError> {
    let bundled = match name {
        "c1" => Some(include_str!("../../scenarios/c1.txt")),
        "c2" => Some(include_str!("../../scenarios/c2.txt")),
        "c3" => Some(include_str!("../../scenarios/c3.txt")),
        _ => None,
    };
    Ok(match bundled {
        Some(text) => scenario::parse_scenario_str(text)?,
        None => scenario::parse_scenario(name)?,
    })
}

// Every run prints the constants it operated under, as a reparsable block.
fn print_constants_header(c: &ScenarioConstants) {
    println!("# effective constants");
    for line in scenario::write_scenario(c).lines() {
        println!("# {line}");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Optimize {
            common,
            out,
            tier_digits,
        } => optimize(&common, out.as_deref(), tier_digits),
        Command::Simulate {
            common,
            out,
            mode,
            races,
            grid,
        } => simulate(&common, &out, mode, races, grid.as_deref()),
        Command::Validate { common, corpus, out } => validate(&common, &corpus, out.as_deref()),
        Command::LedgerDemo { common } => ledger_demo(&common),
    }
}

fn optimize(common: &CommonArgs, out: Option<&Path>, tier_digits: u32) -> Result<(), CliError> {
    let scenario = load_scenario(&common.scenario)?;
    print_constants_header(&scenario.constants);
    let outcome = optimizer::enumerate_optimal_detailed(&scenario.constants, tier_digits)?;
    let mut table = String::from("s r d cost robust_cost\n");
    for row in &outcome.results {
        let _ = writeln!(
            table,
            "{} {} {} {} {}",
            row.s,
            row.r,
            row.d,
            optimizer::format_cost(row.cost),
            optimizer::format_cost(row.robust_cost)
        );
    }
    if outcome.results.is_empty() {
        println!("no robustly feasible tuple");
    } else {
        print!("{table}");
    }
    for (s, r, d) in &outcome.dropped_by_exact {
        println!("# dropped by exact confirmation: ({s}, {r}, {d})");
    }
    if let Some(path) = out {
        std::fs::write(path, table)?;
    }
    Ok(())
}

fn parse_grid(spec: Option<&str>) -> Result<Vec<(u32, u32, u32)>, CliError> {
    let spec = spec.unwrap_or("benchmark16");
    match spec {
        "benchmark" => Ok(validation::benchmark_grid(None)),
        "benchmark16" => Ok(validation::benchmark_grid(Some(16))),
        _ => spec
            .split(';')
            .map(|triple| {
                let parts: Vec<&str> = triple.split(',').collect();
                if parts.len() != 3 {
                    return Err(CliError::Usage(format!(
                        "grid triple {triple:?} must be s,r,d"
                    )));
                }
                let parse = |what: &str, text: &str| {
                    text.trim().parse::<u32>().map_err(|e| {
                        CliError::Usage(format!("grid triple {triple:?}: {what}: {e}"))
                    })
                };
                Ok((
                    parse("s", parts[0])?,
                    parse("r", parts[1])?,
                    parse("d", parts[2])?,
                ))
            })
            .collect(),
    }
}

fn campaign_path(dir: &Path, s: u32, r: u32, d: u32) -> PathBuf {
    dir.join(format!("campaign_s{s}_r{r}_d{d}.txt"))
}

fn simulate(
    common: &CommonArgs,
    out: &Path,
    mode: Option<Mode>,
    races: Option<u64>,
    grid: Option<&str>,
) -> Result<(), CliError> {
    let scenario = load_scenario(&common.scenario)?;
    print_constants_header(&scenario.constants);
    let grid = parse_grid(grid.or(scenario.grid.as_deref()))?;
    let mode = mode
        .or(scenario.mode)
        .unwrap_or(Mode::GeometricSampling);
    let base_seed = common.seed.or(scenario.seed).unwrap_or(0);
    std::fs::create_dir_all(out)?;
    println!("# mode {mode}, base seed {base_seed}, {} triples", grid.len());
    for &(s, r, d) in &grid {
        let design = MiningDesign::new(s, r, d)?;
        let config = RaceConfig::new(design, mode, validation::triple_seed(base_seed, s, r, d));
        let race_count = races.unwrap_or_else(|| config.default_race_count());
        let record = simulator::run_campaign(&config, race_count)?;
        let path = campaign_path(out, s, r, d);
        let mut file = BufWriter::new(File::create(&path)?);
        simulator::write_campaign(&record, &mut file)?;
        file.flush()?;
        println!("wrote {} ({race_count} races)", path.display());
    }
    Ok(())
}

fn validate(common: &CommonArgs, corpus_dir: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let scenario = load_scenario(&common.scenario)?;
    print_constants_header(&scenario.constants);
    let mut corpus = Vec::new();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "txt"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::Usage(format!(
            "no campaign files (*.txt) in {}",
            corpus_dir.display()
        )));
    }
    for path in &paths {
        let mut reader = BufReader::new(File::open(path)?);
        corpus.push(simulator::read_campaign(&mut reader)?);
    }
    println!("# {} campaigns", corpus.len());

    let summary = validation::corpus_summary(&corpus)?;
    println!("failure abs error: max {} mean {}", summary.failure_abs_max, summary.failure_abs_mean);
    println!(
        "rounds error (failure < 0.35): abs mean {} rel mean {}",
        summary.rounds_abs_mean, summary.rounds_rel_mean
    );
    println!(
        "tail errors (failure < 0.35): gt max {} mean {} / lt max {} mean {}",
        summary.tail_gt_max, summary.tail_gt_mean, summary.tail_lt_max, summary.tail_lt_mean
    );

    println!("threshold curves: x count max_abs mean_abs");
    for point in validation::threshold_curves(&corpus, &validation::default_x_grid())? {
        match (point.max_abs, point.mean_abs) {
            (Some(max), Some(mean)) => {
                println!("{} {} {max} {mean}", point.x, point.count)
            }
            _ => println!("{} 0 empty empty", point.x),
        }
    }

    let db = validation::build_database(&corpus)?;
    println!("# database entries: {}", db.len());
    let mut percentages = String::from("query percentages: condition count pct(abs_error<0.1)\n");
    for d in [4u32, 8, 12, 16, 17, 18, 19, 20] {
        let cond = [validation::Atom {
            field: validation::Field::D,
            cmp: validation::Cmp::Eq,
            value: d as f64,
        }];
        let prop = [validation::Atom {
            field: validation::Field::AbsError,
            cmp: validation::Cmp::Lt,
            value: 0.1,
        }];
        let q = validation::query(&db, &cond, &prop)?;
        if q.a > 0 {
            let _ = writeln!(
                percentages,
                "d={d} {} {}",
                q.a,
                q.percentage().expect("a > 0")
            );
        }
    }
    print!("{percentages}");
    if let Some(path) = out {
        let mut file = BufWriter::new(File::create(path)?);
        validation::write_database(&db, &mut file)?;
        file.flush()?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn ledger_demo(common: &CommonArgs) -> Result<(), CliError> {
    let scenario = load_scenario(&common.scenario)?;
    print_constants_header(&scenario.constants);
    let design = MiningDesign::new(2, 12, 8)?;
    println!(
        "mining design: s={} r={} d={}",
        design.s(),
        design.r(),
        design.d()
    );
    let mut chain = Chain::new();
    let inputs: [&[u8]; 5] = [b"alpha", b"bravo", b"charlie", b"delta", b"echo"];
    let mut triples = Vec::new();
    for input in inputs {
        let triple = ledger::submit(input)?;
        println!(
            "submit {:?} -> digest {}…",
            String::from_utf8_lossy(input),
            &hex_prefix(&triple.digest)
        );
        triples.push(triple);
    }
    for batch in triples.chunks(2) {
        let digests: Vec<_> = batch.iter().map(|t| t.digest).collect();
        let block = chain.mine_block(&digests, &design)?;
        println!(
            "mined block {} nonce {} ({} transactions)",
            block.height,
            block.nonce,
            block.tx_digests.len()
        );
        chain.add_block(block)?;
    }
    chain.confirm(&mut triples);
    for triple in &triples {
        println!(
            "confirmed {:?} at height {:?}",
            String::from_utf8_lossy(&triple.input),
            triple.location
        );
    }
    for k in [0u64, chain.current_block_height() + 1] {
        for triple in triples.iter().take(2) {
            println!(
                "audit {:?} depth {k}: {}",
                String::from_utf8_lossy(&triple.input),
                ledger::audit(triple, &chain, k)
            );
        }
    }
    let mut tampered = triples[0].clone();
    tampered.input = b"altered".to_vec();
    println!("audit tampered input: {}", ledger::audit(&tampered, &chain, 0));
    let mut dangling = triples[0].clone();
    dangling.location = Some(999);
    println!("audit dangling location: {}", ledger::audit(&dangling, &chain, 0));
    chain.verify()?;
    println!("chain verified ({} blocks)", chain.current_block_height());
    print!("{}", ledger::dump_chain(&chain));
    Ok(())
}

fn hex_prefix(digest: &[u8; 32]) -> String {
    digest[..6].iter().map(|b| format!("{b:02x}")).collect()
}
