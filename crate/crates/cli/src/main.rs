//! `pup`: solve, verify and benchmark partner units instances.
//!
//! Exit codes: 0 satisfiable / valid, 1 unsatisfiable / invalid,
//! 2 timeout, 3 usage or input error.

mod bench;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pup::oracle::{binpack_decide_with_guard, oracle_decide_with_guard, oracle_min_units_with_guard};
use pup::{
    binpack_to_pup_iucap2, double_binpack, lift_iucap0_to_1, parse_instance, parse_solution, solve, verify_solution,
    BinPackingInstance, Instance, SolveConfig, SolveResult,
};

const EXIT_SAT: u8 = 0;
const EXIT_UNSAT: u8 = 1;
const EXIT_TIMEOUT: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "pup", version, about = "Partner units problem solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance and write a solution when one is found.
    Solve(SolveArgs),
    /// Check a solution file against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Solve every instance listed in a manifest and report a table.
    Bench(bench::BenchArgs),
    /// Exact decision by exhaustive enumeration (small inputs only).
    Oracle(OracleArgs),
    /// Turn a bin packing instance into a partner units instance.
    Reduce(ReduceArgs),
    /// Turn an instance with iucap 0 into one with iucap 1.
    Lift {
        #[arg(long)]
        instance: PathBuf,
        /// Unit count of the source question.
        #[arg(long)]
        units: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, default_value_t = pup::solver::DEFAULT_MAX_TIME_MS)]
    max_time_ms: u64,
    /// Unit budget; defaults to the number of elements.
    #[arg(long)]
    max_units: Option<usize>,
    #[arg(long)]
    no_minimize: bool,
    /// Search from all entry points concurrently.
    #[arg(long)]
    parallel: bool,
    /// Print search statistics as key=value lines on stderr.
    #[arg(long)]
    stats: bool,
    /// Write a Graphviz description of the solution.
    #[arg(long)]
    emit_graph: Option<PathBuf>,
    /// Solution file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, conflicts_with = "binpack", required_unless_present = "binpack")]
    instance: Option<PathBuf>,
    /// Decide a bin packing file instead.
    #[arg(long)]
    binpack: Option<PathBuf>,
    #[arg(long, conflicts_with = "min_units")]
    max_units: Option<usize>,
    /// Report the least number of units instead of deciding.
    #[arg(long)]
    min_units: bool,
    /// Largest accepted input (elements or items).
    #[arg(long, default_value_t = pup::oracle::DEFAULT_ELEMENT_GUARD)]
    guard: usize,
}

#[derive(Args)]
struct ReduceArgs {
    /// Item sizes, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "binpack")]
    items: Vec<usize>,
    #[arg(long, requires = "bins", conflicts_with = "binpack")]
    binsize: Option<usize>,
    #[arg(long, conflicts_with = "binpack")]
    bins: Option<usize>,
    /// Bin packing file (`items 2 2 3 ; binsize 5 ; bins 2`).
    #[arg(long)]
    binpack: Option<PathBuf>,
    /// Emit the bin packing instance with all sizes doubled instead.
    #[arg(long)]
    double: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_solve(a: &SolveArgs) -> Result<u8> {
    let inst = load_instance(&a.instance)?;
    let cfg = SolveConfig::new(a.max_time_ms, a.max_units)?
        .with_minimize(!a.no_minimize)
        .with_parallel(a.parallel);
    let outcome = solve(&inst, &cfg);
    if a.stats {
        eprint!("{}", outcome.stats.to_kv(&inst));
    }
    match &outcome.result {
        SolveResult::Satisfiable(g) => {
            let text = format!("# {}\n{}", outcome.result, g.to_text());
            write_output(a.out.as_deref(), &text)?;
            if a.out.is_some() {
                println!("{}", outcome.result);
            }
            if let Some(p) = &a.emit_graph {
                fs::write(p, g.to_dot()).with_context(|| format!("cannot write {}", p.display()))?;
            }
        }
        r => println!("{r}"),
    }
    Ok(exit_code(&outcome.result))
}

/// Exit code for every solve result.
fn exit_code(r: &SolveResult) -> u8 {
    match r {
        SolveResult::Satisfiable(_) => EXIT_SAT,
        SolveResult::Unsatisfiable { .. } => EXIT_UNSAT,
        SolveResult::Timeout => EXIT_TIMEOUT,
    }
}

fn cmd_verify(instance: &Path, solution: &Path) -> Result<u8> {
    let inst = load_instance(instance)?;
    let g = parse_solution(&read(solution)?).with_context(|| format!("{}", solution.display()))?;
    let violations = verify_solution(&inst, &g);
    for v in &violations {
        println!("{v}");
    }
    if violations.is_empty() {
        println!("VALID ({} units)", g.count_units());
        Ok(EXIT_SAT)
    } else {
        println!("INVALID ({} violations)", violations.len());
        Ok(EXIT_UNSAT)
    }
}

fn cmd_oracle(a: &OracleArgs) -> Result<u8> {
    if let Some(path) = &a.binpack {
        let b: BinPackingInstance = read(path)?.parse()?;
        let fits = binpack_decide_with_guard(&b, a.guard)?;
        println!("{}", if fits { "SATISFIABLE" } else { "UNSATISFIABLE" });
        return Ok(if fits { EXIT_SAT } else { EXIT_UNSAT });
    }
    let inst = load_instance(a.instance.as_deref().expect("required by clap"))?;
    if a.min_units {
        return Ok(match oracle_min_units_with_guard(&inst, a.guard)? {
            Some(k) => {
                println!("MIN_UNITS {k}");
                EXIT_SAT
            }
            None => {
                println!("UNSATISFIABLE");
                EXIT_UNSAT
            }
        });
    }
    let k = a.max_units.unwrap_or(inst.len().max(1));
    if k == 0 {
        bail!("--max-units must be at least 1");
    }
    let d = oracle_decide_with_guard(&inst, k, a.guard)?;
    if d.is_sat() {
        println!("SATISFIABLE (within {k} units)");
        Ok(EXIT_SAT)
    } else {
        println!("UNSATISFIABLE (within {k} units)");
        Ok(EXIT_UNSAT)
    }
}

fn cmd_reduce(a: &ReduceArgs) -> Result<u8> {
    let b = match &a.binpack {
        Some(p) => read(p)?.parse()?,
        None => {
            let (Some(size), Some(bins)) = (a.binsize, a.bins) else {
                bail!("give --items, --binsize and --bins, or --binpack");
            };
            BinPackingInstance::new(a.items.clone(), size, bins)?
        }
    };
    if a.double {
        write_output(a.out.as_deref(), &format!("{}\n", double_binpack(&b)))?;
    } else {
        let (inst, units) = binpack_to_pup_iucap2(&b);
        write_output(a.out.as_deref(), &format!("# from {b}\n# units {units}\n{}", inst.to_text()))?;
    }
    Ok(EXIT_SAT)
}

fn cmd_lift(instance: &Path, units: usize, out: Option<&Path>) -> Result<u8> {
    let inst = load_instance(instance)?;
    let (lifted, units) = lift_iucap0_to_1(&inst, units)?;
    write_output(out, &format!("# units {units}\n{}", lifted.to_text()))?;
    Ok(EXIT_SAT)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve(a) => cmd_solve(&a),
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution),
        Command::Bench(a) => bench::run(&a),
        Command::Oracle(a) => cmd_oracle(&a),
        Command::Reduce(a) => cmd_reduce(&a),
        Command::Lift { instance, units, out } => cmd_lift(&instance, units, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_SAT });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
