//! `szeged`: exact (weighted) Szeged index computation, minimum-index tree
//! construction, and table reproduction.

mod cache;
mod commands;
mod records;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use szeged_core::Error;

use commands::{IndexKind, InputFormat};

#[derive(Parser)]
#[command(name = "szeged", version, about = "Exact weighted Szeged index toolkit for trees")]
struct Cli {
    /// Cache directory for expensive tables
    #[arg(long, global = true, env = "SZEGED_CACHE_DIR")]
    cache: Option<PathBuf>,
    /// Worker threads for parallel scans (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the (weighted) Szeged index of a graph or branch shape
    Compute {
        /// Input file
        input: PathBuf,
        #[arg(long, value_enum, default_value = "wsz")]
        index: IndexKind,
        #[arg(long, value_enum, default_value = "edgelist")]
        format: InputFormat,
    },
    /// Find the minimum weighted Szeged index tree on n vertices
    OptimalTree {
        #[arg(long)]
        n: usize,
        /// Emit a JSON record instead of text
        #[arg(long)]
        json: bool,
        /// Write the tree as a DOT file
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Find the minimal ending branch of a given size inside a tree of total
    /// order n
    OptimalBranch {
        #[arg(long)]
        size: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the minimal-branch threshold table or the optimal-tree table
    Tables {
        /// Branch table: asymptotic structures and thresholds per size
        #[arg(long, conflicts_with = "trees")]
        branches: bool,
        /// Tree table: optimal root decompositions per order
        #[arg(long)]
        trees: bool,
        #[arg(long, default_value_t = 80)]
        max_size: usize,
        #[arg(long, default_value_t = 1200)]
        n_max: usize,
        /// Largest tree order (tree table)
        #[arg(long, default_value_t = 81)]
        max: usize,
        /// Also write the table as JSON to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Cross-check the dynamic programs against exhaustive enumeration
    Verify {
        /// Included for symmetry; verification always runs the oracles
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 16)]
        tree_max: usize,
        #[arg(long, default_value_t = 12)]
        branch_max: usize,
    },
    /// Evaluate structural conjectures over all optimal trees up to an order
    Conjectures {
        #[arg(long, default_value_t = 81)]
        max: usize,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Overflow => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("cannot configure thread pool: {e}");
        }
    }
    let result = match cli.cmd {
        Command::Compute { input, index, format } => commands::cmd_compute(&input, index, format),
        Command::OptimalTree { n, json, dot } => commands::cmd_optimal_tree(n, json, dot.as_deref()),
        Command::OptimalBranch { size, n, json } => commands::cmd_optimal_branch(size, n, json),
        Command::Tables { branches, trees, max_size, n_max, max, json } => {
            if trees {
                commands::cmd_tables_trees(max, json.as_deref())
            } else if branches {
                commands::cmd_tables_branches(cli.cache.as_deref(), max_size, n_max, json.as_deref())
            } else {
                eprintln!("specify --branches or --trees");
                return ExitCode::from(1);
            }
        }
        Command::Verify { oracle: _, tree_max, branch_max } => {
            match commands::cmd_verify(tree_max, branch_max) {
                Ok(true) => Ok(()),
                Ok(false) => return ExitCode::from(2),
                Err(e) => Err(e),
            }
        }
        Command::Conjectures { max, json } => commands::cmd_conjectures(max, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
