use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kplane::Exec;
use kplane_cli::{
    cmd_gen, cmd_oracle, cmd_partition, cmd_render, cmd_verify, AlgorithmChoice, Family, GenOptions, OracleCheck,
    OracleOptions, Status,
};

/// Edge partitions of optimal 2-plane and 3-plane graphs.
///
/// Exit status: 0 when every check passes, 1 when a verification fails,
/// 2 on malformed input or usage errors.
#[derive(Parser)]
#[command(name = "kplane", version)]
struct Cli {
    /// Accepted for reproducible scripts; every command is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Run oracles on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Dodecahedron,
    Glue,
    Hex,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Forests2,
    Deg12,
    Deg8,
    Forests3,
    Peel,
    PeelLayers,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    MinRemoval,
    Arboricity,
    Exhaustive,
    Patterns,
    Forcing,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance; writes PREFIX.plane.json and PREFIX.topo.json.
    Gen {
        family: FamilyArg,
        /// Host size for the glue family.
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Expansion steps for the hex family.
        #[arg(long, default_value_t = 0)]
        expand: usize,
        /// Vertex budget for the glue gadget search; the library default otherwise.
        #[arg(long)]
        max_gadget_vertices: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition the edges of a topological graph and verify every class.
    Partition {
        algorithm: AlgorithmArg,
        input: PathBuf,
        /// Crossing bound for peel; defaults to the largest crossing count.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check optimality structure, k-planarity and a partition file.
    Verify {
        input: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the graph as SVG, optionally styled by a partition.
    Render {
        input: PathBuf,
        #[arg(long)]
        partition: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a brute-force check.
    Oracle {
        check: OracleArg,
        input: PathBuf,
        /// Crossing bound for the exhaustive search.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Host vertex count for the forcing check.
        #[arg(long)]
        host: Option<usize>,
        /// Largest edge count the exhaustive search will enumerate.
        #[arg(long, default_value_t = 24)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.command {
        Command::Gen {
            family,
            n,
            expand,
            max_gadget_vertices,
            out,
        } => {
            let family = match family {
                FamilyArg::Dodecahedron => Family::Dodecahedron,
                FamilyArg::Glue => Family::Glue,
                FamilyArg::Hex => Family::Hex,
            };
            let paths = cmd_gen(
                family,
                &GenOptions {
                    n,
                    expand,
                    max_gadget_vertices,
                    out,
                },
            )?;
            for p in paths {
                println!("{}", p.display());
            }
            Ok(Status::Pass)
        }
        Command::Partition { algorithm, input, k, out } => {
            let algorithm = match algorithm {
                AlgorithmArg::Forests2 => AlgorithmChoice::Forests2,
                AlgorithmArg::Deg12 => AlgorithmChoice::Deg12,
                AlgorithmArg::Deg8 => AlgorithmChoice::Deg8,
                AlgorithmArg::Forests3 => AlgorithmChoice::Forests3,
                AlgorithmArg::Peel => AlgorithmChoice::Peel,
                AlgorithmArg::PeelLayers => AlgorithmChoice::PeelLayers,
            };
            cmd_partition(&input, algorithm, k, out.as_deref())
        }
        Command::Verify {
            input,
            k,
            partition,
            out,
        } => cmd_verify(&input, k, partition.as_deref(), out.as_deref()),
        Command::Render { input, partition, out } => {
            for w in cmd_render(&input, partition.as_deref(), out.as_deref())? {
                eprintln!("warning: {w}");
            }
            Ok(Status::Pass)
        }
        Command::Oracle {
            check,
            input,
            k,
            host,
            budget,
            out,
        } => {
            let check = match check {
                OracleArg::MinRemoval => OracleCheck::MinRemoval,
                OracleArg::Arboricity => OracleCheck::Arboricity,
                OracleArg::Exhaustive => OracleCheck::Exhaustive,
                OracleArg::Patterns => OracleCheck::Patterns,
                OracleArg::Forcing => OracleCheck::Forcing,
            };
            cmd_oracle(&input, check, &OracleOptions { k, host, budget, exec }, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status.exit_code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
