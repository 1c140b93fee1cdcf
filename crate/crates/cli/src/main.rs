mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "magset",
    version,
    about = "Monitoring arc-geodetic sets of oriented graphs"
)]
pub struct Cli {
    /// Output format for commands that print a graph
    #[arg(long, global = true, value_enum, default_value_t = Format::Edgelist)]
    pub format: Format,
    /// Print a JSON run report instead of plain text
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Maximum search nodes for the exact solver
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Seed for randomized generators
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Edgelist,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimum MAG-set of a directed edge list
    Mag(InputArg),
    /// Minimum MEG-set of a connected undirected edge list
    Meg(InputArg),
    /// mag over every orientation of an undirected graph
    Spectrum(SpectrumArgs),
    /// Directed input: is mag = n? Undirected input: find such an orientation
    Extremal(InputArg),
    /// Vertices that belong to every MAG-set, with the rule that forces them
    Forced(InputArg),
    /// Generate a member of a graph family
    Family(FamilyArgs),
    /// Build a hardness gadget
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Cross-check a construction against a brute-force oracle or closed form
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Re-emit a graph in DOT
    ExportDot(InputArg),
}

#[derive(Args, Debug, Clone)]
pub struct InputArg {
    /// Input file; stdin when absent or `-`
    pub input: Option<String>,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// Refuse graphs with more edges than this
    #[arg(long, default_value_t = magset::spectrum::DEFAULT_MAX_EDGES)]
    pub max_edges: usize,
    /// Stop once an orientation with mag = n is found
    #[arg(long)]
    pub stop_at_n: bool,
    /// Stop once an orientation with mag = 2 is found
    #[arg(long)]
    pub stop_at_two: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Path,
    Cycle,
    RootedTree,
    TransitiveTournament,
    FlippedTournament,
    Gj,
    BipartiteExtremal,
    GirthAlternating,
    RandomOrientation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CycleKind {
    C0,
    C1,
    C2,
    C3,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(value_enum)]
    pub name: FamilyName,
    /// Cycle orientation class
    #[arg(long = "kind", value_enum, ignore_case = true)]
    pub class: Option<CycleKind>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Sink position for C1/C2 cycles
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    /// Comma-separated turning points of a C3 cycle, starting with a source
    #[arg(long, value_delimiter = ',')]
    pub pattern: Vec<usize>,
    /// Root for rooted-tree
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// Base graph for rooted-tree, bipartite-extremal, girth-alternating and
    /// random-orientation
    pub input: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum ReduceCmd {
    /// Monotone NAE-3SAT instance to undirected gadget
    Nae3sat(InputArg),
    /// Vertex cover instance to oriented gadget
    Vertexcover {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// NAE satisfiable iff the gadget has an orientation with mag = n
    Nae(InputArg),
    /// Vertex cover of size k iff the gadget has a MAG-set of the target size
    Vc {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        k: usize,
    },
    /// Solver result on a family member equals its closed form
    Family(FamilyArgs),
    /// Vertex-local extremal test agrees with the solver
    Thm32(InputArg),
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(64);
        }
    }
    let out = commands::run(&cli, &argv[1..].join(" "));
    let mut stdout = std::io::stdout().lock();
    match out {
        Ok(o) => {
            let _ = stdout.write_all(o.text.as_bytes());
            ExitCode::from(o.code)
        }
        Err(CliError { err, report }) => {
            if let Some(r) = report {
                let _ = stdout.write_all(r.as_bytes());
            }
            eprintln!("error: {err}");
            ExitCode::from(commands::exit_code(&err))
        }
    }
}
