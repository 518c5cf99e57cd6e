//! `semicanon` command-line driver.
//!
//! Exit codes: 0 success or property holds, 3 property does not hold,
//! 2 usage or parse error, 1 resource cap exceeded.

mod output;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use semicanon::canonical::{canonical_form, is_canonical, semi_canonical_violation, CANONICAL_BOUND};
use semicanon::enumerate::{Enumerator, CANONICAL_MAX_ORDER, DEFAULT_MAX_ORDER};
use semicanon::format::{parse_compact_list, parse_matrix};
use semicanon::graph::{count_graph_classes, isomorphic, BipartiteGraph, IsoVerdict};
use semicanon::matrix::MAX_WIDTH;
use semicanon::sperm::{
    compose_sudoku, family_to_line, find_disjoint_families, s_permutation_violation,
    SPermCandidate,
};
use semicanon::Error;

use output::OutputFormat;

#[derive(Parser)]
#[command(name = "semicanon", version, about = "Semi-canonical and canonical binary matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate n x n semi-canonical or canonical matrices.
    Enumerate(EnumerateArgs),
    /// Test a matrix file for a property.
    Check(CheckArgs),
    /// Print the canonical form of a matrix file.
    Canonicalize {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Bipartite graph classes and isomorphism.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// S-permutation families and Sudoku composition.
    #[command(subcommand)]
    Sudoku(SudokuCommand),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Semi,
    Canonical,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["counts", "list"])))]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Kind::Semi)]
    kind: Kind,
    /// Print the table of counts by number of ones.
    #[arg(long)]
    counts: bool,
    /// Stream every matrix, one per line.
    #[arg(long)]
    list: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads for counts mode.
    #[arg(long, env = "SEMICANON_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Lift the default order caps (long runtimes are on you).
    #[arg(long)]
    allow_large: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Semi,
    Canonical,
    Sperm,
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    property: Property,
    /// Block order for `sperm`.
    #[arg(long)]
    base: Option<usize>,
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Number of bipartite graphs with sides of size n and k edges, up to isomorphism.
    Classes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Compare two edge-list files.
    Iso { file_a: PathBuf, file_b: PathBuf },
}

#[derive(Subcommand)]
enum SudokuCommand {
    /// Stream every family of mutually disjoint S-permutation matrices.
    Families {
        #[arg(long)]
        base: usize,
        /// Required for base 3, whose search does not finish in practice.
        #[arg(long)]
        long_running: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Compose a Sudoku matrix from a family file.
    Compose { file: PathBuf },
}

/// Error plus the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OrderOutOfRange { .. } | Error::DimensionBound { .. } | Error::WidthTooLarge { .. } => 1,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Check(args) => cmd_check(args),
        Command::Canonicalize { file, format } => cmd_canonicalize(&file, format),
        Command::Graph(cmd) => cmd_graph(cmd),
        Command::Sudoku(cmd) => cmd_sudoku(cmd),
    };
    match result {
        Ok(code) => code,
        Err(f) if f.message.contains("Broken pipe") => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("semicanon: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_enumerate(args: EnumerateArgs) -> Outcome {
    let cap = match (args.kind, args.allow_large) {
        (Kind::Semi, false) => DEFAULT_MAX_ORDER,
        (Kind::Semi, true) => MAX_WIDTH,
        (Kind::Canonical, false) => CANONICAL_MAX_ORDER,
        (Kind::Canonical, true) => CANONICAL_BOUND,
    };
    let enumerator = Enumerator::with_cap(args.n, cap)?;
    let mut out = open_output(args.output.as_deref())?;
    if args.counts {
        let table = match (args.kind, args.jobs > 1) {
            (Kind::Semi, false) => enumerator.count_semi_canonical(),
            (Kind::Semi, true) => enumerator.par_count_semi_canonical(args.jobs),
            (Kind::Canonical, false) => enumerator.count_canonical()?,
            (Kind::Canonical, true) => enumerator.par_count_canonical(args.jobs)?,
        };
        let kind = match args.kind {
            Kind::Semi => "semi",
            Kind::Canonical => "canonical",
        };
        output::write_counts(&mut out, &table, kind, args.format)?;
    } else {
        match args.kind {
            Kind::Semi => {
                for a in enumerator.semi_canonical() {
                    output::write_list_item(&mut out, &a, args.format)?;
                }
            }
            Kind::Canonical => {
                for a in enumerator.canonical()? {
                    output::write_list_item(&mut out, &a, args.format)?;
                }
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn verdict(holds: bool, message: String) -> Outcome {
    println!("{message}");
    Ok(if holds {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn cmd_check(args: CheckArgs) -> Outcome {
    let a = parse_matrix(&read(&args.file)?)?;
    match args.property {
        Property::Semi => match semi_canonical_violation(&a) {
            None => verdict(true, "semi-canonical".into()),
            Some(v) => verdict(false, format!("not semi-canonical: {v}")),
        },
        Property::Canonical => {
            if is_canonical(&a)? {
                verdict(true, "canonical".into())
            } else {
                let form = canonical_form(&a)?;
                verdict(
                    false,
                    format!(
                        "not canonical: equivalent row code {} < {}",
                        form.row_code(),
                        a.row_code()
                    ),
                )
            }
        }
        Property::Sperm => {
            let base = args
                .base
                .ok_or_else(|| Failure::usage("--base is required for the sperm property"))?;
            match s_permutation_violation(&a, base)? {
                None => verdict(true, "S-permutation".into()),
                Some(v) => verdict(false, format!("not an S-permutation matrix: {v}")),
            }
        }
    }
}

fn cmd_canonicalize(file: &Path, format: OutputFormat) -> Outcome {
    let a = parse_matrix(&read(file)?)?;
    let form = canonical_form(&a)?;
    let mut out = open_output(None)?;
    output::write_matrix(&mut out, &form, format)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_graph(cmd: GraphCommand) -> Outcome {
    match cmd {
        GraphCommand::Classes { n, k } => {
            if k > n * n {
                return Err(Failure::usage(format!("k must be at most n^2 = {}", n * n)));
            }
            println!("{}", count_graph_classes(n, k)?);
            Ok(ExitCode::SUCCESS)
        }
        GraphCommand::Iso { file_a, file_b } => {
            let g = BipartiteGraph::parse_edge_list(&read(&file_a)?)?;
            let h = BipartiteGraph::parse_edge_list(&read(&file_b)?)?;
            match isomorphic(&g, &h)? {
                IsoVerdict::Isomorphic => verdict(true, "yes".into()),
                IsoVerdict::NotIsomorphic(reason) => verdict(false, format!("no ({reason})")),
            }
        }
    }
}

fn cmd_sudoku(cmd: SudokuCommand) -> Outcome {
    match cmd {
        SudokuCommand::Families {
            base,
            long_running,
            limit,
        } => {
            let families = find_disjoint_families(base, long_running)?;
            let mut out = open_output(None)?;
            for family in families.take(limit.unwrap_or(usize::MAX)) {
                writeln!(out, "{}", family_to_line(&family))?;
            }
            out.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        SudokuCommand::Compose { file } => {
            let parts = parse_compact_list(&read(&file)?)?
                .into_iter()
                .map(SPermCandidate::from_matrix)
                .collect::<Result<Vec<_>, _>>()?;
            match compose_sudoku(&parts) {
                Ok(grid) => {
                    print!("{}", grid.to_text());
                    Ok(ExitCode::SUCCESS)
                }
                Err(Error::Overlap {
                    first,
                    second,
                    row,
                    col,
                }) => verdict(
                    false,
                    format!(
                        "parts {} and {} clash at row {}, column {}",
                        first + 1,
                        second + 1,
                        row + 1,
                        col + 1
                    ),
                ),
                Err(Error::NotSPermutation { index, reason }) => verdict(
                    false,
                    format!("part {} is not an S-permutation matrix: {reason}", index + 1),
                ),
                Err(e @ (Error::FamilySize { .. } | Error::SizeMismatch { .. })) => {
                    verdict(false, e.to_string())
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}
