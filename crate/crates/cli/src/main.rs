use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ferrers_core::rewriting::{self, GraphFormat, ShiftProgram, Strategy};
use ferrers_core::shifts::{self, Shift, ShiftTrace};
use ferrers_core::{Board, Error, PatternSet, Permutation, Placement};

mod verify;

/// Largest board size accepted by commands that enumerate placements.
pub const MAX_N: usize = 12;

#[derive(Parser)]
#[command(
    name = "ferrers",
    version,
    about = "Shifts, normal forms and avoidance counts for rook placements on Ferrers boards"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one shift or iterate it to a fixed point.
    Shift(ShiftArgs),
    /// Reduce a placement to normal form with a chosen strategy.
    NormalForm(NormalFormArgs),
    /// Count placements avoiding a set of patterns.
    Count(CountArgs),
    /// Exhaustively check an identity over a family of placements.
    Verify(verify::VerifyArgs),
    /// Export the graph of placements reachable by shifts.
    Graph(GraphArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ShiftOp {
    Phi,
    Psi,
    PhiStar,
    PsiStar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// A permutation, optionally placed on a board other than the square.
#[derive(Args)]
struct PlacementArgs {
    /// Permutation in one-line notation, e.g. "7 4 6 3 5 2 1".
    #[arg(long)]
    perm: Permutation,
    /// Column heights, e.g. "4,3,2,2". Defaults to the square.
    #[arg(long)]
    board: Option<Board>,
}

impl PlacementArgs {
    fn placement(&self) -> Result<Placement, Failure> {
        placement_on(self.board.as_ref(), self.perm.clone())
    }
}

fn placement_on(board: Option<&Board>, perm: Permutation) -> Result<Placement, Failure> {
    match board {
        None => Ok(Placement::square(perm)),
        Some(b) => Ok(Placement::new(b.clone(), perm)?),
    }
}

#[derive(Args)]
struct ShiftArgs {
    #[arg(long, value_enum)]
    op: ShiftOp,
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    placement: PlacementArgs,
    /// Print every shift that moved dots.
    #[arg(long)]
    trace: bool,
    /// Keep at most this many steps in the trace.
    #[arg(long)]
    trace_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyName {
    AlwaysPhi,
    AlwaysPsi,
    Alternate,
    Random,
    Prefix,
}

#[derive(Args)]
struct NormalFormArgs {
    #[arg(long)]
    k: usize,
    #[command(flatten)]
    placement: PlacementArgs,
    #[arg(long, value_enum, default_value = "always-phi")]
    strategy: StrategyName,
    /// Seed for the random strategy (required with it).
    #[arg(long)]
    seed: Option<u64>,
    /// Composition such as "phi psi psi", applied right to left before continuing with phi.
    #[arg(long)]
    program: Option<ShiftProgram>,
    #[arg(long)]
    trace: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

/// Exactly one of `--board` or `--n`.
#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
pub struct BoardChoice {
    /// Column heights, e.g. "4,4,4,4".
    #[arg(long)]
    board: Option<Board>,
    /// Use the n x n square.
    #[arg(long)]
    n: Option<usize>,
}

impl BoardChoice {
    pub fn board(&self) -> Result<Board, Failure> {
        let board = match (&self.board, self.n) {
            (Some(b), _) => b.clone(),
            (None, Some(n)) => Board::square(n),
            (None, None) => return Err(Failure::Usage("one of --board or --n is required".into())),
        };
        if board.columns() > MAX_N {
            return Err(Failure::Usage(format!(
                "boards are limited to {MAX_N} columns, got {}",
                board.columns()
            )));
        }
        Ok(board)
    }
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    shape: BoardChoice,
    /// Pattern to avoid; repeat for a set.
    #[arg(long = "avoid", required = true)]
    avoid: Vec<Permutation>,
    /// Count only symmetric placements.
    #[arg(long)]
    involutions: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    k: usize,
    /// Starting permutation; repeat for several.
    #[arg(long = "seed-perm", required = true)]
    seed_perm: Vec<Permutation>,
    /// Board shared by all seeds. Defaults to the square.
    #[arg(long)]
    board: Option<Board>,
    #[arg(long, default_value = "dot")]
    format: GraphFormat,
}

/// Reasons to exit non-zero.
#[derive(Debug)]
pub enum Failure {
    /// A verified statement has a counterexample.
    Counterexample,
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UnknownFormat(_)
            | Error::PatternLengthTooSmall(_)
            | Error::EmptyPatternSet
            | Error::EmptyPattern
            | Error::MissingIncreasingPrefix { .. }
            | Error::InvalidPermutation { .. }
            | Error::InvalidBoard(_) => Failure::Usage(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

fn print_trace(trace: &ShiftTrace) {
    for step in trace.steps() {
        let moved: Vec<String> = step
            .moved_positions
            .iter()
            .map(|c| (c + 1).to_string())
            .collect();
        println!(
            "{} at {}: {} -> {} (inversions {} -> {})",
            step.op,
            moved.join(" "),
            step.perm_before,
            step.perm_after,
            step.inv_before,
            step.inv_after
        );
    }
    if trace.is_truncated() {
        println!("... {} steps in total", trace.step_count());
    }
}

fn print_result(result: &Placement, trace: &ShiftTrace, show_trace: bool, format: OutputFormat) {
    match format {
        OutputFormat::Text => {
            if show_trace {
                print_trace(trace);
            }
            println!("{}", result.perm());
        }
        OutputFormat::Json => {
            let mut out = serde_json::json!({
                "result": result.perm(),
                "board": result.board(),
                "steps": trace.step_count(),
            });
            if show_trace {
                out["trace"] = serde_json::to_value(trace).expect("trace serializes");
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("json value")
            );
        }
    }
}

fn cmd_shift(args: ShiftArgs) -> Result<(), Failure> {
    let p = args.placement.placement()?;
    let (result, trace) = match args.op {
        ShiftOp::Phi | ShiftOp::Psi => {
            let op = if matches!(args.op, ShiftOp::Phi) {
                Shift::Phi
            } else {
                Shift::Psi
            };
            let mut trace = ShiftTrace::with_cap(args.k, args.trace_cap);
            match shifts::shift_step(&p, args.k, op)? {
                Some((q, step)) => {
                    trace.push(step);
                    (q, trace)
                }
                None => (p, trace),
            }
        }
        ShiftOp::PhiStar => shifts::iterate(&p, args.k, Shift::Phi, args.trace_cap)?,
        ShiftOp::PsiStar => shifts::iterate(&p, args.k, Shift::Psi, args.trace_cap)?,
    };
    print_result(&result, &trace, args.trace, args.format);
    Ok(())
}

fn cmd_normal_form(args: NormalFormArgs) -> Result<(), Failure> {
    let p = args.placement.placement()?;
    let strategy = match args.strategy {
        StrategyName::AlwaysPhi => Strategy::AlwaysPhi,
        StrategyName::AlwaysPsi => Strategy::AlwaysPsi,
        StrategyName::Alternate => Strategy::Alternate,
        StrategyName::Random => match args.seed {
            Some(seed) => Strategy::Random { seed },
            None => return Err(Failure::Usage("the random strategy requires --seed".into())),
        },
        StrategyName::Prefix => match args.program {
            Some(prog) => Strategy::Prefix(prog),
            None => {
                return Err(Failure::Usage(
                    "the prefix strategy requires --program".into(),
                ))
            }
        },
    };
    let (result, trace) = rewriting::normal_form(&p, args.k, &strategy)?;
    print_result(&result, &trace, args.trace, args.format);
    if args.format == OutputFormat::Text {
        println!("steps: {}", trace.step_count());
    }
    Ok(())
}

fn cmd_count(args: CountArgs) -> Result<(), Failure> {
    let board = args.shape.board()?;
    let patterns = PatternSet::new(args.avoid)?;
    let report = ferrers_core::enumeration::count_avoiders(&board, &patterns, args.involutions)?;
    match args.format {
        OutputFormat::Text => println!("{}", report.count),
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        ),
    }
    Ok(())
}

fn cmd_graph(args: GraphArgs) -> Result<(), Failure> {
    let seeds = args
        .seed_perm
        .into_iter()
        .map(|perm| placement_on(args.board.as_ref(), perm))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", rewriting::export_graph(&seeds, args.k, args.format)?);
    if args.format == GraphFormat::Json {
        println!();
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Shift(a) => cmd_shift(a),
        Command::NormalForm(a) => cmd_normal_form(a),
        Command::Count(a) => cmd_count(a),
        Command::Verify(a) => verify::run(a),
        Command::Graph(a) => cmd_graph(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
