use clap::{Args, Subcommand};
use ferrers_core::enumeration::{
    self, enumerate_placements, enumerate_symmetric_placements, sweep, BijectionCheck,
    SweepOutcome, MOTZKIN_PATTERNS,
};
use ferrers_core::rewriting::{
    confluence_check, global_commutation_check, local_commutation_check,
};
use ferrers_core::{Board, PatternSet, Permutation, Placement};
use rayon::prelude::*;

use crate::{BoardChoice, Failure, MAX_N};

#[derive(Args)]
pub struct VerifyArgs {
    #[command(subcommand)]
    check: Check,
    /// Worker threads for the sweep (0 or unset: one per core).
    #[arg(long, env = "FERRERS_JOBS", global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Check {
    /// phi* commutes with reflection for every placement.
    Commutation(SweepArgs),
    /// phi and psi commute whenever their sequences differ.
    Local(SweepArgs),
    /// Every reduction strategy reaches the same normal form in the same number of steps.
    Confluence(ConfluenceArgs),
    /// phi* maps the (k-1)...21k avoiders onto the k...21 avoiders.
    Bwx(SweepArgs),
    /// The same transfer restricted to symmetric placements.
    Involutions(SweepArgs),
    /// Involutions avoiding T and T with its 12...k prefix reversed are equinumerous.
    Wilf(WilfArgs),
    /// Involutions avoiding 1234, 4321, 2143 or 3214 are counted by the Motzkin numbers.
    Motzkin(MotzkinArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    shape: BoardChoice,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct ConfluenceArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Random strategies per placement, in addition to the three fixed ones.
    #[arg(long, default_value_t = 0)]
    random_strategies: usize,
    /// Base seed for the random strategies (required with them).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct WilfArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=MAX_N as i64))]
    n: u8,
    /// Pattern of T; repeat for a set.
    #[arg(long = "pattern", required = true)]
    patterns: Vec<Permutation>,
    #[arg(long)]
    k: usize,
}

#[derive(Args)]
struct MotzkinArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=MAX_N as i64))]
    n_max: u8,
}

pub fn run(args: VerifyArgs) -> Result<(), Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    pool.install(|| match args.check {
        Check::Commutation(a) => commutation(a),
        Check::Local(a) => local(a),
        Check::Confluence(a) => confluence(a),
        Check::Bwx(a) => bijection(a, false),
        Check::Involutions(a) => bijection(a, true),
        Check::Wilf(a) => wilf(a),
        Check::Motzkin(a) => motzkin(a),
    })
}

fn pass_or_fail(passed: bool) -> Result<(), Failure> {
    if passed {
        Ok(())
    } else {
        Err(Failure::Counterexample)
    }
}

fn placements(args: &SweepArgs) -> Result<(Board, Vec<Placement>), Failure> {
    let board = args.shape.board()?;
    let all = enumerate_placements(&board).collect();
    Ok((board, all))
}

fn report_sweep(
    what: &str,
    board: &Board,
    k: usize,
    outcome: &SweepOutcome,
) -> Result<(), Failure> {
    match &outcome.counterexample {
        None => println!(
            "PASS {what}: {} placements on board {board}, k={k}",
            outcome.checked
        ),
        Some(p) => println!(
            "FAIL {what}: counterexample {} on board {board}, k={k}",
            p.perm()
        ),
    }
    pass_or_fail(outcome.passed())
}

fn commutation(args: SweepArgs) -> Result<(), Failure> {
    let (board, all) = placements(&args)?;
    let outcome = sweep(&all, |p| global_commutation_check(p, args.k))?;
    report_sweep("global commutation", &board, args.k, &outcome)
}

fn local(args: SweepArgs) -> Result<(), Failure> {
    let (board, all) = placements(&args)?;
    let reports = all
        .par_iter()
        .map(|p| local_commutation_check(p, args.k))
        .collect::<Result<Vec<_>, _>>()?;
    // Placements are in lexicographic order, so the first failure is the smallest.
    if let Some((p, _)) = all.iter().zip(&reports).find(|(_, r)| !r.confirms()) {
        println!(
            "FAIL local commutation: counterexample {} on board {board}, k={}",
            p.perm(),
            args.k
        );
        return Err(Failure::Counterexample);
    }
    let applicable = reports.iter().filter(|r| r.applicable).count();
    println!(
        "PASS local commutation: {} placements on board {board}, k={}, {applicable} with distinct sequences",
        all.len(),
        args.k
    );
    Ok(())
}

fn confluence(args: ConfluenceArgs) -> Result<(), Failure> {
    let seed = match (args.random_strategies, args.seed) {
        (0, seed) => seed.unwrap_or(0),
        (_, Some(seed)) => seed,
        (_, None) => return Err(Failure::Usage("--random-strategies requires --seed".into())),
    };
    let (board, all) = placements(&args.sweep)?;
    let k = args.sweep.k;
    let outcome = sweep(&all, |p| {
        confluence_check(p, k, args.random_strategies, seed).map(|r| r.agrees())
    })?;
    report_sweep(
        &format!("confluence over {} strategies", 3 + args.random_strategies),
        &board,
        k,
        &outcome,
    )
}

fn describe(check: &BijectionCheck) -> String {
    format!(
        "{} avoiders of {} map to {} avoiders of {}",
        check.domain_size,
        Permutation::decreasing_then_max(check.k),
        check.target_size,
        Permutation::decreasing(check.k)
    )
}

fn bijection(args: SweepArgs, symmetric: bool) -> Result<(), Failure> {
    let board = args.shape.board()?;
    let (what, check) = if symmetric {
        (
            "involution transfer",
            enumeration::verify_involution_transfer(&board, args.k)?,
        )
    } else {
        (
            "bijection",
            enumeration::verify_bwx_bijection(&board, args.k)?,
        )
    };
    if check.holds() {
        println!("PASS {what}: {} on board {board}", describe(&check));
        return Ok(());
    }
    println!(
        "FAIL {what}: {} on board {board} (injective: {}, onto: {}, symmetric images: {})",
        describe(&check),
        check.injective,
        check.image_is_target,
        check
            .preserves_symmetry
            .map_or("n/a".to_string(), |b| b.to_string())
    );
    if let Some(p) = smallest_failure(&board, args.k, symmetric)? {
        println!("smallest offending placement: {}", p.perm());
    }
    Err(Failure::Counterexample)
}

/// First domain placement whose image collides with another, leaves the target,
/// or loses symmetry.
fn smallest_failure(
    board: &Board,
    k: usize,
    symmetric: bool,
) -> Result<Option<Placement>, Failure> {
    let pool: Vec<Placement> = if symmetric {
        enumerate_symmetric_placements(board)?.collect()
    } else {
        enumerate_placements(board).collect()
    };
    let source = Permutation::decreasing_then_max(k);
    let sink = Permutation::decreasing(k);
    let mut seen = std::collections::HashSet::new();
    for p in pool.iter().filter(|p| !p.contains(&source)) {
        let q = ferrers_core::phi_star(p, k)?.0;
        if q.contains(&sink) || (symmetric && !q.is_symmetric()) || !seen.insert(q) {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

fn wilf(args: WilfArgs) -> Result<(), Failure> {
    let patterns = PatternSet::new(args.patterns)?;
    let r = enumeration::verify_wilf_set(usize::from(args.n), &patterns, args.k)?;
    let status = if r.equal { "PASS" } else { "FAIL" };
    println!(
        "{status} wilf: n={}, {} involutions avoid {}, {} avoid {}",
        r.n, r.count_t, r.patterns, r.count_t_prime, r.replaced
    );
    pass_or_fail(r.equal)
}

fn motzkin(args: MotzkinArgs) -> Result<(), Failure> {
    let report = enumeration::verify_motzkin_identities(usize::from(args.n_max))?;
    println!("n\tM_n\t{}", MOTZKIN_PATTERNS.join("\t"));
    for row in &report.rows {
        let counts: Vec<String> = row.counts.iter().map(u64::to_string).collect();
        println!("{}\t{}\t{}", row.n, row.motzkin, counts.join("\t"));
    }
    match report.rows.iter().find(|r| !r.holds()) {
        None => println!("PASS motzkin: n <= {}", args.n_max),
        Some(row) => println!("FAIL motzkin: first mismatch at n={}", row.n),
    }
    pass_or_fail(report.holds())
}
