use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use a2sat_core::oracle::{brute_scs, brute_separator, brute_swrt, OracleError, MAX_VARS};
use a2sat_core::{
    find_cs_with, solve_2asat_with, swrt, AslasatInstance, Clause, CompressionError, CsResult, DuplicateClause,
    Formula, LiteralSet, SearchStats, SolveError, SolveStats, SolverOptions, ValidationError,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::dimacs::{parse, render, InputDocument, ParseError};
use crate::generate::{generate, GenError, GenParams};

pub const EXIT_FOUND: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "a2sat",
    version,
    about = "Parameterized Almost 2-SAT: delete at most k clauses to make a 2-CNF satisfiable"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a DIMACS file. With `t` and `a` lines the annotated problem is solved directly.
    Solve(SolveArgs),
    /// Print a seeded random instance with a planted deletion set.
    Gen(GenArgs),
    /// Exhaustive reference answers for small files.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Input file, or `-` for standard input.
    #[arg(long)]
    pub cnf: PathBuf,
    /// Deletion budget; with --sweep, the largest budget tried.
    #[arg(short = 'k')]
    pub k: usize,
    /// Re-check a found deletion before printing it.
    #[arg(long)]
    pub verify: bool,
    /// Append a `c stats` JSON line.
    #[arg(long)]
    pub stats: bool,
    /// Try k = 0, 1, 2, ... and report the first budget that works.
    #[arg(long)]
    pub sweep: bool,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub vars: u32,
    #[arg(long)]
    pub clauses: usize,
    #[arg(long)]
    pub planted_k: usize,
    /// Draw clauses with replacement.
    #[arg(long)]
    pub allow_repeats: bool,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    pub query: OracleQuery,
    #[arg(long)]
    pub cnf: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleQuery {
    /// Smallest deletion set (respecting `a`/`t` lines when present).
    Scs,
    /// Separator size and disjoint path count from ¬L to ¬pivot.
    Sep,
    /// Satisfiability with respect to the annotation literals.
    Swrt,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("annotation literals need a pivot line")]
    AnnotationWithoutPivot,
    #[error("clause {} repeats an earlier clause; this mode needs distinct clauses", .0.index + 1)]
    Duplicate(DuplicateClause),
    #[error("invalid annotated instance: {0}")]
    Invalid(#[from] ValidationError),
    #[error("this query needs `a` and `t` lines")]
    NeedsAnnotation,
    #[error(transparent)]
    Search(#[from] SolveError),
    #[error(transparent)]
    Compression(#[from] CompressionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Generate(#[from] GenError),
    #[error("verification failed: {0}")]
    Verify(&'static str),
    #[error("writing output: {0}")]
    Output(io::Error),
}

/// Runs one command; returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Solve(args) => solve_command(&args, out, err),
        Command::Gen(args) => gen_command(&args, out),
        Command::Oracle(args) => oracle_command(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn read_document(path: &Path) -> Result<InputDocument, CliError> {
    let shown = path.display().to_string();
    let io_err = |source| CliError::Io {
        path: shown.clone(),
        source,
    };
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(io_err)?
    };
    parse(&text).map_err(|source| CliError::Parse { path: shown, source })
}

#[derive(Serialize)]
struct AnnotatedStats {
    mode: &'static str,
    k: usize,
    nodes: u64,
    leaves: u64,
    max_depth: usize,
    root_alpha: usize,
    root_beta: usize,
    within_bounds: bool,
}

impl AnnotatedStats {
    fn new(s: &SearchStats) -> Self {
        AnnotatedStats {
            mode: "annotated",
            k: s.k,
            nodes: s.nodes,
            leaves: s.leaves,
            max_depth: s.max_depth,
            root_alpha: s.root_alpha,
            root_beta: s.root_beta,
            within_bounds: s.within_bounds(),
        }
    }
}

/// Totals over every search run by one plain solve; alpha and beta are maxima.
#[derive(Serialize)]
struct PlainStats {
    mode: &'static str,
    k: usize,
    nodes: u64,
    leaves: u64,
    max_depth: usize,
    root_alpha: usize,
    root_beta: usize,
    find_cs_calls: u64,
    i1_calls: u64,
    i1_short_circuits: u64,
    i2_calls: u64,
    i2_combinations: u64,
    compression_steps: u64,
    bound_violations: u64,
}

impl PlainStats {
    fn new(k: usize, s: &SolveStats) -> Self {
        PlainStats {
            mode: "plain",
            k,
            nodes: s.nodes,
            leaves: s.leaves,
            max_depth: s.max_depth,
            root_alpha: s.max_root_alpha,
            root_beta: s.max_root_beta,
            find_cs_calls: s.find_cs_calls,
            i1_calls: s.i1_calls,
            i1_short_circuits: s.i1_short_circuits,
            i2_calls: s.i2_calls,
            i2_combinations: s.i2_combinations,
            compression_steps: s.compression_steps,
            bound_violations: s.bound_violations,
        }
    }
}

/// One solve at a fixed budget: the answer plus its stats line.
struct Attempt {
    result: CsResult,
    stats_json: String,
}

fn attempt(doc: &InputDocument, annotated: Option<&AslasatInstance>, k: usize) -> Result<Attempt, CliError> {
    // The measure checks cost a flow per node; the final answer is re-verified anyway.
    let opts = SolverOptions {
        check_measures: false,
        ..SolverOptions::default()
    };
    match annotated {
        Some(inst) => {
            let mut stats = SearchStats::default();
            let result = find_cs_with(&inst.with_k(k), &opts, &mut stats)?;
            let stats_json = serde_json::to_string(&AnnotatedStats::new(&stats)).expect("plain struct");
            Ok(Attempt { result, stats_json })
        }
        None => {
            let mut stats = SolveStats::default();
            let result = solve_2asat_with(&doc.clauses, k, &opts, &mut stats)?;
            let stats_json = serde_json::to_string(&PlainStats::new(k, &stats)).expect("plain struct");
            Ok(Attempt { result, stats_json })
        }
    }
}

fn annotated_instance(doc: &InputDocument) -> Result<Option<AslasatInstance>, CliError> {
    let Some(pivot) = doc.pivot else {
        if !doc.annotation.is_empty() {
            return Err(CliError::AnnotationWithoutPivot);
        }
        return Ok(None);
    };
    let f = Formula::new(doc.clauses.clone()).map_err(CliError::Duplicate)?;
    Ok(Some(AslasatInstance::new(f, &doc.annotation, pivot, 0)?))
}

fn solve_command(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let doc = read_document(&args.cnf)?;
    let inst = annotated_instance(&doc)?;
    let budgets: Vec<usize> = if args.sweep {
        (0..=args.k).collect()
    } else {
        vec![args.k]
    };

    let mut last = None;
    for &k in &budgets {
        let a = attempt(&doc, inst.as_ref(), k)?;
        let done = a.result.is_found();
        last = Some(a);
        if done {
            break;
        }
    }
    let last = last.expect("at least one budget");

    let mut text = String::new();
    let code = match &last.result {
        CsResult::Found(s) => {
            if args.verify {
                let how = verify(&doc, inst.as_ref(), s)?;
                let _ = writeln!(err, "verified: {how}");
            }
            let shown: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
            text.push_str(&format!("CS {}\n{}\n", s.len(), shown.join(" ")));
            EXIT_FOUND
        }
        CsResult::No => {
            text.push_str("NO\n");
            EXIT_NO
        }
    };
    if args.stats {
        text.push_str(&format!("c stats {}\n", last.stats_json));
    }
    out.write_all(text.as_bytes()).map_err(CliError::Output)?;
    Ok(code)
}

/// Re-checks a deletion independently of the solver's own final check:
/// by SCC on the remaining clauses, and by enumeration when small enough.
fn verify(doc: &InputDocument, inst: Option<&AslasatInstance>, s: &[usize]) -> Result<&'static str, CliError> {
    let kept: Vec<Clause> = doc
        .clauses
        .iter()
        .enumerate()
        .filter(|(i, _)| s.binary_search(i).is_err())
        .map(|(_, &c)| c)
        .collect();
    let mut distinct = kept.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let rest = Formula::new(distinct).expect("deduplicated");
    let target = match inst {
        Some(inst) => inst
            .l_set()
            .with(inst.pivot())
            .map_err(|_| CliError::Verify("pivot contradicts the annotation"))?,
        None => LiteralSet::new(),
    };
    if !swrt(&rest, &target) {
        return Err(CliError::Verify("remaining clauses are not satisfiable"));
    }
    if rest.vars().union(&target.vars()).count() > MAX_VARS {
        return Ok("scc");
    }
    if !brute_swrt(&rest, &target)? {
        return Err(CliError::Verify("enumeration finds no satisfying assignment"));
    }
    Ok("scc and enumeration")
}

fn gen_command(args: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let doc = generate(&GenParams {
        seed: args.seed,
        vars: args.vars,
        clauses: args.clauses,
        planted_k: args.planted_k,
        allow_repeats: args.allow_repeats,
    })?;
    let text = format!(
        "c a2sat gen seed={} vars={} clauses={} planted-k={}{}\n{}",
        args.seed,
        args.vars,
        args.clauses,
        args.planted_k,
        if args.allow_repeats { " allow-repeats" } else { "" },
        render(&doc)
    );
    out.write_all(text.as_bytes()).map_err(CliError::Output)?;
    Ok(EXIT_FOUND)
}

fn oracle_command(args: &OracleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let doc = read_document(&args.cnf)?;
    let l_set = LiteralSet::from_lits(doc.annotation.iter().copied())
        .map_err(|c| CliError::Invalid(ValidationError::ContradictoryL(c.0)))?;
    let text = match args.query {
        OracleQuery::Swrt => {
            let f = distinct_formula(&doc)?;
            format!("SWRT {}\n", brute_swrt(&f, &l_set)?)
        }
        OracleQuery::Scs => {
            if doc.pivot.is_none() && !doc.annotation.is_empty() {
                return Err(CliError::AnnotationWithoutPivot);
            }
            let f = distinct_formula(&doc)?;
            let s = brute_scs(&f, &l_set, doc.pivot)?;
            let shown: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
            format!("SCS {}\n{}\n", s.len(), shown.join(" "))
        }
        OracleQuery::Sep => {
            let pivot = doc.pivot.ok_or(CliError::NeedsAnnotation)?;
            let f = distinct_formula(&doc)?;
            let (cut, paths) = brute_separator(&f, &l_set.negated(), !pivot)?;
            format!("SEP {cut} {paths}\n")
        }
    };
    out.write_all(text.as_bytes()).map_err(CliError::Output)?;
    Ok(EXIT_FOUND)
}

fn distinct_formula(doc: &InputDocument) -> Result<Formula, CliError> {
    Formula::new(doc.clauses.clone()).map_err(CliError::Duplicate)
}
