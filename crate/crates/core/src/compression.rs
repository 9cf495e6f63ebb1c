//! From plain Almost 2-SAT down to the annotated problem.
//!
//! The reduction stack, outermost first:
//!
//! 1. [`solve_2asat`] splits repeated clauses apart when the input has any,
//!    then runs iterative compression over the clause prefixes
//!    `F_1, …, F_m`, carrying a culprit set of size at most `k`.
//! 2. [`solve_i2`] shrinks a culprit set of size `k + 1`: for every subset
//!    `E` kept in the new solution and every choice of one literal from each
//!    remaining clause, it asks [`solve_i1`].
//! 3. [`solve_i1`] makes a satisfiable formula satisfiable with respect to a
//!    literal set `L`. It splits every clause with a fresh variable and
//!    replaces the literals of `L` by two sentinels, which yields an
//!    annotated instance for [`crate::solver::find_cs`].

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use thiserror::Error;

use crate::formula::{satisfying_assignment, swrt, AslasatInstance, Clause, Formula, Lit, LiteralSet, Var};
use crate::solver::{find_cs_with, CsResult, SearchStats, SolveError, SolverOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompressionError {
    #[error("formula is not satisfiable")]
    NotSatisfiable,
    #[error("compression input violates its contract: {0}")]
    ContractViolation(&'static str),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("reduced instance failed validation")]
    InvalidReduction,
    #[error("returned deletion set does not make the formula satisfiable")]
    Unsound,
}

/// Aggregated counters over every search run during one solve.
#[derive(Clone, Copy, Default, Debug, PartialEq, Eq)]
pub struct SolveStats {
    pub find_cs_calls: u64,
    pub nodes: u64,
    pub leaves: u64,
    pub max_depth: usize,
    pub max_root_alpha: usize,
    pub max_root_beta: usize,
    /// Searches whose tree broke the leaf or depth bound. Expected to stay 0.
    pub bound_violations: u64,
    pub i1_calls: u64,
    pub i1_short_circuits: u64,
    pub i2_calls: u64,
    pub i2_combinations: u64,
    pub compression_steps: u64,
}

impl SolveStats {
    pub fn absorb(&mut self, s: &SearchStats) {
        self.find_cs_calls += 1;
        self.nodes += s.nodes;
        self.leaves += s.leaves;
        self.max_depth = self.max_depth.max(s.max_depth);
        self.max_root_alpha = self.max_root_alpha.max(s.root_alpha);
        self.max_root_beta = self.max_root_beta.max(s.root_beta);
        if !s.within_bounds() {
            self.bound_violations += 1;
        }
    }
}

/// Where the two clauses derived from input clause `i` live.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitEntry {
    /// The fresh variable `ℓ_i`.
    pub var: Var,
    /// Index of `(l' ∨ ℓ_i)` in the split formula.
    pub with_pos: usize,
    /// Index of `(¬ℓ_i ∨ l'')` in the split formula.
    pub with_neg: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitMap {
    entries: Vec<SplitEntry>,
}

impl SplitMap {
    pub fn entries(&self) -> &[SplitEntry] {
        &self.entries
    }

    /// Index of the input clause a derived clause came from.
    pub fn origin(&self, derived: usize) -> usize {
        derived / 2
    }

    /// Input clause `i` is deleted iff either of its halves is.
    pub fn map_back(&self, derived: &[usize]) -> Vec<usize> {
        let origins: BTreeSet<usize> = derived.iter().map(|&d| self.origin(d)).collect();
        origins.into_iter().collect()
    }
}

/// Replaces clause `i = (l' ∨ l'')` by `(l' ∨ ℓ_i)` and `(¬ℓ_i ∨ l'')`, where
/// `ℓ_i` is the fresh variable `first_fresh + i`. Repeated input clauses are
/// fine: the fresh literal makes every derived clause distinct.
pub fn split_clauses(clauses: &[Clause], first_fresh: u32) -> (Formula, SplitMap) {
    let mut out = Vec::with_capacity(2 * clauses.len());
    let mut entries = Vec::with_capacity(clauses.len());
    for (i, c) in clauses.iter().enumerate() {
        let var = Var(first_fresh + i as u32);
        out.push(Clause::new(c.a(), var.pos()));
        out.push(Clause::new(var.neg(), c.b()));
        entries.push(SplitEntry {
            var,
            with_pos: 2 * i,
            with_neg: 2 * i + 1,
        });
    }
    let f = Formula::new(out).expect("split clauses are distinct");
    (f, SplitMap { entries })
}

/// The annotated instance produced for an I1 input.
#[derive(Clone, Debug)]
pub struct I1Reduction {
    /// `(F*, {l*₁}, l*₂, k)`.
    pub instance: AslasatInstance,
    /// `l*₁`, standing in for the literals of `L` that the model satisfies.
    pub annotation_sentinel: Lit,
    /// `l*₂`, standing in for the literals of `L` that the model falsifies.
    pub pivot_sentinel: Lit,
    pub split: SplitMap,
    /// `L₁ = L ∩ P`.
    pub kept: Vec<Lit>,
    /// `L₂ = L ∖ L₁`.
    pub flipped: Vec<Lit>,
}

#[derive(Clone, Debug)]
pub enum I1Outcome {
    /// A model of `F` already contains `L`; nothing needs deleting.
    Empty,
    Reduced(I1Reduction),
}

/// Turns "delete at most `k` clauses of satisfiable `f` so that it becomes
/// satisfiable with respect to `l_set`" into an annotated instance.
pub fn reduce_i1(f: &Formula, l_set: &LiteralSet, k: usize) -> Result<I1Outcome, CompressionError> {
    let vars = f.vars();
    let l_set = LiteralSet::from_lits(l_set.iter().filter(|l| vars.contains(&l.var())))
        .expect("subset of a non-contradictory set");
    let model = satisfying_assignment(f, &LiteralSet::new()).ok_or(CompressionError::NotSatisfiable)?;
    if l_set.is_subset_of(&model) {
        return Ok(I1Outcome::Empty);
    }
    let (kept, flipped): (Vec<Lit>, Vec<Lit>) = l_set.iter().partition(|&l| model.contains(l));

    let fresh = f.var_bound();
    let (split_formula, split) = split_clauses(f.clauses(), fresh);
    let m = f.len() as u32;
    let annotation_sentinel = Var(fresh + m).pos();
    let pivot_sentinel = Var(fresh + m + 1).pos();

    let kept_set = LiteralSet::from_lits(kept.iter().copied()).expect("subset of L");
    let flipped_set = LiteralSet::from_lits(flipped.iter().copied()).expect("subset of L");
    let substitute = |l: Lit| {
        if kept_set.contains(l) {
            annotation_sentinel
        } else if kept_set.contains(!l) {
            !annotation_sentinel
        } else if flipped_set.contains(l) {
            pivot_sentinel
        } else if flipped_set.contains(!l) {
            !pivot_sentinel
        } else {
            l
        }
    };
    let clauses = split_formula
        .clauses()
        .iter()
        .map(|c| Clause::new(substitute(c.a()), substitute(c.b())))
        .collect();
    let reduced = Formula::new(clauses).map_err(|_| CompressionError::InvalidReduction)?;
    let instance = AslasatInstance::new(reduced, &[annotation_sentinel], pivot_sentinel, k)
        .map_err(|_| CompressionError::InvalidReduction)?;
    Ok(I1Outcome::Reduced(I1Reduction {
        instance,
        annotation_sentinel,
        pivot_sentinel,
        split,
        kept,
        flipped,
    }))
}

/// Problem I1: at most `k` clauses of satisfiable `f` whose deletion makes it
/// satisfiable with respect to `l_set`. Indices refer to `f`.
pub fn solve_i1(
    f: &Formula,
    l_set: &LiteralSet,
    k: usize,
    opts: &SolverOptions,
    stats: &mut SolveStats,
) -> Result<CsResult, CompressionError> {
    stats.i1_calls += 1;
    let reduction = match reduce_i1(f, l_set, k)? {
        I1Outcome::Empty => {
            stats.i1_short_circuits += 1;
            return Ok(CsResult::Found(Vec::new()));
        }
        I1Outcome::Reduced(r) => r,
    };
    let mut search = SearchStats::default();
    let found = find_cs_with(&reduction.instance, opts, &mut search);
    stats.absorb(&search);
    let CsResult::Found(derived) = found? else {
        return Ok(CsResult::No);
    };
    let s = reduction.split.map_back(&derived);
    if s.len() > derived.len() || !swrt(&f.without_indices(&s), l_set) {
        return Err(CompressionError::Unsound);
    }
    Ok(CsResult::Found(s))
}

/// Problem I2: given a culprit set `s` of size `k + 1` (`f ∖ s` satisfiable),
/// find one of size at most `k`. Indices refer to `f`.
///
/// Combinations are enumerated with the kept subset `E` by increasing size,
/// then lexicographically, and literal choices first-literal-first in the
/// order of `s`.
pub fn solve_i2(
    f: &Formula,
    s: &[usize],
    k: usize,
    opts: &SolverOptions,
    stats: &mut SolveStats,
) -> Result<CsResult, CompressionError> {
    stats.i2_calls += 1;
    if s.len() != k + 1 {
        return Err(CompressionError::ContractViolation("|S| must equal k + 1"));
    }
    let distinct: BTreeSet<usize> = s.iter().copied().collect();
    if distinct.len() != s.len() || s.iter().any(|&i| i >= f.len()) {
        return Err(CompressionError::ContractViolation("S must be distinct clauses of F"));
    }
    let survivors: Vec<usize> = (0..f.len()).filter(|i| !distinct.contains(i)).collect();
    let rest = f.without_indices(s);
    if !swrt(&rest, &LiteralSet::new()) {
        return Err(CompressionError::ContractViolation("F ∖ S must be satisfiable"));
    }

    let mut combos = 0u64;
    for e_size in 0..=k.min(s.len()) {
        let mut e_pos: Vec<usize> = (0..e_size).collect();
        loop {
            let chosen: Vec<Clause> = (0..s.len())
                .filter(|p| !e_pos.contains(p))
                .map(|p| f.clauses()[s[p]])
                .collect();
            let mut picked = LiteralSet::new();
            let found = choose_literals(&chosen, 0, &mut picked, &mut |l_set| {
                combos += 1;
                solve_i1(&rest, l_set, k - e_size, opts, stats)
            })?;
            if let Some(sub) = found {
                let mut y: Vec<usize> = e_pos.iter().map(|&p| s[p]).collect();
                y.extend(sub.into_iter().map(|i| survivors[i]));
                y.sort_unstable();
                stats.i2_combinations += combos;
                debug_assert!(y.len() <= k);
                return Ok(CsResult::Found(y));
            }
            if !next_combination(&mut e_pos, s.len()) {
                break;
            }
        }
    }
    stats.i2_combinations += combos;
    debug_assert!(combos <= 3u64.saturating_pow(s.len() as u32));
    Ok(CsResult::No)
}

/// Depth-first over one literal per clause; contradictory prefixes are cut.
fn choose_literals(
    clauses: &[Clause],
    at: usize,
    picked: &mut LiteralSet,
    visit: &mut dyn FnMut(&LiteralSet) -> Result<CsResult, CompressionError>,
) -> Result<Option<Vec<usize>>, CompressionError> {
    let Some(c) = clauses.get(at) else {
        return Ok(match visit(picked)? {
            CsResult::Found(s) => Some(s),
            CsResult::No => None,
        });
    };
    let options: &[Lit] = if c.is_unit() { &[c.a()][..] } else { &[c.a(), c.b()][..] };
    for &l in options {
        let mut next = picked.clone();
        if next.insert(l).is_err() {
            continue;
        }
        if let Some(found) = choose_literals(clauses, at + 1, &mut next, visit)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Advances `pos` to the next `pos.len()`-subset of `0..n` in lexicographic order.
fn next_combination(pos: &mut [usize], n: usize) -> bool {
    let r = pos.len();
    let Some(i) = (0..r).rev().find(|&i| pos[i] < n - r + i) else {
        return false;
    };
    pos[i] += 1;
    for j in i + 1..r {
        pos[j] = pos[j - 1] + 1;
    }
    true
}

/// Parameterized Almost 2-SAT with default solver options.
pub fn solve_2asat(clauses: &[Clause], k: usize, stats: &mut SolveStats) -> Result<CsResult, CompressionError> {
    solve_2asat_with(clauses, k, &SolverOptions::default(), stats)
}

/// At most `k` positions of `clauses` (0-based, ascending) whose deletion
/// leaves the rest satisfiable. Repeated clauses are allowed.
pub fn solve_2asat_with(
    clauses: &[Clause],
    k: usize,
    opts: &SolverOptions,
    stats: &mut SolveStats,
) -> Result<CsResult, CompressionError> {
    let mut seen = BTreeSet::new();
    let repeats = clauses.iter().any(|c| !seen.insert(*c));
    if !repeats {
        let f = Formula::new(clauses.to_vec()).expect("checked distinct");
        return compress(&f, k, opts, stats);
    }
    let fresh = clauses.iter().map(|c| c.max_var().0 + 1).max().unwrap_or(0);
    let (split, map) = split_clauses(clauses, fresh);
    Ok(match compress(&split, k, opts, stats)? {
        CsResult::Found(derived) => CsResult::Found(map.map_back(&derived)),
        CsResult::No => CsResult::No,
    })
}

/// Iterative compression over the prefixes of a formula with distinct clauses.
fn compress(f: &Formula, k: usize, opts: &SolverOptions, stats: &mut SolveStats) -> Result<CsResult, CompressionError> {
    let mut solution: Vec<usize> = Vec::new();
    for i in 0..f.len() {
        stats.compression_steps += 1;
        let prefix = Formula::new(f.clauses()[..=i].to_vec()).expect("prefix of a distinct formula");
        let mut grown = solution.clone();
        grown.push(i);
        solution = if grown.len() <= k {
            grown
        } else {
            match solve_i2(&prefix, &grown, k, opts, stats)? {
                CsResult::Found(y) => y,
                CsResult::No => return Ok(CsResult::No),
            }
        };
        if solution.len() > k || !swrt(&prefix.without_indices(&solution), &LiteralSet::new()) {
            return Err(CompressionError::Unsound);
        }
    }
    solution.sort_unstable();
    Ok(CsResult::Found(solution))
}
