//! Exhaustive reference implementations for small inputs.
//!
//! Nothing here shares code with the solver: satisfiability is decided by
//! trying every assignment, walks are followed clause by clause, and
//! separators are found by trying every clause subset. Each function refuses
//! inputs past a fixed size instead of running for hours.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use thiserror::Error;

use crate::formula::{Clause, Formula, Lit, LiteralSet, Var};

pub const MAX_VARS: usize = 24;
pub const MAX_SCS_CLAUSES: usize = 12;
pub const MAX_SEPARATOR_CLAUSES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("input too large for exhaustive search: {what} = {got}, limit {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("literal set contains {0} and its negation")]
    Contradictory(Lit),
    #[error("sink {0} shares its variable with the sources")]
    SinkInSources(Lit),
}

fn guard(what: &'static str, got: usize, limit: usize) -> Result<(), OracleError> {
    if got > limit {
        return Err(OracleError::TooLarge { what, got, limit });
    }
    Ok(())
}

/// Every satisfying assignment of a clause list over a fixed variable list,
/// found by trying all `2^n` assignments. Bit `i` of a model is the value
/// of `vars[i]`.
#[derive(Clone, Debug)]
pub struct ModelTable {
    vars: Vec<Var>,
    models: Vec<u32>,
}

impl ModelTable {
    /// Enumerates over the variables of `clauses` plus `extra`.
    pub fn new(clauses: &[Clause], extra: impl IntoIterator<Item = Var>) -> Result<ModelTable, OracleError> {
        let vars: Vec<Var> = clauses
            .iter()
            .flat_map(|c| c.lits())
            .map(Lit::var)
            .chain(extra)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        guard("variables", vars.len(), MAX_VARS)?;
        let slot = |v: Var| vars.binary_search(&v).expect("variable in table");
        let masks: Vec<(u32, u32)> = clauses
            .iter()
            .map(|c| {
                c.lits().iter().fold((0, 0), |(pos, neg), &l| {
                    let bit = 1u32 << slot(l.var());
                    if l.is_positive() {
                        (pos | bit, neg)
                    } else {
                        (pos, neg | bit)
                    }
                })
            })
            .collect();
        let models = (0u32..1 << vars.len())
            .filter(|&bits| masks.iter().all(|&(pos, neg)| bits & pos != 0 || !bits & neg != 0))
            .collect();
        Ok(ModelTable { vars, models })
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn models(&self) -> &[u32] {
        &self.models
    }

    /// Is some model consistent with every literal of `lits`? Literals on
    /// variables outside the table constrain nothing.
    pub fn admits(&self, lits: impl IntoIterator<Item = Lit>) -> Result<bool, OracleError> {
        let (mut ones, mut zeros) = (0u32, 0u32);
        for l in lits {
            let Ok(i) = self.vars.binary_search(&l.var()) else {
                continue;
            };
            if l.is_positive() {
                ones |= 1 << i;
            } else {
                zeros |= 1 << i;
            }
        }
        if let Some(i) = (0..self.vars.len()).find(|&i| ones & zeros & (1 << i) != 0) {
            return Err(OracleError::Contradictory(self.vars[i].pos()));
        }
        Ok(self.models.iter().any(|&m| m & ones == ones && m & zeros == 0))
    }
}

/// Is there an assignment satisfying every clause of `clauses` and every
/// literal of `lits`? Tries all assignments of the variables involved.
fn satisfiable(clauses: &[Clause], lits: &[Lit]) -> Result<bool, OracleError> {
    ModelTable::new(clauses, lits.iter().map(|l| l.var()))?.admits(lits.iter().copied())
}

/// `SWRT(f, l_set)` by enumeration.
pub fn brute_swrt(f: &Formula, l_set: &LiteralSet) -> Result<bool, OracleError> {
    let lits: Vec<Lit> = l_set.iter().collect();
    satisfiable(f.clauses(), &lits)
}

/// A smallest set of clause indices whose deletion makes `f` satisfiable
/// with respect to `l_set` plus the optional pivot. Among sets of that size
/// the lexicographically first is returned.
pub fn brute_scs(f: &Formula, l_set: &LiteralSet, pivot: Option<Lit>) -> Result<Vec<usize>, OracleError> {
    guard("clauses", f.len(), MAX_SCS_CLAUSES)?;
    let mut lits: Vec<Lit> = l_set.iter().collect();
    if let Some(p) = pivot {
        if l_set.contains(!p) {
            return Err(OracleError::Contradictory(p));
        }
        lits.push(p);
    }
    let m = f.len();
    let mut subsets: Vec<u32> = (0u32..1 << m).collect();
    subsets.sort_by_key(|&s| (s.count_ones(), indices(s)));
    for s in subsets {
        let kept: Vec<Clause> = (0..m).filter(|&i| s & (1 << i) == 0).map(|i| f.clauses()[i]).collect();
        if satisfiable(&kept, &lits)? {
            return Ok(indices(s));
        }
    }
    unreachable!("deleting every clause leaves a consistent literal set satisfiable")
}

fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

/// Length of a shortest walk of `f` from a literal of `sources` to `target`.
///
/// A walk `(l1 ∨ l2), (¬l2 ∨ l3), …` is followed directly: layer `i` holds
/// the last literals of all walks with `i` clauses.
pub fn brute_shortest_walk(f: &Formula, sources: &[Lit], target: Lit) -> Option<usize> {
    let mut layer: BTreeSet<Lit> = BTreeSet::new();
    for c in f.clauses() {
        for &s in sources {
            if let Some(other) = c.other(s) {
                layer.insert(other);
            }
        }
    }
    let limit = 2 * f.vars().len() + 2;
    for len in 1..=limit {
        if layer.contains(&target) {
            return Some(len);
        }
        let mut next = BTreeSet::new();
        for c in f.clauses() {
            for &last in &layer {
                if let Some(other) = c.other(!last) {
                    next.insert(other);
                }
            }
        }
        layer = next;
    }
    None
}

/// `(SepSize(f, sources, sink), maximum number of clause-disjoint paths)`.
///
/// Paths are enumerated as clause-distinct walks from a literal of `sources`
/// that stop at the first arrival at `sink`. The separator is the smallest
/// clause set hitting every path; the packing is searched exactly over the
/// remaining-clause bitmask.
pub fn brute_separator(f: &Formula, sources: &LiteralSet, sink: Lit) -> Result<(usize, usize), OracleError> {
    guard("clauses", f.len(), MAX_SEPARATOR_CLAUSES)?;
    if sources.contains_var(sink.var()) {
        return Err(OracleError::SinkInSources(sink));
    }
    let mut paths: BTreeSet<u32> = BTreeSet::new();
    for s in sources.iter() {
        // The walk's first clause contains `s`; its next literal is the other one.
        for (i, c) in f.clauses().iter().enumerate() {
            if let Some(other) = c.other(s) {
                collect_paths(f.clauses(), other, 1 << i, sink, &mut paths);
            }
        }
    }
    let paths: Vec<u32> = paths.into_iter().collect();

    let m = f.len();
    let separator = (0u32..1 << m)
        .filter(|&cut| paths.iter().all(|&p| p & cut != 0))
        .map(u32::count_ones)
        .min()
        .unwrap_or(0) as usize;

    let mut memo = BTreeMap::new();
    let packing = best_packing(&paths, (1u32 << m) - 1, &mut memo);
    Ok((separator, packing))
}

fn collect_paths(clauses: &[Clause], last: Lit, used: u32, sink: Lit, out: &mut BTreeSet<u32>) {
    if last == sink {
        out.insert(used);
        return;
    }
    for (i, c) in clauses.iter().enumerate() {
        if used & (1 << i) != 0 {
            continue;
        }
        if let Some(other) = c.other(!last) {
            collect_paths(clauses, other, used | 1 << i, sink, out);
        }
    }
}

/// Most pairwise disjoint members of `paths` inside `avail`.
fn best_packing(paths: &[u32], avail: u32, memo: &mut BTreeMap<u32, usize>) -> usize {
    if let Some(&v) = memo.get(&avail) {
        return v;
    }
    let inside: Vec<u32> = paths.iter().copied().filter(|&p| p & !avail == 0).collect();
    let union = inside.iter().fold(0, |acc, &p| acc | p);
    let best = if union == 0 {
        0
    } else {
        // Either the lowest clause still in play is unused, or one path through it is taken.
        let low = union & union.wrapping_neg();
        let mut best = best_packing(&inside, avail & !low, memo);
        for &p in inside.iter().filter(|&&p| p & low != 0) {
            best = best.max(1 + best_packing(&inside, avail & !p, memo));
        }
        best
    };
    memo.insert(avail, best);
    best
}
