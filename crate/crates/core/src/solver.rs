//! Branching search for the parameterized annotated problem.
//!
//! Given a valid instance `(F, L, l, k)`, [`find_cs`] returns a set of at most
//! `k` clauses whose removal makes `F` satisfiable with respect to `L ∪ {l}`,
//! or reports that none exists. Each search node either answers directly
//! (already satisfiable, budget exhausted, budget covers every clause,
//! separator lower bound above budget) or picks one clause and branches on
//! how that clause is handled:
//!
//! - both literals already falsified by `L ∪ {l}`: the clause must go;
//! - neither literal falsified: force the first, force the second, or delete;
//! - exactly one falsified: force the other one or delete, except that a
//!   neutral literal is forced without branching.
//!
//! Branches are tried in that order and the first success is returned, so a
//! search is deterministic.
//!
//! The search tree stays within `√5^β` leaves and `α` levels, where
//! `α = |Var(F) ∖ Var(L)| + k` and `β = max(0, 2k − SepSize(F, ¬L, ¬l))`.
//! [`SearchStats`] records both so callers can check them.

use alloc::vec::Vec;

use thiserror::Error;

use crate::formula::{AslasatInstance, Formula, Lit, LiteralSet};
use crate::igraph::{bfs_arcs, two_sat, ClauseMask, ImplicationGraph, LitMask};
use crate::separation::{max_flow_bounded, SeparatorSize};

/// Outcome of a bounded culprit-set search.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CsResult {
    /// Sorted indices of the clauses to delete.
    Found(Vec<usize>),
    No,
}

impl CsResult {
    pub fn is_found(&self) -> bool {
        matches!(self, CsResult::Found(_))
    }

    pub fn indices(&self) -> Option<&[usize]> {
        match self {
            CsResult::Found(s) => Some(s),
            CsResult::No => None,
        }
    }

    pub fn clauses(&self, f: &Formula) -> Option<Vec<crate::formula::Clause>> {
        self.indices().map(|s| s.iter().map(|&i| f.clauses()[i]).collect())
    }
}

/// Search-tree counters for one [`find_cs`] call.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub struct SearchStats {
    pub nodes: u64,
    pub leaves: u64,
    /// Depth of the deepest node; the root has depth 0.
    pub max_depth: usize,
    pub root_alpha: usize,
    pub root_beta: usize,
    pub k: usize,
}

impl SearchStats {
    /// `leaves ≤ √5^root_beta`, checked exactly as `leaves² ≤ 5^root_beta`.
    pub fn leaf_bound_holds(&self) -> bool {
        let Ok(beta) = u32::try_from(self.root_beta) else {
            return true;
        };
        match 5u128.checked_pow(beta) {
            Some(bound) => u128::from(self.leaves) * u128::from(self.leaves) <= bound,
            None => true,
        }
    }

    pub fn depth_bound_holds(&self) -> bool {
        self.max_depth <= self.root_alpha
    }

    pub fn within_bounds(&self) -> bool {
        self.leaf_bound_holds() && self.depth_bound_holds() && self.root_beta <= 2 * self.k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Recompute α and β at every child and assert that they shrink as the
    /// analysis requires. Costs one extra flow computation per node.
    pub check_measures: bool,
    /// Abort instead of recursing deeper than this.
    pub depth_limit: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            check_measures: cfg!(debug_assertions),
            depth_limit: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no clause qualifies for branching")]
    NoSelectableClause,
    #[error("search depth exceeded the limit of {0}")]
    DepthLimit(usize),
    #[error("returned deletion set does not make the instance satisfiable")]
    Unsound,
}

/// Which selection rule produced the branching clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelectRule {
    /// First clause of a shortest walk from `¬L` to `¬l`.
    FromAnnotation,
    /// A clause of a walk from `¬l` to `¬l` satisfied twice by a model of `F`.
    SelfWalk,
}

/// The branching clause with its literals in role order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Selection {
    pub clause: usize,
    pub l1: Lit,
    pub l2: Lit,
    pub rule: SelectRule,
}

/// Picks the branching clause for `(f, l_set, pivot)`.
///
/// Requires `SWRT(f, L ∪ {pivot})` to be false.
pub fn select_clause(f: &Formula, l_set: &LiteralSet, pivot: Lit) -> Result<Selection, SolveError> {
    let g = ImplicationGraph::new(f, l_set.var_bound().max(pivot.var().0 + 1));
    let mut lset = LitMask::new(g.var_bound());
    for l in l_set.iter() {
        lset.insert(l);
    }
    select(&g, &ClauseMask::full(f.len()), &lset, pivot)
}

fn select(g: &ImplicationGraph, mask: &ClauseMask, lset: &LitMask, pivot: Lit) -> Result<Selection, SolveError> {
    // A walk from ¬L starts, in D, at a node of L.
    if let Some(ids) = bfs_arcs(g, mask, lset.iter(), !pivot) {
        let arc = g.arc(ids[0]);
        let (l1, l2) = (!arc.tail, arc.head);
        debug_assert!(lset.contains(!l1) && !lset.contains_var(l2.var()));
        return Ok(Selection {
            clause: arc.clause,
            l1,
            l2,
            rule: SelectRule::FromAnnotation,
        });
    }
    let model = two_sat(g, mask, lset).ok_or(SolveError::NoSelectableClause)?;
    let holds = |l: Lit| model[l.var().index()] == l.is_positive();
    let walk = bfs_arcs(g, mask, [pivot], !pivot).ok_or(SolveError::NoSelectableClause)?;
    walk.into_iter()
        .map(|id| g.arc(id).clause)
        .find(|&c| g.clauses()[c].lits().into_iter().all(holds))
        .map(|clause| {
            let c = g.clauses()[clause];
            Selection {
                clause,
                l1: c.a(),
                l2: c.b(),
                rule: SelectRule::SelfWalk,
            }
        })
        .ok_or(SolveError::NoSelectableClause)
}

/// Runs the branching search with default options.
pub fn find_cs(inst: &AslasatInstance, stats: &mut SearchStats) -> Result<CsResult, SolveError> {
    find_cs_with(inst, &SolverOptions::default(), stats)
}

/// Runs the branching search. `stats` is overwritten with this call's counters.
///
/// The instance type guarantees validity, so only internal failures are
/// reported as errors; a returned set is always re-checked before it is
/// handed back.
pub fn find_cs_with(
    inst: &AslasatInstance,
    opts: &SolverOptions,
    stats: &mut SearchStats,
) -> Result<CsResult, SolveError> {
    let f = inst.formula();
    let pivot = inst.pivot();
    let g = ImplicationGraph::new(f, inst.l_set().var_bound().max(pivot.var().0 + 1));
    let mut lset = LitMask::new(g.var_bound());
    for l in inst.l_set().iter() {
        lset.insert(l);
    }
    let root = Node {
        mask: ClauseMask::full(f.len()),
        lset,
        k: inst.k(),
    };

    *stats = SearchStats {
        k: inst.k(),
        ..SearchStats::default()
    };
    let mut search = Search {
        g: &g,
        pivot,
        opts,
        stats,
    };
    let root_measures = search.measures(&root);
    search.stats.root_alpha = root_measures.alpha;
    search.stats.root_beta = root_measures.beta;

    let outcome = search.solve(&root, 0, None)?;
    let result = match outcome {
        Some(mut s) => {
            s.sort_unstable();
            s.dedup();
            let target = inst
                .l_set()
                .with(pivot)
                .expect("pivot variable is outside the annotation");
            if s.len() > inst.k() || !crate::formula::swrt(&f.without_indices(&s), &target) {
                return Err(SolveError::Unsound);
            }
            CsResult::Found(s)
        }
        None => CsResult::No,
    };
    Ok(result)
}

#[derive(Clone)]
struct Node {
    mask: ClauseMask,
    lset: LitMask,
    k: usize,
}

impl Node {
    fn extend(&self, l: Lit) -> Node {
        let mut lset = self.lset.clone();
        lset.insert(l);
        Node {
            mask: self.mask.clone(),
            lset,
            k: self.k,
        }
    }

    fn delete(&self, clause: usize) -> Node {
        Node {
            mask: self.mask.without(clause),
            lset: self.lset.clone(),
            k: self.k - 1,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Measures {
    alpha: usize,
    beta: usize,
}

/// What a child must satisfy relative to its parent's measures.
#[derive(Clone, Copy)]
struct ParentBound {
    measures: Measures,
    strict_beta: bool,
}

struct Search<'a> {
    g: &'a ImplicationGraph,
    pivot: Lit,
    opts: &'a SolverOptions,
    stats: &'a mut SearchStats,
}

type Outcome = Option<Vec<usize>>;

impl Search<'_> {
    fn measures(&self, node: &Node) -> Measures {
        let mut in_formula = alloc::vec![false; self.g.var_bound() as usize];
        for c in node.mask.alive_indices() {
            for l in self.g.clauses()[c].lits() {
                in_formula[l.var().index()] = true;
            }
        }
        let free = in_formula
            .iter()
            .enumerate()
            .filter(|&(v, &present)| present && !node.lset.contains_var(crate::formula::Var(v as u32)))
            .count();
        let sources: Vec<Lit> = node.lset.iter().collect();
        let beta = match max_flow_bounded(self.g, &node.mask, &sources, !self.pivot, 2 * node.k) {
            SeparatorSize::Exact(s) => 2 * node.k - s,
            SeparatorSize::ExceedsBound(_) => 0,
        };
        Measures {
            alpha: free + node.k,
            beta,
        }
    }

    fn leaf(&mut self, outcome: Outcome) -> Result<Outcome, SolveError> {
        self.stats.leaves += 1;
        Ok(outcome)
    }

    fn child(&mut self, node: &Node, depth: usize, bound: ParentBound) -> Result<Outcome, SolveError> {
        self.solve(node, depth + 1, Some(bound))
    }

    fn solve(&mut self, node: &Node, depth: usize, parent: Option<ParentBound>) -> Result<Outcome, SolveError> {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        if depth > self.opts.depth_limit {
            return Err(SolveError::DepthLimit(self.opts.depth_limit));
        }
        let here = if self.opts.check_measures {
            Some(self.measures(node))
        } else {
            None
        };
        if let (Some(p), Some(m)) = (parent, here) {
            assert!(
                m.alpha < p.measures.alpha,
                "alpha did not decrease: {} -> {}",
                p.measures.alpha,
                m.alpha
            );
            if p.strict_beta {
                assert!(
                    m.beta < p.measures.beta,
                    "beta did not decrease: {} -> {}",
                    p.measures.beta,
                    m.beta
                );
            } else {
                assert!(
                    m.beta <= p.measures.beta,
                    "beta increased: {} -> {}",
                    p.measures.beta,
                    m.beta
                );
            }
        }

        // 1. Already satisfiable with respect to L ∪ {l}.
        let mut target = node.lset.clone();
        target.insert(self.pivot);
        if two_sat(self.g, &node.mask, &target).is_some() {
            return self.leaf(Some(Vec::new()));
        }
        // 2. No budget left.
        if node.k == 0 {
            return self.leaf(None);
        }
        // 3. The budget covers every remaining clause.
        if node.k >= node.mask.len() {
            return self.leaf(Some(node.mask.alive_indices().collect()));
        }
        // 4. Every culprit set is at least as large as SepSize(F, ¬L, ¬l).
        let sources: Vec<Lit> = node.lset.iter().collect();
        if let SeparatorSize::ExceedsBound(_) = max_flow_bounded(self.g, &node.mask, &sources, !self.pivot, node.k) {
            return self.leaf(None);
        }

        // 5/6. Pick the branching clause.
        let sel = select(self.g, &node.mask, &node.lset, self.pivot)?;
        let falsified = |l: Lit| node.lset.contains(!l) || l == !self.pivot;
        let bound = |strict_beta: bool| ParentBound {
            measures: here.unwrap_or(Measures { alpha: 0, beta: 0 }),
            strict_beta,
        };
        let (f1, f2) = (falsified(sel.l1), falsified(sel.l2));

        if f1 && f2 {
            // 7. The clause cannot be satisfied: delete it.
            return Ok(self
                .child(&node.delete(sel.clause), depth, bound(true))?
                .map(|s| with(s, sel.clause)));
        }
        if !f1 && !f2 {
            // 8. Satisfy it through l1, through l2, or delete it.
            if let Some(s) = self.child(&node.extend(sel.l1), depth, bound(true))? {
                return Ok(Some(s));
            }
            if let Some(s) = self.child(&node.extend(sel.l2), depth, bound(true))? {
                return Ok(Some(s));
            }
            return Ok(self
                .child(&node.delete(sel.clause), depth, bound(true))?
                .map(|s| with(s, sel.clause)));
        }

        // Exactly one literal is falsified; call the other one `free`.
        let free = if f1 { sel.l2 } else { sel.l1 };
        debug_assert!(!node.lset.contains(free));
        if !self.neutral(node, free) {
            // 9. Satisfy it through the free literal, or delete it.
            if let Some(s) = self.child(&node.extend(free), depth, bound(true))? {
                return Ok(Some(s));
            }
            return Ok(self
                .child(&node.delete(sel.clause), depth, bound(true))?
                .map(|s| with(s, sel.clause)));
        }
        // 10. A neutral literal never makes the optimum worse.
        self.child(&node.extend(free), depth, bound(false))
    }

    /// Whether adding `candidate` to L keeps the instance valid and leaves
    /// `SepSize(F, ¬L, ¬l)` unchanged. Both sizes are at most `k` here.
    fn neutral(&self, node: &Node, candidate: Lit) -> bool {
        if candidate.var() == self.pivot.var() || node.lset.contains(!candidate) {
            return false;
        }
        let extended = node.extend(candidate);
        if two_sat(self.g, &node.mask, &extended.lset).is_none() {
            return false;
        }
        let base: Vec<Lit> = node.lset.iter().collect();
        let wider: Vec<Lit> = extended.lset.iter().collect();
        let before = max_flow_bounded(self.g, &node.mask, &base, !self.pivot, node.k);
        let after = max_flow_bounded(self.g, &node.mask, &wider, !self.pivot, node.k);
        matches!((before, after), (SeparatorSize::Exact(x), SeparatorSize::Exact(y)) if x == y)
    }
}

fn with(mut s: Vec<usize>, clause: usize) -> Vec<usize> {
    s.push(clause);
    s
}
