//! Bounded smallest-separator sizes.
//!
//! `SepSize(F, S, t)` is the fewest clauses whose removal leaves no path of
//! `F` from a literal of `S` to `t`. When `F` is satisfiable with respect to
//! `¬S` it equals the maximum number of arc-disjoint directed paths in the
//! implication graph from the nodes `¬S` to the node `t`, which a unit
//! capacity max-flow computes. The flow stops as soon as it exceeds the
//! caller's bound.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::formula::{swrt, Formula, Lit, LiteralSet};
use crate::igraph::{ClauseMask, ImplicationGraph};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeparatorSize {
    Exact(usize),
    ExceedsBound(usize),
}

impl SeparatorSize {
    pub fn exact(self) -> Option<usize> {
        match self {
            SeparatorSize::Exact(v) => Some(v),
            SeparatorSize::ExceedsBound(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparationError {
    #[error("formula is not satisfiable with respect to the negated sources")]
    NotSatisfiableWrtNegatedSources,
    #[error("sink {0} shares its variable with the sources")]
    SinkVarInSources(Lit),
}

const NONE: u32 = u32::MAX;

/// Edmonds-Karp on the alive arcs of `g`, every arc with capacity one.
///
/// All nodes in `source_nodes` act as one contracted super-source: the
/// breadth-first search starts from all of them at once. Returns the flow
/// value if it is at most `bound`, otherwise `ExceedsBound` after `bound + 1`
/// augmentations.
pub(crate) fn max_flow_bounded(
    g: &ImplicationGraph,
    mask: &ClauseMask,
    source_nodes: &[Lit],
    sink: Lit,
    bound: usize,
) -> SeparatorSize {
    if !g.has_node(sink) {
        return SeparatorSize::Exact(0);
    }
    let mut starts: Vec<Lit> = source_nodes.iter().copied().filter(|&l| g.has_node(l)).collect();
    starts.sort_unstable();
    starts.dedup();
    if starts.contains(&sink) {
        // Only reachable when the caller broke the variable-disjointness rule.
        return SeparatorSize::ExceedsBound(bound);
    }

    let n = g.node_count();
    let mut flow = vec![false; g.arcs().len()];
    // parent[v] = arc id used to reach v, tagged with whether it was traversed backwards.
    let mut parent: Vec<(u32, bool)> = vec![(NONE, false); n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    let mut value = 0usize;

    loop {
        seen.iter_mut().for_each(|s| *s = false);
        queue.clear();
        for &s in &starts {
            seen[s.code()] = true;
            parent[s.code()] = (NONE, false);
            queue.push_back(s);
        }
        let mut reached = false;
        'bfs: while let Some(u) = queue.pop_front() {
            for &id in g.out_arcs(u) {
                let arc = g.arc(id);
                if flow[id as usize] || !mask.is_alive(arc.clause) || seen[arc.head.code()] {
                    continue;
                }
                seen[arc.head.code()] = true;
                parent[arc.head.code()] = (id, false);
                if arc.head == sink {
                    reached = true;
                    break 'bfs;
                }
                queue.push_back(arc.head);
            }
            for &id in g.in_arcs(u) {
                let arc = g.arc(id);
                if !flow[id as usize] || seen[arc.tail.code()] {
                    continue;
                }
                seen[arc.tail.code()] = true;
                parent[arc.tail.code()] = (id, true);
                queue.push_back(arc.tail);
            }
        }
        if !reached {
            return SeparatorSize::Exact(value);
        }
        let mut node = sink;
        loop {
            let (id, backwards) = parent[node.code()];
            if id == NONE {
                break;
            }
            let arc = g.arc(id);
            flow[id as usize] = !backwards;
            node = if backwards { arc.head } else { arc.tail };
        }
        value += 1;
        if value > bound {
            return SeparatorSize::ExceedsBound(bound);
        }
    }
}

/// `SepSize(f, sources, sink)` if it is at most `bound`.
///
/// Requires `SWRT(f, ¬sources)` and `Var(sink) ∉ Var(sources)`; outside that
/// setting arc cuts and clause cuts may differ. Both conditions are checked
/// in debug builds only.
pub fn sep_size_bounded(
    f: &Formula,
    sources: &LiteralSet,
    sink: Lit,
    bound: usize,
) -> Result<SeparatorSize, SeparationError> {
    if sources.contains_var(sink.var()) {
        return Err(SeparationError::SinkVarInSources(sink));
    }
    if cfg!(debug_assertions) && !swrt(f, &sources.negated()) {
        return Err(SeparationError::NotSatisfiableWrtNegatedSources);
    }
    let g = ImplicationGraph::new(f, 0);
    let nodes: Vec<Lit> = sources.iter().map(|s| !s).collect();
    Ok(max_flow_bounded(&g, &ClauseMask::full(f.len()), &nodes, sink, bound))
}

/// Is `candidate` a neutral literal of `(f, l_set, pivot)`?
///
/// It is when `(f, L ∪ {candidate}, pivot)` is still a valid instance and
/// adding it leaves `SepSize(f, ¬L, ¬pivot)` unchanged. Both sizes are
/// computed up to `bound`.
pub fn is_neutral(f: &Formula, l_set: &LiteralSet, pivot: Lit, candidate: Lit, bound: usize) -> bool {
    if candidate.var() == pivot.var() {
        return false;
    }
    let Ok(extended) = l_set.with(candidate) else {
        return false;
    };
    if !swrt(f, &extended) {
        return false;
    }
    let g = ImplicationGraph::new(f, 0);
    let mask = ClauseMask::full(f.len());
    let base: Vec<Lit> = l_set.iter().collect();
    let wider: Vec<Lit> = extended.iter().collect();
    let before = max_flow_bounded(&g, &mask, &base, !pivot, bound);
    let after = max_flow_bounded(&g, &mask, &wider, !pivot, bound);
    matches!((before, after), (SeparatorSize::Exact(x), SeparatorSize::Exact(y)) if x == y)
}
