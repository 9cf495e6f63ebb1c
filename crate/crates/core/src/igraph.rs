//! Implication graphs, walks and paths.
//!
//! The implication graph `D` of a formula has one node per literal and an
//! arc `(l1, l2)` for every clause `(¬l1 ∨ l2)`. A clause over two distinct
//! literals yields two arcs, a unit clause `(l ∨ l)` the single arc `(¬l, l)`.
//! Every arc remembers the index of the clause it represents.
//!
//! Walks of a formula are stored as clause indices plus an orientation bit,
//! so clause identity is primitive and clause-disjointness is cheap to test.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::formula::{Clause, Formula, Lit, Var};

const UNSET: u32 = u32::MAX;

/// An arc of the implication graph together with the clause it represents.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Arc {
    pub tail: Lit,
    pub head: Lit,
    pub clause: usize,
}

/// Which clauses of the underlying formula are still present.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClauseMask {
    alive: Vec<bool>,
    count: usize,
}

impl ClauseMask {
    pub fn full(m: usize) -> ClauseMask {
        ClauseMask {
            alive: vec![true; m],
            count: m,
        }
    }

    pub fn is_alive(&self, clause: usize) -> bool {
        self.alive[clause]
    }

    pub fn remove(&mut self, clause: usize) -> bool {
        let was = core::mem::replace(&mut self.alive[clause], false);
        if was {
            self.count -= 1;
        }
        was
    }

    pub fn without(&self, clause: usize) -> ClauseMask {
        let mut out = self.clone();
        out.remove(clause);
        out
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn alive_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive.iter().enumerate().filter_map(|(i, &a)| a.then_some(i))
    }
}

/// Literal membership flags indexed by literal code.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LitMask {
    flags: Vec<bool>,
}

impl LitMask {
    pub fn new(var_bound: u32) -> LitMask {
        LitMask {
            flags: vec![false; 2 * var_bound as usize],
        }
    }

    pub fn insert(&mut self, l: Lit) {
        self.flags[l.code()] = true;
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.flags.get(l.code()).copied().unwrap_or(false)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.contains(v.pos()) || self.contains(v.neg())
    }

    pub fn iter(&self) -> impl Iterator<Item = Lit> + Clone + '_ {
        self.flags
            .iter()
            .enumerate()
            .filter(|&(_, &f)| f)
            .map(|(code, _)| Lit::from_code(code))
    }
}

/// The implication graph of a formula over a fixed variable universe.
///
/// Adjacency is stored compressed: the arcs leaving node `u` are
/// `out[out_start[u]..out_start[u + 1]]`, and likewise for entering arcs.
#[derive(Clone, Debug)]
pub struct ImplicationGraph {
    var_bound: u32,
    clauses: Vec<Clause>,
    arcs: Vec<Arc>,
    out_start: Vec<u32>,
    out: Vec<u32>,
    in_start: Vec<u32>,
    inc: Vec<u32>,
}

impl ImplicationGraph {
    /// Builds `D` for `f`. Variables below `extra_var_bound` that do not
    /// occur in `f` get isolated literal nodes.
    pub fn new(f: &Formula, extra_var_bound: u32) -> ImplicationGraph {
        let var_bound = f.var_bound().max(extra_var_bound);
        let nodes = 2 * var_bound as usize;
        let mut arcs = Vec::with_capacity(2 * f.len());
        for (clause, &c) in f.clauses().iter().enumerate() {
            arcs.push(Arc {
                tail: !c.a(),
                head: c.b(),
                clause,
            });
            if !c.is_unit() {
                arcs.push(Arc {
                    tail: !c.b(),
                    head: c.a(),
                    clause,
                });
            }
        }
        // Ascending head (then clause) keeps every traversal deterministic.
        let mut out: Vec<u32> = (0..arcs.len() as u32).collect();
        out.sort_unstable_by_key(|&id| {
            let a = arcs[id as usize];
            (a.tail, a.head, a.clause)
        });
        let mut inc = out.clone();
        inc.sort_unstable_by_key(|&id| {
            let a = arcs[id as usize];
            (a.head, a.tail, a.clause)
        });
        let out_start = offsets(nodes, out.iter().map(|&id| arcs[id as usize].tail));
        let in_start = offsets(nodes, inc.iter().map(|&id| arcs[id as usize].head));
        ImplicationGraph {
            var_bound,
            clauses: f.clauses().to_vec(),
            arcs,
            out_start,
            out,
            in_start,
            inc,
        }
    }

    pub fn var_bound(&self) -> u32 {
        self.var_bound
    }

    pub fn node_count(&self) -> usize {
        2 * self.var_bound as usize
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: u32) -> Arc {
        self.arcs[id as usize]
    }

    pub fn has_node(&self, l: Lit) -> bool {
        l.var().0 < self.var_bound
    }

    pub(crate) fn out_arcs(&self, node: Lit) -> &[u32] {
        let u = node.code();
        &self.out[self.out_start[u] as usize..self.out_start[u + 1] as usize]
    }

    pub(crate) fn in_arcs(&self, node: Lit) -> &[u32] {
        let u = node.code();
        &self.inc[self.in_start[u] as usize..self.in_start[u + 1] as usize]
    }

    /// Arcs leaving `node`, in traversal order.
    pub fn successors(&self, node: Lit) -> impl Iterator<Item = Arc> + '_ {
        self.out_arcs(node).iter().map(|&id| self.arcs[id as usize])
    }
}

/// Row offsets for ids already sorted by the node they belong to.
fn offsets(nodes: usize, keys: impl Iterator<Item = Lit>) -> Vec<u32> {
    let mut start = vec![0u32; nodes + 1];
    for k in keys {
        start[k.code() + 1] += 1;
    }
    for u in 0..nodes {
        start[u + 1] += start[u];
    }
    start
}

/// The arcs of one clause: `(¬a, b)` and `(¬b, a)`, or just `(¬l, l)` for a unit.
pub(crate) fn clause_arcs(c: Clause) -> impl Iterator<Item = (Lit, Lit)> + Clone {
    let n = if c.is_unit() { 1 } else { 2 };
    [(!c.a(), c.b()), (!c.b(), c.a())].into_iter().take(n)
}

/// Strongly connected component ids of the digraph on the literals of
/// `var_bound` variables with the given arcs (Tarjan, iterative). Components
/// are numbered in completion order, i.e. sinks first.
///
/// One-shot: adjacency is laid out by counting sort and all working state
/// lives in a single buffer, which dominates the cost on small formulas.
pub(crate) fn components<I>(var_bound: u32, arcs: I) -> Vec<u32>
where
    I: Iterator<Item = (Lit, Lit)> + Clone,
{
    let n = 2 * var_bound as usize;
    let m = arcs.clone().count();
    // comp | index | low | start | heads | stack | frame nodes | frame cursors
    let mut buf = vec![0u32; 7 * n + 1 + m];
    let (comp, rest) = buf.split_at_mut(n);
    let (index, rest) = rest.split_at_mut(n);
    let (low, rest) = rest.split_at_mut(n);
    let (start, rest) = rest.split_at_mut(n + 1);
    let (heads, rest) = rest.split_at_mut(m);
    let (stack, rest) = rest.split_at_mut(n);
    let (frame_node, frame_cursor) = rest.split_at_mut(n);

    for (tail, _) in arcs.clone() {
        start[tail.code() + 1] += 1;
    }
    for u in 0..n {
        start[u + 1] += start[u];
    }
    // Use each row start as a write cursor, then shift the ends back into place.
    for (tail, head) in arcs {
        let u = tail.code();
        heads[start[u] as usize] = head.code() as u32;
        start[u] += 1;
    }
    start.copy_within(0..n, 1);
    start[0] = 0;

    comp.fill(UNSET);
    index.fill(UNSET);
    let (mut next_index, mut next_comp) = (0u32, 0u32);
    let (mut sp, mut fp) = (0usize, 0usize);
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack[sp] = root as u32;
        sp += 1;
        frame_node[fp] = root as u32;
        frame_cursor[fp] = start[root];
        fp += 1;
        while fp > 0 {
            let u = frame_node[fp - 1] as usize;
            let cursor = frame_cursor[fp - 1];
            if cursor < start[u + 1] {
                frame_cursor[fp - 1] += 1;
                let v = heads[cursor as usize] as usize;
                if index[v] == UNSET {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack[sp] = v as u32;
                    sp += 1;
                    frame_node[fp] = v as u32;
                    frame_cursor[fp] = start[v];
                    fp += 1;
                } else if comp[v] == UNSET {
                    // Visited and not yet assigned means still on the stack.
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            fp -= 1;
            if low[u] == index[u] {
                loop {
                    sp -= 1;
                    let w = stack[sp] as usize;
                    comp[w] = next_comp;
                    if w == u {
                        break;
                    }
                }
                next_comp += 1;
            }
            if fp > 0 {
                let p = frame_node[fp - 1] as usize;
                low[p] = low[p].min(low[u]);
            }
        }
    }
    buf.truncate(n);
    buf
}

/// Reads values off component ids: `None` if a variable shares a component
/// with its negation, else a variable is true when its positive literal's
/// component completes first (is closer to the sinks).
pub(crate) fn values_from_components(comp: &[u32]) -> Option<Vec<bool>> {
    comp.chunks_exact(2)
        .map(|pair| (pair[0] != pair[1]).then_some(pair[0] < pair[1]))
        .collect()
}

/// Decides the alive formula plus unit clauses for `forced`, returning a
/// value per variable of the universe.
pub(crate) fn two_sat(g: &ImplicationGraph, mask: &ClauseMask, forced: &LitMask) -> Option<Vec<bool>> {
    let alive = g
        .clauses()
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask.is_alive(i))
        .flat_map(|(_, &c)| clause_arcs(c));
    let units = forced.iter().map(|l| (!l, l));
    values_from_components(&components(g.var_bound(), alive.chain(units)))
}

/// Breadth-first search from the `sources` nodes to `target`, returning the
/// arc ids of a shortest non-empty directed walk. Sources are expanded in
/// ascending node order and arcs in ascending head order.
pub(crate) fn bfs_arcs(
    g: &ImplicationGraph,
    mask: &ClauseMask,
    sources: impl IntoIterator<Item = Lit>,
    target: Lit,
) -> Option<Vec<u32>> {
    let n = g.node_count();
    let mut parent = vec![UNSET; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    let mut starts: Vec<Lit> = sources.into_iter().filter(|&l| g.has_node(l)).collect();
    starts.sort_unstable();
    starts.dedup();
    for s in starts {
        seen[s.code()] = true;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        for &id in g.out_arcs(u) {
            let arc = g.arc(id);
            if !mask.is_alive(arc.clause) {
                continue;
            }
            if arc.head == target {
                let mut path = vec![id];
                let mut node = u;
                while parent[node.code()] != UNSET {
                    let back = parent[node.code()];
                    path.push(back);
                    node = g.arc(back).tail;
                }
                path.reverse();
                return Some(path);
            }
            if !seen[arc.head.code()] {
                seen[arc.head.code()] = true;
                parent[arc.head.code()] = id;
                queue.push_back(arc.head);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("a walk needs at least one clause")]
    Empty,
    #[error("clause index {0} is out of range")]
    ClauseOutOfRange(usize),
    #[error("step {at} does not continue the walk")]
    Broken { at: usize },
    #[error("arc {at} does not represent its clause")]
    ForeignArc { at: usize },
    #[error("clause {clause} is used with both orientations; no path can be spliced")]
    MixedRoles { clause: usize },
}

/// One occurrence of a clause in a walk. `flipped == false` means the
/// clause's canonical first literal `a` plays the first-literal role.
/// Unit clauses are never flipped.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Step {
    pub clause: usize,
    pub flipped: bool,
}

impl Step {
    pub fn first(self, clauses: &[Clause]) -> Lit {
        let c = clauses[self.clause];
        if self.flipped {
            c.b()
        } else {
            c.a()
        }
    }

    pub fn second(self, clauses: &[Clause]) -> Lit {
        let c = clauses[self.clause];
        if self.flipped {
            c.a()
        } else {
            c.b()
        }
    }

    /// The step over `clause` whose first literal is `first`.
    pub fn oriented(clauses: &[Clause], clause: usize, first: Lit) -> Step {
        Step {
            clause,
            flipped: clauses[clause].a() != first,
        }
    }
}

/// A non-empty sequence of oriented clause occurrences in which the second
/// literal of each step is the negation of the next step's first literal.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Walk {
    steps: Vec<Step>,
}

impl Walk {
    pub fn new(mut steps: Vec<Step>, clauses: &[Clause]) -> Result<Walk, WalkError> {
        if steps.is_empty() {
            return Err(WalkError::Empty);
        }
        for step in &mut steps {
            let c = *clauses
                .get(step.clause)
                .ok_or(WalkError::ClauseOutOfRange(step.clause))?;
            if c.is_unit() {
                step.flipped = false;
            }
        }
        for (at, pair) in steps.windows(2).enumerate() {
            if pair[0].second(clauses) != !pair[1].first(clauses) {
                return Err(WalkError::Broken { at: at + 1 });
            }
        }
        Ok(Walk { steps })
    }

    /// Builds a walk from literal pairs `(first, second)` looked up in `f`.
    pub fn from_pairs(f: &Formula, pairs: &[(Lit, Lit)]) -> Option<Walk> {
        let steps = pairs
            .iter()
            .map(|&(x, y)| {
                let clause = f.position(Clause::new(x, y))?;
                Some(Step::oriented(f.clauses(), clause, x))
            })
            .collect::<Option<Vec<_>>>()?;
        Walk::new(steps, f.clauses()).ok()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first_lit(&self, clauses: &[Clause]) -> Lit {
        self.steps[0].first(clauses)
    }

    pub fn last_lit(&self, clauses: &[Clause]) -> Lit {
        self.steps[self.steps.len() - 1].second(clauses)
    }

    /// The `(first, second)` literal pair of every step.
    pub fn pairs(&self, clauses: &[Clause]) -> Vec<(Lit, Lit)> {
        self.steps
            .iter()
            .map(|s| (s.first(clauses), s.second(clauses)))
            .collect()
    }

    /// True when all clause occurrences are pairwise distinct.
    pub fn is_path(&self) -> bool {
        let mut ids: Vec<usize> = self.steps.iter().map(|s| s.clause).collect();
        ids.sort_unstable();
        ids.windows(2).all(|w| w[0] != w[1])
    }

    pub fn clause_set(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.steps.iter().map(|s| s.clause).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Clause order reversed and roles swapped in every step.
    pub fn reverse(&self, clauses: &[Clause]) -> Walk {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| Step {
                clause: s.clause,
                flipped: !s.flipped && !clauses[s.clause].is_unit(),
            })
            .collect();
        Walk { steps }
    }
}

/// Maps each step `(l1 first, l2 second)` to the arc `(¬l1, l2)`.
pub fn f_walk_to_d_walk(w: &Walk, clauses: &[Clause]) -> Vec<Arc> {
    w.steps
        .iter()
        .map(|s| Arc {
            tail: !s.first(clauses),
            head: s.second(clauses),
            clause: s.clause,
        })
        .collect()
}

/// Maps each arc `(¬l1, l2)` back to the step `(l1 first, l2 second)`.
pub fn d_path_to_f_walk(arcs: &[Arc], clauses: &[Clause]) -> Result<Walk, WalkError> {
    let mut steps = Vec::with_capacity(arcs.len());
    for (at, arc) in arcs.iter().enumerate() {
        let c = *clauses.get(arc.clause).ok_or(WalkError::ClauseOutOfRange(arc.clause))?;
        if c != Clause::new(!arc.tail, arc.head) {
            return Err(WalkError::ForeignArc { at });
        }
        if at > 0 && arcs[at - 1].head != arc.tail {
            return Err(WalkError::Broken { at });
        }
        steps.push(Step::oriented(clauses, arc.clause, !arc.tail));
    }
    Walk::new(steps, clauses)
}

/// A shortest walk of the formula from a literal of `sources` to `target`.
///
/// A walk starting at literal `s` corresponds to a directed walk in `D`
/// starting at node `¬s`, so the search runs from the negated sources.
pub fn shortest_walk(g: &ImplicationGraph, sources: &[Lit], target: Lit) -> Option<Walk> {
    shortest_walk_in(g, &ClauseMask::full(g.clauses().len()), sources, target)
}

pub(crate) fn shortest_walk_in(g: &ImplicationGraph, mask: &ClauseMask, sources: &[Lit], target: Lit) -> Option<Walk> {
    if !g.has_node(target) {
        return None;
    }
    let ids = bfs_arcs(g, mask, sources.iter().map(|&s| !s), target)?;
    let arcs: Vec<Arc> = ids.into_iter().map(|id| g.arc(id)).collect();
    Some(d_path_to_f_walk(&arcs, g.clauses()).expect("graph arcs form a walk"))
}

/// A walk from `¬pivot` to `¬pivot`, if one exists.
pub fn find_self_walk(g: &ImplicationGraph, pivot: Lit) -> Option<Walk> {
    shortest_walk(g, &[!pivot], !pivot)
}

/// Shrinks a walk to a path with the same endpoints over a subset of its
/// clauses by splicing out the stretch between two occurrences of the same
/// clause.
///
/// Splicing needs the repeated occurrences to share their first literal,
/// which holds for every walk from `¬L` when the formula is satisfiable
/// with respect to `L`. Walks outside that setting may repeat a clause in
/// both orientations; those are rejected with [`WalkError::MixedRoles`].
pub fn extract_path(w: &Walk, clauses: &[Clause]) -> Result<Walk, WalkError> {
    let mut steps = w.steps.clone();
    loop {
        let mut first_seen: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut splice = None;
        let mut mixed = None;
        'scan: for (j, s) in steps.iter().enumerate() {
            let earlier = first_seen.entry(s.clause).or_default();
            for &i in earlier.iter() {
                if steps[i].flipped == s.flipped {
                    splice = Some((i, j));
                    break 'scan;
                }
                mixed.get_or_insert(s.clause);
            }
            earlier.push(j);
        }
        let Some((i, j)) = splice else {
            return match mixed {
                Some(clause) => Err(WalkError::MixedRoles { clause }),
                None => Ok(Walk { steps }),
            };
        };
        let q = steps.len();
        steps = if i == 0 {
            steps[j..].to_vec()
        } else if j == q - 1 {
            steps[..=i].to_vec()
        } else {
            let mut s = steps[..=i].to_vec();
            s.extend_from_slice(&steps[j + 1..]);
            s
        };
        debug_assert!(Walk::new(steps.clone(), clauses).is_ok());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn x(i: u32) -> Lit {
        Var(i).pos()
    }

    fn formula(cs: &[(Lit, Lit)]) -> Formula {
        Formula::new(cs.iter().map(|&(a, b)| Clause::new(a, b)).collect()).unwrap()
    }

    fn arc_pairs(g: &ImplicationGraph) -> Vec<(Lit, Lit)> {
        let mut v: Vec<_> = g.arcs().iter().map(|a| (a.tail, a.head)).collect();
        v.sort();
        v
    }

    #[test]
    fn build_examples() {
        let (a, b) = (x(0), x(1));
        let g = ImplicationGraph::new(&formula(&[(!a, b)]), 0);
        assert_eq!(arc_pairs(&g), vec![(a, b), (!b, !a)]);

        let g = ImplicationGraph::new(&formula(&[(a, a)]), 0);
        assert_eq!(arc_pairs(&g), vec![(!a, a)]);

        let g = ImplicationGraph::new(&formula(&[(a, b), (!a, b)]), 0);
        let mut want = vec![(!a, b), (!b, a), (a, b), (!b, !a)];
        want.sort();
        assert_eq!(arc_pairs(&g), want);

        let g = ImplicationGraph::new(&formula(&[(a, b)]), 5);
        assert_eq!(g.node_count(), 10);
        assert_eq!(g.successors(x(4)).count(), 0);
    }

    /// The six-clause walk from `l1` to `l5` with a repeated middle clause.
    fn sample_walk() -> (Formula, Walk, [Lit; 5]) {
        let l = [x(0), x(1), x(2), x(3), x(4)];
        let [l1, l2, l3, l4, l5] = l;
        let f = formula(&[(l1, l2), (!l2, l3), (!l3, l4), (!l4, !l3), (l2, l5)]);
        let w = Walk::from_pairs(&f, &[(l1, l2), (!l2, l3), (!l3, l4), (!l4, !l3), (l3, !l2), (l2, l5)]).unwrap();
        (f, w, l)
    }

    #[test]
    fn reverse_sample_walk() {
        let (f, w, [l1, l2, l3, l4, l5]) = sample_walk();
        let r = w.reverse(f.clauses());
        assert_eq!(
            r.pairs(f.clauses()),
            vec![(l5, l2), (!l2, l3), (!l3, !l4), (l4, !l3), (l3, !l2), (l2, l1)]
        );
        assert_eq!(r.reverse(f.clauses()), w);
        assert!(!w.is_path());
        assert_eq!(w.first_lit(f.clauses()), l1);
        assert_eq!(w.last_lit(f.clauses()), l5);
    }

    #[test]
    fn reverse_single_step() {
        let (a, b) = (x(0), x(1));
        let f = formula(&[(a, b)]);
        let w = Walk::from_pairs(&f, &[(a, b)]).unwrap();
        assert_eq!(w.reverse(f.clauses()).pairs(f.clauses()), vec![(b, a)]);
    }

    #[test]
    fn walk_arc_correspondence() {
        let (a, b, c) = (x(0), x(1), x(2));
        let f = formula(&[(!a, c), (!c, b)]);
        let w = Walk::from_pairs(&f, &[(!a, c), (!c, b)]).unwrap();
        let d = f_walk_to_d_walk(&w, f.clauses());
        assert_eq!(
            d.iter().map(|a| (a.tail, a.head)).collect::<Vec<_>>(),
            vec![(a, c), (c, b)]
        );
        assert_eq!(d_path_to_f_walk(&d, f.clauses()).unwrap(), w);
    }

    #[test]
    fn unit_arc_maps_to_unit_step() {
        let xx = x(0);
        let f = formula(&[(xx, xx)]);
        let arc = Arc {
            tail: !xx,
            head: xx,
            clause: 0,
        };
        let w = d_path_to_f_walk(&[arc], f.clauses()).unwrap();
        assert_eq!(w.pairs(f.clauses()), vec![(xx, xx)]);
        assert_eq!(w.reverse(f.clauses()), w);
    }

    #[test]
    fn broken_arcs_are_rejected() {
        let (a, b, c) = (x(0), x(1), x(2));
        let f = formula(&[(!a, c), (!c, b)]);
        let bad = Arc {
            tail: a,
            head: b,
            clause: 0,
        };
        assert_eq!(
            d_path_to_f_walk(&[bad], f.clauses()),
            Err(WalkError::ForeignArc { at: 0 })
        );
        let steps = vec![Step::oriented(f.clauses(), 1, !c), Step::oriented(f.clauses(), 0, !a)];
        assert_eq!(Walk::new(steps, f.clauses()), Err(WalkError::Broken { at: 1 }));
        assert_eq!(Walk::new(vec![], f.clauses()), Err(WalkError::Empty));
    }

    #[test]
    fn shortest_walk_examples() {
        let (a, b, c) = (x(0), x(1), x(2));
        let f = formula(&[(!a, b)]);
        let g = ImplicationGraph::new(&f, 0);
        let w = shortest_walk(&g, &[!a], b).unwrap();
        assert_eq!(w.pairs(f.clauses()), vec![(!a, b)]);
        assert_eq!(shortest_walk(&g, &[b], !a).unwrap().pairs(f.clauses()), vec![(b, !a)]);
        assert!(shortest_walk(&g, &[a], b).is_none());

        let f = formula(&[(!a, c), (!c, b)]);
        let g = ImplicationGraph::new(&f, 0);
        assert_eq!(shortest_walk(&g, &[!a], b).unwrap().len(), 2);
    }

    #[test]
    fn self_walk_examples() {
        let (xx, y, a, b) = (x(0), x(1), x(2), x(3));
        let f = formula(&[(!xx, y), (!y, !xx)]);
        let g = ImplicationGraph::new(&f, 0);
        let w = find_self_walk(&g, xx).unwrap();
        assert_eq!(w.pairs(f.clauses()), vec![(!xx, y), (!y, !xx)]);

        let f = formula(&[(!a, b)]);
        let g = ImplicationGraph::new(&f, 4);
        assert!(find_self_walk(&g, a).is_none());
        assert!(find_self_walk(&g, x(0)).is_none());
    }

    #[test]
    fn extract_path_splices_repeats() {
        let (a, b, c, d) = (x(0), x(1), x(2), x(3));
        // a-first walk that loops through (¬b ∨ c) twice in the same orientation.
        let f = formula(&[(a, b), (!b, c), (!c, d), (!d, b), (!c, !a)]);
        let w = Walk::from_pairs(&f, &[(a, b), (!b, c), (!c, d), (!d, b), (!b, c), (!c, !a)]).unwrap();
        let p = extract_path(&w, f.clauses()).unwrap();
        assert!(p.is_path());
        assert_eq!(p.pairs(f.clauses()), vec![(a, b), (!b, c), (!c, !a)]);

        let distinct = Walk::from_pairs(&f, &[(a, b), (!b, c)]).unwrap();
        assert_eq!(extract_path(&distinct, f.clauses()).unwrap(), distinct);
    }

    #[test]
    fn extract_path_rejects_mixed_roles() {
        let (f, w, _) = sample_walk();
        assert_eq!(extract_path(&w, f.clauses()), Err(WalkError::MixedRoles { clause: 1 }));
    }

    #[test]
    fn two_sat_detects_contradiction() {
        let a = x(0);
        let f = formula(&[(a, a), (!a, !a)]);
        let g = ImplicationGraph::new(&f, 0);
        assert!(two_sat(&g, &ClauseMask::full(2), &LitMask::new(1)).is_none());
        let values = two_sat(&g, &ClauseMask::full(2).without(1), &LitMask::new(1)).unwrap();
        assert_eq!(values, vec![true]);
    }
}
