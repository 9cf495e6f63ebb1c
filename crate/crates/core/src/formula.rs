//! The 2-CNF data model.
//!
//! Every clause has exactly two literal slots; a unit clause `(l)` is stored
//! as `(l ∨ l)`. Formulas hold pairwise distinct clauses in insertion order,
//! so removing a set of clauses is plain set difference.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Not;

use thiserror::Error;

use crate::igraph::{clause_arcs, components, values_from_components};

/// A propositional variable, identified by a dense index starting at 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

/// A literal encoded as `2·var + negative`, so literals order by
/// `(var, polarity)` with the positive literal first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(var.0 * 2 + u32::from(!positive))
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Dense node index of this literal in an implication graph.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Lit {
        Lit(code as u32)
    }

    /// Converts a nonzero DIMACS integer (1-based, sign is polarity).
    pub fn from_dimacs(value: i64) -> Option<Lit> {
        if value == 0 {
            return None;
        }
        let var = u32::try_from(value.unsigned_abs() - 1).ok()?;
        if var > u32::MAX / 2 - 1 {
            return None;
        }
        Some(Lit::new(Var(var), value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var().0) + 1;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// An unordered pair of literals stored with the smaller literal first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    a: Lit,
    b: Lit,
}

impl Clause {
    pub fn new(x: Lit, y: Lit) -> Clause {
        if x <= y {
            Clause { a: x, b: y }
        } else {
            Clause { a: y, b: x }
        }
    }

    pub fn unit(l: Lit) -> Clause {
        Clause { a: l, b: l }
    }

    pub fn a(self) -> Lit {
        self.a
    }

    pub fn b(self) -> Lit {
        self.b
    }

    pub fn lits(self) -> [Lit; 2] {
        [self.a, self.b]
    }

    pub fn is_unit(self) -> bool {
        self.a == self.b
    }

    pub fn contains(self, l: Lit) -> bool {
        self.a == l || self.b == l
    }

    /// The literal paired with `l` in this clause.
    pub fn other(self, l: Lit) -> Option<Lit> {
        if self.a == l {
            Some(self.b)
        } else if self.b == l {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn is_satisfied_by(self, value: impl Fn(Lit) -> bool) -> bool {
        value(self.a) || value(self.b)
    }

    pub fn max_var(self) -> Var {
        self.b.var().max(self.a.var())
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} ∨ {:?})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("clause {clause:?} at index {index} repeats an earlier clause")]
pub struct DuplicateClause {
    pub index: usize,
    pub clause: Clause,
}

/// A 2-CNF formula over pairwise distinct clauses.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Formula {
    clauses: Vec<Clause>,
}

impl Formula {
    pub fn new(clauses: Vec<Clause>) -> Result<Formula, DuplicateClause> {
        let mut seen = BTreeSet::new();
        for (index, &clause) in clauses.iter().enumerate() {
            if !seen.insert(clause) {
                return Err(DuplicateClause { index, clause });
            }
        }
        Ok(Formula { clauses })
    }

    pub fn empty() -> Formula {
        Formula::default()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.lits()).map(Lit::var).collect()
    }

    /// One past the largest variable index mentioned, 0 for the empty formula.
    pub fn var_bound(&self) -> u32 {
        self.clauses.iter().map(|c| c.max_var().0 + 1).max().unwrap_or(0)
    }

    pub fn position(&self, clause: Clause) -> Option<usize> {
        self.clauses.iter().position(|&c| c == clause)
    }

    /// `F ∖ S` for a set of clauses given by value. Survivors keep their order.
    pub fn without(&self, removed: &[Clause]) -> Formula {
        let removed: BTreeSet<Clause> = removed.iter().copied().collect();
        Formula {
            clauses: self.clauses.iter().copied().filter(|c| !removed.contains(c)).collect(),
        }
    }

    /// `F ∖ S` for a set of clause indices. Out-of-range indices are ignored.
    pub fn without_indices(&self, removed: &[usize]) -> Formula {
        let mut keep = alloc::vec![true; self.clauses.len()];
        for &i in removed {
            if let Some(k) = keep.get_mut(i) {
                *k = false;
            }
        }
        Formula {
            clauses: self
                .clauses
                .iter()
                .zip(keep)
                .filter_map(|(&c, k)| k.then_some(c))
                .collect(),
        }
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.clauses
            .iter()
            .all(|c| c.is_satisfied_by(|l| assignment.contains(l)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("literal set would contain both {0} and its negation")]
pub struct Contradiction(pub Lit);

/// A non-contradictory set of literals.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct LiteralSet {
    lits: BTreeSet<Lit>,
}

impl LiteralSet {
    pub fn new() -> LiteralSet {
        LiteralSet::default()
    }

    pub fn from_lits(lits: impl IntoIterator<Item = Lit>) -> Result<LiteralSet, Contradiction> {
        let mut set = LiteralSet::new();
        for l in lits {
            set.insert(l)?;
        }
        Ok(set)
    }

    /// Inserts `l`, returning whether it was new.
    pub fn insert(&mut self, l: Lit) -> Result<bool, Contradiction> {
        if self.lits.contains(&!l) {
            return Err(Contradiction(l));
        }
        Ok(self.lits.insert(l))
    }

    pub fn with(&self, l: Lit) -> Result<LiteralSet, Contradiction> {
        let mut out = self.clone();
        out.insert(l)?;
        Ok(out)
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.lits.contains(&l)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.contains(v.pos()) || self.contains(v.neg())
    }

    /// `¬L`.
    pub fn negated(&self) -> LiteralSet {
        LiteralSet {
            lits: self.lits.iter().map(|&l| !l).collect(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.lits.iter().map(|l| l.var()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Lit> + Clone + '_ {
        self.lits.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn is_subset_of(&self, assignment: &Assignment) -> bool {
        self.iter().all(|l| assignment.contains(l))
    }

    pub fn var_bound(&self) -> u32 {
        self.lits.iter().map(|l| l.var().0 + 1).max().unwrap_or(0)
    }
}

/// One literal per variable of a stated universe, sorted by variable.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Assignment {
    lits: Vec<Lit>,
}

impl Assignment {
    /// Builds an assignment from literals over distinct variables.
    pub fn from_lits(mut lits: Vec<Lit>) -> Option<Assignment> {
        lits.sort_unstable();
        if lits.windows(2).any(|w| w[0].var() == w[1].var()) {
            return None;
        }
        Some(Assignment { lits })
    }

    pub fn value(&self, v: Var) -> Option<bool> {
        self.lits
            .binary_search_by_key(&v, |l| l.var())
            .ok()
            .map(|i| self.lits[i].is_positive())
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.value(l.var()) == Some(l.is_positive())
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.lits.iter().map(|l| l.var()).collect()
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }
}

/// Component ids of `D` for `f` plus a unit arc for every literal of
/// `l_set` on a variable below `f`'s bound.
fn components_wrt(f: &Formula, l_set: &LiteralSet) -> Vec<u32> {
    let var_bound = f.var_bound();
    let arcs = f.clauses().iter().flat_map(|&c| clause_arcs(c));
    let units = l_set.iter().filter(move |l| l.var().0 < var_bound).map(|l| (!l, l));
    components(var_bound, arcs.chain(units))
}

/// `SWRT(F, L)`: does `F` have a satisfying assignment avoiding `¬L`?
///
/// Each literal of `L` on a variable of `F` becomes a unit clause; the
/// formula is then refuted iff some variable shares a strongly connected
/// component with its negation.
pub fn swrt(f: &Formula, l_set: &LiteralSet) -> bool {
    components_wrt(f, l_set).chunks_exact(2).all(|pair| pair[0] != pair[1])
}

/// A satisfying assignment of `F` over `Var(F)` that avoids `¬L`, if any.
pub fn satisfying_assignment(f: &Formula, l_set: &LiteralSet) -> Option<Assignment> {
    let values = values_from_components(&components_wrt(f, l_set))?;
    let lits = f.vars().into_iter().map(|v| Lit::new(v, values[v.index()])).collect();
    Some(Assignment { lits })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("annotation set is contradictory at literal {0}")]
    ContradictoryL(Lit),
    #[error("formula is not satisfiable with respect to the annotation set")]
    NotSatisfiableWrtL,
    #[error("pivot {0} shares its variable with the annotation set")]
    PivotVarInL(Lit),
}

/// Checks that `(F, L, pivot)` is a valid annotated instance.
pub fn validate_aslasat(f: &Formula, lits: &[Lit], pivot: Lit) -> Result<LiteralSet, ValidationError> {
    let l_set =
        LiteralSet::from_lits(lits.iter().copied()).map_err(|Contradiction(l)| ValidationError::ContradictoryL(l))?;
    if l_set.contains_var(pivot.var()) {
        return Err(ValidationError::PivotVarInL(pivot));
    }
    if !swrt(f, &l_set) {
        return Err(ValidationError::NotSatisfiableWrtL);
    }
    Ok(l_set)
}

/// A validated instance `(F, L, l, k)` of the parameterized annotated problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AslasatInstance {
    formula: Formula,
    l_set: LiteralSet,
    pivot: Lit,
    k: usize,
}

impl AslasatInstance {
    pub fn new(formula: Formula, lits: &[Lit], pivot: Lit, k: usize) -> Result<Self, ValidationError> {
        let l_set = validate_aslasat(&formula, lits, pivot)?;
        Ok(AslasatInstance {
            formula,
            l_set,
            pivot,
            k,
        })
    }

    pub fn from_set(formula: Formula, l_set: LiteralSet, pivot: Lit, k: usize) -> Result<Self, ValidationError> {
        let lits: Vec<Lit> = l_set.iter().collect();
        AslasatInstance::new(formula, &lits, pivot, k)
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn l_set(&self) -> &LiteralSet {
        &self.l_set
    }

    pub fn pivot(&self) -> Lit {
        self.pivot
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_k(&self, k: usize) -> AslasatInstance {
        AslasatInstance { k, ..self.clone() }
    }
}
