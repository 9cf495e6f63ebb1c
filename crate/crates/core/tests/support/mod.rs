#![allow(dead_code)]

use std::collections::BTreeSet;

use a2sat_core::{Clause, Formula, Lit, LiteralSet, Var};
use proptest::prelude::*;

pub fn lit(v: u32, positive: bool) -> Lit {
    Lit::new(Var(v), positive)
}

/// Raw clause list over `vars` variables, repeats allowed.
pub fn clause_list(vars: u32, max_len: usize) -> impl Strategy<Value = Vec<Clause>> {
    prop::collection::vec((0..vars, any::<bool>(), 0..vars, any::<bool>()), 0..=max_len).prop_map(|raw| {
        raw.into_iter()
            .map(|(a, sa, b, sb)| Clause::new(lit(a, sa), lit(b, sb)))
            .collect()
    })
}

pub fn distinct(clauses: Vec<Clause>) -> Formula {
    let mut seen = BTreeSet::new();
    Formula::new(clauses.into_iter().filter(|c| seen.insert(*c)).collect()).unwrap()
}

/// Formula with distinct clauses.
pub fn formula(vars: u32, max_len: usize) -> impl Strategy<Value = Formula> {
    clause_list(vars, max_len).prop_map(distinct)
}

/// A consistent literal set over `vars` variables.
pub fn literal_set(vars: u32) -> impl Strategy<Value = LiteralSet> {
    prop::collection::vec(prop::option::of(any::<bool>()), vars as usize).prop_map(|signs| {
        LiteralSet::from_lits(
            signs
                .into_iter()
                .enumerate()
                .filter_map(|(v, s)| s.map(|s| lit(v as u32, s))),
        )
        .unwrap()
    })
}

/// A valid annotated instance: a planted assignment satisfies `L` and every
/// clause. Most clauses pair a true literal with a false one, which gives
/// the implication graph long chains between true literals. The pivot
/// disagrees with the planted assignment unless `pivot_agrees`, so reaching
/// it usually costs deletions.
#[derive(Clone, Debug)]
pub struct Annotated {
    pub formula: Formula,
    pub l_set: LiteralSet,
    pub pivot: Lit,
}

pub fn annotated(vars: u32, max_len: usize) -> impl Strategy<Value = Annotated> {
    (
        prop::collection::vec(any::<bool>(), vars as usize),
        prop::collection::vec(prop::bool::weighted(0.6), vars as usize),
        0..vars,
        prop::bool::weighted(0.2),
        prop::collection::vec(
            (0..vars, 0..vars, any::<bool>(), prop::bool::weighted(0.8)),
            0..=max_len,
        ),
    )
        .prop_map(move |(sigma, in_l, pivot_var, pivot_agrees, raw)| {
            let truth = |v: u32, value: bool| lit(v, sigma[v as usize] == value);
            let l_set = LiteralSet::from_lits(
                (0..vars)
                    .filter(|&v| v != pivot_var && in_l[v as usize])
                    .map(|v| truth(v, true)),
            )
            .unwrap();
            let clauses = raw
                .into_iter()
                .map(|(a, b, second, mixed)| Clause::new(truth(a, true), truth(b, second && !mixed)))
                .collect();
            Annotated {
                formula: distinct(clauses),
                l_set,
                pivot: truth(pivot_var, pivot_agrees),
            }
        })
}
