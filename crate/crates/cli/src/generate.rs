//! Seeded random instances with a planted deletion set.
//!
//! A hidden random assignment σ is drawn first. `clauses - planted_k`
//! clauses are drawn so that σ satisfies them and `planted_k` so that σ
//! falsifies both literals. Deleting the planted clauses leaves a formula σ
//! satisfies, so the optimum is at most `planted_k`. The final order is
//! shuffled.

use std::collections::BTreeSet;

use a2sat_core::{Clause, Lit, Var};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dimacs::InputDocument;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    pub vars: u32,
    pub clauses: usize,
    pub planted_k: usize,
    pub allow_repeats: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("need at least one variable")]
    NoVariables,
    #[error("planted-k {planted} exceeds the clause count {clauses}")]
    TooManyPlanted { planted: usize, clauses: usize },
    #[error("only {available} distinct {what} clauses exist over {vars} variables, {wanted} requested")]
    NotEnoughClauses {
        what: &'static str,
        available: u128,
        wanted: usize,
        vars: u32,
    },
}

/// Clause counts over `n` variables, excluding tautologies: `(satisfied, falsified)` by a fixed assignment.
fn capacity(n: u32) -> (u128, u128) {
    let n = u128::from(n);
    // Over the n false literals: n units and n(n-1)/2 pairs.
    let falsified = n + n * (n - 1) / 2;
    // All non-tautological clauses: 2n units plus 4 * n(n-1)/2 pairs.
    let total = 2 * n + 2 * n * (n - 1);
    (total - falsified, falsified)
}

pub fn generate(p: &GenParams) -> Result<InputDocument, GenError> {
    if p.vars == 0 {
        return Err(GenError::NoVariables);
    }
    if p.planted_k > p.clauses {
        return Err(GenError::TooManyPlanted {
            planted: p.planted_k,
            clauses: p.clauses,
        });
    }
    let satisfied = p.clauses - p.planted_k;
    if !p.allow_repeats {
        let (sat_cap, unsat_cap) = capacity(p.vars);
        for (what, available, wanted) in [("satisfied", sat_cap, satisfied), ("planted", unsat_cap, p.planted_k)] {
            if available < wanted as u128 {
                return Err(GenError::NotEnoughClauses {
                    what,
                    available,
                    wanted,
                    vars: p.vars,
                });
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let sigma: Vec<bool> = (0..p.vars).map(|_| rng.random_bool(0.5)).collect();
    let truth = |v: u32, value: bool| Lit::new(Var(v), sigma[v as usize] == value);

    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(p.clauses);
    while out.len() < satisfied {
        let a = Lit::new(Var(rng.random_range(0..p.vars)), rng.random_bool(0.5));
        let b = Lit::new(Var(rng.random_range(0..p.vars)), rng.random_bool(0.5));
        let holds = |l: Lit| sigma[l.var().index()] == l.is_positive();
        if a == !b || !(holds(a) || holds(b)) {
            continue;
        }
        let c = Clause::new(a, b);
        if p.allow_repeats || seen.insert(c) {
            out.push(c);
        }
    }
    while out.len() < p.clauses {
        let c = Clause::new(
            truth(rng.random_range(0..p.vars), false),
            truth(rng.random_range(0..p.vars), false),
        );
        if p.allow_repeats || seen.insert(c) {
            out.push(c);
        }
    }
    out.shuffle(&mut rng);
    Ok(InputDocument {
        vars: p.vars,
        clauses: out,
        annotation: Vec::new(),
        pivot: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(seed: u64, vars: u32, clauses: usize, planted_k: usize) -> GenParams {
        GenParams {
            seed,
            vars,
            clauses,
            planted_k,
            allow_repeats: false,
        }
    }

    #[test]
    fn capacity_matches_enumeration() {
        for n in 1..5u32 {
            let lits: Vec<Lit> = (0..2 * n as usize).map(Lit::from_code).collect();
            let mut all = BTreeSet::new();
            for &a in &lits {
                for &b in &lits {
                    if a != !b {
                        all.insert(Clause::new(a, b));
                    }
                }
            }
            // Falsified by the all-false assignment: both literals negative.
            let falsified = all
                .iter()
                .filter(|c| !c.a().is_positive() && !c.b().is_positive())
                .count();
            assert_eq!(capacity(n), ((all.len() - falsified) as u128, falsified as u128));
        }
    }

    #[test]
    fn deterministic_and_distinct() {
        let a = generate(&params(1, 6, 12, 2)).unwrap();
        let b = generate(&params(1, 6, 12, 2)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.clauses.len(), 12);
        assert_eq!(a.clauses.iter().collect::<BTreeSet<_>>().len(), 12);
        assert_ne!(a, generate(&params(2, 6, 12, 2)).unwrap());
    }

    #[test]
    fn parameter_errors() {
        assert_eq!(generate(&params(0, 0, 1, 0)), Err(GenError::NoVariables));
        assert!(matches!(
            generate(&params(0, 2, 1, 2)),
            Err(GenError::TooManyPlanted { .. })
        ));
        assert!(matches!(
            generate(&params(0, 1, 3, 0)),
            Err(GenError::NotEnoughClauses { .. })
        ));
        let repeats = GenParams {
            allow_repeats: true,
            ..params(0, 1, 5, 3)
        };
        assert_eq!(generate(&repeats).unwrap().clauses.len(), 5);
    }
}
