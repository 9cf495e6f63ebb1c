//! Fixed-parameter branching solver for Almost 2-SAT.
//!
//! Given a 2-CNF formula and a budget `k`, find at most `k` clauses whose
//! removal leaves the formula satisfiable. The crate is `no_std` and only
//! needs `alloc`; parsing, generation and the command-line driver live in
//! the `a2sat` companion crate.
//!
//! Layout:
//!
//! - [`formula`]: literals, normalized clauses, formulas, literal sets and
//!   satisfiability with respect to a literal set.
//! - [`igraph`]: the implication graph, walks, paths and the 2-SAT SCC core.
//! - [`separation`]: bounded clause-separator sizes via unit-capacity flow,
//!   and the neutral-literal test.
//! - [`solver`]: the branching search for the annotated problem.
//! - [`compression`]: clause splitting, the two intermediate problems and
//!   the iterative-compression driver for plain Almost 2-SAT.
//! - [`oracle`]: exhaustive reference implementations (feature `oracle`).
//!
//! ```
//! use a2sat_core::{solve_2asat, Clause, CsResult, SolveStats, Var};
//!
//! let (x, y) = (Var(0).pos(), Var(1).pos());
//! let clauses = [Clause::unit(x), Clause::unit(!x), Clause::new(x, y)];
//! let mut stats = SolveStats::default();
//! let result = solve_2asat(&clauses, 1, &mut stats).unwrap();
//! // Either unit clause can go; both answers have one deletion.
//! assert!(matches!(result, CsResult::Found(s) if s.len() == 1));
//! ```
#![no_std]

extern crate alloc;

pub mod compression;
pub mod formula;
pub mod igraph;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod separation;
pub mod solver;

pub use compression::{
    reduce_i1, solve_2asat, solve_2asat_with, solve_i1, solve_i2, split_clauses, CompressionError, I1Outcome,
    I1Reduction, SolveStats, SplitMap,
};
pub use formula::{
    satisfying_assignment, swrt, validate_aslasat, AslasatInstance, Assignment, Clause, Contradiction, DuplicateClause,
    Formula, Lit, LiteralSet, ValidationError, Var,
};
pub use igraph::{ImplicationGraph, Walk};
pub use separation::{is_neutral, sep_size_bounded, SeparatorSize};
pub use solver::{find_cs, find_cs_with, CsResult, SearchStats, SolveError, SolverOptions};
