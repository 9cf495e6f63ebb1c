mod support;

use std::collections::BTreeSet;

use a2sat_core::compression::{reduce_i1, I1Outcome};
use a2sat_core::oracle::{brute_scs, brute_swrt};
use a2sat_core::{solve_2asat, solve_i1, split_clauses, swrt, Clause, CsResult, LiteralSet, SolveStats, SolverOptions};
use proptest::prelude::*;
use support::{clause_list, distinct, formula, literal_set};

/// Smallest deletion set for a clause list that may repeat clauses.
fn brute_list_optimum(clauses: &[Clause]) -> usize {
    let m = clauses.len();
    (0u32..1 << m)
        .filter(|mask| {
            let kept: Vec<Clause> = (0..m).filter(|i| mask & (1 << i) == 0).map(|i| clauses[i]).collect();
            brute_swrt(&distinct(kept), &LiteralSet::new()).unwrap()
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

fn kept_after(clauses: &[Clause], deleted: &[usize]) -> Vec<Clause> {
    let gone: BTreeSet<usize> = deleted.iter().copied().collect();
    clauses
        .iter()
        .enumerate()
        .filter(|(i, _)| !gone.contains(i))
        .map(|(_, c)| *c)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn splitting_preserves_optimum(f in formula(4, 6)) {
        let (split, map) = split_clauses(f.clauses(), f.var_bound());
        prop_assert_eq!(split.len(), 2 * f.len());
        let original = brute_scs(&f, &LiteralSet::new(), None).unwrap();
        let derived = brute_scs(&split, &LiteralSet::new(), None).unwrap();
        prop_assert_eq!(original.len(), derived.len());
        prop_assert!(swrt(&f.without_indices(&map.map_back(&derived)), &LiteralSet::new()));
    }

    #[test]
    fn i1_matches_brute_force(f in formula(5, 9), l in literal_set(5), k in 0usize..4) {
        prop_assume!(swrt(&f, &LiteralSet::new()));
        let relevant = LiteralSet::from_lits(l.iter().filter(|x| f.vars().contains(&x.var()))).unwrap();
        let optimum = brute_scs(&f, &relevant, None).unwrap().len();
        let mut stats = SolveStats::default();
        let got = solve_i1(&f, &l, k, &SolverOptions::default(), &mut stats).unwrap();
        prop_assert_eq!(got.is_found(), optimum <= k);
        if let CsResult::Found(s) = got {
            prop_assert!(s.len() <= k);
            prop_assert!(swrt(&f.without_indices(&s), &l));
        }
        prop_assert_eq!(stats.bound_violations, 0);
    }

    #[test]
    fn i1_reduction_round_trip(f in formula(5, 6), l in literal_set(5)) {
        prop_assume!(swrt(&f, &LiteralSet::new()));
        match reduce_i1(&f, &l, 3).unwrap() {
            I1Outcome::Empty => prop_assert!(swrt(&f, &l)),
            I1Outcome::Reduced(r) => {
                let inst = &r.instance;
                prop_assert_eq!(inst.formula().len(), 2 * f.len());
                let derived = brute_scs(inst.formula(), inst.l_set(), Some(inst.pivot())).unwrap();
                let relevant = LiteralSet::from_lits(l.iter().filter(|x| f.vars().contains(&x.var()))).unwrap();
                let original = brute_scs(&f, &relevant, None).unwrap();
                prop_assert_eq!(derived.len(), original.len());
                prop_assert!(swrt(&f.without_indices(&r.split.map_back(&derived)), &l));
            }
        }
    }

    #[test]
    fn solve_2asat_matches_brute_force(clauses in clause_list(4, 9), k in 0usize..4) {
        let optimum = brute_list_optimum(&clauses);
        let mut stats = SolveStats::default();
        let got = solve_2asat(&clauses, k, &mut stats).unwrap();
        prop_assert_eq!(got.is_found(), optimum <= k);
        if let CsResult::Found(s) = got {
            prop_assert!(s.len() <= k);
            prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(s.iter().all(|&i| i < clauses.len()));
            prop_assert!(swrt(&distinct(kept_after(&clauses, &s)), &LiteralSet::new()));
        }
        prop_assert_eq!(stats.bound_violations, 0);
    }
}
