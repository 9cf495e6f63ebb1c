use a2sat::{parse, render, InputDocument};
use a2sat_core::{Clause, Lit, Var};
use proptest::prelude::*;

fn lit(vars: u32) -> impl Strategy<Value = Lit> {
    (0..vars, any::<bool>()).prop_map(|(v, s)| Lit::new(Var(v), s))
}

fn document() -> impl Strategy<Value = InputDocument> {
    (1u32..8).prop_flat_map(|vars| {
        (
            prop::collection::vec((lit(vars), lit(vars)), 0..12),
            prop::collection::vec(lit(vars), 0..4),
            prop::option::of(lit(vars)),
        )
            .prop_map(move |(cs, annotation, pivot)| InputDocument {
                vars,
                clauses: cs.into_iter().map(|(a, b)| Clause::new(a, b)).collect(),
                annotation,
                pivot,
            })
    })
}

proptest! {
    #[test]
    fn parse_inverts_render(doc in document()) {
        prop_assert_eq!(parse(&render(&doc)).unwrap(), doc);
    }

    #[test]
    fn render_inverts_parse_on_canonical_text(doc in document()) {
        let text = render(&doc);
        prop_assert_eq!(render(&parse(&text).unwrap()), text);
    }

    #[test]
    fn parser_never_panics(text in "[pcat0-9 \\-\\n]{0,64}") {
        let _ = parse(&text);
    }
}
