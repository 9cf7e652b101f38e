use proptest::prelude::*;

use kato_core::chern::{closed_form_multiplicities, cross_validate, solve_adjunction};
use kato_core::graph::build_dual_graph;
use kato_core::sequence::Block;
use kato_core::DlousskySequence;

fn simple_sequence() -> impl Strategy<Value = DlousskySequence> {
    (prop::collection::vec(1u32..6, 1..7), 1u32..8).prop_map(|(ks, l)| {
        let mut blocks: Vec<Block> = ks.into_iter().map(Block::Singular).collect();
        blocks.push(Block::Regular(l));
        DlousskySequence::from_blocks(&blocks).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_equals_oracle_beyond_the_sweep(seq in simple_sequence()) {
        let graph = build_dual_graph(&seq);
        prop_assume!(!graph.has_self_loop());
        let oracle = solve_adjunction(&graph).unwrap();
        let closed = closed_form_multiplicities(&seq).unwrap();
        prop_assert_eq!(&oracle.values, &closed.values);
        prop_assert_eq!(oracle.index, closed.index);
    }

    #[test]
    fn every_identity_holds_on_random_sequences(seq in simple_sequence()) {
        let report = cross_validate(&seq);
        let failures: Vec<_> = report.failures().collect();
        prop_assert!(failures.is_empty(), "{}: {:?}", seq, failures);
    }

    #[test]
    fn parse_round_trips(seq in simple_sequence()) {
        let symbolic: DlousskySequence = seq.symbolic().parse().unwrap();
        let expanded: DlousskySequence = seq.expanded().parse().unwrap();
        prop_assert_eq!(&symbolic, &seq);
        prop_assert_eq!(&expanded, &seq);
    }
}
