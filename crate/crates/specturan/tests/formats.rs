use proptest::prelude::*;
use specturan::formats::{parse_hgr, parse_hgr_records, parse_weighted, write_hgr, write_weighted};
use specturan_core::{Hypergraph, WeightedSGraph};

fn edges(n: usize, r: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    proptest::collection::vec(proptest::sample::subsequence((0..n as u32).collect::<Vec<_>>(), r), 0..12)
}

fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=4)
        .prop_flat_map(|r| (Just(r), r..=9))
        .prop_flat_map(|(r, n)| (Just(n), Just(r), edges(n, r)))
        .prop_map(|(n, r, mut e)| {
            e.sort();
            e.dedup();
            Hypergraph::build(n, r, e).unwrap()
        })
}

proptest! {
    #[test]
    fn hgr_round_trip(h in hypergraph()) {
        let text = write_hgr(&h);
        let back = parse_hgr(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(write_hgr(&back), text);
    }

    #[test]
    fn record_streams_round_trip(hs in proptest::collection::vec(hypergraph(), 1..5)) {
        let text = hs.iter().map(write_hgr).collect::<Vec<_>>().join("\n");
        prop_assert_eq!(parse_hgr_records(&text).unwrap(), hs);
    }

    #[test]
    fn weighted_round_trip(h in hypergraph(), weights in proptest::collection::vec(1u64..1000, 12)) {
        prop_assume!(h.edge_count() > 0);
        let w = WeightedSGraph::new(h.n(), h.r(), h.edges().map(|e| e.to_vec()).zip(weights)).unwrap();
        let text = write_weighted(&w);
        let back = parse_weighted(&text).unwrap();
        prop_assert_eq!(write_weighted(&back), text);
        prop_assert_eq!(back.total_weight(), w.total_weight());
    }
}
