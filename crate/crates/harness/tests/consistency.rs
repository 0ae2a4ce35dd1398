use phoml_harness::consistency::{bounded_consistency_search, closed_proofs, MAX_SEARCH_SIZE};

#[test]
fn no_closed_proof_of_bot_up_to_size_8() {
    for max in [1, 3, 8] {
        let report = bounded_consistency_search(max);
        assert_eq!(report.max_size, max);
        assert!(report.hits.is_empty(), "{:?}", report.hits);
        println!(
            "size <= {max}: {} closed proofs, {} typed",
            report.total(),
            report.typed
        );
    }
}

#[test]
fn enumeration_counts_match_direct_enumeration() {
    let report = bounded_consistency_search(5);
    let direct: Vec<usize> = (1..=5).map(|n| closed_proofs(n).len()).collect();
    assert_eq!(report.enumerated, direct);
    assert_eq!(report.enumerated[0], 0);
}

#[test]
#[should_panic(expected = "exceeds")]
fn oversized_search_is_rejected() {
    bounded_consistency_search(MAX_SEARCH_SIZE + 1);
}

#[test]
fn no_closed_proof_of_bot_up_to_size_11() {
    let report = bounded_consistency_search(11);
    assert!(report.hits.is_empty(), "{:?}", report.hits);
    println!(
        "size <= 11: {} closed proofs, {} typed",
        report.total(),
        report.typed
    );
}
