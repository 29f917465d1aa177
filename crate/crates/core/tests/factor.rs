use eqtile::coloring::EngineOptions;
use eqtile::extremal::random::dense_digraph;
use eqtile::extremal::{hs_extremal, is_strongly_connected, strong2_extremal, wang_extremal};
use eqtile::factor::{is_transitive_factor, transitive_factor, transitive_factor_with};
use eqtile::io;
use eqtile::oracle::{exhaustive_transitive_order, oracle_factor, OracleBudget, TilePredicate};
use eqtile::{Digraph, Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every pair in the tile points forward in the listed order.
fn forward(d: &Digraph, tile: &[usize]) -> bool {
    (0..tile.len()).all(|i| (i + 1..tile.len()).all(|j| d.has_edge(tile[i], tile[j])))
}

fn threshold(n: usize, s: usize) -> usize {
    // ⌈2(1 − 1/s)n⌉ − 1
    (2 * (s - 1) * n).div_ceil(s) - 1
}

#[test]
fn dense_digraphs_get_certified_factors_and_the_oracle_agrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let budget = OracleBudget::default();
    for _ in 0..150 {
        let s = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=12 / s);
        let n = s * k;
        let d = dense_digraph(n, threshold(n, s), rng.gen_range(0.3..1.0), &mut rng).unwrap();
        assert!(d.min_degree() >= threshold(n, s));
        let f = transitive_factor(&d, s).unwrap();
        assert_eq!(f.tiles().len(), k);
        assert!(f.tiles().iter().all(|t| forward(&d, t)));
        assert!(is_transitive_factor(&d, s, f.tiles()));
        assert!(oracle_factor(&d, s, TilePredicate::Transitive, &budget).unwrap().is_some());
    }
}

#[test]
fn seeds_do_not_affect_validity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let d = dense_digraph(12, threshold(12, 3), 0.8, &mut rng).unwrap();
    for seed in 1..20 {
        let opts = EngineOptions {
            seed,
            ..EngineOptions::default()
        };
        let f = transitive_factor_with(&d, 3, &opts).unwrap();
        assert!(is_transitive_factor(&d, 3, f.tiles()));
    }
}

#[test]
fn orders_match_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let d = dense_digraph(6, 8, rng.gen_range(0.0..1.0), &mut rng).unwrap();
        let set: Vec<usize> = (0..6).filter(|_| rng.gen_bool(0.6)).collect();
        let order = exhaustive_transitive_order(&d, &set).unwrap();
        let certified = eqtile::factor::certify_transitive(&d, &eqtile::VertexSet::from_unsorted(set.clone()), set.len())
            .unwrap();
        assert_eq!(order.is_some(), certified.is_some());
        if let Some(o) = certified {
            assert!(forward(&d, &o));
        }
    }
}

#[test]
fn below_threshold_is_rejected_and_invalid_tiles_are_caught() {
    let d = hs_extremal(3, 2).unwrap();
    assert!(matches!(transitive_factor(&d, 3), Err(Error::Precondition(_))));
    assert!(matches!(transitive_factor(&Digraph::complete(7), 3), Err(Error::InvalidParameter(_))));
    let k6 = Digraph::complete(6);
    assert!(!is_transitive_factor(&k6, 3, &[vec![0, 1, 2], vec![3, 4, 4]]));
    assert!(!is_transitive_factor(&k6, 3, &[vec![0, 1, 2]]));
}

#[test]
fn extremal_instances_sit_just_below_the_thresholds() {
    let budget = OracleBudget::default();
    let hs = hs_extremal(3, 2).unwrap();
    assert_eq!(hs.min_degree(), 6);
    assert_eq!(hs.min_degree() + 2, 2 * 2 * 6 / 3);
    assert!(oracle_factor(&hs, 3, TilePredicate::AnyTournament, &budget).unwrap().is_none());

    let w = wang_extremal(1).unwrap();
    assert_eq!(2 * w.min_degree(), 3 * 3 - 5);
    assert!(oracle_factor(&w, 3, TilePredicate::CyclicTriangle, &budget).unwrap().is_none());
    let w3 = wang_extremal(3).unwrap();
    assert_eq!(2 * w3.min_degree(), 3 * 9 - 5);
    assert!(oracle_factor(&w3, 3, TilePredicate::CyclicTriangle, &budget).unwrap().is_none());

    let st = strong2_extremal(1).unwrap();
    assert_eq!(st.min_degree(), 11);
    assert!(is_strongly_connected(&st));
    assert!(oracle_factor(&st, 3, TilePredicate::CyclicTriangle, &budget).unwrap().is_none());
}

#[test]
fn adding_one_edge_to_the_hs_instance_allows_a_factor() {
    let mut d = hs_extremal(3, 2).unwrap();
    d.add_edge(3, 4).unwrap();
    let found = oracle_factor(&d, 3, TilePredicate::Transitive, &OracleBudget::default()).unwrap();
    assert!(found.is_some());
}

#[test]
fn factor_text_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let d = dense_digraph(12, threshold(12, 4), 1.0, &mut rng).unwrap();
    let record = transitive_factor(&d, 4).unwrap().to_record();
    let text = io::format_factor(&record);
    assert_eq!(io::parse_factor(&text).unwrap(), record);
}
