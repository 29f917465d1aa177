use eqtile::extremal::random::{dense_multigraph, planted_multigraph};
use eqtile::io;
use eqtile::oracle::{clique_predicate, oracle_multigraph_tiling, CliquePredicate, OracleBudget};
use eqtile::tiler::{
    almost_tiling, almost_tiling_on, build_absorbing_family, clique_status, full_tiling, improve, is_sponge,
    leftover_bound, perfect_acceptable_tiling, AlmostOptions, TilerParams,
};
use eqtile::{Error, StandardMultigraph, VertexSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn multigraph(n: usize, weights: &[u8]) -> StandardMultigraph {
    let mut m = StandardMultigraph::new(n);
    let mut it = weights.iter().cycle();
    for u in 0..n {
        for v in u + 1..n {
            m.set_multiplicity(u, v, *it.next().unwrap()).unwrap();
        }
    }
    m
}

fn fit(m: &StandardMultigraph, set: &[usize], s: usize) -> bool {
    clique_predicate(m, set, s, CliquePredicate::Fit).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn clique_status_matches_the_oracle(
        n in 2usize..7,
        weights in proptest::collection::vec(prop_oneof![1 => Just(0u8), 2 => Just(1u8), 4 => Just(2u8)], 21),
        s in 2usize..6,
        mask in 1u32..128,
    ) {
        let m = multigraph(n, &weights);
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        prop_assume!(!set.is_empty());
        let st = clique_status(&m, &VertexSet::from_unsorted(set.clone()), s);
        prop_assert_eq!(st.is_full, clique_predicate(&m, &set, s, CliquePredicate::Full).unwrap());
        prop_assert_eq!(st.fit, clique_predicate(&m, &set, s, CliquePredicate::Fit).unwrap());
        prop_assert_eq!(st.near_matching, clique_predicate(&m, &set, s, CliquePredicate::NearMatching).unwrap());
        prop_assert_eq!(st.acceptable, clique_predicate(&m, &set, s, CliquePredicate::Acceptable).unwrap());
    }
}

/// Random configurations `X₁, X₂, Y` on `0..2t+s`, kept when they satisfy
/// the hypotheses of the improvement step.
fn random_configuration(t: usize, s: usize, rng: &mut ChaCha8Rng) -> Option<StandardMultigraph> {
    let n = 2 * t + s;
    let mut m = StandardMultigraph::complete(n);
    for u in 0..n {
        for v in u + 1..n {
            let r: f64 = rng.gen();
            let mult = if r < 0.15 { 1 } else if r < 0.2 { 0 } else { 2 };
            m.set_multiplicity(u, v, mult).unwrap();
        }
    }
    let x1: Vec<usize> = (0..t).collect();
    let x2: Vec<usize> = (t..2 * t).collect();
    let y: Vec<usize> = (2 * t..n).collect();
    let ok = fit(&m, &x1, s)
        && fit(&m, &x2, s)
        && fit(&m, &y, s)
        && m.between(&x1, &y) > 2 * (s - 1) * t
        && m.between(&x2, &y) >= 2 * (s - 1) * t;
    ok.then_some(m)
}

/// Two disjoint fit cliques of orders `t+1` and `s` inside `0..n`.
fn brute_force_pair(m: &StandardMultigraph, t: usize, s: usize) -> bool {
    let n = m.n();
    let subsets = |k: usize| (0u32..1 << n).filter(move |b| b.count_ones() as usize == k);
    let members = |b: u32| (0..n).filter(|&v| b >> v & 1 == 1).collect::<Vec<_>>();
    subsets(t + 1)
        .filter(|&a| fit(m, &members(a), s))
        .any(|a| subsets(s).any(|b| a & b == 0 && fit(m, &members(b), s)))
}

#[test]
fn improvement_succeeds_on_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (t, s) in [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4), (2, 5)] {
        let mut hits = 0;
        for _ in 0..3000 {
            let Some(m) = random_configuration(t, s, &mut rng) else {
                continue;
            };
            hits += 1;
            let set = |r: std::ops::Range<usize>| VertexSet::from_unsorted(r.collect());
            let (small, big) = improve(&m, &set(0..t), &set(t..2 * t), &set(2 * t..2 * t + s), s).unwrap();
            assert_eq!((small.len(), big.len()), (t + 1, s));
            assert!(small.is_disjoint(&big));
            assert!(fit(&m, small.as_slice(), s) && fit(&m, big.as_slice(), s));
            if m.n() <= 10 && hits <= 50 {
                assert!(brute_force_pair(&m, t, s));
            }
        }
        assert!(hits > 20, "(t, s) = ({t}, {s}): only {hits} configurations");
    }
}

#[test]
fn improvement_rejects_bad_hypotheses() {
    let m = StandardMultigraph::new(5);
    let set = |v: Vec<usize>| VertexSet::from_unsorted(v);
    let err = improve(&m, &set(vec![0]), &set(vec![1]), &set(vec![2, 3, 4]), 3).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn improvement_moves_happen_on_sparse_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut moves = 0;
    for i in 0..400 {
        let n = rng.gen_range(8..=18);
        let m = dense_multigraph(n, n, rng.gen_range(0.2..0.9), &mut rng).unwrap();
        let all: Vec<usize> = (0..n).collect();
        let opts = AlmostOptions { strict: false, seed: i };
        let (tiling, stats) = almost_tiling_on(&m, &all, 3, &opts).unwrap();
        moves += stats.improvement_moves;
        let mut covered: Vec<usize> = tiling.tiles().iter().flat_map(|t| t.iter()).collect();
        covered.extend(tiling.leftover().iter());
        covered.sort_unstable();
        assert_eq!(covered, all);
        assert!(tiling.tiles().iter().all(|t| fit(&m, t.as_slice(), 3)));
    }
    assert!(moves > 0);
}

#[test]
fn almost_tilings_of_dense_inputs_respect_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for s in [2usize, 3, 4] {
        for _ in 0..10 {
            let n = 12 * s;
            let min = (2 * (s - 1) * n).div_ceil(s) - 1;
            let m = dense_multigraph(n, min, rng.gen_range(0.2..1.0), &mut rng).unwrap();
            let t = almost_tiling(&m, s).unwrap();
            assert!(t.leftover().len() <= leftover_bound(s));
            assert!(t.tiles().iter().all(|c| fit(&m, c.as_slice(), s)));
        }
    }
}

#[test]
fn perfect_acceptable_tiling_agrees_with_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let budget = OracleBudget::default();
    for _ in 0..200 {
        let n = 9;
        let m = dense_multigraph(n, rng.gen_range(6..=14), rng.gen_range(0.2..1.0), &mut rng).unwrap();
        let all: Vec<usize> = (0..n).collect();
        let ours = perfect_acceptable_tiling(&m, &all, 3);
        let oracle = oracle_multigraph_tiling(&m, 3, CliquePredicate::Acceptable, &budget).unwrap();
        assert_eq!(ours.is_some(), oracle.is_some());
        if let Some(tiles) = ours {
            assert!(tiles
                .iter()
                .all(|t| clique_predicate(&m, t, 3, CliquePredicate::Acceptable).unwrap()));
        }
    }
}

#[test]
fn sponges_in_a_complete_multigraph() {
    let m = StandardMultigraph::complete(12);
    let z: Vec<usize> = (0..9).collect();
    assert!(is_sponge(&m, 3, &z, &[9, 10, 11]));
    let mut cut = m.clone();
    for v in (0..12).filter(|&v| v != 9) {
        cut.set_multiplicity(v, 9, 0).unwrap();
    }
    assert!(!is_sponge(&cut, 3, &z, &[9, 10, 11]));
}

#[test]
fn planted_instances_are_tiled_and_certified() {
    let mut failures = 0;
    for seed in 0..12u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 30 + 15 * (seed as usize % 4);
        let (m, _) = planted_multigraph(n, 3, 0.2, &mut rng).unwrap();
        let params = TilerParams { seed, ..TilerParams::new(3) };
        match full_tiling(&m, &params) {
            Ok((t, stats)) => {
                t.certify(&m).unwrap();
                assert!(t.is_perfect());
                assert_eq!(t.tiles().len(), n / 3);
                assert!(stats.attempts >= 1);
                let record = t.to_record(&m).unwrap();
                let text = io::format_tiling(&record);
                assert_eq!(io::parse_tiling(&text).unwrap(), record);
            }
            Err(Error::ProbabilisticFailure { .. }) => failures += 1,
            Err(e) => panic!("seed {seed}: {e}"),
        }
    }
    assert!(failures <= 1);
}

#[test]
fn large_instance_uses_a_nonempty_absorbing_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let n = 300;
    let (m, _) = planted_multigraph(n, 3, 0.2, &mut rng).unwrap();
    let params = TilerParams {
        coverage_samples: 50,
        ..TilerParams::new(3)
    };
    let family = build_absorbing_family(&m, &params).unwrap();
    assert_eq!(family.len(), params.family_target(n));
    assert!(family.len() >= 3);
    assert_eq!(family.images().len(), 9 * family.len());
    assert!((family.images().len() as f64) < params.epsilon * n as f64 / 2.0);
    let (t, stats) = full_tiling(&m, &params).unwrap();
    t.certify(&m).unwrap();
    assert_eq!(stats.family_size, family.len());
}

#[test]
fn tiler_parameters_are_validated() {
    let m = StandardMultigraph::complete(30);
    let bad = [
        TilerParams { beta: 0.0, ..TilerParams::new(3) },
        TilerParams { beta: 0.15, ..TilerParams::new(3) },
        TilerParams { gamma: 0.02, ..TilerParams::new(3) },
        TilerParams { max_retries: 0, ..TilerParams::new(3) },
        TilerParams::new(1),
    ];
    for p in bad {
        assert!(matches!(full_tiling(&m, &p), Err(Error::InvalidParameter(_))), "{p:?}");
    }
}
