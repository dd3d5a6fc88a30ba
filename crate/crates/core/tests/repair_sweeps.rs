mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rdlrc::constructions::LrcDesign;
use rdlrc::repair::{erasure_sweep, repair_auto, repair_global, Codec, ErasurePattern, RepairMode};

#[test]
fn worked_examples_survive_every_pattern() {
    for design in [h1(), h2(), h3()] {
        let report = erasure_sweep(&design, design.claimed_d() - 1, 11).unwrap();
        assert!(report.all_recovered(), "{}", design.summary());
        assert_eq!(report.locality_violations, 0);
    }
    let report = erasure_sweep(&h3(), 3, 0).unwrap();
    assert_eq!(report.global_patterns(), 10 + 45 + 120);
}

fn designs() -> Vec<LrcDesign> {
    vec![h1(), h2(), h3()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encode_then_repair_round_trips(which in 0usize..3, seed in any::<u64>(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let design = &designs()[which];
        let codec = Codec::new(design);
        let codeword = codec.encode(&codec.random_message(&mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
        let mut positions: Vec<usize> = picks.iter().map(|i| i.index(design.n())).collect();
        positions.sort_unstable();
        positions.dedup();
        prop_assume!(positions.len() < design.claimed_d());
        let word = ErasurePattern::new(&positions, design.n()).unwrap().apply(&codeword);
        prop_assert_eq!(repair_global(design, &word).unwrap(), codeword.clone());
        let res = repair_auto(design, &word).unwrap();
        prop_assert_eq!(&res.codeword, &codeword);
        prop_assert_eq!(res.modes.len(), positions.len());
    }

    #[test]
    fn local_repairs_read_only_their_group(which in 0usize..3, seed in any::<u64>(), group in 0usize..2, a in 0usize..8, b in 0usize..8) {
        let design = &designs()[which];
        let cols = design.block_columns(group);
        let width = cols.len();
        let mut positions = vec![cols.start + a % width, cols.start + b % width];
        positions.dedup();
        positions.truncate(design.delta() - 1);
        let codec = Codec::new(design);
        let codeword = codec.encode(&codec.random_message(&mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
        let word = ErasurePattern::new(&positions, design.n()).unwrap().apply(&codeword);
        let res = repair_auto(design, &word).unwrap();
        prop_assert_eq!(&res.codeword, &codeword);
        prop_assert!(res.modes.iter().all(|(_, m)| *m == RepairMode::Local));
        prop_assert!(res.read.iter().all(|p| cols.contains(p)));
        prop_assert_eq!(res.symbols_read(), width - positions.len());
    }
}
