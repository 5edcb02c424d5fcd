//! Property tests for the algebraic and structural invariants.

use proptest::collection::vec;
use proptest::prelude::*;

use hyperbasis::basis::{generate_level_set, generate_random_set, BasisSet};
use hyperbasis::data::{split, synth_circular_regression, SplitMode};
use hyperbasis::encode::{label_codec, ScalarQuantizer};
use hyperbasis::hv::{bind, bundle, hamming_distance, permute, BundleAccumulator, Hypervector};

fn hv_pair() -> impl Strategy<Value = (Hypervector, Hypervector)> {
    (1usize..200).prop_flat_map(|d| {
        (vec(any::<bool>(), d), vec(any::<bool>(), d)).prop_map(|(a, b)| {
            (
                Hypervector::from_bits(&a).unwrap(),
                Hypervector::from_bits(&b).unwrap(),
            )
        })
    })
}

fn hv_triple() -> impl Strategy<Value = (Hypervector, Hypervector, Hypervector)> {
    (1usize..160).prop_flat_map(|d| {
        (vec(any::<bool>(), d), vec(any::<bool>(), d), vec(any::<bool>(), d)).prop_map(
            |(a, b, c)| {
                (
                    Hypervector::from_bits(&a).unwrap(),
                    Hypervector::from_bits(&b).unwrap(),
                    Hypervector::from_bits(&c).unwrap(),
                )
            },
        )
    })
}

proptest! {
    #[test]
    fn bind_is_commutative_associative_self_inverse((a, b) in hv_pair()) {
        prop_assert_eq!(bind(&a, &b).unwrap(), bind(&b, &a).unwrap());
        prop_assert_eq!(bind(&a, &bind(&a, &b).unwrap()).unwrap(), b.clone());
        let c = permute(&a, 1);
        let left = bind(&bind(&a, &b).unwrap(), &c).unwrap();
        let right = bind(&a, &bind(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn xor_is_an_exact_isometry((a, b, x) in hv_triple()) {
        let direct = hamming_distance(&a, &b).unwrap();
        let masked = hamming_distance(&bind(&a, &x).unwrap(), &bind(&b, &x).unwrap()).unwrap();
        prop_assert_eq!(direct, masked);
    }

    #[test]
    fn permutation_is_a_group_action((a, _) in hv_pair(), i in -300i64..300, j in -300i64..300) {
        let stepwise = permute(&permute(&a, i), j);
        let combined = permute(&a, i + j);
        prop_assert_eq!(stepwise, combined);
        prop_assert_eq!(permute(&permute(&a, i), -i), a);
    }

    #[test]
    fn accumulator_equals_bundle_in_any_order(
        (d, n) in (1usize..100, 2usize..12),
        seed in any::<u64>(),
        rotate_by in 0usize..12,
    ) {
        let mut rng = hyperbasis::rng::child_rng(seed, "prop-acc");
        let operands: Vec<Hypervector> = (0..n)
            .map(|_| Hypervector::random(d, &mut rng).unwrap())
            .collect();
        let tie = Hypervector::random(d, &mut rng).unwrap();
        let batch = bundle(&operands, &tie).unwrap();

        let mut rotated = operands.clone();
        rotated.rotate_left(rotate_by % n);
        let mut acc = BundleAccumulator::new(d).unwrap();
        for v in &rotated {
            acc.accumulate(v).unwrap();
        }
        prop_assert_eq!(acc.finalize(&tie).unwrap(), batch);
    }

    #[test]
    fn binding_commutes_with_three_way_bundle((a, b, c) in hv_triple()) {
        let d = a.dim();
        let mut rng = hyperbasis::rng::child_rng(17, "prop-xc");
        let x = Hypervector::random(d, &mut rng).unwrap();
        let tie = Hypervector::random(d, &mut rng).unwrap();
        let lhs = bind(&x, &bundle(&[a.clone(), b.clone(), c.clone()], &tie).unwrap()).unwrap();
        let rhs = bundle(
            &[bind(&x, &a).unwrap(), bind(&x, &b).unwrap(), bind(&x, &c).unwrap()],
            &tie,
        )
        .unwrap();
        prop_assert_eq!(hamming_distance(&lhs, &rhs).unwrap(), 0.0);
    }

    #[test]
    fn quantizer_is_monotone(
        bounds in (-100.0f64..100.0, 0.5f64..50.0),
        m in 2usize..40,
        x in -200.0f64..200.0,
        step in 0.0f64..100.0,
    ) {
        let (a, width) = bounds;
        let basis = generate_level_set(m, 64, 3).unwrap();
        let q = ScalarQuantizer::new(a, a + width, basis).unwrap();
        prop_assert!(q.quantize(x).unwrap() <= q.quantize(x + step).unwrap());
    }

    #[test]
    fn angle_quantizer_ignores_full_turns(theta in -20.0f64..20.0, turns in -3i32..=3, m in 3usize..24) {
        let basis = hyperbasis::basis::generate_circular_set(m, 64, 0.0, 5).unwrap();
        let q = hyperbasis::encode::AngleQuantizer::new(basis).unwrap();
        let shifted = theta + f64::from(turns) * std::f64::consts::TAU;
        prop_assert_eq!(q.quantize(theta).unwrap(), q.quantize(shifted).unwrap());
    }

    #[test]
    fn label_round_trip_is_exact_on_grid(m in 2usize..48, level in 0usize..64) {
        // Wide dimensionality relative to the level count: neighbors are
        // then dozens of bits apart and cannot collide by chance.
        let codec = label_codec(-3.0, 5.0, m, 2048, 9).unwrap();
        let level = level % m;
        let y = codec.quantizer().grid().point(level);
        let encoded = codec.encode(y).unwrap().clone();
        prop_assert_eq!(codec.decode(&encoded).unwrap(), y);
    }

    #[test]
    fn record_and_tuple_are_permutation_invariant(seed in any::<u64>(), n in 1usize..8) {
        let d = 128;
        let keys = generate_random_set(n, d, seed).unwrap();
        let mut rng = hyperbasis::rng::child_rng(seed, "prop-record");
        let values: Vec<Hypervector> = (0..n)
            .map(|_| Hypervector::random(d, &mut rng).unwrap())
            .collect();
        let record = hyperbasis::encode::encode_record(&keys, &values).unwrap();

        // Feeding the fields in reverse with reversed keys is the same record.
        let reversed_keys = reorder_basis(&keys, |i| n - 1 - i);
        let reversed_values: Vec<Hypervector> = values.iter().rev().cloned().collect();
        let again = bundle_record_like(&reversed_keys, &reversed_values, &keys);
        prop_assert_eq!(record, again);

        let tuple = hyperbasis::encode::encode_tuple(&values).unwrap();
        let swapped = hyperbasis::encode::encode_tuple(&reversed_values).unwrap();
        prop_assert_eq!(tuple, swapped);
    }

    #[test]
    fn split_is_disjoint_exhaustive_deterministic(
        n in 2usize..300,
        fraction in 0.05f64..0.95,
        seed in any::<u64>(),
    ) {
        let data = synth_circular_regression(n, 0.0, seed).unwrap();
        let (train_a, test_a) = split(&data, fraction, SplitMode::Random, seed).unwrap();
        let (train_b, test_b) = split(&data, fraction, SplitMode::Random, seed).unwrap();
        prop_assert_eq!(train_a.rows(), train_b.rows());
        prop_assert_eq!(test_a.rows(), test_b.rows());
        prop_assert_eq!(train_a.len() + test_a.len(), n);

        let mut seen: Vec<u64> = train_a
            .rows()
            .iter()
            .chain(test_a.rows())
            .map(|row| row[0].as_real().unwrap().to_bits())
            .collect();
        let mut all: Vec<u64> = data
            .rows()
            .iter()
            .map(|row| row[0].as_real().unwrap().to_bits())
            .collect();
        seen.sort_unstable();
        all.sort_unstable();
        prop_assert_eq!(seen, all);
    }

    #[test]
    fn hypervector_bytes_round_trip(bits in vec(any::<bool>(), 1..300)) {
        let hv = Hypervector::from_bits(&bits).unwrap();
        prop_assert_eq!(Hypervector::from_bytes(&hv.to_bytes()).unwrap(), hv);
    }

    #[test]
    fn basis_container_round_trips(m in 2usize..10, d in 1usize..200, seed in any::<u64>()) {
        let set = generate_level_set(m, d, seed).unwrap();
        let mut bytes = Vec::new();
        set.write_to(&mut bytes).unwrap();
        let back = BasisSet::read_from(&mut bytes.as_slice()).unwrap();
        prop_assert_eq!(back.len(), set.len());
        for i in 0..m {
            prop_assert_eq!(back.get(i), set.get(i));
        }
    }
}

/// Rebuilds a record from permuted (key, value) pairs while reusing the
/// original key set's tie-breaker stream, mirroring what a caller that
/// shuffles field order would observe.
fn bundle_record_like(
    keys_in_order: &[Hypervector],
    values: &[Hypervector],
    original: &BasisSet,
) -> Hypervector {
    let d = original.dim();
    let mut acc = BundleAccumulator::new(d).unwrap();
    for (k, v) in keys_in_order.iter().zip(values) {
        acc.accumulate(&bind(k, v).unwrap()).unwrap();
    }
    let tie = Hypervector::random(
        d,
        &mut hyperbasis::rng::child_rng(original.seed(), "record-tiebreak"),
    )
    .unwrap();
    acc.finalize(&tie).unwrap()
}

fn reorder_basis(set: &BasisSet, index: impl Fn(usize) -> usize) -> Vec<Hypervector> {
    (0..set.len()).map(|i| set.get(index(i)).clone()).collect()
}
