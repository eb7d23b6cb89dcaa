mod common;

use common::{as_map, brute_force};
use par_eclat::pipeline::{self, MiningConfig, TriMatrixMode, Variant};
use par_eclat::{HorizontalDb, SupportThreshold};
use proptest::prelude::*;

const ALL: [Variant; 7] = [
    Variant::V1,
    Variant::V2,
    Variant::V3,
    Variant::V4,
    Variant::V5,
    Variant::Apriori,
    Variant::Oracle,
];

fn cfg(v: Variant, min_sup: u64) -> MiningConfig {
    MiningConfig::new(v, SupportThreshold::Count(min_sup)).with_workers(3)
}

fn four_transactions() -> HorizontalDb {
    HorizontalDb::from_ids(vec![vec![1, 2, 3], vec![1, 2], vec![1, 3], vec![2, 3]])
}

#[test]
fn every_variant_mines_the_four_transaction_example() {
    let db = four_transactions();
    let expected = brute_force(&db, 2);
    assert_eq!(expected.len(), 6);
    assert_eq!(expected[&vec![1]], 3);
    assert_eq!(expected[&vec![1, 2]], 2);
    for v in ALL {
        let r = pipeline::run(&db, &cfg(v, 2)).unwrap();
        assert_eq!(as_map(&r), expected, "variant {v}");
    }
}

#[test]
fn threshold_above_database_size_is_empty() {
    let db = four_transactions();
    for v in ALL {
        assert!(pipeline::run(&db, &cfg(v, 5)).unwrap().is_empty(), "variant {v}");
    }
}

#[test]
fn all_items_frequent_makes_filtering_a_no_op() {
    let db = four_transactions();
    let r = pipeline::run_v2(&db, &cfg(Variant::V2, 1)).unwrap();
    assert_eq!(r.metrics.reduction_percent, Some(0.0));
}

#[test]
fn v4_and_v5_differ_only_in_plan() {
    let db = par_eclat::synth::random(10, 40, 0.4, 11);
    let v4 = pipeline::run(&db, &cfg(Variant::V4, 4).with_partitions(2)).unwrap();
    let v5 = pipeline::run(&db, &cfg(Variant::V5, 4).with_partitions(2)).unwrap();
    assert_eq!(v4.itemsets, v5.itemsets);
    let (p4, p5) = (v4.metrics.plan.unwrap(), v5.metrics.plan.unwrap());
    assert_eq!(p4.p, 2);
    assert_ne!(p4.assignment, p5.assignment);
}

#[test]
fn single_partition_keeps_output() {
    let db = par_eclat::synth::random(9, 30, 0.5, 5);
    let base = pipeline::run(&db, &cfg(Variant::V3, 3)).unwrap();
    let one = pipeline::run(&db, &cfg(Variant::V4, 3).with_partitions(1)).unwrap();
    assert_eq!(one.metrics.plan.as_ref().unwrap().p, 1);
    assert_eq!(base.itemsets, one.itemsets);
}

#[test]
fn default_partitioning_uses_n_minus_one() {
    let db = par_eclat::synth::random(8, 30, 0.5, 2);
    let r = pipeline::run(&db, &cfg(Variant::V1, 2)).unwrap();
    let plan = r.metrics.plan.unwrap();
    assert_eq!(plan.p, r.metrics.n_frequent_items - 1);
    assert_eq!(plan.assignment, (0..plan.p).collect::<Vec<_>>());
}

#[test]
fn empty_frequent_set_gives_empty_result() {
    let db = HorizontalDb::from_ids(vec![vec![0], vec![1], vec![2]]);
    for v in ALL {
        let r = pipeline::run(&db, &cfg(v, 2)).unwrap();
        assert!(r.is_empty(), "variant {v}");
    }
}

fn db_strategy() -> impl Strategy<Value = HorizontalDb> {
    prop::collection::vec(prop::collection::vec(0u32..12, 1..8), 1..40)
        .prop_map(HorizontalDb::from_ids)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn variants_agree_with_brute_force(db in db_strategy(), min_sup in 1u64..5) {
        let expected = brute_force(&db, min_sup);
        for v in ALL {
            let r = pipeline::run(&db, &cfg(v, min_sup)).unwrap();
            prop_assert_eq!(&as_map(&r), &expected, "variant {}", v);
            prop_assert!(r.itemsets.iter().all(|f| f.support >= min_sup));
        }
    }

    #[test]
    fn configuration_never_changes_output(
        db in db_strategy(),
        min_sup in 1u64..4,
        workers in 1usize..5,
        p in 1usize..12,
    ) {
        let reference = pipeline::run(&db, &cfg(Variant::V1, min_sup).with_workers(1)).unwrap();
        for v in Variant::ECLAT {
            for mode in [TriMatrixMode::On, TriMatrixMode::Off] {
                let c = cfg(v, min_sup).with_workers(workers).with_partitions(p).with_tri_matrix(mode);
                let r = pipeline::run(&db, &c).unwrap();
                prop_assert_eq!(&r.itemsets, &reference.itemsets);
            }
        }
    }

    #[test]
    fn output_is_downward_closed(db in db_strategy(), min_sup in 1u64..4) {
        let r = pipeline::run(&db, &cfg(Variant::V5, min_sup)).unwrap();
        let m = as_map(&r);
        for items in m.keys() {
            for drop in 0..items.len() {
                if items.len() == 1 { break; }
                let mut sub = items.clone();
                sub.remove(drop);
                prop_assert!(m.contains_key(&sub), "{:?} missing subset {:?}", items, sub);
            }
        }
    }
}
