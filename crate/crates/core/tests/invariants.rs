mod common;

use common::{as_map, brute_force};
use par_eclat::counting::{build_tri_matrix, count_items, frequent_items, pair_support};
use par_eclat::dataset::{filter_transactions, parse_horizontal, replicate};
use par_eclat::eclat::{build_equivalence_classes, intersect};
use par_eclat::pipeline::{self, MiningConfig, Variant};
use par_eclat::vertical::{build_vertical, order_by_support, ItemFilter};
use par_eclat::{HorizontalDb, SupportThreshold};
use proptest::prelude::*;

fn db_strategy(max_item: u32) -> impl Strategy<Value = HorizontalDb> {
    prop::collection::vec(prop::collection::vec(0u32..max_item, 1..8), 1..40)
        .prop_map(HorizontalDb::from_ids)
}

fn token() -> impl Strategy<Value = String> {
    prop_oneof!["[0-9]{1,4}", "[a-z][a-z0-9_]{0,5}"]
}

#[test]
fn replication_preserves_frequent_itemsets() {
    let db = HorizontalDb::from_ids(vec![
        vec![0, 1, 2],
        vec![0, 1],
        vec![1, 2, 3],
        vec![0, 3],
        vec![0, 1, 3],
    ]);
    let base = brute_force(&db, 2);
    let tripled = replicate(&db, 3).unwrap();
    // fraction 0.4: 2 of 5, 6 of 15
    let cfg = MiningConfig::new(Variant::V2, SupportThreshold::Fraction(0.4)).with_workers(2);
    let r = pipeline::run(&tripled, &cfg).unwrap();
    let got = as_map(&r);
    assert_eq!(got.keys().collect::<Vec<_>>(), base.keys().collect::<Vec<_>>());
    for (k, s) in &base {
        assert_eq!(got[k], 3 * s);
    }
}

#[test]
fn matrix_agrees_with_tidset_intersection_on_dense_data() {
    let db = par_eclat::synth::mushroom_like(3);
    let min_sup = SupportThreshold::Fraction(0.4).resolve(db.n_transactions()).unwrap();
    let freq = frequent_items(&count_items(&db, 4), min_sup);
    let v = build_vertical(&db, ItemFilter::Only(&freq));
    let m = build_tri_matrix(&db, db.universe(), u64::MAX, 4).unwrap();
    for (a, (i, ti)) in v.entries().iter().enumerate() {
        for (j, tj) in &v.entries()[a + 1..] {
            assert_eq!(pair_support(&m, *i, *j).unwrap(), intersect(ti, tj).support());
        }
    }
}

#[test]
fn support_order_is_sorted_by_counted_supports() {
    let db = par_eclat::synth::mushroom_like(5);
    let counts = count_items(&db, 2);
    let v = order_by_support(build_vertical(&db, ItemFilter::All));
    let keys: Vec<(u64, u32)> = v.items().map(|i| (counts.get(i), i)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn dense_data_matrix_modes_build_identical_classes() {
    let db = par_eclat::synth::chess_like(2);
    let min_sup = SupportThreshold::Fraction(0.8).resolve(db.n_transactions()).unwrap();
    let v = order_by_support(build_vertical(&db, ItemFilter::All).retain_frequent(min_sup));
    let m = build_tri_matrix(&db, db.universe(), u64::MAX, 3).unwrap();
    let with = build_equivalence_classes(&v, min_sup, Some(&m)).unwrap();
    let without = build_equivalence_classes(&v, min_sup, None).unwrap();
    assert_eq!(with, without);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_then_parse_round_trips(
        rows in prop::collection::vec(prop::collection::vec(token(), 1..6), 1..12)
    ) {
        let text: String = rows.iter().map(|r| r.join(" ") + "\n").collect();
        let db = parse_horizontal(&text).unwrap();
        let again = parse_horizontal(&db.serialize()).unwrap();
        prop_assert_eq!(db, again);
    }

    #[test]
    fn filtering_is_idempotent(db in db_strategy(10), keep in prop::collection::btree_set(0u32..10, 0..10)) {
        let keep: Vec<u32> = keep.into_iter().filter(|&i| (i as usize) < db.universe()).collect();
        let once = filter_transactions(&db, &keep);
        prop_assert_eq!(filter_transactions(&once, &keep), once.clone());
        prop_assert!(once.transactions().iter().all(|t| !t.is_empty()));
    }

    #[test]
    fn replication_scales_supports(db in db_strategy(8), k in 1usize..4, f in 0.05f64..1.0) {
        let t = SupportThreshold::Fraction(f);
        let cfg = MiningConfig::new(Variant::V1, t).with_workers(2);
        let base = pipeline::run(&db, &cfg).unwrap();
        let rep = pipeline::run(&replicate(&db, k).unwrap(), &cfg).unwrap();
        let b: Vec<_> = base.itemsets.iter().map(|x| (&x.items, x.support * k as u64)).collect();
        let r: Vec<_> = rep.itemsets.iter().map(|x| (&x.items, x.support)).collect();
        prop_assert_eq!(b, r);
    }

    #[test]
    fn matrix_cells_equal_pair_supports(db in db_strategy(8), workers in 1usize..5) {
        let m = build_tri_matrix(&db, db.universe(), u64::MAX, workers).unwrap();
        let single = build_tri_matrix(&db, db.universe(), u64::MAX, 1).unwrap();
        prop_assert_eq!(&m, &single);
        let bf = brute_force(&db, 0);
        for i in 0..db.universe() as u32 {
            for j in i + 1..db.universe() as u32 {
                let expected = bf.get(&vec![i, j]).copied().unwrap_or(0);
                prop_assert_eq!(pair_support(&m, i, j).unwrap(), expected);
                prop_assert_eq!(pair_support(&m, j, i).unwrap(), expected);
            }
        }
    }

    #[test]
    fn vertical_matches_counts_and_inverts(db in db_strategy(10)) {
        let counts = count_items(&db, 3);
        let v = build_vertical(&db, ItemFilter::All);
        for (item, tids) in v.entries() {
            prop_assert_eq!(tids.support(), counts.get(*item));
            for &tid in tids.as_slice() {
                prop_assert!(db.transactions()[tid as usize - 1].contains(item));
            }
        }
        prop_assert_eq!(v.to_horizontal(db.n_transactions()), db.transactions().to_vec());
        let ordered = order_by_support(v.clone());
        let mut a = ordered.entries().to_vec();
        let mut b = v.entries().to_vec();
        a.sort_by_key(|e| e.0);
        b.sort_by_key(|e| e.0);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn frequent_items_strictly_ascending(db in db_strategy(20), min_sup in 1u64..5) {
        let f = frequent_items(&count_items(&db, 2), min_sup);
        prop_assert!(f.windows(2).all(|w| w[0] < w[1]));
    }
}
