#![allow(dead_code)]

use std::collections::BTreeMap;

use par_eclat::{HorizontalDb, ItemId};

/// Support of every non-empty itemset with support >= `min_sup`, found by
/// enumerating all subsets of the item universe and scanning the database.
/// Only usable for tiny universes.
pub fn brute_force(db: &HorizontalDb, min_sup: u64) -> BTreeMap<Vec<ItemId>, u64> {
    let u = db.universe();
    assert!(u <= 16, "brute force limited to 16 items");
    let mut out = BTreeMap::new();
    for mask in 1u32..(1 << u) {
        let items: Vec<ItemId> = (0..u as ItemId).filter(|b| mask & (1 << b) != 0).collect();
        let support = db
            .transactions()
            .iter()
            .filter(|t| items.iter().all(|i| t.contains(i)))
            .count() as u64;
        if support >= min_sup {
            out.insert(items, support);
        }
    }
    out
}

pub fn as_map(r: &par_eclat::MiningResult) -> BTreeMap<Vec<ItemId>, u64> {
    let mut m = BTreeMap::new();
    for f in &r.itemsets {
        assert!(m.insert(f.items.clone(), f.support).is_none(), "duplicate {:?}", f.items);
    }
    m
}
