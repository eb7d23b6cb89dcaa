//! Vertical (item -> tidset) databases.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::dataset::{HorizontalDb, ItemId, Tid};

/// Strictly ascending transaction ids. Support is the length.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TidSet(Vec<Tid>);

impl TidSet {
    /// Panics if `tids` is not strictly ascending.
    pub fn new(tids: Vec<Tid>) -> Self {
        assert!(
            tids.windows(2).all(|w| w[0] < w[1]),
            "tidset must be strictly ascending"
        );
        TidSet(tids)
    }

    pub(crate) fn from_sorted_unchecked(tids: Vec<Tid>) -> Self {
        debug_assert!(tids.windows(2).all(|w| w[0] < w[1]));
        TidSet(tids)
    }

    pub fn support(&self) -> u64 {
        self.0.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Tid] {
        &self.0
    }

    /// Sorted set union, used when merging partial vertical maps.
    pub fn union(&self, other: &TidSet) -> TidSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        TidSet(out)
    }
}

impl From<Vec<Tid>> for TidSet {
    fn from(v: Vec<Tid>) -> Self {
        TidSet::new(v)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerticalDb {
    entries: Vec<(ItemId, TidSet)>,
}

impl VerticalDb {
    pub fn new(entries: Vec<(ItemId, TidSet)>) -> Self {
        VerticalDb { entries }
    }

    pub fn entries(&self) -> &[(ItemId, TidSet)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn items(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn get(&self, item: ItemId) -> Option<&TidSet> {
        self.entries.iter().find(|(i, _)| *i == item).map(|(_, t)| t)
    }

    /// Drops entries whose support is below `min_sup`.
    pub fn retain_frequent(mut self, min_sup: u64) -> Self {
        self.entries.retain(|(_, t)| t.support() >= min_sup);
        self
    }

    /// Inverts back to horizontal form over tids `1..=n_transactions`.
    pub fn to_horizontal(&self, n_transactions: usize) -> Vec<Vec<ItemId>> {
        let mut rows = vec![Vec::new(); n_transactions];
        for (item, tids) in &self.entries {
            for &tid in tids.as_slice() {
                rows[tid as usize - 1].push(*item);
            }
        }
        rows.iter_mut().for_each(|r| r.sort_unstable());
        rows
    }
}

/// Which items a vertical build keeps.
#[derive(Debug, Clone, Copy)]
pub enum ItemFilter<'a> {
    All,
    Only(&'a [ItemId]),
}

impl ItemFilter<'_> {
    fn mask(&self, universe: usize) -> Vec<bool> {
        match self {
            ItemFilter::All => vec![true; universe],
            ItemFilter::Only(items) => {
                let mut m = vec![false; universe];
                for &i in *items {
                    m[i as usize] = true;
                }
                m
            }
        }
    }
}

/// Single-pass inversion; entries come out ascending by item id.
pub fn build_vertical(db: &HorizontalDb, filter: ItemFilter<'_>) -> VerticalDb {
    let keep = filter.mask(db.universe());
    let mut tids: Vec<Vec<Tid>> = vec![Vec::new(); db.universe()];
    for (idx, t) in db.transactions().iter().enumerate() {
        let tid = idx as Tid + 1;
        for &i in t {
            if keep[i as usize] {
                tids[i as usize].push(tid);
            }
        }
    }
    let entries = tids
        .into_iter()
        .enumerate()
        .filter(|(i, t)| keep[*i] && !t.is_empty())
        .map(|(i, t)| (i as ItemId, TidSet::from_sorted_unchecked(t)))
        .collect();
    VerticalDb { entries }
}

/// Builds the vertical database as worker-local maps over disjoint tid ranges,
/// merged pairwise by tidset union. The merge is commutative and associative,
/// so the result does not depend on the split.
pub fn build_vertical_merged(
    db: &HorizontalDb,
    frequent: &[ItemId],
    workers: usize,
) -> HashMap<ItemId, TidSet> {
    let keep = ItemFilter::Only(frequent).mask(db.universe());
    let n = db.n_transactions();
    let chunk = n.div_ceil(workers.max(1)).max(1);
    db.transactions()
        .par_chunks(chunk)
        .enumerate()
        .map(|(c, rows)| {
            let base = (c * chunk) as Tid + 1;
            let mut local: HashMap<ItemId, Vec<Tid>> = HashMap::new();
            for (off, t) in rows.iter().enumerate() {
                for &i in t {
                    if keep[i as usize] {
                        local.entry(i).or_default().push(base + off as Tid);
                    }
                }
            }
            local
                .into_iter()
                .map(|(i, t)| (i, TidSet::from_sorted_unchecked(t)))
                .collect::<HashMap<_, _>>()
        })
        .reduce(HashMap::new, merge_maps)
}

fn merge_maps(
    mut a: HashMap<ItemId, TidSet>,
    b: HashMap<ItemId, TidSet>,
) -> HashMap<ItemId, TidSet> {
    for (item, tids) in b {
        match a.get_mut(&item) {
            Some(existing) => *existing = existing.union(&tids),
            None => {
                a.insert(item, tids);
            }
        }
    }
    a
}

/// Sorts entries by ascending support, ties broken by ascending item id.
pub fn order_by_support(mut v: VerticalDb) -> VerticalDb {
    v.entries
        .sort_by(|(ia, ta), (ib, tb)| ta.support().cmp(&tb.support()).then(ia.cmp(ib)));
    v
}

/// Orders `items` by their support in `map` (same total order as
/// [`order_by_support`]) and pairs each with its tidset.
pub fn order_map_by_support(items: &[ItemId], map: &HashMap<ItemId, TidSet>) -> VerticalDb {
    let entries = items
        .iter()
        .filter_map(|i| map.get(i).map(|t| (*i, t.clone())))
        .collect();
    order_by_support(VerticalDb { entries })
}
