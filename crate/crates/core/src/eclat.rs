//! Prefix equivalence classes and the bottom-up Eclat search.
//!
//! Classes are built from an ordered vertical database: position `i` yields the
//! class of its item, with one member atom per later item whose pair support
//! reaches the threshold. The pair atoms of a class are its certified
//! 2-itemsets; [`bottom_up`] only emits itemsets of size three and up.

use rayon::prelude::*;

use crate::counting::{pair_support, TriangularMatrix};
use crate::dataset::ItemId;
use crate::error::{Error, Result};
use crate::result::FrequentItemset;
use crate::vertical::{TidSet, VerticalDb};

/// Linear-merge intersection of two ascending tidsets.
pub fn intersect(a: &TidSet, b: &TidSet) -> TidSet {
    let (a, b) = (a.as_slice(), b.as_slice());
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (x, y) = (a[i], b[j]);
        if x < y {
            i += 1;
        } else if y < x {
            j += 1;
        } else {
            out.push(x);
            i += 1;
            j += 1;
        }
    }
    TidSet::from_sorted_unchecked(out)
}

/// An itemset (ascending ids) together with its tidset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub itemset: Vec<ItemId>,
    pub tidset: TidSet,
}

impl Atom {
    pub fn support(&self) -> u64 {
        self.tidset.support()
    }

    fn to_itemset(&self) -> FrequentItemset {
        FrequentItemset::new(self.itemset.clone(), self.support())
    }
}

/// Class of all itemsets sharing a 1-item prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass {
    pub prefix: ItemId,
    /// Rank of `prefix` in the vertical order; doubles as the partition key.
    pub key: usize,
    /// One atom per member item, in vertical order.
    pub members: Vec<Atom>,
}

impl EquivalenceClass {
    /// The second item of every member, in member order.
    pub fn member_items(&self) -> Vec<ItemId> {
        self.members
            .iter()
            .map(|a| {
                *a.itemset
                    .iter()
                    .find(|&&i| i != self.prefix)
                    .expect("member atoms are 2-itemsets")
            })
            .collect()
    }

    /// The certified frequent 2-itemsets of this class.
    pub fn pair_itemsets(&self) -> impl Iterator<Item = FrequentItemset> + '_ {
        self.members.iter().map(Atom::to_itemset)
    }
}

fn sorted_union(a: &[ItemId], b: &[ItemId]) -> Vec<ItemId> {
    let mut out = Vec::with_capacity(a.len() + 1);
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else if b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Builds one class per position `0..n-1` of the ordered vertical database.
///
/// With an enabled matrix, pairs whose matrix support is below `min_sup` are
/// skipped before any intersection. Members whose intersected tidset falls
/// below `min_sup` are dropped in both modes. Classes may be empty.
pub fn build_equivalence_classes(
    v: &VerticalDb,
    min_sup: u64,
    matrix: Option<&TriangularMatrix>,
) -> Result<Vec<EquivalenceClass>> {
    let entries = v.entries();
    let n = entries.len();
    let matrix = matrix.filter(|m| m.is_enabled());
    (0..n.saturating_sub(1))
        .into_par_iter()
        .map(|i| {
            let (item_i, tids_i) = &entries[i];
            let mut members = Vec::new();
            for (item_j, tids_j) in &entries[i + 1..] {
                if let Some(m) = matrix {
                    if pair_support(m, *item_i, *item_j)? < min_sup {
                        continue;
                    }
                }
                let tids = intersect(tids_i, tids_j);
                if tids.support() >= min_sup {
                    let mut itemset = vec![*item_i, *item_j];
                    itemset.sort_unstable();
                    members.push(Atom {
                        itemset,
                        tidset: tids,
                    });
                }
            }
            Ok(EquivalenceClass {
                prefix: *item_i,
                key: i,
                members,
            })
        })
        .collect()
}

/// Enumerates every frequent itemset of size >= 3 in the class's sublattice.
pub fn bottom_up(ec: &EquivalenceClass, min_sup: u64) -> Result<Vec<FrequentItemset>> {
    let mut out = Vec::new();
    let limit = ec.members.len() + 1;
    bottom_up_into(&ec.members, min_sup, 1, limit, &mut out)?;
    Ok(out)
}

/// Same as [`bottom_up`] but appends to a caller-owned buffer.
pub fn bottom_up_into(
    atoms: &[Atom],
    min_sup: u64,
    depth: usize,
    limit: usize,
    out: &mut Vec<FrequentItemset>,
) -> Result<()> {
    if depth > limit {
        return Err(Error::RecursionDepth { depth, limit });
    }
    for (i, a) in atoms.iter().enumerate() {
        let mut next = Vec::new();
        for b in &atoms[i + 1..] {
            let tidset = intersect(&a.tidset, &b.tidset);
            if tidset.support() >= min_sup {
                let atom = Atom {
                    itemset: sorted_union(&a.itemset, &b.itemset),
                    tidset,
                };
                out.push(atom.to_itemset());
                next.push(atom);
            }
        }
        if !next.is_empty() {
            bottom_up_into(&next, min_sup, depth + 1, limit, out)?;
        }
    }
    Ok(())
}
