use std::collections::HashMap;

use rayon::prelude::*;

use super::{with_pool, MiningConfig, PhaseClock};
use crate::dataset::{HorizontalDb, ItemId};
use crate::error::{Error, Result};
use crate::result::{canonicalize, FrequentItemset, Metrics, MiningResult};

pub const ORACLE_ITEM_LIMIT: usize = 24;

/// Exhaustive ground truth: every non-empty subset of the frequent items is
/// counted by scanning the database, compressed to distinct item masks.
/// Shares no code with the miners beyond parsing.
///
/// Subsets are visited depth-first by ascending bit; a subset scans only the
/// rows that contain its parent. A branch stops only when no row matches, so
/// every subset with non-zero support is counted.
pub fn run_oracle(db: &HorizontalDb, cfg: &MiningConfig) -> Result<MiningResult> {
    with_pool(cfg, || {
        let mut clock = PhaseClock::start();
        let min_sup = cfg.min_sup.resolve(db.n_transactions())?;

        let mut counts = vec![0u64; db.universe()];
        for &i in db.transactions().iter().flatten() {
            counts[i as usize] += 1;
        }
        let frequent: Vec<ItemId> = (0..db.universe() as ItemId)
            .filter(|&i| counts[i as usize] >= min_sup)
            .collect();
        if frequent.len() > ORACLE_ITEM_LIMIT {
            return Err(Error::OracleTooManyItems {
                items: frequent.len(),
                limit: ORACLE_ITEM_LIMIT,
            });
        }

        let itemsets = clock.phase("enumerate", || {
            let mut bit = vec![None; db.universe()];
            for (b, &i) in frequent.iter().enumerate() {
                bit[i as usize] = Some(b);
            }
            let mut histogram: HashMap<u32, u64> = HashMap::new();
            for t in db.transactions() {
                let mask = t
                    .iter()
                    .filter_map(|&i| bit[i as usize])
                    .fold(0u32, |m, b| m | (1 << b));
                *histogram.entry(mask).or_default() += 1;
            }
            let mut rows: Vec<(u32, u64)> = histogram.into_iter().collect();
            rows.sort_unstable();
            let mut found: Vec<FrequentItemset> = (0..frequent.len())
                .into_par_iter()
                .flat_map_iter(|first| {
                    let mut out = Vec::new();
                    let subset = 1u32 << first;
                    let matching: Vec<(u32, u64)> =
                        rows.iter().copied().filter(|(m, _)| m & subset != 0).collect();
                    enumerate(&frequent, subset, first, &matching, min_sup, &mut out);
                    out
                })
                .collect();
            canonicalize(&mut found);
            found
        });

        let (phases, total) = clock.finish();
        Ok(MiningResult {
            itemsets,
            metrics: Metrics {
                phases,
                total,
                min_sup_count: min_sup,
                n_frequent_items: frequent.len(),
                ..Metrics::default()
            },
        })
    })
}

fn enumerate(
    frequent: &[ItemId],
    subset: u32,
    last: usize,
    rows: &[(u32, u64)],
    min_sup: u64,
    out: &mut Vec<FrequentItemset>,
) {
    let support: u64 = rows.iter().map(|(_, c)| c).sum();
    if support >= min_sup {
        let items = (0..frequent.len())
            .filter(|b| subset & (1 << b) != 0)
            .map(|b| frequent[b])
            .collect();
        out.push(FrequentItemset::new(items, support));
    }
    for next in last + 1..frequent.len() {
        let bit = 1u32 << next;
        let matching: Vec<(u32, u64)> = rows.iter().copied().filter(|(m, _)| m & bit != 0).collect();
        if !matching.is_empty() {
            enumerate(frequent, subset | bit, next, &matching, min_sup, out);
        }
    }
}
