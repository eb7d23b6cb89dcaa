use rayon::prelude::*;

use super::{resolve_matrix, with_pool, MiningConfig, PhaseClock};
use crate::counting::{count_items, frequent_items, TriangularMatrix};
use crate::dataset::{filter_transactions, reduction_percent, HorizontalDb};
use crate::eclat::{bottom_up_into, build_equivalence_classes, EquivalenceClass};
use crate::error::Result;
use crate::partition::{plan_partitions, workload_stats, PartitionPlan, Scheme};
use crate::result::{canonicalize, FrequentItemset, Metrics, MiningResult};
use crate::vertical::{
    build_vertical, build_vertical_merged, order_by_support, order_map_by_support, ItemFilter,
    VerticalDb,
};

/// Raw transactions straight to a vertical database, matrix on raw
/// transactions, default partitioning.
pub fn run_v1(db: &HorizontalDb, cfg: &MiningConfig) -> Result<MiningResult> {
    with_pool(cfg, || {
        let mut clock = PhaseClock::start();
        let min_sup = cfg.min_sup.resolve(db.n_transactions())?;
        let vertical = clock.phase("vertical", || {
            order_by_support(build_vertical(db, ItemFilter::All).retain_frequent(min_sup))
        });
        let matrix = clock.phase("tri_matrix", || resolve_matrix(db, cfg))?;
        let mining = clock.phase("mine", || {
            mine_classes(&vertical, min_sup, matrix.as_ref(), Scheme::Default, None)
        })?;
        Ok(finish(clock, vertical.len(), min_sup, matrix.is_some(), None, mining))
    })
}

/// Horizontal counting, filtered transactions, single-pass vertical build.
pub fn run_v2(db: &HorizontalDb, cfg: &MiningConfig) -> Result<MiningResult> {
    run_filtered(db, cfg, VerticalBuild::SinglePass, Scheme::Default)
}

/// As V2, with the vertical database built from merged worker-local maps.
pub fn run_v3(db: &HorizontalDb, cfg: &MiningConfig) -> Result<MiningResult> {
    run_filtered(db, cfg, VerticalBuild::MergedMaps, Scheme::Default)
}

/// As V3, with `v mod p` class partitioning.
pub fn run_v4(db: &HorizontalDb, cfg: &MiningConfig) -> Result<MiningResult> {
    run_filtered(db, cfg, VerticalBuild::MergedMaps, Scheme::Hash)
}

/// As V3, with reverse-hash class partitioning.
pub fn run_v5(db: &HorizontalDb, cfg: &MiningConfig) -> Result<MiningResult> {
    run_filtered(db, cfg, VerticalBuild::MergedMaps, Scheme::ReverseHash)
}

#[derive(Clone, Copy)]
enum VerticalBuild {
    SinglePass,
    MergedMaps,
}

fn run_filtered(
    db: &HorizontalDb,
    cfg: &MiningConfig,
    build: VerticalBuild,
    scheme: Scheme,
) -> Result<MiningResult> {
    with_pool(cfg, || {
        let mut clock = PhaseClock::start();
        let min_sup = cfg.min_sup.resolve(db.n_transactions())?;
        let frequent = clock.phase("count", || {
            frequent_items(&count_items(db, cfg.workers), min_sup)
        });
        let (filtered, matrix) = clock.phase("filter", || {
            let filtered = filter_transactions(db, &frequent);
            resolve_matrix(&filtered, cfg).map(|m| (filtered, m))
        })?;
        let reduction = reduction_percent(db, &filtered);
        let vertical = clock.phase("vertical", || match build {
            VerticalBuild::SinglePass => {
                order_by_support(build_vertical(&filtered, ItemFilter::Only(&frequent)))
            }
            VerticalBuild::MergedMaps => {
                let map = build_vertical_merged(&filtered, &frequent, cfg.workers);
                order_map_by_support(&frequent, &map)
            }
        });
        let p = (scheme != Scheme::Default).then_some(cfg.p);
        let mining = clock.phase("mine", || {
            mine_classes(&vertical, min_sup, matrix.as_ref(), scheme, p)
        })?;
        Ok(finish(
            clock,
            vertical.len(),
            min_sup,
            matrix.is_some(),
            Some(reduction),
            mining,
        ))
    })
}

struct Mining {
    itemsets: Vec<FrequentItemset>,
    plan: PartitionPlan,
}

/// Class construction, partitioning and parallel bottom-up search. Output
/// holds every frequent itemset: singletons from `vertical`, certified pairs
/// from the classes, and the bottom-up results.
fn mine_classes(
    vertical: &VerticalDb,
    min_sup: u64,
    matrix: Option<&TriangularMatrix>,
    scheme: Scheme,
    p: Option<usize>,
) -> Result<Mining> {
    let classes = build_equivalence_classes(vertical, min_sup, matrix)?;
    let plan = plan_partitions(&classes, scheme, p)?;
    let itemsets = execute_plan(vertical, &classes, &plan, min_sup)?;
    Ok(Mining { itemsets, plan })
}

fn execute_plan(
    vertical: &VerticalDb,
    classes: &[EquivalenceClass],
    plan: &PartitionPlan,
    min_sup: u64,
) -> Result<Vec<FrequentItemset>> {
    let limit = vertical.len();
    let per_partition: Vec<Vec<FrequentItemset>> = plan
        .partitions()
        .into_par_iter()
        .map(|keys| {
            let mut out = Vec::new();
            for k in keys {
                let ec = &classes[k];
                out.extend(ec.pair_itemsets());
                bottom_up_into(&ec.members, min_sup, 1, limit, &mut out)?;
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut itemsets: Vec<FrequentItemset> = vertical
        .entries()
        .iter()
        .map(|(i, t)| FrequentItemset::new(vec![*i], t.support()))
        .collect();
    itemsets.extend(per_partition.into_iter().flatten());
    canonicalize(&mut itemsets);
    Ok(itemsets)
}

fn finish(
    clock: PhaseClock,
    n_frequent_items: usize,
    min_sup_count: u64,
    tri_matrix_used: bool,
    reduction_percent: Option<f64>,
    mining: Mining,
) -> MiningResult {
    let (phases, total) = clock.finish();
    let workload = workload_stats(&mining.plan);
    MiningResult {
        itemsets: mining.itemsets,
        metrics: Metrics {
            phases,
            total,
            min_sup_count,
            n_frequent_items,
            tri_matrix_used,
            reduction_percent,
            plan: Some(mining.plan),
            workload: Some(workload),
        },
    }
}
