use std::io::Write;
use std::time::Duration;

use crate::dataset::{HorizontalDb, ItemId};
use crate::partition::{PartitionPlan, WorkloadStats};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrequentItemset {
    /// Ascending dense ids.
    pub items: Vec<ItemId>,
    pub support: u64,
}

impl FrequentItemset {
    pub fn new(mut items: Vec<ItemId>, support: u64) -> Self {
        items.sort_unstable();
        FrequentItemset { items, support }
    }
}

/// Sorts by (length, lexicographic items). Duplicates are a bug upstream.
pub fn canonicalize(itemsets: &mut [FrequentItemset]) {
    itemsets.sort_unstable_by(|a, b| {
        a.items
            .len()
            .cmp(&b.items.len())
            .then_with(|| a.items.cmp(&b.items))
    });
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTime {
    pub name: &'static str,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Metrics {
    pub phases: Vec<PhaseTime>,
    pub total: Duration,
    pub min_sup_count: u64,
    pub n_frequent_items: usize,
    pub tri_matrix_used: bool,
    /// Item-occurrence reduction from transaction filtering, where applied.
    pub reduction_percent: Option<f64>,
    pub plan: Option<PartitionPlan>,
    pub workload: Option<WorkloadStats>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiningResult {
    pub itemsets: Vec<FrequentItemset>,
    pub metrics: Metrics,
}

impl MiningResult {
    pub fn len(&self) -> usize {
        self.itemsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.itemsets.is_empty()
    }

    /// Writes one line per itemset: original tokens, then ` #SUP: <count>`.
    pub fn write_spmf<W: Write>(&self, db: &HorizontalDb, mut out: W) -> std::io::Result<()> {
        for fi in &self.itemsets {
            for (k, &i) in fi.items.iter().enumerate() {
                if k > 0 {
                    out.write_all(b" ")?;
                }
                out.write_all(db.item_name(i).as_bytes())?;
            }
            writeln!(out, " #SUP: {}", fi.support)?;
        }
        Ok(())
    }

    pub fn to_spmf(&self, db: &HorizontalDb) -> String {
        let mut buf = Vec::new();
        self.write_spmf(db, &mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("tokens are ASCII")
    }

    /// One-line human summary of the run.
    pub fn summary(&self) -> String {
        let m = &self.metrics;
        let phases: Vec<String> = m
            .phases
            .iter()
            .map(|p| format!("{}={:.3}ms", p.name, p.elapsed.as_secs_f64() * 1e3))
            .collect();
        let mut s = format!(
            "itemsets={} min_sup_count={} frequent_items={} total={:.3}ms {}",
            self.itemsets.len(),
            m.min_sup_count,
            m.n_frequent_items,
            m.total.as_secs_f64() * 1e3,
            phases.join(" ")
        );
        s.push_str(&format!(" tri_matrix={}", m.tri_matrix_used));
        if let Some(r) = m.reduction_percent {
            s.push_str(&format!(" reduction={r:.2}%"));
        }
        if let (Some(plan), Some(w)) = (&m.plan, &m.workload) {
            s.push_str(&format!(
                " partitions={} workload_max={} workload_mean={:.2} workload_ratio={:.3}",
                plan.p, w.max, w.mean, w.ratio
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_length_then_lex() {
        let mut v = vec![
            FrequentItemset::new(vec![2, 1], 2),
            FrequentItemset::new(vec![3], 3),
            FrequentItemset::new(vec![1, 3], 2),
            FrequentItemset::new(vec![1], 3),
        ];
        canonicalize(&mut v);
        let items: Vec<_> = v.iter().map(|f| f.items.clone()).collect();
        assert_eq!(items, vec![vec![1], vec![3], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn spmf_uses_original_tokens() {
        let db = crate::dataset::parse_horizontal("10 20\n20 30\n").unwrap();
        let r = MiningResult {
            itemsets: vec![
                FrequentItemset::new(vec![1], 2),
                FrequentItemset::new(vec![0, 1], 1),
            ],
            metrics: Metrics::default(),
        };
        assert_eq!(r.to_spmf(&db), "20 #SUP: 2\n10 20 #SUP: 1\n");
    }
}
