//! Levelwise Apriori baseline: frequent items first, then repeated
//! generate / prune / count passes with candidates held in a prefix tree.

use std::collections::HashSet;

use rayon::prelude::*;

use super::{with_pool, MiningConfig, PhaseClock};
use crate::counting::{count_items, frequent_items};
use crate::dataset::{HorizontalDb, ItemId};
use crate::error::Result;
use crate::result::{canonicalize, FrequentItemset, Metrics, MiningResult};

/// Prefix tree of equal-length candidates. Leaves index the candidate list.
struct CandidateTrie {
    nodes: Vec<Node>,
    depth: usize,
}

#[derive(Default)]
struct Node {
    /// Ascending by item.
    children: Vec<(ItemId, usize)>,
    leaf: Option<usize>,
}

impl CandidateTrie {
    /// `candidates` must be sorted lexicographically and all of length `depth`.
    fn build(candidates: &[Vec<ItemId>], depth: usize) -> Self {
        let mut nodes = vec![Node::default()];
        for (idx, c) in candidates.iter().enumerate() {
            let mut cur = 0;
            for &item in c {
                cur = match nodes[cur].children.last() {
                    Some(&(last, child)) if last == item => child,
                    _ => {
                        nodes.push(Node::default());
                        let child = nodes.len() - 1;
                        nodes[cur].children.push((item, child));
                        child
                    }
                };
            }
            nodes[cur].leaf = Some(idx);
        }
        CandidateTrie { nodes, depth }
    }

    /// Increments the count of every candidate contained in `t`.
    fn count(&self, t: &[ItemId], counts: &mut [u32]) {
        self.walk(0, t, self.depth, counts);
    }

    fn walk(&self, node: usize, t: &[ItemId], remaining: usize, counts: &mut [u32]) {
        let node = &self.nodes[node];
        if remaining == 0 {
            if let Some(leaf) = node.leaf {
                counts[leaf] += 1;
            }
            return;
        }
        if t.len() < remaining {
            return;
        }
        let children = &node.children;
        let (mut a, mut b) = (0, 0);
        let last_start = t.len() - remaining;
        while a < children.len() && b <= last_start {
            let (item, child) = children[a];
            if item < t[b] {
                a += 1;
            } else if t[b] < item {
                b += 1;
            } else {
                self.walk(child, &t[b + 1..], remaining - 1, counts);
                a += 1;
                b += 1;
            }
        }
    }
}

/// Joins itemsets that agree on all but the last item, then drops any
/// candidate with an infrequent k-subset. `level` is sorted.
fn generate_candidates(level: &[Vec<ItemId>]) -> Vec<Vec<ItemId>> {
    let known: HashSet<&[ItemId]> = level.iter().map(Vec::as_slice).collect();
    let mut out = Vec::new();
    let mut start = 0;
    while start < level.len() {
        let k = level[start].len();
        let prefix = &level[start][..k - 1];
        let mut end = start + 1;
        while end < level.len() && &level[end][..k - 1] == prefix {
            end += 1;
        }
        for i in start..end {
            for j in i + 1..end {
                let mut cand = level[i].clone();
                cand.push(level[j][k - 1]);
                let all_subsets_frequent = (0..k - 1).all(|drop| {
                    let sub: Vec<ItemId> = cand
                        .iter()
                        .enumerate()
                        .filter(|&(pos, _)| pos != drop)
                        .map(|(_, &x)| x)
                        .collect();
                    known.contains(sub.as_slice())
                });
                if all_subsets_frequent {
                    out.push(cand);
                }
            }
        }
        start = end;
    }
    out
}

pub fn run_apriori(db: &HorizontalDb, cfg: &MiningConfig) -> Result<MiningResult> {
    with_pool(cfg, || {
        let mut clock = PhaseClock::start();
        let min_sup = cfg.min_sup.resolve(db.n_transactions())?;
        let counts = clock.phase("count", || count_items(db, cfg.workers));
        let l1 = frequent_items(&counts, min_sup);

        let mut itemsets: Vec<FrequentItemset> = l1
            .iter()
            .map(|&i| FrequentItemset::new(vec![i], counts.get(i)))
            .collect();

        clock.phase("levels", || {
            let chunk = db.n_transactions().div_ceil(cfg.workers).max(1);
            let mut level: Vec<Vec<ItemId>> = l1.iter().map(|&i| vec![i]).collect();
            let mut k = 1;
            while level.len() > 1 {
                let candidates = generate_candidates(&level);
                if candidates.is_empty() {
                    break;
                }
                k += 1;
                let trie = CandidateTrie::build(&candidates, k);
                let support = db
                    .transactions()
                    .par_chunks(chunk)
                    .map(|rows| {
                        let mut local = vec![0u32; candidates.len()];
                        for t in rows {
                            trie.count(t, &mut local);
                        }
                        local
                    })
                    .reduce(
                        || vec![0u32; candidates.len()],
                        |mut a, b| {
                            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                            a
                        },
                    );
                level = candidates
                    .into_iter()
                    .zip(support)
                    .filter(|&(_, s)| s as u64 >= min_sup)
                    .map(|(c, s)| {
                        itemsets.push(FrequentItemset::new(c.clone(), s as u64));
                        c
                    })
                    .collect();
            }
        });
        canonicalize(&mut itemsets);

        let (phases, total) = clock.finish();
        Ok(MiningResult {
            itemsets,
            metrics: Metrics {
                phases,
                total,
                min_sup_count: min_sup,
                n_frequent_items: l1.len(),
                ..Metrics::default()
            },
        })
    })
}
