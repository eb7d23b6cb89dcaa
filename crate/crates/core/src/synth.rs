//! Seeded synthetic transaction databases.
//!
//! [`quest`] follows the classic IBM Quest market-basket generator (the
//! `TxxIyyDzzzK` family): transactions are filled from a pool of weighted,
//! partially overlapping, randomly corrupted patterns. [`attribute_value`]
//! produces dense one-value-per-attribute records in the style of the UCI
//! derived benchmarks. [`random`] draws small uniform databases for tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Exp1, Normal, Poisson};

use crate::dataset::{HorizontalDb, ItemId};

#[derive(Debug, Clone, PartialEq)]
pub struct QuestParams {
    pub transactions: usize,
    pub avg_transaction_len: f64,
    pub avg_pattern_len: f64,
    pub patterns: usize,
    pub items: usize,
    pub correlation: f64,
    pub corruption_mean: f64,
    pub corruption_var: f64,
    pub seed: u64,
}

impl QuestParams {
    /// `T{avg_transaction_len}I{avg_pattern_len}D{transactions}` with the
    /// generator's customary defaults for the rest.
    pub fn new(avg_transaction_len: f64, avg_pattern_len: f64, transactions: usize) -> Self {
        QuestParams {
            transactions,
            avg_transaction_len,
            avg_pattern_len,
            patterns: 2000,
            items: 1000,
            correlation: 0.5,
            corruption_mean: 0.5,
            corruption_var: 0.1,
            seed: 1,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

struct Pattern {
    items: Vec<ItemId>,
    corruption: f64,
}

fn poisson_at_least_one(rng: &mut ChaCha8Rng, mean: f64) -> usize {
    let d = Poisson::new((mean - 1.0).max(1e-9)).expect("positive mean");
    1 + d.sample(rng) as usize
}

pub fn quest(params: &QuestParams) -> HorizontalDb {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n_items = params.items.max(1);
    let corr = Exp::new(1.0 / params.correlation.max(1e-9)).expect("positive rate");
    let corrupt = Normal::new(params.corruption_mean, params.corruption_var.sqrt())
        .expect("finite corruption");

    let mut patterns: Vec<Pattern> = Vec::with_capacity(params.patterns);
    let mut weights = Vec::with_capacity(params.patterns);
    for _ in 0..params.patterns.max(1) {
        let len = poisson_at_least_one(&mut rng, params.avg_pattern_len).min(n_items);
        let mut items: Vec<ItemId> = Vec::with_capacity(len);
        if let Some(prev) = patterns.last() {
            let frac: f64 = corr.sample(&mut rng);
            let take = ((frac.min(1.0) * len as f64).round() as usize).min(prev.items.len());
            items.extend(prev.items.choose_multiple(&mut rng, take).copied());
        }
        while items.len() < len {
            let i = rng.gen_range(0..n_items) as ItemId;
            if !items.contains(&i) {
                items.push(i);
            }
        }
        patterns.push(Pattern {
            items,
            corruption: corrupt.sample(&mut rng).clamp(0.0, 1.0),
        });
        let w: f64 = Exp1.sample(&mut rng);
        weights.push(w);
    }
    let total: f64 = weights.iter().sum();
    let mut cumulative = Vec::with_capacity(weights.len());
    let mut acc = 0.0;
    for w in weights {
        acc += w / total;
        cumulative.push(acc);
    }
    let pick = |rng: &mut ChaCha8Rng| {
        let u: f64 = rng.gen();
        cumulative
            .partition_point(|&c| c < u)
            .min(patterns.len() - 1)
    };

    let mut transactions = Vec::with_capacity(params.transactions);
    let mut pending: Option<Vec<ItemId>> = None;
    for _ in 0..params.transactions {
        let size = poisson_at_least_one(&mut rng, params.avg_transaction_len);
        let mut t: Vec<ItemId> = Vec::with_capacity(size + 8);
        loop {
            let items = match pending.take() {
                Some(p) => p,
                None => {
                    let pat = &patterns[pick(&mut rng)];
                    let mut items = pat.items.clone();
                    while !items.is_empty() && rng.gen::<f64>() < pat.corruption {
                        let k = rng.gen_range(0..items.len());
                        items.swap_remove(k);
                    }
                    items
                }
            };
            if t.len() + items.len() <= size {
                t.extend(items);
                if t.len() >= size {
                    break;
                }
            } else {
                if rng.gen_bool(0.5) || t.is_empty() {
                    t.extend(items);
                } else {
                    pending = Some(items);
                }
                break;
            }
        }
        transactions.push(t);
    }
    let names = (0..n_items).map(|i| i.to_string()).collect();
    HorizontalDb::from_dense(transactions, names)
}

/// Dense records: one item per attribute, `values[a]` possible values for
/// attribute `a`. Each attribute has a dominant value whose probability is
/// drawn from `dominance`; records also share a latent mode that flips the
/// dominant value of a fixed subset of attributes, which induces correlation.
pub fn attribute_value(
    rows: usize,
    values: &[usize],
    dominance: (f64, f64),
    seed: u64,
) -> HorizontalDb {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut offset = 0;
    let attrs: Vec<(usize, usize, f64, bool)> = values
        .iter()
        .map(|&v| {
            let v = v.max(1);
            let a = (offset, v, rng.gen_range(dominance.0..=dominance.1), rng.gen_bool(0.3));
            offset += v;
            a
        })
        .collect();
    let transactions = (0..rows)
        .map(|_| {
            let mode = rng.gen_bool(0.15);
            attrs
                .iter()
                .map(|&(base, v, dom, flips)| {
                    let dominant = if mode && flips && v > 1 { 1 } else { 0 };
                    let value = if v == 1 || rng.gen_bool(dom) {
                        dominant
                    } else {
                        rng.gen_range(0..v)
                    };
                    (base + value) as ItemId
                })
                .collect()
        })
        .collect();
    let names = (0..offset).map(|i| (i + 1).to_string()).collect();
    HorizontalDb::from_dense(transactions, names)
}

/// Shaped like the chess benchmark: 3196 records, 37 attributes, 75 items.
pub fn chess_like(seed: u64) -> HorizontalDb {
    let mut values = vec![2; 36];
    values.push(3);
    attribute_value(3196, &values, (0.55, 0.995), seed)
}

/// Shaped like the mushroom benchmark: 8124 records, 23 attributes, 119 items.
pub fn mushroom_like(seed: u64) -> HorizontalDb {
    let values = [2, 6, 4, 10, 2, 9, 2, 2, 2, 12, 2, 5, 4, 4, 9, 9, 1, 4, 3, 5, 9, 6, 7];
    attribute_value(8124, &values, (0.3, 0.99), seed)
}

/// Uniform random database: each item joins each transaction with
/// probability `density`. Empty transactions are kept as a single item.
pub fn random(n_items: usize, n_transactions: usize, density: f64, seed: u64) -> HorizontalDb {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let transactions = (0..n_transactions)
        .map(|_| {
            let mut t: Vec<ItemId> = (0..n_items as ItemId)
                .filter(|_| rng.gen_bool(density))
                .collect();
            if t.is_empty() {
                t.push(rng.gen_range(0..n_items) as ItemId);
            }
            t
        })
        .collect();
    let names = (0..n_items).map(|i| i.to_string()).collect();
    HorizontalDb::from_dense(transactions, names)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quest_is_deterministic_and_sized() {
        let p = QuestParams::new(10.0, 4.0, 2000).with_seed(7);
        let a = quest(&p);
        assert_eq!(a, quest(&p));
        assert_eq!(a.n_transactions(), 2000);
        let avg = a.occurrences() as f64 / a.n_transactions() as f64;
        assert!((6.0..14.0).contains(&avg), "average width {avg}");
    }

    #[test]
    fn chess_like_shape() {
        let db = chess_like(1);
        assert_eq!(db.n_transactions(), 3196);
        assert_eq!(db.universe(), 75);
        assert!(db.transactions().iter().all(|t| t.len() == 37));
    }

    #[test]
    fn mushroom_like_shape() {
        let db = mushroom_like(1);
        assert_eq!(db.n_transactions(), 8124);
        assert_eq!(db.universe(), 119);
        assert!(db.transactions().iter().all(|t| t.len() == 23));
    }

    #[test]
    fn random_has_no_empty_transactions() {
        let db = random(10, 50, 0.05, 3);
        assert!(db.transactions().iter().all(|t| !t.is_empty()));
    }
}
