//! Horizontal support counting: 1-item counts and the triangular 2-itemset matrix.

use rayon::prelude::*;

use crate::dataset::{HorizontalDb, ItemId};
use crate::error::{Error, Result};

/// Default memory ceiling for a triangular matrix.
pub const DEFAULT_MATRIX_GUARD_BYTES: u64 = 256 * 1024 * 1024;

/// Support count of every item, indexed by dense id. Items that never occur
/// have count zero and are skipped by [`ItemCounts::iter`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemCounts {
    counts: Vec<u64>,
}

impl ItemCounts {
    pub fn get(&self, item: ItemId) -> u64 {
        self.counts.get(item as usize).copied().unwrap_or(0)
    }

    /// `(item, count)` for every item with count >= 1, ascending by id.
    pub fn iter(&self) -> impl Iterator<Item = (ItemId, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i as ItemId, c))
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

fn chunk_len(n: usize, workers: usize) -> usize {
    n.div_ceil(workers.max(1)).max(1)
}

/// Counts item supports with one private counter array per worker chunk.
pub fn count_items(db: &HorizontalDb, workers: usize) -> ItemCounts {
    let universe = db.universe();
    let counts = db
        .transactions()
        .par_chunks(chunk_len(db.n_transactions(), workers))
        .map(|chunk| {
            let mut local = vec![0u64; universe];
            for &i in chunk.iter().flatten() {
                local[i as usize] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; universe],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    ItemCounts { counts }
}

/// Items with support >= `min_sup`, ascending by id.
pub fn frequent_items(counts: &ItemCounts, min_sup: u64) -> Vec<ItemId> {
    counts
        .iter()
        .filter(|&(_, c)| c >= min_sup)
        .map(|(i, _)| i)
        .collect()
}

/// Upper-triangular pair counter. `cell(i, j)` for `i < j` is stored at
/// `i*dim - i*(i+1)/2 + (j - i - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularMatrix {
    dim: usize,
    cells: Vec<u32>,
    enabled: bool,
}

impl TriangularMatrix {
    pub fn cell_count(dim: usize) -> usize {
        dim * dim.saturating_sub(1) / 2
    }

    pub fn bytes_needed(dim: usize) -> u64 {
        Self::cell_count(dim) as u64 * std::mem::size_of::<u32>() as u64
    }

    pub fn fits(dim: usize, guard_bytes: u64) -> bool {
        Self::bytes_needed(dim) <= guard_bytes
    }

    fn zeroed(dim: usize) -> Self {
        TriangularMatrix {
            dim,
            cells: vec![0; Self::cell_count(dim)],
            enabled: true,
        }
    }

    /// A matrix that refuses every lookup; stands for `triMatrixMode = false`.
    pub fn disabled() -> Self {
        TriangularMatrix {
            dim: 0,
            cells: Vec::new(),
            enabled: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    #[inline]
    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim);
        i * self.dim - i * (i + 1) / 2 + (j - i - 1)
    }

    fn add_transaction(&mut self, t: &[ItemId]) {
        for (a, &i) in t.iter().enumerate() {
            let i = i as usize;
            let row = i * self.dim - i * (i + 1) / 2;
            for &j in &t[a + 1..] {
                self.cells[row + (j as usize - i - 1)] += 1;
            }
        }
    }

    fn merge(mut self, other: &TriangularMatrix) -> Self {
        self.cells
            .iter_mut()
            .zip(&other.cells)
            .for_each(|(a, b)| *a += b);
        self
    }
}

/// Counts every 2-itemset of every transaction. Transactions are split into
/// `workers` chunks, each filling a private matrix; partials are summed.
pub fn build_tri_matrix(
    db: &HorizontalDb,
    dim: usize,
    guard_bytes: u64,
    workers: usize,
) -> Result<TriangularMatrix> {
    let needed = TriangularMatrix::bytes_needed(dim);
    if needed > guard_bytes {
        return Err(Error::MatrixTooLarge {
            needed,
            guard: guard_bytes,
        });
    }
    if let Some(&bad) = db.transactions().iter().flatten().find(|&&i| i as usize >= dim) {
        return Err(Error::InvalidPair {
            i: bad,
            j: bad,
            dim,
        });
    }
    let partials: Vec<TriangularMatrix> = db
        .transactions()
        .par_chunks(chunk_len(db.n_transactions(), workers))
        .map(|chunk| {
            let mut m = TriangularMatrix::zeroed(dim);
            for t in chunk {
                m.add_transaction(t);
            }
            m
        })
        .collect();
    Ok(partials
        .iter()
        .fold(TriangularMatrix::zeroed(dim), |acc, m| acc.merge(m)))
}

/// Support of `{i, j}`; argument order does not matter.
pub fn pair_support(m: &TriangularMatrix, i: ItemId, j: ItemId) -> Result<u64> {
    if !m.enabled {
        return Err(Error::MatrixDisabled);
    }
    let (a, b) = (i.min(j) as usize, i.max(j) as usize);
    if a == b || b >= m.dim {
        return Err(Error::InvalidPair { i, j, dim: m.dim });
    }
    Ok(m.cells[m.index(a, b)] as u64)
}
