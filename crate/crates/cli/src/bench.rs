//! Benchmark sweeps over datasets, variants, thresholds, worker counts and
//! replication factors, reported as CSV.
//!
//! Cells run one after another; each cell uses its own worker pool. The number
//! of itemsets must be the same for every run sharing a dataset, threshold and
//! replication factor; a mismatch aborts the sweep.
//!
//! CSV columns, in order:
//!
//! | column | meaning |
//! |---|---|
//! | `dataset` | file stem of the input |
//! | `variant` | `v1`..`v5`, `apriori`, `oracle` |
//! | `min_sup` | threshold as given |
//! | `min_sup_count` | resolved absolute count |
//! | `workers` | worker threads |
//! | `replication` | replication factor applied to the dataset |
//! | `p` | partitions used for mining (empty for apriori/oracle) |
//! | `tri_matrix` | `true` when the matrix was built |
//! | `run` | repeat index, from 0 |
//! | `phase1_ms`..`phase4_ms` | wall time per phase, empty when absent |
//! | `total_ms` | wall time of the whole run |
//! | `itemsets` | frequent itemsets found |
//! | `workload_max_mean` | max/mean member workload over partitions |
//! | `filtered_reduction_pct` | item-occurrence reduction from filtering |

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use par_eclat::dataset::{self, replicate};
use par_eclat::pipeline::{self, MiningConfig, TriMatrixMode, Variant};
use par_eclat::{HorizontalDb, MiningResult, SupportThreshold};
use serde::Serialize;

/// Overrides the bench output directory.
pub const OUT_DIR_ENV: &str = "PAR_ECLAT_BENCH_OUT";

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub datasets: Vec<PathBuf>,
    pub variants: Vec<Variant>,
    pub min_sups: Vec<SupportThreshold>,
    pub workers: Vec<usize>,
    pub replication: Vec<usize>,
    pub p: usize,
    pub tri_matrix: TriMatrixMode,
    pub output_dir: PathBuf,
    pub repeat: usize,
    /// Run each cell once untimed before the recorded runs.
    pub warmup: bool,
}

impl BenchSpec {
    pub fn validate(&self) -> Result<()> {
        ensure!(!self.datasets.is_empty(), "no datasets given");
        ensure!(!self.variants.is_empty(), "no variants given");
        ensure!(!self.min_sups.is_empty(), "no support thresholds given");
        ensure!(!self.workers.is_empty(), "no worker counts given");
        ensure!(!self.replication.is_empty(), "no replication factors given");
        ensure!(self.repeat >= 1, "repeat must be at least 1");
        ensure!(self.p >= 1, "partition count must be at least 1");
        ensure!(
            self.workers.iter().all(|&w| w >= 1),
            "worker counts must be at least 1"
        );
        ensure!(
            self.replication.iter().all(|&r| r >= 1),
            "replication factors must be at least 1"
        );
        for t in &self.min_sups {
            t.validate()?;
        }
        Ok(())
    }

    pub fn csv_path(&self) -> PathBuf {
        self.output_dir.join("bench.csv")
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct BenchRow {
    pub dataset: String,
    pub variant: String,
    pub min_sup: String,
    pub min_sup_count: u64,
    pub workers: usize,
    pub replication: usize,
    pub p: Option<usize>,
    pub tri_matrix: bool,
    pub run: usize,
    pub phase1_ms: Option<f64>,
    pub phase2_ms: Option<f64>,
    pub phase3_ms: Option<f64>,
    pub phase4_ms: Option<f64>,
    pub total_ms: f64,
    pub itemsets: usize,
    pub workload_max_mean: Option<f64>,
    pub filtered_reduction_pct: Option<f64>,
}

impl BenchRow {
    fn new(
        dataset: &str,
        cfg: &MiningConfig,
        replication: usize,
        run: usize,
        r: &MiningResult,
    ) -> Self {
        let m = &r.metrics;
        let phase = |k: usize| m.phases.get(k).map(|p| p.elapsed.as_secs_f64() * 1e3);
        BenchRow {
            dataset: dataset.to_owned(),
            variant: cfg.variant.to_string(),
            min_sup: cfg.min_sup.to_string(),
            min_sup_count: m.min_sup_count,
            workers: cfg.workers,
            replication,
            p: m.plan.as_ref().map(|p| p.p),
            tri_matrix: m.tri_matrix_used,
            run,
            phase1_ms: phase(0),
            phase2_ms: phase(1),
            phase3_ms: phase(2),
            phase4_ms: phase(3),
            total_ms: m.total.as_secs_f64() * 1e3,
            itemsets: r.len(),
            workload_max_mean: m.workload.map(|w| w.ratio),
            filtered_reduction_pct: m.reduction_percent,
        }
    }
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Runs every cell of the sweep and returns the rows in execution order.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    spec.validate()?;
    let mut rows = Vec::new();
    let mut expected: HashMap<(String, String, usize), (usize, String)> = HashMap::new();
    for path in &spec.datasets {
        let name = dataset_name(path);
        let base = dataset::load(path).with_context(|| format!("loading {}", path.display()))?;
        for &factor in &spec.replication {
            let db: HorizontalDb = if factor == 1 {
                base.clone()
            } else {
                replicate(&base, factor)?
            };
            for &min_sup in &spec.min_sups {
                for &variant in &spec.variants {
                    for &workers in &spec.workers {
                        let cfg = MiningConfig::new(variant, min_sup)
                            .with_workers(workers)
                            .with_partitions(spec.p)
                            .with_tri_matrix(spec.tri_matrix);
                        if spec.warmup {
                            pipeline::run(&db, &cfg)?;
                        }
                        for run in 0..spec.repeat {
                            let r = pipeline::run(&db, &cfg).with_context(|| {
                                format!("{name} {variant} min_sup={min_sup} workers={workers}")
                            })?;
                            let row = BenchRow::new(&name, &cfg, factor, run, &r);
                            let key = (name.clone(), row.min_sup.clone(), factor);
                            let who = format!("{variant}/workers={workers}/run={run}");
                            match expected.get(&key) {
                                Some((count, first)) if *count != row.itemsets => bail!(
                                    "correctness error on {} min_sup={} x{}: {} found {} itemsets, {} found {}",
                                    key.0, key.1, key.2, first, count, who, row.itemsets
                                ),
                                Some(_) => {}
                                None => {
                                    expected.insert(key, (row.itemsets, who));
                                }
                            }
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    Ok(rows)
}

pub fn write_csv(path: &Path, rows: &[BenchRow]) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Runs the sweep and writes `bench.csv` into the output directory.
pub fn run_and_write(spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    let rows = run_bench(spec)?;
    write_csv(&spec.csv_path(), &rows)?;
    Ok(rows)
}
