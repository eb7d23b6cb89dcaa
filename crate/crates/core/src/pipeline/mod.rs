//! End-to-end miners: the five Eclat variants, an Apriori baseline and a
//! brute-force oracle, all producing the same canonical [`MiningResult`].
//!
//! Every run executes inside its own thread pool of `workers` threads. Tasks
//! are pure over immutable inputs and results are merged by concatenation
//! followed by a canonical sort, so output never depends on scheduling.

mod apriori;
mod eclat;
mod oracle;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use apriori::run_apriori;
pub use eclat::{run_v1, run_v2, run_v3, run_v4, run_v5};
pub use oracle::{run_oracle, ORACLE_ITEM_LIMIT};

use crate::counting::{build_tri_matrix, TriangularMatrix, DEFAULT_MATRIX_GUARD_BYTES};
use crate::dataset::{HorizontalDb, SupportThreshold};
use crate::error::{Error, Result};
use crate::result::{MiningResult, PhaseTime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    V1,
    V2,
    V3,
    V4,
    V5,
    Apriori,
    Oracle,
}

impl Variant {
    pub const ECLAT: [Variant; 5] = [Variant::V1, Variant::V2, Variant::V3, Variant::V4, Variant::V5];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::V1 => "v1",
            Variant::V2 => "v2",
            Variant::V3 => "v3",
            Variant::V4 => "v4",
            Variant::V5 => "v5",
            Variant::Apriori => "apriori",
            Variant::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "v1" => Ok(Variant::V1),
            "v2" => Ok(Variant::V2),
            "v3" => Ok(Variant::V3),
            "v4" => Ok(Variant::V4),
            "v5" => Ok(Variant::V5),
            "apriori" => Ok(Variant::Apriori),
            "oracle" => Ok(Variant::Oracle),
            _ => Err(format!(
                "unknown variant {s:?} (expected v1..v5, apriori or oracle)"
            )),
        }
    }
}

/// Whether the 2-itemset triangular matrix is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriMatrixMode {
    On,
    Off,
    /// On unless the matrix would exceed the memory guard.
    Auto,
}

impl FromStr for TriMatrixMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "on" | "true" => Ok(TriMatrixMode::On),
            "off" | "false" => Ok(TriMatrixMode::Off),
            "auto" => Ok(TriMatrixMode::Auto),
            _ => Err(format!("expected on, off or auto, got {s:?}")),
        }
    }
}

impl fmt::Display for TriMatrixMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriMatrixMode::On => "on",
            TriMatrixMode::Off => "off",
            TriMatrixMode::Auto => "auto",
        })
    }
}

pub const DEFAULT_PARTITIONS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct MiningConfig {
    pub variant: Variant,
    pub min_sup: SupportThreshold,
    pub tri_matrix: TriMatrixMode,
    pub matrix_guard_bytes: u64,
    /// Partition count for the hash schemes (V4, V5).
    pub p: usize,
    pub workers: usize,
}

impl MiningConfig {
    pub fn new(variant: Variant, min_sup: SupportThreshold) -> Self {
        MiningConfig {
            variant,
            min_sup,
            tri_matrix: TriMatrixMode::Auto,
            matrix_guard_bytes: DEFAULT_MATRIX_GUARD_BYTES,
            p: DEFAULT_PARTITIONS,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_tri_matrix(mut self, mode: TriMatrixMode) -> Self {
        self.tri_matrix = mode;
        self
    }

    pub fn with_partitions(mut self, p: usize) -> Self {
        self.p = p;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_matrix_guard(mut self, bytes: u64) -> Self {
        self.matrix_guard_bytes = bytes;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.min_sup.validate()?;
        if self.workers == 0 {
            return Err(Error::ZeroWorkers);
        }
        if self.p == 0 {
            return Err(Error::ZeroPartitions);
        }
        Ok(())
    }
}

/// Runs the configured variant.
pub fn run(db: &HorizontalDb, cfg: &MiningConfig) -> Result<MiningResult> {
    match cfg.variant {
        Variant::V1 => run_v1(db, cfg),
        Variant::V2 => run_v2(db, cfg),
        Variant::V3 => run_v3(db, cfg),
        Variant::V4 => run_v4(db, cfg),
        Variant::V5 => run_v5(db, cfg),
        Variant::Apriori => run_apriori(db, cfg),
        Variant::Oracle => run_oracle(db, cfg),
    }
}

fn with_pool<T: Send>(cfg: &MiningConfig, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))?;
    pool.install(f)
}

/// Wall-clock timing around named phases.
struct PhaseClock {
    start: Instant,
    phases: Vec<PhaseTime>,
}

impl PhaseClock {
    fn start() -> Self {
        PhaseClock {
            start: Instant::now(),
            phases: Vec::new(),
        }
    }

    fn phase<T>(&mut self, name: &'static str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.phases.push(PhaseTime {
            name,
            elapsed: t.elapsed(),
        });
        out
    }

    fn finish(self) -> (Vec<PhaseTime>, Duration) {
        (self.phases, self.start.elapsed())
    }
}

/// Builds the matrix per `mode`; `None` means matrix pruning is off.
fn resolve_matrix(
    db: &HorizontalDb,
    cfg: &MiningConfig,
) -> Result<Option<TriangularMatrix>> {
    let dim = db.universe();
    match cfg.tri_matrix {
        TriMatrixMode::Off => Ok(None),
        TriMatrixMode::On => build_tri_matrix(db, dim, cfg.matrix_guard_bytes, cfg.workers).map(Some),
        TriMatrixMode::Auto => match build_tri_matrix(db, dim, cfg.matrix_guard_bytes, cfg.workers) {
            Ok(m) => Ok(Some(m)),
            Err(Error::MatrixTooLarge { .. }) => Ok(None),
            Err(e) => Err(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variant_parsing() {
        for v in Variant::ECLAT.iter().chain(&[Variant::Apriori, Variant::Oracle]) {
            assert_eq!(v.name().parse::<Variant>().unwrap(), *v);
        }
        assert_eq!("V4".parse::<Variant>().unwrap(), Variant::V4);
        assert!("v6".parse::<Variant>().is_err());
    }

    #[test]
    fn config_validation() {
        let cfg = MiningConfig::new(Variant::V1, SupportThreshold::Count(1));
        assert!(cfg.clone().with_workers(0).validate().is_err());
        assert!(cfg.clone().with_partitions(0).validate().is_err());
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn on_mode_refuses_oversized_matrix_and_auto_falls_back() {
        let db = HorizontalDb::from_ids(vec![vec![0, 1, 2], vec![0, 2]]);
        let cfg = MiningConfig::new(Variant::V1, SupportThreshold::Count(1)).with_matrix_guard(4);
        assert!(matches!(
            resolve_matrix(&db, &cfg.clone().with_tri_matrix(TriMatrixMode::On)),
            Err(Error::MatrixTooLarge { .. })
        ));
        assert!(resolve_matrix(&db, &cfg.clone().with_tri_matrix(TriMatrixMode::Auto))
            .unwrap()
            .is_none());
        let roomy = cfg.with_matrix_guard(1 << 20).with_tri_matrix(TriMatrixMode::Auto);
        assert!(resolve_matrix(&db, &roomy).unwrap().is_some());
    }
}
