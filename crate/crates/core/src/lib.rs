//! Parallel frequent-itemset mining with Eclat over 1-prefix equivalence classes.
//!
//! The crate provides five Eclat pipelines that differ in how they prepare the
//! vertical database and how they spread equivalence classes over workers, an
//! Apriori baseline, and an exhaustive oracle. All of them return the same
//! canonical [`MiningResult`] for the same input.
//!
//! ```
//! use par_eclat::{dataset, pipeline, SupportThreshold, Variant, MiningConfig};
//!
//! let db = dataset::parse_horizontal("1 2 3\n1 2\n1 3\n2 3\n").unwrap();
//! let cfg = MiningConfig::new(Variant::V4, SupportThreshold::Count(2)).with_workers(2);
//! let result = pipeline::run(&db, &cfg).unwrap();
//! assert_eq!(result.len(), 6);
//! ```

pub mod counting;
pub mod dataset;
pub mod eclat;
pub mod error;
pub mod partition;
pub mod pipeline;
pub mod result;
pub mod synth;
pub mod vertical;

pub use dataset::{HorizontalDb, ItemId, SupportThreshold, Tid};
pub use error::{Error, Result};
pub use pipeline::{run, MiningConfig, TriMatrixMode, Variant};
pub use result::{FrequentItemset, MiningResult};
