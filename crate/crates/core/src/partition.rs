//! Assignment of equivalence classes to worker partitions.
//!
//! A class is keyed by the rank `v` of its prefix in the ascending-support
//! order. Low ranks are the least frequent prefixes and carry the most members.

use std::fmt;
use std::str::FromStr;

use crate::eclat::EquivalenceClass;
use crate::error::{Error, Result};

/// Rank of a class prefix in the frequent-item order, `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassKey(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// One partition per class, `p = n - 1`.
    Default,
    /// `v mod p`.
    Hash,
    /// `v mod p`, mirrored to `(p - 1) - r` once `v >= p`.
    ReverseHash,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Default => "default",
            Scheme::Hash => "hash",
            Scheme::ReverseHash => "reverse_hash",
        })
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "default" => Ok(Scheme::Default),
            "hash" => Ok(Scheme::Hash),
            "reverse_hash" | "reverse-hash" => Ok(Scheme::ReverseHash),
            _ => Err(format!("unknown partition scheme {s:?}")),
        }
    }
}

pub fn assign_default(v: ClassKey, n: usize) -> Result<usize> {
    if v.0 + 1 >= n {
        return Err(Error::ClassKeyOutOfRange { key: v.0, n });
    }
    Ok(v.0)
}

pub fn assign_hash(v: ClassKey, p: usize) -> Result<usize> {
    if p == 0 {
        return Err(Error::ZeroPartitions);
    }
    Ok(v.0 % p)
}

pub fn assign_reverse_hash(v: ClassKey, p: usize) -> Result<usize> {
    if p == 0 {
        return Err(Error::ZeroPartitions);
    }
    let r = v.0 % p;
    Ok(if v.0 >= p { (p - 1) - r } else { r })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPlan {
    pub scheme: Scheme,
    pub p: usize,
    /// `assignment[k]` is the partition of the class with key `k`.
    pub assignment: Vec<usize>,
    /// Member count summed per partition.
    pub workloads: Vec<u64>,
}

impl PartitionPlan {
    /// Class keys grouped by partition, each group ascending.
    pub fn partitions(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.p];
        for (key, &pid) in self.assignment.iter().enumerate() {
            parts[pid].push(key);
        }
        parts
    }
}

/// Assigns every class by its key. `p` is ignored-or-checked for the default
/// scheme, which always uses `n - 1 = classes.len()` partitions.
pub fn plan_partitions(
    classes: &[EquivalenceClass],
    scheme: Scheme,
    p: Option<usize>,
) -> Result<PartitionPlan> {
    let n_classes = classes.len();
    let p = match (scheme, p) {
        (Scheme::Default, None) => n_classes,
        (Scheme::Default, Some(p)) if p == n_classes => p,
        (Scheme::Default, Some(p)) => {
            return Err(Error::DefaultPartitionCount {
                expected: n_classes,
                got: p,
            })
        }
        (_, Some(0)) | (_, None) => return Err(Error::ZeroPartitions),
        (_, Some(p)) => p,
    };
    let n_items = n_classes + 1;
    let mut assignment = vec![0; n_classes];
    let mut workloads = vec![0u64; p];
    for ec in classes {
        let key = ClassKey(ec.key);
        let pid = match scheme {
            Scheme::Default => assign_default(key, n_items)?,
            Scheme::Hash => assign_hash(key, p)?,
            Scheme::ReverseHash => assign_reverse_hash(key, p)?,
        };
        assignment[ec.key] = pid;
        workloads[pid] += ec.members.len() as u64;
    }
    Ok(PartitionPlan {
        scheme,
        p,
        assignment,
        workloads,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkloadStats {
    pub max: u64,
    pub min: u64,
    pub mean: f64,
    /// `max / mean`; 1.0 for perfectly balanced or empty plans.
    pub ratio: f64,
}

pub fn workload_stats(plan: &PartitionPlan) -> WorkloadStats {
    let w = &plan.workloads;
    if w.is_empty() {
        return WorkloadStats {
            max: 0,
            min: 0,
            mean: 0.0,
            ratio: 1.0,
        };
    }
    let max = *w.iter().max().unwrap();
    let min = *w.iter().min().unwrap();
    let mean = w.iter().sum::<u64>() as f64 / w.len() as f64;
    let ratio = if mean > 0.0 { max as f64 / mean } else { 1.0 };
    WorkloadStats {
        max,
        min,
        mean,
        ratio,
    }
}
