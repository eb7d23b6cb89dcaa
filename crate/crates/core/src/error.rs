use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("database contains no transactions")]
    EmptyDatabase,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid support threshold: {0}")]
    InvalidThreshold(String),

    #[error("replication factor must be at least 1")]
    ZeroReplication,

    #[error("pair lookup ({i}, {j}) is invalid for a matrix of dimension {dim}")]
    InvalidPair { i: u32, j: u32, dim: usize },

    #[error("triangular matrix needs {needed} bytes, guard is {guard} bytes")]
    MatrixTooLarge { needed: u64, guard: u64 },

    #[error("triangular matrix lookup on a disabled matrix")]
    MatrixDisabled,

    #[error("partition count must be at least 1")]
    ZeroPartitions,

    #[error("class key {key} out of range for {n} frequent items")]
    ClassKeyOutOfRange { key: usize, n: usize },

    #[error("default partitioning uses n-1 = {expected} partitions, got {got}")]
    DefaultPartitionCount { expected: usize, got: usize },

    #[error("worker count must be at least 1")]
    ZeroWorkers,

    #[error("oracle refuses {items} frequent items (limit {limit}); use a higher support or a smaller database")]
    OracleTooManyItems { items: usize, limit: usize },

    #[error("bottom-up recursion depth {depth} exceeds {limit} frequent items")]
    RecursionDepth { depth: usize, limit: usize },

    #[error("thread pool: {0}")]
    ThreadPool(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
