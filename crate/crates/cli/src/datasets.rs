//! Locating the standard benchmark files on disk.

use std::path::PathBuf;

/// Overrides the dataset directory.
pub const DATA_DIR_ENV: &str = "PAR_ECLAT_DATA_DIR";

pub const CHESS: &str = "chess.dat";
pub const MUSHROOM: &str = "mushroom.dat";
pub const T10I4D100K: &str = "T10I4D100K.dat";
pub const T40I10D100K: &str = "T40I10D100K.dat";

/// `$PAR_ECLAT_DATA_DIR`, or `data/` at the workspace root.
pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

/// Path of a named dataset, if the file exists.
pub fn find(name: &str) -> Option<PathBuf> {
    let p = data_dir().join(name);
    p.is_file().then_some(p)
}
