//! Horizontal transaction databases in the FIMI/SPMF text format.
//!
//! Every transaction is a strictly ascending list of dense item ids. Ids are
//! assigned in first-appearance order while parsing, and the original token
//! of every id is kept so results can be written back in the input's terms.
//! Transaction ids are implicit: the transaction at index `k` has tid `k + 1`.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Dense item identifier, `0..universe`.
pub type ItemId = u32;
/// Transaction identifier, `1..=n_transactions`.
pub type Tid = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HorizontalDb {
    transactions: Vec<Vec<ItemId>>,
    item_names: Vec<String>,
}

impl HorizontalDb {
    /// Builds a database from already-dense transactions. Each transaction is
    /// sorted and deduplicated; `item_names[i]` is the token of item `i`.
    ///
    /// Panics if a transaction mentions an id without a name.
    pub fn from_dense(mut transactions: Vec<Vec<ItemId>>, item_names: Vec<String>) -> Self {
        for t in &mut transactions {
            t.sort_unstable();
            t.dedup();
            if let Some(&last) = t.last() {
                assert!(
                    (last as usize) < item_names.len(),
                    "item id {last} has no name"
                );
            }
        }
        HorizontalDb {
            transactions,
            item_names,
        }
    }

    /// Convenience constructor for tests and generators: items are named by
    /// their decimal id.
    pub fn from_ids(transactions: Vec<Vec<ItemId>>) -> Self {
        let universe = transactions
            .iter()
            .flat_map(|t| t.iter().copied())
            .max()
            .map_or(0, |m| m as usize + 1);
        let names = (0..universe).map(|i| i.to_string()).collect();
        Self::from_dense(transactions, names)
    }

    pub fn transactions(&self) -> &[Vec<ItemId>] {
        &self.transactions
    }

    pub fn n_transactions(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Number of dense ids with a name (`max_item + 1`).
    pub fn universe(&self) -> usize {
        self.item_names.len()
    }

    pub fn max_item(&self) -> Option<ItemId> {
        self.item_names.len().checked_sub(1).map(|m| m as ItemId)
    }

    pub fn item_names(&self) -> &[String] {
        &self.item_names
    }

    pub fn item_name(&self, item: ItemId) -> &str {
        &self.item_names[item as usize]
    }

    /// Total number of item occurrences over all transactions.
    pub fn occurrences(&self) -> usize {
        self.transactions.iter().map(Vec::len).sum()
    }

    /// Number of distinct items that occur in at least one transaction.
    pub fn distinct_items(&self) -> usize {
        let mut seen = vec![false; self.universe()];
        for &i in self.transactions.iter().flatten() {
            seen[i as usize] = true;
        }
        seen.into_iter().filter(|&s| s).count()
    }

    /// Writes one transaction per line with original tokens, single-space
    /// separated, in ascending dense-id order.
    pub fn write_to<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for t in &self.transactions {
            let mut first = true;
            for &i in t {
                if !first {
                    out.write_all(b" ")?;
                }
                out.write_all(self.item_name(i).as_bytes())?;
                first = false;
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn serialize(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("tokens are ASCII")
    }
}

fn valid_token(tok: &str) -> bool {
    tok.bytes()
        .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'-' | b'_' | b'.' | b':' | b'+'))
}

#[derive(Default)]
struct Remapper {
    ids: HashMap<String, ItemId>,
    names: Vec<String>,
}

impl Remapper {
    fn line(&mut self, line_no: usize, line: &str) -> Result<Option<Vec<ItemId>>> {
        let mut t = Vec::new();
        for tok in line.split_whitespace() {
            if !valid_token(tok) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("invalid item token {tok:?}"),
                });
            }
            let id = match self.ids.get(tok) {
                Some(&id) => id,
                None => {
                    let id = self.names.len() as ItemId;
                    self.ids.insert(tok.to_owned(), id);
                    self.names.push(tok.to_owned());
                    id
                }
            };
            t.push(id);
        }
        if t.is_empty() {
            return Ok(None);
        }
        t.sort_unstable();
        t.dedup();
        Ok(Some(t))
    }
}

/// Parses whitespace-separated transactions, one per non-empty line.
pub fn parse_horizontal(text: &str) -> Result<HorizontalDb> {
    let mut remap = Remapper::default();
    let mut transactions = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if let Some(t) = remap.line(idx + 1, line)? {
            transactions.push(t);
        }
    }
    finish(transactions, remap)
}

/// Streaming variant of [`parse_horizontal`].
pub fn read_horizontal<R: BufRead>(mut reader: R) -> Result<HorizontalDb> {
    let mut remap = Remapper::default();
    let mut transactions = Vec::new();
    let mut buf = Vec::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let line = std::str::from_utf8(&buf).map_err(|_| Error::Parse {
            line: line_no,
            message: "line is not valid UTF-8".into(),
        })?;
        if let Some(t) = remap.line(line_no, line)? {
            transactions.push(t);
        }
    }
    finish(transactions, remap)
}

pub fn load(path: impl AsRef<Path>) -> Result<HorizontalDb> {
    let file = std::fs::File::open(path)?;
    read_horizontal(std::io::BufReader::new(file))
}

fn finish(transactions: Vec<Vec<ItemId>>, remap: Remapper) -> Result<HorizontalDb> {
    if transactions.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    Ok(HorizontalDb {
        transactions,
        item_names: remap.names,
    })
}

/// Minimum support, either relative to the database size or absolute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SupportThreshold {
    Fraction(f64),
    Count(u64),
}

impl SupportThreshold {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SupportThreshold::Fraction(f) if !(f > 0.0 && f <= 1.0) => Err(
                Error::InvalidThreshold(format!("fraction {f} is outside (0, 1]")),
            ),
            SupportThreshold::Count(0) => {
                Err(Error::InvalidThreshold("absolute count must be >= 1".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn resolve(&self, n_transactions: usize) -> Result<u64> {
        resolve_min_sup(*self, n_transactions)
    }
}

impl fmt::Display for SupportThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportThreshold::Fraction(x) => write!(f, "{x}"),
            SupportThreshold::Count(c) => write!(f, "{c}"),
        }
    }
}

/// An unsigned integer literal is an absolute count; anything else must be a
/// fraction in `(0, 1]`.
impl FromStr for SupportThreshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parsed = if let Ok(c) = s.parse::<u64>() {
            SupportThreshold::Count(c)
        } else {
            let f = s
                .parse::<f64>()
                .map_err(|_| Error::InvalidThreshold(format!("{s:?} is not a number")))?;
            SupportThreshold::Fraction(f)
        };
        parsed.validate()?;
        Ok(parsed)
    }
}

/// Resolves a threshold to an absolute count: `ceil(f * n)` for fractions.
pub fn resolve_min_sup(threshold: SupportThreshold, n: usize) -> Result<u64> {
    threshold.validate()?;
    if n == 0 {
        return Err(Error::EmptyDatabase);
    }
    Ok(match threshold {
        SupportThreshold::Count(c) => c,
        SupportThreshold::Fraction(f) => {
            let exact = f * n as f64;
            // 0.05 * 100 must resolve to 5, not 6
            let nearest = exact.round();
            let count = if (exact - nearest).abs() <= 1e-9 * exact.max(1.0) {
                nearest
            } else {
                exact.ceil()
            };
            (count as u64).max(1)
        }
    })
}

/// Drops infrequent items from every transaction. Transactions left empty are
/// removed, so surviving transactions get fresh tids `1..=m`. The item
/// universe and names are unchanged.
pub fn filter_transactions(db: &HorizontalDb, frequent_items: &[ItemId]) -> HorizontalDb {
    let mut keep = vec![false; db.universe()];
    for &i in frequent_items {
        keep[i as usize] = true;
    }
    let transactions: Vec<Vec<ItemId>> = db
        .transactions
        .par_iter()
        .filter_map(|t| {
            let f: Vec<ItemId> = t.iter().copied().filter(|&i| keep[i as usize]).collect();
            (!f.is_empty()).then_some(f)
        })
        .collect();
    HorizontalDb {
        transactions,
        item_names: db.item_names.clone(),
    }
}

/// Percentage decrease in total item occurrences from `before` to `after`.
pub fn reduction_percent(before: &HorizontalDb, after: &HorizontalDb) -> f64 {
    let b = before.occurrences();
    if b == 0 {
        return 0.0;
    }
    100.0 * (b - after.occurrences()) as f64 / b as f64
}

/// Concatenates `factor` copies of the database.
pub fn replicate(db: &HorizontalDb, factor: usize) -> Result<HorizontalDb> {
    if factor == 0 {
        return Err(Error::ZeroReplication);
    }
    let mut transactions = Vec::with_capacity(db.n_transactions() * factor);
    for _ in 0..factor {
        transactions.extend(db.transactions.iter().cloned());
    }
    Ok(HorizontalDb {
        transactions,
        item_names: db.item_names.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_remaps_by_first_appearance() {
        let db = parse_horizontal("1 2 3\n1 2\n").unwrap();
        assert_eq!(db.n_transactions(), 2);
        assert_eq!(db.transactions(), &[vec![0, 1, 2], vec![0, 1]]);
        assert_eq!(db.item_names(), &["1", "2", "3"]);
        assert_eq!(db.max_item(), Some(2));
    }

    #[test]
    fn collapses_duplicates_within_a_transaction() {
        let db = parse_horizontal("5 5 9\n").unwrap();
        assert_eq!(db.transactions(), &[vec![0, 1]]);
        assert_eq!(db.item_name(0), "5");
        assert_eq!(db.item_name(1), "9");
    }

    #[test]
    fn sorts_items_by_dense_id() {
        let db = parse_horizontal("7 3\n3 7 1\n").unwrap();
        assert_eq!(db.transactions(), &[vec![0, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(parse_horizontal(""), Err(Error::EmptyDatabase)));
        assert!(matches!(parse_horizontal("\n  \n"), Err(Error::EmptyDatabase)));
    }

    #[test]
    fn garbage_reports_line_number() {
        match parse_horizontal("1 2\n3 #4\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn reader_rejects_invalid_utf8() {
        let bytes: &[u8] = b"1 2\n\xff\xfe\n";
        match read_horizontal(bytes) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn blank_lines_are_skipped() {
        let db = parse_horizontal("1 2\n\n2 3\n").unwrap();
        assert_eq!(db.n_transactions(), 2);
    }

    #[test]
    fn resolve_fraction_and_count() {
        assert_eq!(resolve_min_sup(SupportThreshold::Fraction(0.05), 100).unwrap(), 5);
        assert_eq!(
            resolve_min_sup(SupportThreshold::Fraction(0.01), 100_000).unwrap(),
            1000
        );
        assert_eq!(resolve_min_sup(SupportThreshold::Count(7), 3196).unwrap(), 7);
        assert_eq!(resolve_min_sup(SupportThreshold::Fraction(0.333), 10).unwrap(), 4);
        assert_eq!(resolve_min_sup(SupportThreshold::Fraction(1.0), 3).unwrap(), 3);
        assert_eq!(resolve_min_sup(SupportThreshold::Fraction(1e-9), 3).unwrap(), 1);
    }

    #[test]
    fn resolve_rejects_bad_thresholds() {
        assert!(resolve_min_sup(SupportThreshold::Fraction(0.0), 10).is_err());
        assert!(resolve_min_sup(SupportThreshold::Fraction(1.5), 10).is_err());
        assert!(resolve_min_sup(SupportThreshold::Fraction(-0.1), 10).is_err());
        assert!(resolve_min_sup(SupportThreshold::Count(0), 10).is_err());
    }

    #[test]
    fn threshold_from_str() {
        assert_eq!("7".parse::<SupportThreshold>().unwrap(), SupportThreshold::Count(7));
        assert_eq!(
            "0.8".parse::<SupportThreshold>().unwrap(),
            SupportThreshold::Fraction(0.8)
        );
        assert!("1.5".parse::<SupportThreshold>().is_err());
        assert!("0".parse::<SupportThreshold>().is_err());
        assert!("abc".parse::<SupportThreshold>().is_err());
    }

    #[test]
    fn filter_drops_infrequent_items() {
        let db = HorizontalDb::from_ids(vec![vec![1, 3, 7]]);
        let f = filter_transactions(&db, &[1, 3]);
        assert_eq!(f.transactions(), &[vec![1, 3]]);
        assert_eq!(f.universe(), db.universe());
    }

    #[test]
    fn filter_drops_emptied_transactions() {
        let db = HorizontalDb::from_ids(vec![vec![7], vec![1, 2]]);
        let f = filter_transactions(&db, &[1, 2]);
        assert_eq!(f.transactions(), &[vec![1, 2]]);
        assert_eq!(f.n_transactions(), 1);
    }

    #[test]
    fn reduction_counts_item_occurrences() {
        let db = HorizontalDb::from_ids(vec![vec![1, 2, 3], vec![3]]);
        let f = filter_transactions(&db, &[1, 2]);
        assert!((reduction_percent(&db, &f) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn replicate_repeats_in_order() {
        let db = HorizontalDb::from_ids(vec![vec![0, 1], vec![2]]);
        let r = replicate(&db, 3).unwrap();
        assert_eq!(r.n_transactions(), 6);
        assert_eq!(r.transactions()[2], vec![0, 1]);
        assert_eq!(r.transactions()[5], vec![2]);
        assert_eq!(replicate(&db, 1).unwrap(), db);
        assert!(matches!(replicate(&db, 0), Err(Error::ZeroReplication)));
    }
}
