//! Plain-text matrix files (`.qnd`) and catalog directories.
//!
//! A matrix file is a header line holding `n` followed by `n` rows of `n`
//! space-separated 1-based entries. A catalog directory holds one
//! `<id>.qnd` per entry and an `index.txt` with one line per entry:
//! `id order profile latin aut`, e.g. `q52 5 {1,4} true 20`. Disconnected
//! entries carry `-` for the profile.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::canon;
use crate::error::Error as QuandleError;
use crate::quandle::{Profile, Quandle};

pub const INDEX_FILE: &str = "index.txt";
pub const EXTENSION: &str = "qnd";

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("bad header: {0:?}")]
    BadHeader(String),
    #[error("line {0}: wrong number of entries")]
    RaggedRow(usize),
    #[error("entry ({row},{col}) = {value} is out of range")]
    OutOfRange {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("expected {expected} rows, found {found}")]
    MissingRows { expected: usize, found: usize },
    #[error("line {0}: unexpected trailing data")]
    TrailingData(usize),
    #[error("{id}: {source}")]
    ValidationFailed {
        id: String,
        #[source]
        source: QuandleError,
    },
    #[error("{id}: index metadata does not match the matrix ({field})")]
    MetadataMismatch { id: String, field: &'static str },
    #[error("index line {line}: {reason}")]
    BadIndex { line: usize, reason: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CatalogError + '_ {
    move |source| CatalogError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Parses the text format into 1-based rows; entries are range-checked but
/// the axioms are not.
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<usize>>, CatalogError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| CatalogError::BadHeader(String::new()))?;
    let n: usize = header
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CatalogError::BadHeader(header.to_string()))?;
    let mut rows = Vec::with_capacity(n);
    for (idx, line) in lines {
        let lineno = idx + 1;
        if rows.len() == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(CatalogError::TrailingData(lineno));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            return Err(CatalogError::RaggedRow(lineno));
        }
        let row = tokens
            .iter()
            .enumerate()
            .map(|(j, t)| match t.parse::<usize>() {
                Ok(v) if (1..=n).contains(&v) => Ok(v),
                _ => Err(CatalogError::OutOfRange {
                    row: rows.len() + 1,
                    col: j + 1,
                    value: t.to_string(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(CatalogError::MissingRows {
            expected: n,
            found: rows.len(),
        });
    }
    Ok(rows)
}

/// Parses and validates.
pub fn parse_quandle(text: &str) -> Result<Quandle, QuandleOrParse> {
    let rows = parse_matrix(text).map_err(QuandleOrParse::Parse)?;
    Quandle::from_table(&rows).map_err(QuandleOrParse::Invalid)
}

/// Failure of [`parse_quandle`]: malformed text or a table that is not a
/// quandle.
#[derive(Debug, Error)]
pub enum QuandleOrParse {
    #[error(transparent)]
    Parse(CatalogError),
    #[error(transparent)]
    Invalid(QuandleError),
}

pub fn serialize_matrix(q: &Quandle) -> String {
    let mut out = format!("{}\n", q.order());
    for row in q.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Derived facts recorded in a catalog index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metadata {
    pub order: usize,
    /// `None` for disconnected quandles.
    pub profile: Option<Profile>,
    pub latin: bool,
    /// `None` when not computable (disconnected and above the brute-force
    /// limit).
    pub automorphisms: Option<usize>,
}

impl Metadata {
    pub fn compute(q: &Quandle) -> Self {
        let connected = q.is_connected();
        let automorphisms = if connected {
            canon::automorphism_group(q).ok().map(|g| g.len())
        } else {
            canon::brute_force_automorphisms(q).ok().map(|g| g.len())
        };
        Metadata {
            order: q.order(),
            profile: connected.then(|| q.profile().expect("connected")),
            latin: q.is_latin(),
            automorphisms,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.profile.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub quandle: Quandle,
    pub metadata: Option<Metadata>,
}

impl CatalogEntry {
    pub fn new(id: impl Into<String>, quandle: Quandle) -> Self {
        CatalogEntry {
            id: id.into(),
            quandle,
            metadata: None,
        }
    }

    pub fn with_metadata(mut self) -> Self {
        self.metadata = Some(Metadata::compute(&self.quandle));
        self
    }

    pub fn metadata(&self) -> Metadata {
        self.metadata
            .clone()
            .unwrap_or_else(|| Metadata::compute(&self.quandle))
    }
}

fn index_line(id: &str, m: &Metadata) -> String {
    let profile = m
        .profile
        .as_ref()
        .map_or_else(|| "-".to_string(), Profile::to_string);
    let aut = m
        .automorphisms
        .map_or_else(|| "-".to_string(), |a| a.to_string());
    format!("{id} {} {profile} {} {aut}", m.order, m.latin)
}

fn parse_index_line(lineno: usize, line: &str) -> Result<(String, Metadata), CatalogError> {
    let bad = |reason: &str| CatalogError::BadIndex {
        line: lineno,
        reason: reason.to_string(),
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [id, order, profile, latin, aut] = fields[..] else {
        return Err(bad("expected 5 fields"));
    };
    let order = order.parse().map_err(|_| bad("order"))?;
    let profile = match profile {
        "-" => None,
        p => Some(p.parse().map_err(|_| bad("profile"))?),
    };
    let latin = latin.parse().map_err(|_| bad("latin flag"))?;
    let automorphisms = match aut {
        "-" => None,
        a => Some(a.parse().map_err(|_| bad("automorphism count"))?),
    };
    Ok((
        id.to_string(),
        Metadata {
            order,
            profile,
            latin,
            automorphisms,
        },
    ))
}

/// Writes every entry and then the index, the latter via a temporary file
/// renamed into place.
pub fn save_catalog(dir: &Path, entries: &[CatalogEntry]) -> Result<(), CatalogError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut index = String::new();
    for entry in entries {
        let path = dir.join(format!("{}.{EXTENSION}", entry.id));
        fs::write(&path, serialize_matrix(&entry.quandle)).map_err(io_err(&path))?;
        writeln!(index, "{}", index_line(&entry.id, &entry.metadata())).unwrap();
    }
    let tmp = dir.join(format!(".{INDEX_FILE}.tmp"));
    fs::write(&tmp, index).map_err(io_err(&tmp))?;
    let dest = dir.join(INDEX_FILE);
    fs::rename(&tmp, &dest).map_err(io_err(&dest))?;
    Ok(())
}

pub fn load_entry(path: &Path) -> Result<CatalogEntry, CatalogError> {
    let id = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or_default()
        .to_string();
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let rows = parse_matrix(&text)?;
    let quandle = Quandle::from_table(&rows).map_err(|source| CatalogError::ValidationFailed {
        id: id.clone(),
        source,
    })?;
    Ok(CatalogEntry::new(id, quandle))
}

/// Loads every `.qnd` file, sorted by id. Index metadata, when present, is
/// checked against recomputation and attached.
pub fn load_catalog(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut paths = Vec::new();
    for item in fs::read_dir(dir).map_err(io_err(dir))? {
        let path = item.map_err(io_err(dir))?.path();
        if path.extension().is_some_and(|e| e == EXTENSION) {
            paths.push(path);
        }
    }
    paths.sort();
    let mut entries = paths
        .iter()
        .map(|p| load_entry(p))
        .collect::<Result<Vec<_>, _>>()?;

    let index_path = dir.join(INDEX_FILE);
    if index_path.exists() {
        let text = fs::read_to_string(&index_path).map_err(io_err(&index_path))?;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (id, recorded) = parse_index_line(i + 1, line)?;
            let Some(entry) = entries.iter_mut().find(|e| e.id == id) else {
                return Err(CatalogError::BadIndex {
                    line: i + 1,
                    reason: format!("no matrix file for {id}"),
                });
            };
            let actual = Metadata::compute(&entry.quandle);
            let field = if recorded.order != actual.order {
                Some("order")
            } else if recorded.profile != actual.profile {
                Some("profile")
            } else if recorded.latin != actual.latin {
                Some("latin")
            } else if recorded.automorphisms != actual.automorphisms {
                Some("automorphisms")
            } else {
                None
            };
            if let Some(field) = field {
                return Err(CatalogError::MetadataMismatch { id, field });
            }
            entry.metadata = Some(recorded);
        }
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;

    #[test]
    fn parses_minimal_and_table_one() {
        assert_eq!(parse_matrix("1\n1\n").unwrap(), vec![vec![1]]);
        let text =
            "6\n1 1 5 6 3 4\n2  2 6 5 4 3\n5 6 3 3 1 2\n6 5 4 4 2 1\n3 4 1 2 5 5\n4 3 2 1 6 6";
        assert_eq!(parse_matrix(text).unwrap(), tables::to_rows(tables::Q61));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_matrix("2\n1 2\n1\n"),
            Err(CatalogError::RaggedRow(3))
        ));
        assert!(matches!(parse_matrix(""), Err(CatalogError::BadHeader(_))));
        assert!(matches!(
            parse_matrix("x\n"),
            Err(CatalogError::BadHeader(_))
        ));
        assert!(matches!(
            parse_matrix("0\n"),
            Err(CatalogError::BadHeader(_))
        ));
        assert!(matches!(
            parse_matrix("2\n1 3\n1 2\n"),
            Err(CatalogError::OutOfRange { row: 1, col: 2, .. })
        ));
        assert!(matches!(
            parse_matrix("2\n1 2\n"),
            Err(CatalogError::MissingRows {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            parse_matrix("1\n1\n\n1\n"),
            Err(CatalogError::TrailingData(4))
        ));
    }

    #[test]
    fn serialization() {
        assert_eq!(serialize_matrix(&Quandle::trivial(1)), "1\n1\n");
        let golden = include_str!("../../../paper_tables/q52.qnd");
        assert_eq!(serialize_matrix(&tables::q52()), golden);
        let text = include_str!("../../../paper_tables/q72.qnd");
        let q = parse_quandle(text).unwrap();
        assert_eq!(serialize_matrix(&q), text);
    }

    #[test]
    fn parse_quandle_distinguishes_failures() {
        assert!(matches!(
            parse_quandle("2\n1\n"),
            Err(QuandleOrParse::Parse(_))
        ));
        assert!(matches!(
            parse_quandle("2\n2 1\n1 2\n"),
            Err(QuandleOrParse::Invalid(QuandleError::NotIdempotent(1)))
        ));
    }

    #[test]
    fn index_lines_round_trip() {
        let m = Metadata::compute(&tables::q52());
        let line = index_line("q52", &m);
        assert_eq!(line, "q52 5 {1,4} true 20");
        assert_eq!(parse_index_line(1, &line).unwrap(), ("q52".to_string(), m));
        let d = Metadata::compute(&Quandle::trivial(3));
        assert_eq!(index_line("t3", &d), "t3 3 - false 6");
        assert!(parse_index_line(1, "a b").is_err());
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let entries: Vec<CatalogEntry> = tables::example_catalog()
            .into_iter()
            .map(CatalogEntry::with_metadata)
            .collect();
        save_catalog(dir.path(), &entries).unwrap();
        let loaded = load_catalog(dir.path()).unwrap();
        assert_eq!(loaded, entries);
        assert!(!dir.path().join(".index.txt.tmp").exists());
    }

    #[test]
    fn empty_directory_is_empty_catalog() {
        let dir = tempfile::tempdir().unwrap();
        assert!(load_catalog(dir.path()).unwrap().is_empty());
    }

    #[test]
    fn tampered_index_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        save_catalog(dir.path(), &[CatalogEntry::new("q52", tables::q52())]).unwrap();
        fs::write(dir.path().join(INDEX_FILE), "q52 5 {1,4} false 20\n").unwrap();
        assert!(matches!(
            load_catalog(dir.path()),
            Err(CatalogError::MetadataMismatch { field: "latin", .. })
        ));
    }

    #[test]
    fn invalid_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("bad.qnd"), "2\n2 1\n1 2\n").unwrap();
        assert!(matches!(
            load_catalog(dir.path()),
            Err(CatalogError::ValidationFailed { .. })
        ));
    }
}
