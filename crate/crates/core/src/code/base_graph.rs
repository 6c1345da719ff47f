//! 5G NR base graphs.
//!
//! The shift coefficients are read from a plain text file:
//!
//! ```text
//! # comment
//! BG1 rows=46 cols=68
//! 0 0 250 307 73 223 211 294 0 135
//! ...
//! ```
//!
//! Each entry line holds the row, the column and eight shift coefficients,
//! one per lifting-set index.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Number of lifting sets.
pub const NUM_LIFTING_SETS: usize = 8;

/// Identifier of one of the two 5G NR base graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseGraphId {
    Bg1,
    Bg2,
}

impl BaseGraphId {
    pub fn n_rows(self) -> usize {
        match self {
            BaseGraphId::Bg1 => 46,
            BaseGraphId::Bg2 => 42,
        }
    }

    pub fn n_cols(self) -> usize {
        match self {
            BaseGraphId::Bg1 => 68,
            BaseGraphId::Bg2 => 52,
        }
    }

    /// Maximum number of information columns.
    pub fn k_u_max(self) -> usize {
        match self {
            BaseGraphId::Bg1 => 22,
            BaseGraphId::Bg2 => 10,
        }
    }

    /// Base name of the shipped data file.
    pub fn file_name(self) -> &'static str {
        match self {
            BaseGraphId::Bg1 => "bg1.txt",
            BaseGraphId::Bg2 => "bg2.txt",
        }
    }
}

impl fmt::Display for BaseGraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseGraphId::Bg1 => write!(f, "BG1"),
            BaseGraphId::Bg2 => write!(f, "BG2"),
        }
    }
}

impl FromStr for BaseGraphId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "bg1" => Ok(BaseGraphId::Bg1),
            "2" | "bg2" => Ok(BaseGraphId::Bg2),
            _ => Err(Error::InvalidConfig(format!("unknown base graph '{s}'"))),
        }
    }
}

/// A non-zero entry of a base graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGraphEntry {
    pub row: usize,
    pub col: usize,
    /// Shift coefficient per lifting-set index.
    pub shifts: [u32; NUM_LIFTING_SETS],
}

/// A base graph with its per-lifting-set shift coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGraph {
    id: BaseGraphId,
    entries: Vec<BaseGraphEntry>,
}

impl BaseGraph {
    /// Loads a base graph from a text file and checks it against `id`.
    pub fn load(path: impl AsRef<Path>, id: BaseGraphId) -> Result<BaseGraph> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        BaseGraph::parse(&text, id)
    }

    /// Base graph compiled into the library from the shipped data files.
    pub fn builtin(id: BaseGraphId) -> BaseGraph {
        let text = match id {
            BaseGraphId::Bg1 => include_str!("../../../../data/bg1.txt"),
            BaseGraphId::Bg2 => include_str!("../../../../data/bg2.txt"),
        };
        BaseGraph::parse(text, id).expect("shipped base graph data is valid")
    }

    pub fn parse(text: &str, id: BaseGraphId) -> Result<BaseGraph> {
        let mut header: Option<(BaseGraphId, usize, usize)> = None;
        let mut entries = Vec::new();
        let mut seen = HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if header.is_none() {
                header = Some(parse_header(line, line_no)?);
                continue;
            }
            let fields = line
                .split_whitespace()
                .map(|f| f.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Malformed {
                    line: line_no,
                    reason: e.to_string(),
                })?;
            if fields.len() != 2 + NUM_LIFTING_SETS {
                return Err(Error::Malformed {
                    line: line_no,
                    reason: format!(
                        "expected {} fields, found {}",
                        2 + NUM_LIFTING_SETS,
                        fields.len()
                    ),
                });
            }
            let (row, col) = (fields[0] as usize, fields[1] as usize);
            if !seen.insert((row, col)) {
                return Err(Error::DuplicateEntry { row, col });
            }
            let mut shifts = [0; NUM_LIFTING_SETS];
            shifts.copy_from_slice(&fields[2..]);
            entries.push(BaseGraphEntry { row, col, shifts });
        }
        let (file_id, rows, cols) = header.ok_or(Error::Malformed {
            line: 0,
            reason: "missing header line".into(),
        })?;
        if file_id != id || rows != id.n_rows() || cols != id.n_cols() {
            return Err(Error::Dimension(format!(
                "file declares {file_id} {rows}x{cols}, expected {id} {}x{}",
                id.n_rows(),
                id.n_cols()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.row >= rows || e.col >= cols) {
            return Err(Error::Dimension(format!(
                "entry ({}, {}) outside {rows}x{cols}",
                e.row, e.col
            )));
        }
        if let Some(r) = (0..rows).find(|&r| !entries.iter().any(|e| e.row == r)) {
            return Err(Error::Dimension(format!("row {r} has no entries")));
        }
        entries.sort_by_key(|e| (e.row, e.col));
        Ok(BaseGraph { id, entries })
    }

    pub fn id(&self) -> BaseGraphId {
        self.id
    }

    pub fn n_rows(&self) -> usize {
        self.id.n_rows()
    }

    pub fn n_cols(&self) -> usize {
        self.id.n_cols()
    }

    pub fn k_u_max(&self) -> usize {
        self.id.k_u_max()
    }

    /// Entries sorted by row, then column.
    pub fn entries(&self) -> &[BaseGraphEntry] {
        &self.entries
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    pub fn row_entries(&self, row: usize) -> impl Iterator<Item = &BaseGraphEntry> {
        self.entries.iter().filter(move |e| e.row == row)
    }

    /// Degree-1 parity column of an extension row (row >= 4), if any.
    ///
    /// A column is degree-1 when no other row of the graph uses it.
    pub fn extension_parity_column(&self, row: usize) -> Option<usize> {
        let cols: Vec<usize> = self
            .row_entries(row)
            .map(|e| e.col)
            .filter(|&c| c >= self.k_u_max() + 4)
            .filter(|&c| self.entries.iter().filter(|e| e.col == c).count() == 1)
            .collect();
        match cols.as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<(BaseGraphId, usize, usize)> {
    let malformed = |reason: &str| Error::Malformed {
        line: line_no,
        reason: reason.to_string(),
    };
    let mut parts = line.split_whitespace();
    let id = parts
        .next()
        .ok_or_else(|| malformed("empty header"))?
        .parse::<BaseGraphId>()
        .map_err(|_| malformed("header must start with BG1 or BG2"))?;
    let mut rows = None;
    let mut cols = None;
    for part in parts {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| malformed("expected key=value in header"))?;
        let value = value
            .parse::<usize>()
            .map_err(|_| malformed("non-numeric header value"))?;
        match key {
            "rows" => rows = Some(value),
            "cols" => cols = Some(value),
            _ => return Err(malformed("unknown header key")),
        }
    }
    match (rows, cols) {
        (Some(r), Some(c)) => Ok((id, r, c)),
        _ => Err(malformed("header needs rows= and cols=")),
    }
}
