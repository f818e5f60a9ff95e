//! Checked-in `(r, Q)` expectations keyed by catalogue id.

use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SaxlError};

const BUNDLED: &str = include_str!("../../data/table_rows.toml");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub id: String,
    /// Number of regular suborbits.
    pub regular: usize,
    /// Non-base probability as `num/den`.
    pub q: String,
}

impl TableRow {
    pub fn q_value(&self) -> Result<BigRational> {
        BigRational::from_str(&self.q).map_err(|e| SaxlError::Parse {
            line: 0,
            msg: format!("{}: bad ratio {:?}: {e}", self.id, self.q),
        })
    }
}

#[derive(Deserialize)]
struct RowsFile {
    row: Vec<TableRow>,
}

pub fn parse_table_rows(text: &str) -> Result<Vec<TableRow>> {
    let file: RowsFile = toml::from_str(text).map_err(|e| SaxlError::Parse {
        line: e.span().map(|s| text[..s.start].lines().count()).unwrap_or(0),
        msg: e.message().to_string(),
    })?;
    for row in &file.row {
        row.q_value()?;
    }
    Ok(file.row)
}

pub fn load_table_rows(path: &Path) -> Result<Vec<TableRow>> {
    parse_table_rows(&std::fs::read_to_string(path)?)
}

pub fn bundled_table_rows() -> Result<Vec<TableRow>> {
    parse_table_rows(BUNDLED)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_rows_parse() {
        let rows = bundled_table_rows().unwrap();
        assert_eq!(rows.len(), 8);
        assert_eq!(rows[0].q_value().unwrap(), BigRational::new(13.into(), 20.into()));
        assert!(parse_table_rows("[[row]]\nid = \"x\"\nregular = 1\nq = \"1/0\"\n").is_err());
    }
}
