//! CSV ingestion and nominal-to-binary expansion.
//!
//! The accepted dialect is deliberately small: UTF-8, comma delimiter, one
//! header row, `.` decimal separator, no quoting. A column is numeric iff
//! every cell parses as a real number; otherwise it is nominal and
//! [`binarize_nominals`] expands it into indicator columns.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How the caller designates the response column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResponseSel {
    /// Default: the first column.
    First,
    /// By header name.
    Name(String),
    /// By 1-based position.
    Index1(usize),
}

impl FromStr for ResponseSel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(i) = s.parse::<usize>() {
            if i == 0 {
                return Err(Error::InvalidArgument(
                    "response index is 1-based; 0 is not a column".into(),
                ));
            }
            Ok(ResponseSel::Index1(i))
        } else {
            Ok(ResponseSel::Name(s.to_string()))
        }
    }
}

impl fmt::Display for ResponseSel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResponseSel::First => write!(f, "<first column>"),
            ResponseSel::Name(n) => write!(f, "{n}"),
            ResponseSel::Index1(i) => write!(f, "#{i}"),
        }
    }
}

/// One column as read from disk.
#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Numeric(Vec<f64>),
    Nominal(Vec<String>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Numeric(v) => v.len(),
            Column::Nominal(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A parsed table before any numeric encoding, with the response designated.
#[derive(Debug, Clone)]
pub struct RawDataset {
    pub names: Vec<String>,
    pub columns: Vec<Column>,
    pub n_rows: usize,
    pub response_idx: usize,
}

/// Fully numeric table: response vector plus predictor columns.
///
/// `names[0]` labels the response, `names[1..]` the predictors. `provenance`
/// maps each derived indicator column to its source nominal column and level.
#[derive(Debug, Clone)]
pub struct NumericDataset {
    pub y: Vec<f64>,
    pub x_cols: Vec<Vec<f64>>,
    pub names: Vec<String>,
    pub provenance: BTreeMap<String, (String, String)>,
}

impl NumericDataset {
    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn r(&self) -> usize {
        self.x_cols.len()
    }

    /// Restrict to a subset of rows (used by the cross-validation folds).
    pub fn subset_rows(&self, rows: &[usize]) -> NumericDataset {
        NumericDataset {
            y: rows.iter().map(|&i| self.y[i]).collect(),
            x_cols: self
                .x_cols
                .iter()
                .map(|col| rows.iter().map(|&i| col[i]).collect())
                .collect(),
            names: self.names.clone(),
            provenance: self.provenance.clone(),
        }
    }
}

/// Read a CSV table and record which column is the response.
pub fn load_table<P: AsRef<Path>>(path: P, response: &ResponseSel) -> Result<RawDataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_table(&text, response, &path.display().to_string())
}

fn parse_table(text: &str, response: &ResponseSel, origin: &str) -> Result<RawDataset> {
    let mut lines = text
        .lines()
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .peekable();
    let header = match lines.next() {
        Some(h) if !h.trim().is_empty() => h,
        _ => return Err(Error::EmptyFile(origin.to_string())),
    };
    let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    let width = names.len();

    let mut cells: Vec<Vec<String>> = vec![Vec::new(); width];
    let mut n_rows = 0usize;
    for (line_no, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue; // tolerate trailing blank lines
        }
        let row: Vec<&str> = line.split(',').collect();
        let row_id = line_no + 1; // 1-based data row
        if row.len() != width {
            return Err(Error::RaggedRow {
                row: row_id,
                expected: width,
                found: row.len(),
            });
        }
        for (j, cell) in row.iter().enumerate() {
            if cell.trim().is_empty() {
                return Err(Error::MissingCell {
                    row: row_id,
                    col: j + 1,
                });
            }
            cells[j].push(cell.trim().to_string());
        }
        n_rows += 1;
    }

    let columns: Vec<Column> = cells
        .into_iter()
        .map(|col| {
            let parsed: Option<Vec<f64>> = col
                .iter()
                .map(|s| s.parse::<f64>().ok().filter(|v| v.is_finite()))
                .collect();
            match parsed {
                Some(nums) => Column::Numeric(nums),
                None => Column::Nominal(col),
            }
        })
        .collect();

    let response_idx = match response {
        ResponseSel::First => 0,
        ResponseSel::Name(n) => names
            .iter()
            .position(|x| x == n)
            .ok_or_else(|| Error::MissingResponse(n.clone()))?,
        ResponseSel::Index1(i) => {
            if *i > width {
                return Err(Error::MissingResponse(format!("#{i}")));
            }
            i - 1
        }
    };

    Ok(RawDataset {
        names,
        columns,
        n_rows,
        response_idx,
    })
}

/// Expand nominal predictors into indicator columns and assemble the numeric
/// dataset. A nominal column with L levels becomes L−1 indicators; the
/// reference level (first in lexicographic order) is dropped.
pub fn binarize_nominals(raw: &RawDataset) -> Result<NumericDataset> {
    let resp_name = raw.names[raw.response_idx].clone();
    let y = match &raw.columns[raw.response_idx] {
        Column::Numeric(v) => v.clone(),
        Column::Nominal(_) => return Err(Error::NominalResponse(resp_name)),
    };
    if raw.n_rows < 3 {
        return Err(Error::TooFewRows {
            min: 3,
            found: raw.n_rows,
        });
    }

    let mut names = vec![resp_name];
    let mut x_cols: Vec<Vec<f64>> = Vec::new();
    let mut provenance = BTreeMap::new();

    for (j, col) in raw.columns.iter().enumerate() {
        if j == raw.response_idx {
            continue;
        }
        let col_name = &raw.names[j];
        match col {
            Column::Numeric(v) => {
                x_cols.push(v.clone());
                names.push(col_name.clone());
            }
            Column::Nominal(v) => {
                let mut levels: Vec<&String> = v.iter().collect();
                levels.sort();
                levels.dedup();
                if levels.len() < 2 {
                    return Err(Error::SingleLevel(col_name.clone()));
                }
                // first lexicographic level is the reference and gets no column
                for level in &levels[1..] {
                    let indicator: Vec<f64> = v
                        .iter()
                        .map(|cell| if cell == *level { 1.0 } else { 0.0 })
                        .collect();
                    let derived = format!("{col_name}={level}");
                    provenance.insert(derived.clone(), (col_name.clone(), (*level).clone()));
                    x_cols.push(indicator);
                    names.push(derived);
                }
            }
        }
    }

    if x_cols.is_empty() {
        return Err(Error::NoPredictors);
    }
    for (name, col) in names.iter().zip(std::iter::once(&y).chain(x_cols.iter())) {
        let first = col[0];
        if col.iter().all(|&v| v == first) {
            return Err(Error::ConstantColumn(name.clone()));
        }
    }

    Ok(NumericDataset {
        y,
        x_cols,
        names,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().expect("temp file");
        f.write_all(content.as_bytes()).expect("write");
        f
    }

    #[test]
    fn loads_numeric_table_with_header() {
        let f = write_temp("y,a,b\n1.0,2.0,3.0\n4.0,5.0,6.0\n7.5,8.5,9.5\n");
        let raw = load_table(f.path(), &ResponseSel::First).unwrap();
        assert_eq!(raw.n_rows, 3);
        assert_eq!(raw.names, vec!["y", "a", "b"]);
        assert_eq!(raw.response_idx, 0);
        assert!(matches!(raw.columns[0], Column::Numeric(_)));
    }

    #[test]
    fn three_row_unit_vector_array_loads() {
        // the miniature worked example: columns are unit vectors, three rows
        let f = write_temp("y,x1,x2\n1.0,0.9,0.6\n0.0,0.435890,0.400000\n0.0,0.0,0.692820\n");
        let raw = load_table(f.path(), &ResponseSel::First).unwrap();
        assert_eq!(raw.n_rows, 3);
        assert_eq!(raw.columns.len(), 3);
        for col in &raw.columns {
            assert!(matches!(col, Column::Numeric(_)), "all columns numeric");
        }
    }

    #[test]
    fn blank_cell_reports_position() {
        let f = write_temp("y,a\n1.0,2.0\n3.0,\n5.0,6.0\n");
        let err = load_table(f.path(), &ResponseSel::First).unwrap_err();
        assert_eq!(err.to_string(), "missing cell at (2, 2)");
    }

    #[test]
    fn ragged_row_rejected() {
        let f = write_temp("y,a,b\n1.0,2.0,3.0\n4.0,5.0\n");
        let err = load_table(f.path(), &ResponseSel::First).unwrap_err();
        assert!(matches!(err, Error::RaggedRow { row: 2, .. }), "{err}");
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_table("/definitely/not/here.csv", &ResponseSel::First).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    #[test]
    fn response_by_name_and_index() {
        let f = write_temp("a,b,y\n1,2,3\n4,5,6\n7,8,9.5\n");
        let by_name = load_table(f.path(), &ResponseSel::Name("y".into())).unwrap();
        assert_eq!(by_name.response_idx, 2);
        let by_idx = load_table(f.path(), &ResponseSel::Index1(3)).unwrap();
        assert_eq!(by_idx.response_idx, 2);
        let missing = load_table(f.path(), &ResponseSel::Name("z".into())).unwrap_err();
        assert!(matches!(missing, Error::MissingResponse(_)));
        let out_of_range = load_table(f.path(), &ResponseSel::Index1(4)).unwrap_err();
        assert!(matches!(out_of_range, Error::MissingResponse(_)));
    }

    #[test]
    fn mixed_column_becomes_nominal() {
        let f = write_temp("y,grp\n1.0,a\n2.0,7\n3.0,b\n");
        let raw = load_table(f.path(), &ResponseSel::First).unwrap();
        assert!(matches!(raw.columns[1], Column::Nominal(_)));
    }

    #[test]
    fn all_numeric_passthrough_is_idempotent() {
        let f = write_temp("y,a,b\n1,2,3\n4,5,6\n7,8,9.5\n");
        let raw = load_table(f.path(), &ResponseSel::First).unwrap();
        let data = binarize_nominals(&raw).unwrap();
        assert_eq!(data.r(), 2);
        assert!(data.provenance.is_empty(), "no derived columns expected");
        assert_eq!(data.x_cols[0], vec![2.0, 5.0, 8.0]);
    }

    #[test]
    fn nominal_expansion_drops_reference_level() {
        let f = write_temp("y,grp\n1,b\n2,a\n3,c\n4,a\n5,b\n6.5,c\n");
        let raw = load_table(f.path(), &ResponseSel::First).unwrap();
        let data = binarize_nominals(&raw).unwrap();
        // levels {a,b,c}: reference a dropped, indicators for b and c remain
        assert_eq!(data.r(), 2);
        assert_eq!(data.names[1], "grp=b");
        assert_eq!(data.names[2], "grp=c");
        assert_eq!(data.x_cols[0], vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(data.x_cols[1], vec![0.0, 0.0, 1.0, 0.0, 0.0, 1.0]);
        assert_eq!(
            data.provenance.get("grp=b"),
            Some(&("grp".to_string(), "b".to_string()))
        );
        // indicators from one source sum to at most 1 per row, 0 on reference rows
        for i in 0..data.n() {
            let s = data.x_cols[0][i] + data.x_cols[1][i];
            assert!(s <= 1.0, "row {i} indicator sum {s}");
        }
    }

    #[test]
    fn nominal_response_rejected() {
        let f = write_temp("y,a\nlow,1\nhigh,2\nlow,3\n");
        let raw = load_table(f.path(), &ResponseSel::First).unwrap();
        assert!(matches!(
            binarize_nominals(&raw),
            Err(Error::NominalResponse(_))
        ));
    }

    #[test]
    fn single_level_nominal_rejected() {
        let f = write_temp("y,grp\n1,a\n2,a\n3,a\n");
        let raw = load_table(f.path(), &ResponseSel::First).unwrap();
        assert!(matches!(binarize_nominals(&raw), Err(Error::SingleLevel(_))));
    }

    #[test]
    fn constant_numeric_column_rejected() {
        let f = write_temp("y,a\n1,5\n2,5\n3,5\n");
        let raw = load_table(f.path(), &ResponseSel::First).unwrap();
        assert!(matches!(
            binarize_nominals(&raw),
            Err(Error::ConstantColumn(_))
        ));
    }

    #[test]
    fn grades_shaped_expansion_reaches_41_predictors() {
        // 19 numeric predictors plus 13 nominal ones: nine binary and four
        // wider (5, 5, 4, 3 levels) -> 19 + 9 + 4 + 4 + 3 + 2 = 41 columns
        let n = 12usize;
        let mut names = vec!["score".to_string()];
        let mut columns = vec![Column::Numeric((0..n).map(|i| i as f64).collect())];
        for j in 0..19 {
            names.push(format!("num{j}"));
            columns.push(Column::Numeric(
                (0..n).map(|i| ((i * 7 + j * 3) % 11) as f64).collect(),
            ));
        }
        let level_counts = [2usize, 2, 2, 2, 2, 2, 2, 2, 2, 5, 5, 4, 3];
        for (k, &levels) in level_counts.iter().enumerate() {
            names.push(format!("nom{k}"));
            columns.push(Column::Nominal(
                (0..n).map(|i| format!("v{}", (i + k) % levels)).collect(),
            ));
        }
        let raw = RawDataset {
            names,
            columns,
            n_rows: n,
            response_idx: 0,
        };
        let data = binarize_nominals(&raw).unwrap();
        assert_eq!(data.r(), 41, "19 numeric + expanded nominals must give 41");
    }
}
