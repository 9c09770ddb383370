//! CSV ingestion for point sets and square distance matrices.

use std::io::Read;

use crate::geometry::{CondensedDistanceMatrix, PointSet};
use crate::{Error, Result, Scalar};

/// Reads numeric rows. A first row that fails to parse as numbers is taken
/// to be a header and skipped. Line numbers in errors are 1-based.
fn read_numeric_rows<T: Scalar, R: Read>(reader: R) -> Result<Vec<Vec<T>>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut rows = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(idx + 1, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(idx + 1, |p| p.line() as usize);
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> =
            record.iter().map(|f| f.parse::<f64>()).collect();
        match parsed {
            Ok(values) => {
                if let Some(col) = values.iter().position(|v| !v.is_finite()) {
                    return Err(Error::Parse {
                        line,
                        message: format!("column {} is not finite", col + 1),
                    });
                }
                rows.push(values.into_iter().map(T::of).collect());
            }
            Err(_) if rows.is_empty() && idx == 0 => continue,
            Err(e) => {
                return Err(Error::Parse {
                    line,
                    message: format!("non-numeric field: {e}"),
                })
            }
        }
    }
    Ok(rows)
}

/// One point per row, one coordinate per column, optional header row.
pub fn read_points_csv<T: Scalar, R: Read>(reader: R) -> Result<PointSet<T>> {
    let rows = read_numeric_rows(reader)?;
    PointSet::new(rows)
}

/// An `n x n` symmetric matrix with zero diagonal.
pub fn read_matrix_csv<T: Scalar, R: Read>(reader: R) -> Result<CondensedDistanceMatrix<T>> {
    let rows = read_numeric_rows(reader)?;
    CondensedDistanceMatrix::from_square(&rows)
}
