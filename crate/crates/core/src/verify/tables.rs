use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{evaluate, BoundPoint, InequalityId};
use crate::error::{domain, Error, Result};
use crate::EvalConfig;

/// Orders of the published relative-error tables.
pub const TABLE_NU: [f64; 6] = [-0.25, 0.0, 2.5, 5.0, 7.5, 10.0];
/// Arguments of the published relative-error tables.
pub const TABLE_X: [f64; 7] = [0.5, 5.0, 10.0, 15.0, 25.0, 50.0, 100.0];

/// Published (F - L)/F, rows by nu, columns by x.
pub const REFERENCE_LOWER: [[f64; 7]; 6] = [
    [0.3975, 0.2347, 0.1114, 0.0709, 0.0414, 0.0203, 0.0101],
    [0.3315, 0.2099, 0.1071, 0.0695, 0.0409, 0.0202, 0.0101],
    [0.1251, 0.1073, 0.0773, 0.0570, 0.0366, 0.0192, 0.0098],
    [0.0769, 0.0715, 0.0591, 0.0475, 0.0329, 0.0182, 0.0095],
    [0.0555, 0.0533, 0.0472, 0.0402, 0.0296, 0.0173, 0.0093],
    [0.0435, 0.0423, 0.0390, 0.0346, 0.0268, 0.0164, 0.0091],
];

/// Published (U - F)/F, rows by nu, columns by x.
pub const REFERENCE_UPPER: [[f64; 7]; 6] = [
    [0.0087, 0.4204, 0.4288, 0.3267, 0.2137, 0.1134, 0.0584],
    [0.0046, 0.1781, 0.1956, 0.1543, 0.1034, 0.0558, 0.0289],
    [0.0001, 0.0074, 0.0142, 0.0148, 0.0125, 0.0080, 0.0045],
    [0.0000, 0.0015, 0.0038, 0.0049, 0.0050, 0.0037, 0.0023],
    [0.0000, 0.0005, 0.0014, 0.0021, 0.0026, 0.0022, 0.0014],
    [0.0000, 0.0002, 0.0006, 0.0011, 0.0015, 0.0014, 0.0010],
];

/// One unit in the fourth decimal, plus room for binary representation.
pub const TABLE_CELL_TOLERANCE: f64 = 1e-4 + 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    /// (F - L) / F for the corollary's lower bound
    Lower,
    /// (U - F) / F for the corollary's upper bound
    Upper,
}

impl TableKind {
    fn inequality(self) -> InequalityId {
        match self {
            TableKind::Lower => InequalityId::CorLower,
            TableKind::Upper => InequalityId::CorUpper,
        }
    }
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Lower => "lower",
            TableKind::Upper => "upper",
        })
    }
}

impl FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lower" => Ok(TableKind::Lower),
            "upper" => Ok(TableKind::Upper),
            other => Err(domain(format!("unknown table kind '{other}'"))),
        }
    }
}

/// Relative errors of the corollary bounds on a (nu, x) grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorTable {
    pub kind: TableKind,
    pub nu: Vec<f64>,
    pub x: Vec<f64>,
    /// Rounded half away from zero to four decimals.
    pub entries: Vec<Vec<f64>>,
    /// Unrounded values.
    pub raw: Vec<Vec<f64>>,
}

/// Rounds half away from zero to four decimals.
pub fn round4(v: f64) -> f64 {
    (v * 1e4).round() / 1e4
}

pub fn error_table(
    kind: TableKind,
    nu: &[f64],
    x: &[f64],
    config: &EvalConfig,
) -> Result<ErrorTable> {
    let id = kind.inequality();
    let cells: Vec<(f64, f64)> = nu
        .iter()
        .flat_map(|&n| x.iter().map(move |&xv| (n, xv)))
        .collect();
    let values: Vec<f64> = cells
        .par_iter()
        .map(|&(nu, x)| {
            evaluate(id, &BoundPoint::new(nu, 0.0, 0.0, x), config)
                .map(|r| r.relative_error)
                .map_err(|e| e.with_context(format!("{kind} table at nu = {nu}, x = {x}")))
        })
        .collect::<Result<_>>()?;
    let raw: Vec<Vec<f64>> = values.chunks(x.len().max(1)).map(<[f64]>::to_vec).collect();
    let entries = raw
        .iter()
        .map(|row| row.iter().copied().map(round4).collect())
        .collect();
    Ok(ErrorTable {
        kind,
        nu: nu.to_vec(),
        x: x.to_vec(),
        entries,
        raw,
    })
}

/// The 6 x 7 grid of the published tables.
pub fn regenerate_table(kind: TableKind, config: &EvalConfig) -> Result<ErrorTable> {
    error_table(kind, &TABLE_NU, &TABLE_X, config)
}

pub fn reference_table(kind: TableKind) -> &'static [[f64; 7]; 6] {
    match kind {
        TableKind::Lower => &REFERENCE_LOWER,
        TableKind::Upper => &REFERENCE_UPPER,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellComparison {
    pub nu: f64,
    pub x: f64,
    pub computed: f64,
    pub reference: f64,
    pub difference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableComparison {
    pub kind: TableKind,
    pub cells: usize,
    pub max_abs_difference: f64,
    pub mismatches: Vec<CellComparison>,
}

impl TableComparison {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the rounded entries of a table on the published grid cell by cell.
pub fn compare_with_reference(table: &ErrorTable, tolerance: f64) -> Result<TableComparison> {
    if table.nu != TABLE_NU || table.x != TABLE_X {
        return Err(domain(
            "reference values exist only for the published 6 x 7 grid",
        ));
    }
    let reference = reference_table(table.kind);
    let mut mismatches = Vec::new();
    let mut max_abs_difference: f64 = 0.0;
    for (i, row) in table.entries.iter().enumerate() {
        for (j, &computed) in row.iter().enumerate() {
            let difference = computed - reference[i][j];
            max_abs_difference = max_abs_difference.max(difference.abs());
            if difference.abs() > tolerance {
                mismatches.push(CellComparison {
                    nu: table.nu[i],
                    x: table.x[j],
                    computed,
                    reference: reference[i][j],
                    difference,
                });
            }
        }
    }
    Ok(TableComparison {
        kind: table.kind,
        cells: table.nu.len() * table.x.len(),
        max_abs_difference,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(round4(0.03125), 0.0313);
        assert_eq!(round4(-0.03125), -0.0313);
        assert_eq!(round4(0.00004999), 0.0);
        assert_eq!(round4(0.028954042), 0.029);
    }

    #[test]
    fn table_shape() {
        let t = error_table(
            TableKind::Lower,
            &[0.0, 2.5],
            &[1.0, 5.0, 10.0],
            &EvalConfig::default(),
        )
        .unwrap();
        assert_eq!(t.entries.len(), 2);
        assert!(t.entries.iter().all(|r| r.len() == 3));
        assert!(compare_with_reference(&t, TABLE_CELL_TOLERANCE).is_err());
    }
}
