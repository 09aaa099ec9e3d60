//! JSON state and operator files.
//!
//! Matrices are stored as nested arrays of `[re, im]` pairs in row-major
//! order; dims and labels are mandatory for states. The format is plain
//! enough to write fixtures by hand.

use keywitness::{CMatrix, Complex64, MultipartiteState};
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::Failure;

#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OperatorFile {
    /// Local dimensions of the shield factors (d_A', d_B').
    pub dims: Vec<usize>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

pub fn matrix_to_rows(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn rows_to_matrix(rows: &[Vec<[f64; 2]>], what: &str) -> Result<CMatrix, Failure> {
    let n = rows.len();
    if n == 0 {
        return Err(Failure::Parse(format!("{what}: matrix has no rows")));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Failure::Parse(format!(
                "{what}: row {i} has {} entries, expected {n} (square matrix)",
                row.len()
            )));
        }
        for (j, e) in row.iter().enumerate() {
            if !e[0].is_finite() || !e[1].is_finite() {
                return Err(Failure::Parse(format!(
                    "{what}: non-finite entry at row {i}, column {j}"
                )));
            }
        }
    }
    Ok(CMatrix::from_fn(n, n, |i, j| {
        Complex64::new(rows[i][j][0], rows[i][j][1])
    }))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::Parse(format!(
            "{}: line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

pub fn load_state(path: &Path) -> Result<MultipartiteState, Failure> {
    let file: StateFile = read_json(path)?;
    let m = rows_to_matrix(&file.matrix, "matrix")?;
    let labels: Vec<&str> = file.labels.iter().map(String::as_str).collect();
    MultipartiteState::new(m, file.dims, labels)
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

pub fn load_operator(path: &Path) -> Result<(CMatrix, Vec<usize>), Failure> {
    let file: OperatorFile = read_json(path)?;
    let m = rows_to_matrix(&file.matrix, "matrix")?;
    let prod: usize = file.dims.iter().product();
    if prod != m.nrows() {
        return Err(Failure::Parse(format!(
            "{}: dims {:?} do not match matrix dimension {}",
            path.display(),
            file.dims,
            m.nrows()
        )));
    }
    Ok((m, file.dims))
}

pub fn save_state(path: &Path, s: &MultipartiteState) -> Result<(), Failure> {
    let file = StateFile {
        dims: s.dims().to_vec(),
        labels: s.labels().iter().map(|l| l.to_string()).collect(),
        matrix: matrix_to_rows(s.matrix()),
    };
    write_json(path, &file)
}

pub fn save_operator(path: &Path, m: &CMatrix, dims: &[usize]) -> Result<(), Failure> {
    let file = OperatorFile {
        dims: dims.to_vec(),
        matrix: matrix_to_rows(m),
    };
    write_json(path, &file)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::Internal(format!("serialization: {e}")))?;
    std::fs::write(path, text + "\n")
        .map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}
