//! Exact integer matrices and Smith normal form.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Dense row-major integer matrix. Empty dimensions are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    /// `cols` is needed to describe matrices without rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Malformed(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            entries.extend(r);
        }
        Ok(IntMatrix { rows: n, cols, entries })
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let n = values.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, columns: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, columns.len());
        for i in 0..self.rows {
            for (k, &j) in columns.iter().enumerate() {
                m[(i, k)] = self[(i, j)];
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    /// Diagonal entries greater than one, each dividing the next.
    pub invariant_factors: Vec<i64>,
    /// Columns minus the number of nonzero diagonal entries.
    pub free_rank: usize,
    /// Number of nonzero diagonal entries.
    #[serde(skip)]
    pub rank: usize,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smith normal form over the integers.
///
/// Diagonalizes with unimodular row and column operations, always pivoting on
/// the entry of least absolute value, then normalizes the diagonal with
/// gcd/lcm exchanges so each factor divides the next.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<i128>> = (0..rows)
        .map(|i| m.row(i).iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut diag: Vec<i128> = Vec::new();

    for t in 0..rows.min(cols) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && pivot.is_none_or(|(pi, pj)| x.abs() < a[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x -= q * y;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                diag.push(p.abs());
                break;
            }
        }
        if diag.len() <= t {
            break;
        }
    }

    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = gcd(diag[i], diag[j]);
            let l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    SnfResult {
        invariant_factors: diag
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| i64::try_from(d).expect("invariant factor fits in i64"))
            .collect(),
        free_rank: cols - n,
        rank: n,
    }
}
