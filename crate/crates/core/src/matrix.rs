//! Dense matrices over a [`Semifield`].
//!
//! Vectors are matrices with a single column. Matrices with a zero
//! dimension are allowed; they show up as the column set of an empty
//! generator system and as the refined pair of a system whose every row was
//! eliminated.

use std::fmt;

use crate::error::{Error, Result};
use crate::semifield::Semifield;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Structural predicates of a matrix, computed on demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureFlags {
    /// No row consists of zeros only.
    pub row_regular: bool,
    /// Exactly one nonzero entry in every row.
    pub strictly_row_monomial: bool,
    /// No entry is zero.
    pub regular_vector: bool,
}

impl<S: Semifield> TropMatrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape("TropMatrix::new", (rows, cols), (data.len(), 1)));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::shape("TropMatrix::from_rows", (nrows, cols), (1, row.len())));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix from column vectors given as slices of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<S>]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::shape(
                "TropMatrix::from_columns",
                (rows, columns.len()),
                (bad.len(), 1),
            ));
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn column_vector(entries: Vec<S>) -> Self {
        Self {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<S>> + '_ {
        (0..self.cols).map(move |j| self.column(j))
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    /// The matrix formed by the given columns, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> Self {
        Self::from_fn(self.rows, indices.len(), |i, k| self.get(i, indices[k]).clone())
    }

    /// The matrix formed by the given rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), self.cols, |k, j| self.get(indices[k], j).clone())
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::shape("hcat", self.shape(), other.shape()));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::shape("mat_add", self.shape(), other.shape()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::shape("mat_mul", self.shape(), other.shape()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.get(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = lhs.mul(other.get(k, j));
                    let slot = &mut out.data[i * other.cols + j];
                    if term > *slot {
                        *slot = term;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| c.mul(a)).collect(),
        }
    }

    /// Multiplicative inverse transpose: entry `(i, j)` is the inverse of
    /// entry `(j, i)`, zeros stay zero.
    pub fn conjugate(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| {
            self.get(j, i).inv().unwrap_or_else(|_| S::zero())
        })
    }

    pub fn trace(&self) -> Result<S> {
        self.require_square("trace")?;
        Ok((0..self.rows).fold(S::zero(), |acc, i| acc.add(self.get(i, i))))
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        self.require_square("mat_pow")?;
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `tr P ⊕ tr P² ⊕ ⋯ ⊕ tr Pⁿ`, evaluated through explicit powers.
    pub fn tr_closure(&self) -> Result<S> {
        self.require_square("tr_closure")?;
        let mut acc = S::zero();
        let mut power = self.clone();
        for k in 1..=self.rows {
            acc = acc.add(&power.trace()?);
            if k < self.rows {
                power = power.mul(self)?;
            }
        }
        Ok(acc)
    }

    /// `I ⊕ P ⊕ ⋯ ⊕ Pⁿ⁻¹` by a Floyd–Warshall sweep.
    ///
    /// Fails with [`Error::DivergentStar`] when some cycle of `P` has weight
    /// above one, which the sweep exposes on the diagonal.
    pub fn kleene_star(&self) -> Result<Self> {
        self.require_square("kleene_star")?;
        let n = self.rows;
        let mut closure = self.clone();
        for k in 0..n {
            for i in 0..n {
                let via = closure.get(i, k).clone();
                if via.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let candidate = via.mul(closure.get(k, j));
                    if candidate > *closure.get(i, j) {
                        closure.set(i, j, candidate);
                    }
                }
            }
        }
        let one = S::one();
        for i in 0..n {
            let diag = closure.get(i, i);
            if *diag > one {
                return Err(Error::DivergentStar {
                    weight: diag.to_string(),
                });
            }
        }
        closure.add(&Self::identity(n))
    }

    /// Entrywise `≤`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        if self.shape() != other.shape() {
            return Err(Error::shape("leq", self.shape(), other.shape()));
        }
        Ok(self.data.iter().zip(&other.data).all(|(a, b)| a.leq(b)))
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(S::is_zero)
    }

    pub fn nonzeros_in_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, _)| j)
    }

    pub fn structure_flags(&self) -> StructureFlags {
        let mut row_regular = true;
        let mut monomial = true;
        for i in 0..self.rows {
            match self.nonzeros_in_row(i).count() {
                0 => {
                    row_regular = false;
                    monomial = false;
                }
                1 => {}
                _ => monomial = false,
            }
        }
        StructureFlags {
            row_regular,
            strictly_row_monomial: monomial,
            regular_vector: self.data.iter().all(|v| !v.is_zero()),
        }
    }

    fn require_square(&self, op: &'static str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                op,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<S: Semifield> fmt::Display for TropMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_matrix(self))
    }
}
