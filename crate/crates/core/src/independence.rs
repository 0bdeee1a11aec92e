//! Linear dependence of tropical vectors.
//!
//! The dependence test is residuation followed by an exact comparison: `b`
//! lies in the span of the columns of `M` iff `M ⊗ x̂ = b` for the greatest
//! `x̂` with `M ⊗ x̂ ≤ b`. The classical scalar criterion
//! `(M (b⁻ M)⁻)⁻ b = 𝟙` is computed alongside for diagnostics only; it can
//! accept vectors with zero entries that are not reachable.

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::semifield::Semifield;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceVerdict<S> {
    pub dependent: bool,
    /// Coefficients reproducing the tested vector, present iff dependent.
    pub witness: Option<TropMatrix<S>>,
    /// Value of the scalar criterion `(M (b⁻ M)⁻)⁻ b`.
    pub scalar_criterion: S,
}

fn require_vector<S: Semifield>(m: &TropMatrix<S>, b: &TropMatrix<S>, op: &'static str) -> Result<()> {
    if b.cols() != 1 || b.rows() != m.rows() {
        return Err(Error::shape(op, m.shape(), b.shape()));
    }
    Ok(())
}

/// Greatest `x` with `M ⊗ x ≤ b`.
///
/// A row with `bᵢ = 𝟘` and `mᵢⱼ ≠ 𝟘` forces `x̂ⱼ = 𝟘`. A zero column of `M`
/// is unconstrained; its coefficient is clamped to `𝟘` since the column
/// contributes nothing either way.
pub fn residual_solve<S: Semifield>(m: &TropMatrix<S>, b: &TropMatrix<S>) -> Result<TropMatrix<S>> {
    require_vector(m, b, "residual_solve")?;
    let coefficients = (0..m.cols())
        .map(|j| {
            let mut best: Option<S> = None;
            for i in 0..m.rows() {
                let entry = m.get(i, j);
                if entry.is_zero() {
                    continue;
                }
                let bound = b.get(i, 0).mul(&entry.inv().expect("nonzero entry"));
                best = Some(match best {
                    Some(current) if current <= bound => current,
                    _ => bound,
                });
            }
            best.unwrap_or_else(S::zero)
        })
        .collect();
    Ok(TropMatrix::column_vector(coefficients))
}

/// The scalar criterion `(M (b⁻ M)⁻)⁻ b`, evaluated literally.
pub fn scalar_criterion<S: Semifield>(m: &TropMatrix<S>, b: &TropMatrix<S>) -> Result<S> {
    require_vector(m, b, "scalar_criterion")?;
    let inner = b.conjugate().mul(m)?.conjugate();
    let reach = m.mul(&inner)?;
    Ok(reach.conjugate().mul(b)?.get(0, 0).clone())
}

pub fn is_dependent<S: Semifield>(m: &TropMatrix<S>, b: &TropMatrix<S>) -> Result<DependenceVerdict<S>> {
    let x = residual_solve(m, b)?;
    let dependent = m.mul(&x)? == *b;
    Ok(DependenceVerdict {
        dependent,
        witness: dependent.then_some(x),
        scalar_criterion: scalar_criterion(m, b)?,
    })
}

/// Incrementally grown set of mutually independent columns.
#[derive(Clone, Debug)]
pub struct ColumnBasis<S> {
    rows: usize,
    columns: Vec<Vec<S>>,
    matrix: TropMatrix<S>,
}

impl<S: Semifield> ColumnBasis<S> {
    pub fn new(rows: usize) -> Self {
        Self {
            rows,
            columns: Vec::new(),
            matrix: TropMatrix::zeros(rows, 0),
        }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn spans(&self, column: &[S]) -> Result<bool> {
        if column.len() != self.rows {
            return Err(Error::shape(
                "ColumnBasis::spans",
                (self.rows, self.len()),
                (column.len(), 1),
            ));
        }
        let b = TropMatrix::column_vector(column.to_vec());
        let x = residual_solve(&self.matrix, &b)?;
        Ok(self.matrix.mul(&x)? == b)
    }

    /// Appends `column` unless it is already spanned; returns whether it was kept.
    pub fn try_push(&mut self, column: Vec<S>) -> Result<bool> {
        if self.spans(&column)? {
            return Ok(false);
        }
        self.columns.push(column);
        self.matrix = TropMatrix::from_columns(self.rows, &self.columns)?;
        Ok(true)
    }

    pub fn matrix(&self) -> &TropMatrix<S> {
        &self.matrix
    }

    pub fn into_matrix(self) -> TropMatrix<S> {
        self.matrix
    }
}

/// Left-to-right scan keeping each column not spanned by the ones kept
/// before it, followed by a second pass dropping any kept column spanned by
/// the remaining ones. Among collinear columns the leftmost survives.
pub fn reduce_columns<S: Semifield>(m: &TropMatrix<S>) -> TropMatrix<S> {
    let mut basis = ColumnBasis::new(m.rows());
    for column in m.columns() {
        basis.try_push(column).expect("columns have matching length");
    }
    let mut kept = basis.into_matrix();
    let mut j = 0;
    while j < kept.cols() {
        let others: Vec<usize> = (0..kept.cols()).filter(|&k| k != j).collect();
        let rest = kept.select_columns(&others);
        let b = TropMatrix::column_vector(kept.column(j));
        if is_dependent(&rest, &b).expect("matching rows").dependent {
            kept = rest;
        } else {
            j += 1;
        }
    }
    kept
}

/// Whether every column of `m` lies in the span of the columns of `n`.
pub fn spanned_by<S: Semifield>(m: &TropMatrix<S>, n: &TropMatrix<S>) -> Result<bool> {
    if m.rows() != n.rows() {
        return Err(Error::shape("spanned_by", m.shape(), n.shape()));
    }
    for column in m.columns() {
        let b = TropMatrix::column_vector(column);
        let x = residual_solve(n, &b)?;
        if n.mul(&x)? != b {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn span_equivalent<S: Semifield>(m: &TropMatrix<S>, n: &TropMatrix<S>) -> Result<bool> {
    Ok(spanned_by(m, n)? && spanned_by(n, m)?)
}
