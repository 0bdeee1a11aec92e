//! Entrywise sparsification of the pair `(A, B)` and zero-row handling.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::semifield::Semifield;

/// The inequality `A ⊗ x ≤ B ⊗ x` with `A, B` of equal shape `m × n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance<S> {
    a: TropMatrix<S>,
    b: TropMatrix<S>,
}

impl<S: Semifield> ProblemInstance<S> {
    pub fn new(a: TropMatrix<S>, b: TropMatrix<S>) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::shape("ProblemInstance::new", a.shape(), b.shape()));
        }
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::Precondition(
                "the system needs at least one row and one column".into(),
            ));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &TropMatrix<S> {
        &self.a
    }

    pub fn b(&self) -> &TropMatrix<S> {
        &self.b
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RefineVerdict {
    /// Both refined matrices are row-regular; candidate generation applies.
    Proceed,
    /// Every row was eliminated: each regular vector is a solution.
    AllRegular,
    /// Some row reads `a ⊗ x ≤ 𝟘` with `a ≠ 𝟎`: no regular solution.
    NoRegular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedSystem<S> {
    pub a_hat: TropMatrix<S>,
    pub b_hat: TropMatrix<S>,
    /// Original indices of the rows that survived elimination.
    pub kept_rows: Vec<usize>,
    pub verdict: RefineVerdict,
}

/// Keeps `aᵢⱼ` only where it strictly exceeds `bᵢⱼ` and `bᵢⱼ` only where it
/// is at least `aᵢⱼ`, then drops rows whose refined left side is zero.
pub fn refine<S: Semifield>(inst: &ProblemInstance<S>) -> RefinedSystem<S> {
    let (a, b) = (inst.a(), inst.b());
    let (m, n) = a.shape();
    let a_full = TropMatrix::from_fn(m, n, |i, j| {
        let (aij, bij) = (a.get(i, j), b.get(i, j));
        if aij > bij {
            aij.clone()
        } else {
            S::zero()
        }
    });
    let b_full = TropMatrix::from_fn(m, n, |i, j| {
        let (aij, bij) = (a.get(i, j), b.get(i, j));
        if bij >= aij {
            bij.clone()
        } else {
            S::zero()
        }
    });

    let kept_rows: Vec<usize> = (0..m).filter(|&i| !a_full.row_is_zero(i)).collect();
    let a_hat = a_full.select_rows(&kept_rows);
    let b_hat = b_full.select_rows(&kept_rows);

    let verdict = if kept_rows.is_empty() {
        RefineVerdict::AllRegular
    } else if (0..b_hat.rows()).any(|i| b_hat.row_is_zero(i)) {
        RefineVerdict::NoRegular
    } else {
        RefineVerdict::Proceed
    };

    RefinedSystem {
        a_hat,
        b_hat,
        kept_rows,
        verdict,
    }
}
