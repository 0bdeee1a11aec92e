//! Strictly row-monomial candidates `G` drawn from the refined right-hand
//! matrix.
//!
//! [`generate_candidates`] is the pruned depth-first search; [`enumerate_all`]
//! is the plain Cartesian product used as a brute-force baseline.

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::semifield::Semifield;

/// Default bound on the number of candidates [`enumerate_all`] may produce.
pub const DEFAULT_CANDIDATE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCandidate<S> {
    /// Agrees with `B̂` at the selected positions, zero elsewhere.
    pub g: TropMatrix<S>,
    /// `selection[i]` is the column fixed in row `i`.
    pub selection: Vec<usize>,
    /// Rows reduced to their selected entry because that term alone already
    /// dominates the whole left side of the row (first pruning rule).
    pub forced_rows: Vec<usize>,
}

impl<S: Semifield> MonomialCandidate<S> {
    pub fn from_selection(b_hat: &TropMatrix<S>, selection: Vec<usize>) -> Result<Self> {
        if selection.len() != b_hat.rows() {
            return Err(Error::Precondition(format!(
                "selection covers {} rows, matrix has {}",
                selection.len(),
                b_hat.rows()
            )));
        }
        let mut g = TropMatrix::zeros(b_hat.rows(), b_hat.cols());
        for (i, &j) in selection.iter().enumerate() {
            if j >= b_hat.cols() || b_hat.get(i, j).is_zero() {
                return Err(Error::Precondition(format!(
                    "row {i} has no nonzero entry at column {j}"
                )));
            }
            g.set(i, j, b_hat.get(i, j).clone());
        }
        Ok(Self {
            g,
            selection,
            forced_rows: Vec::new(),
        })
    }

    /// `B̂` with every forced row cut down to its selected entry.
    pub fn effective_rhs(&self, b_hat: &TropMatrix<S>) -> TropMatrix<S> {
        let mut rhs = b_hat.clone();
        for &i in &self.forced_rows {
            for j in 0..rhs.cols() {
                if j != self.selection[i] {
                    rhs.set(i, j, S::zero());
                }
            }
        }
        rhs
    }
}

fn check_inputs<S: Semifield>(a_hat: &TropMatrix<S>, b_hat: &TropMatrix<S>) -> Result<()> {
    if a_hat.shape() != b_hat.shape() {
        return Err(Error::shape("generate_candidates", a_hat.shape(), b_hat.shape()));
    }
    if !b_hat.structure_flags().row_regular {
        return Err(Error::Precondition("the right-hand matrix must be row-regular".into()));
    }
    Ok(())
}

struct Search<'a, S> {
    a: &'a TropMatrix<S>,
    b_hat: &'a TropMatrix<S>,
    selection: Vec<usize>,
    forced: Vec<bool>,
    out: Vec<MonomialCandidate<S>>,
}

impl<S: Semifield> Search<'_, S> {
    fn descend(&mut self, work: &TropMatrix<S>, p: usize) {
        let (m, n) = work.shape();
        let columns: Vec<usize> = work.nonzeros_in_row(p).collect();
        for q in columns {
            let mut next = work.clone();
            for j in (0..n).filter(|&j| j != q) {
                next.set(p, j, S::zero());
            }
            let pivot_inv = work.get(p, q).inv().expect("selected entry is nonzero");
            // x_q ≥ b_pq⁻¹ (a_pj ⊕ b_pj) x_j for every j once b_pq x_q is the
            // largest term of row p.
            let bounds: Vec<S> = (0..n)
                .map(|j| pivot_inv.mul(&self.a.get(p, j).add(work.get(p, j))))
                .collect();

            let saved_forced = self.forced.clone();
            let mut dead = false;
            for i in p + 1..m {
                let scale = work.get(i, q);
                let implied: Vec<S> = bounds.iter().map(|t| scale.mul(t)).collect();
                let dominates_left = (0..n).all(|j| implied[j] >= *self.a.get(i, j));
                for j in (0..n).filter(|&j| j != q) {
                    if dominates_left || implied[j] >= *work.get(i, j) {
                        next.set(i, j, S::zero());
                    }
                }
                if dominates_left {
                    self.forced[i] = true;
                }
                if next.row_is_zero(i) {
                    dead = true;
                    break;
                }
            }

            if !dead {
                self.selection.push(q);
                if p + 1 == m {
                    let forced_rows = (0..m).filter(|&i| self.forced[i]).collect();
                    let mut cand = MonomialCandidate::from_selection(self.b_hat, self.selection.clone())
                        .expect("leaf selection hits nonzero entries");
                    cand.forced_rows = forced_rows;
                    self.out.push(cand);
                } else {
                    self.descend(&next, p + 1);
                }
                self.selection.pop();
            }
            self.forced = saved_forced;
        }
    }
}

/// Backtracking generation with the two pruning rules.
///
/// Fixing `b̂_pq` in row `p` yields `x_q ≥ b̂_pq⁻¹ (â_pj ⊕ b̂_pj) x_j`. For each
/// later row `i` scaled by `b̂_iq`, this bound either dominates every `â_ij`
/// (the row is reduced to column `q`) or dominates individual `b̂_ij`, which
/// are then dropped. Branches in which some later row loses all its entries
/// emit nothing. Every leaf has a distinct selection path, so the output is
/// duplicate-free and ordered by first emission.
pub fn generate_candidates<S: Semifield>(
    a_hat: &TropMatrix<S>,
    b_hat: &TropMatrix<S>,
) -> Result<Vec<MonomialCandidate<S>>> {
    check_inputs(a_hat, b_hat)?;
    if b_hat.rows() == 0 {
        return Ok(Vec::new());
    }
    let mut search = Search {
        a: a_hat,
        b_hat,
        selection: Vec::with_capacity(b_hat.rows()),
        forced: vec![false; b_hat.rows()],
        out: Vec::new(),
    };
    search.descend(b_hat, 0);
    Ok(search.out)
}

/// Every strictly row-monomial submatrix of `B̂`, in lexicographic order of
/// the selection maps.
pub fn enumerate_all<S: Semifield>(b_hat: &TropMatrix<S>, cap: usize) -> Result<Vec<MonomialCandidate<S>>> {
    if !b_hat.structure_flags().row_regular {
        return Err(Error::Precondition("the right-hand matrix must be row-regular".into()));
    }
    let choices: Vec<Vec<usize>> = (0..b_hat.rows()).map(|i| b_hat.nonzeros_in_row(i).collect()).collect();
    let total = choices
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()).filter(|&t| t <= cap));
    let Some(total) = total else {
        let exact = choices.iter().fold(1f64, |acc, c| acc * c.len() as f64);
        return Err(Error::CandidateCap {
            cap,
            requested: format!("{exact:.0}"),
        });
    };
    if b_hat.rows() == 0 {
        return Ok(Vec::new());
    }

    let mut out = Vec::with_capacity(total);
    let mut cursor = vec![0usize; choices.len()];
    loop {
        let selection = cursor.iter().zip(&choices).map(|(&k, c)| c[k]).collect();
        out.push(MonomialCandidate::from_selection(b_hat, selection)?);
        let mut row = choices.len();
        loop {
            if row == 0 {
                return Ok(out);
            }
            row -= 1;
            cursor[row] += 1;
            if cursor[row] < choices[row].len() {
                break;
            }
            cursor[row] = 0;
        }
    }
}
