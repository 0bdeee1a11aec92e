//! From candidates to the generating matrix `S`.
//!
//! Each candidate `G` gives `H = G⁻ (Â ⊕ B̂)`; it is accepted when
//! `tr Hⁿ ≤ 𝟙`, and then `I ⊕ Hⁿ⁻¹` generates its share of the solutions.
//! Traces are taken on the `m × m` matrix `F = (Â ⊕ B̂) G⁻`, since
//! `Hᵏ = G⁻ Fᵏ⁻¹ (Â ⊕ B̂)` and the trace is invariant under cyclic shifts.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::independence::ColumnBasis;
use crate::matrix::TropMatrix;
use crate::monomial::{enumerate_all, generate_candidates, MonomialCandidate};
use crate::refine::{refine, ProblemInstance, RefineVerdict, RefinedSystem};
use crate::semifield::Semifield;

/// First power whose trace exceeds one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection<S> {
    pub k: usize,
    pub trace: S,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateEvaluation<S> {
    pub candidate: MonomialCandidate<S>,
    pub f: TropMatrix<S>,
    pub accepted: bool,
    pub rejection: Option<Rejection<S>>,
    /// `I ⊕ Hⁿ⁻¹`, present iff accepted.
    pub generator: Option<TropMatrix<S>>,
}

/// Evaluates the trace condition for one candidate.
///
/// The right-hand side entering `H` is `B̂` with the candidate's forced rows
/// cut down to their selected entry (see [`MonomialCandidate::effective_rhs`]);
/// for candidates without forced rows this is `B̂` itself. Powers stop at the
/// first `k` with `tr Fᵏ > 𝟙`: `Hᵏ⁺¹ ≥ Hᵏ` makes later traces no smaller.
pub fn evaluate_candidate<S: Semifield>(
    cand: &MonomialCandidate<S>,
    a_hat: &TropMatrix<S>,
    b_hat: &TropMatrix<S>,
) -> Result<CandidateEvaluation<S>> {
    if a_hat.shape() != b_hat.shape() {
        return Err(Error::shape("evaluate_candidate", a_hat.shape(), b_hat.shape()));
    }
    if cand.g.shape() != b_hat.shape() {
        return Err(Error::shape("evaluate_candidate", cand.g.shape(), b_hat.shape()));
    }
    let (m, n) = b_hat.shape();
    let sum = a_hat.add(&cand.effective_rhs(b_hat))?;
    let g_conj = cand.g.conjugate();
    let f = sum.mul(&g_conj)?;
    let one = S::one();

    // Fⁿ⁻² is needed for the generator; F⁰ = I.
    let keep = n.checked_sub(2);
    let mut kept_power = (keep == Some(0)).then(|| TropMatrix::identity(m));
    let mut power = f.clone();
    for k in 1..=n {
        let trace = power.trace()?;
        if trace > one {
            return Ok(CandidateEvaluation {
                candidate: cand.clone(),
                f,
                accepted: false,
                rejection: Some(Rejection { k, trace }),
                generator: None,
            });
        }
        if keep == Some(k) {
            kept_power = Some(power.clone());
        }
        if k < n {
            power = power.mul(&f)?;
        }
    }

    let generator = match kept_power {
        Some(f_pow) => {
            let h_pow = g_conj.mul(&f_pow)?.mul(&sum)?;
            TropMatrix::identity(n).add(&h_pow)?
        }
        None => TropMatrix::identity(n),
    };
    Ok(CandidateEvaluation {
        candidate: cand.clone(),
        f,
        accepted: true,
        rejection: None,
        generator: Some(generator),
    })
}

/// Joins the generators of accepted candidates, in order, keeping each
/// column that is not spanned by the columns kept so far.
pub fn assemble<S: Semifield>(evals: &[CandidateEvaluation<S>]) -> Result<TropMatrix<S>> {
    assemble_counted(evals).map(|(s, _)| s)
}

fn assemble_counted<S: Semifield>(evals: &[CandidateEvaluation<S>]) -> Result<(TropMatrix<S>, Vec<usize>)> {
    let mut generators = evals.iter().filter_map(|e| e.generator.as_ref()).peekable();
    let Some(rows) = generators.peek().map(|g| g.rows()) else {
        return Err(Error::Precondition("no accepted candidate to assemble".into()));
    };
    let mut basis = ColumnBasis::new(rows);
    let mut added = Vec::with_capacity(evals.len());
    for eval in evals {
        let mut count = 0;
        if let Some(generator) = &eval.generator {
            for column in generator.columns() {
                if basis.try_push(column)? {
                    count += 1;
                }
            }
        }
        added.push(count);
    }
    Ok((basis.into_matrix(), added))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolutionKind {
    Generators,
    AllRegular,
    NoRegular,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub refine_us: u64,
    pub generate_us: u64,
    pub evaluate_us: u64,
    pub assemble_us: u64,
    pub total_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RejectionRecord {
    pub k: usize,
    pub trace: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateRecord {
    /// Zero-based column fixed in each refined row.
    pub selection: Vec<usize>,
    pub forced_rows: Vec<usize>,
    pub accepted: bool,
    pub rejection: Option<RejectionRecord>,
    /// Columns of this candidate's generator that entered `S`.
    pub columns_added: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub kind: SolutionKind,
    pub rows: usize,
    pub cols: usize,
    pub kept_rows: Vec<usize>,
    pub candidates_generated: usize,
    pub candidates_accepted: usize,
    pub candidates_rejected: usize,
    pub candidates: Vec<CandidateRecord>,
    pub s_columns: usize,
    pub timing: Timing,
}

#[derive(Clone, Debug)]
pub struct Solution<S> {
    pub kind: SolutionKind,
    /// Generating matrix; `None` iff `kind` is `NoRegular`.
    pub s: Option<TropMatrix<S>>,
    pub refined: RefinedSystem<S>,
    pub evaluations: Vec<CandidateEvaluation<S>>,
    pub report: SolveReport,
}

/// Where the candidate matrices `G` come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CandidateSource {
    Backtracking,
    Exhaustive { cap: usize },
}

pub fn solve<S: Semifield>(inst: &ProblemInstance<S>) -> Result<Solution<S>> {
    solve_with(inst, CandidateSource::Backtracking)
}

fn micros(since: Instant) -> u64 {
    since.elapsed().as_micros().try_into().unwrap_or(u64::MAX)
}

pub fn solve_with<S: Semifield>(inst: &ProblemInstance<S>, source: CandidateSource) -> Result<Solution<S>> {
    let started = Instant::now();
    let mut timing = Timing::default();
    let n = inst.cols();

    let phase = Instant::now();
    let refined = refine(inst);
    timing.refine_us = micros(phase);

    let mut evaluations = Vec::new();
    let mut added = Vec::new();
    let (kind, s) = match refined.verdict {
        RefineVerdict::AllRegular => (SolutionKind::AllRegular, Some(TropMatrix::identity(n))),
        RefineVerdict::NoRegular => (SolutionKind::NoRegular, None),
        RefineVerdict::Proceed => {
            let phase = Instant::now();
            let candidates = match source {
                CandidateSource::Backtracking => generate_candidates(&refined.a_hat, &refined.b_hat)?,
                CandidateSource::Exhaustive { cap } => enumerate_all(&refined.b_hat, cap)?,
            };
            timing.generate_us = micros(phase);

            let phase = Instant::now();
            evaluations = candidates
                .iter()
                .map(|c| evaluate_candidate(c, &refined.a_hat, &refined.b_hat))
                .collect::<Result<Vec<_>>>()?;
            timing.evaluate_us = micros(phase);

            if evaluations.iter().any(|e| e.accepted) {
                let phase = Instant::now();
                let (s, counts) = assemble_counted(&evaluations)?;
                timing.assemble_us = micros(phase);
                added = counts;
                (SolutionKind::Generators, Some(s))
            } else {
                (SolutionKind::NoRegular, None)
            }
        }
    };
    timing.total_us = micros(started);

    let candidates: Vec<CandidateRecord> = evaluations
        .iter()
        .enumerate()
        .map(|(idx, e)| CandidateRecord {
            selection: e.candidate.selection.clone(),
            forced_rows: e.candidate.forced_rows.clone(),
            accepted: e.accepted,
            rejection: e.rejection.as_ref().map(|r| RejectionRecord {
                k: r.k,
                trace: r.trace.to_string(),
            }),
            columns_added: added.get(idx).copied().unwrap_or(0),
        })
        .collect();
    let accepted = candidates.iter().filter(|c| c.accepted).count();
    let report = SolveReport {
        kind,
        rows: inst.rows(),
        cols: n,
        kept_rows: refined.kept_rows.clone(),
        candidates_generated: candidates.len(),
        candidates_accepted: accepted,
        candidates_rejected: candidates.len() - accepted,
        candidates,
        s_columns: s.as_ref().map_or(0, TropMatrix::cols),
        timing,
    };
    Ok(Solution {
        kind,
        s,
        refined,
        evaluations,
        report,
    })
}

/// Explicit, possibly incomplete, family of solutions `(B⁻A)* u` available
/// when `Tr(B⁻A) ≤ 𝟙`.
pub fn partial_solve_lemma3<S: Semifield>(inst: &ProblemInstance<S>) -> Result<Option<TropMatrix<S>>> {
    if !inst.a().structure_flags().row_regular || !inst.b().structure_flags().row_regular {
        return Err(Error::Precondition("both matrices must be row-regular".into()));
    }
    let product = inst.b().conjugate().mul(inst.a())?;
    if product.tr_closure()? > S::one() {
        return Ok(None);
    }
    product.kleene_star().map(Some)
}

/// Whether `x` is a regular vector with `A ⊗ x ≤ B ⊗ x`.
pub fn check_solution<S: Semifield>(inst: &ProblemInstance<S>, x: &TropMatrix<S>) -> Result<bool> {
    if x.cols() != 1 || x.rows() != inst.cols() {
        return Err(Error::shape("check_solution", inst.a().shape(), x.shape()));
    }
    if !x.structure_flags().regular_vector {
        return Ok(false);
    }
    inst.a().mul(x)?.leq(&inst.b().mul(x)?)
}
