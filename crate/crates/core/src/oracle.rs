//! Brute-force cross-checks for the solver.
//!
//! Completeness of a cone of solutions cannot be sampled, so the pruned
//! pipeline is compared against the exhaustive one by span equivalence of
//! the two generating matrices. Soundness is sampled directly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::independence::span_equivalent;
use crate::matrix::TropMatrix;
use crate::monomial::DEFAULT_CANDIDATE_CAP;
use crate::refine::ProblemInstance;
use crate::semifield::{MaxPlus, Number};
use crate::solver::{check_solution, solve_with, CandidateSource, Solution, SolutionKind};

/// Range of the integer grid used when sampling parameter vectors.
pub const SAMPLE_RANGE: (i64, i64) = (-10, 10);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub cap: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CANDIDATE_CAP,
            trials: 1000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub exhaustive_candidates: usize,
    pub backtracked_candidates: usize,
    pub accepted_exhaustive: usize,
    pub accepted_backtracked: usize,
    pub backtracked_kind: SolutionKind,
    pub exhaustive_kind: SolutionKind,
    pub verdicts_equal: bool,
    pub spans_equal: bool,
    pub soundness_failures: usize,
    pub sample_size: usize,
    pub seed: u64,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.verdicts_equal && self.spans_equal && self.soundness_failures == 0
    }
}

/// The full pipeline with every strictly row-monomial candidate.
pub fn oracle_solve<T: Number>(inst: &ProblemInstance<MaxPlus<T>>, cap: usize) -> Result<Solution<MaxPlus<T>>> {
    solve_with(inst, CandidateSource::Exhaustive { cap })
}

pub fn compare_pipelines<T: Number>(inst: &ProblemInstance<MaxPlus<T>>, config: &OracleConfig) -> Result<OracleReport> {
    let backtracked = solve_with(inst, CandidateSource::Backtracking)?;
    let exhaustive = oracle_solve(inst, config.cap)?;
    let verdicts_equal = backtracked.kind == exhaustive.kind;
    let spans_equal = match (&backtracked.s, &exhaustive.s) {
        (Some(s_b), Some(s_e)) => span_equivalent(s_b, s_e)?,
        (None, None) => true,
        _ => false,
    };
    let soundness_failures = match &backtracked.s {
        Some(s) if config.trials > 0 => sample_soundness(inst, s, config.trials, config.seed)?,
        _ => 0,
    };
    Ok(OracleReport {
        exhaustive_candidates: exhaustive.report.candidates_generated,
        backtracked_candidates: backtracked.report.candidates_generated,
        accepted_exhaustive: exhaustive.report.candidates_accepted,
        accepted_backtracked: backtracked.report.candidates_accepted,
        backtracked_kind: backtracked.kind,
        exhaustive_kind: exhaustive.kind,
        verdicts_equal,
        spans_equal,
        soundness_failures,
        sample_size: if backtracked.s.is_some() { config.trials } else { 0 },
        seed: config.seed,
    })
}

/// Number of seeded regular parameter vectors `v` for which `S ⊗ v` fails
/// to solve the instance.
pub fn sample_soundness<T: Number>(
    inst: &ProblemInstance<MaxPlus<T>>,
    s: &TropMatrix<MaxPlus<T>>,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let v = random_regular_vector(&mut rng, s.cols(), SAMPLE_RANGE);
        if !check_solution(inst, &s.mul(&v)?)? {
            failures += 1;
        }
    }
    Ok(failures)
}

/// Dense random matrix with integer entries in `range` and zeros placed
/// with probability `zero_density`.
pub fn random_matrix<T: Number, R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    zero_density: f64,
    range: (i64, i64),
) -> TropMatrix<MaxPlus<T>> {
    TropMatrix::from_fn(rows, cols, |_, _| {
        if rng.gen_bool(zero_density) {
            MaxPlus::Bottom
        } else {
            MaxPlus::from_i64(rng.gen_range(range.0..=range.1))
        }
    })
}

pub fn random_regular_vector<T: Number, R: Rng>(rng: &mut R, len: usize, range: (i64, i64)) -> TropMatrix<MaxPlus<T>> {
    random_matrix(rng, len, 1, 0.0, range)
}

pub fn random_instance<T: Number, R: Rng>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    zero_density: f64,
    range: (i64, i64),
) -> ProblemInstance<MaxPlus<T>> {
    let a = random_matrix(rng, rows, cols, zero_density, range);
    let b = random_matrix(rng, rows, cols, zero_density, range);
    ProblemInstance::new(a, b).expect("equal shapes")
}
