//! Regular solutions of the two-sided max-plus inequality `A ⊗ x ≤ B ⊗ x`.
//!
//! The pipeline refines `(A, B)`, enumerates strictly row-monomial
//! sparsifications `G` of the refined right-hand side by backtracking, keeps
//! those whose `H = G⁻ (Â ⊕ B̂)` has no cycle of positive weight, and joins
//! the columns of every `I ⊕ Hⁿ⁻¹` into one independent generating matrix
//! `S`. Every regular solution is then `x = S ⊗ v` for a regular `v`.
//!
//! ```
//! use tropineq::{parse_matrix, solve, Matrix, ProblemInstance};
//!
//! let a: Matrix = parse_matrix("0 2 3\n-inf -1 3\n3 2 -1").unwrap();
//! let b: Matrix = parse_matrix("2 -1 2\n1 0 2\n-1 3 1").unwrap();
//! let solution = solve(&ProblemInstance::new(a, b).unwrap()).unwrap();
//! let s = solution.s.unwrap();
//! assert_eq!(s, parse_matrix("0 2\n0 2\n-inf 0").unwrap());
//! ```
//!
//! All algorithms are generic over [`Semifield`]; [`Scalar`] (exact
//! rationals) and [`FloatScalar`] are the two ready-made instances.

pub mod error;
pub mod format;
pub mod independence;
pub mod matrix;
pub mod monomial;
pub mod oracle;
pub mod refine;
pub mod semifield;
pub mod solver;

#[cfg(test)]
mod testing;

pub use error::{Error, Result};
pub use format::{parse_matrix, write_matrix};
pub use independence::{
    is_dependent, reduce_columns, residual_solve, scalar_criterion, span_equivalent, spanned_by, ColumnBasis,
    DependenceVerdict,
};
pub use matrix::{StructureFlags, TropMatrix};
pub use monomial::{enumerate_all, generate_candidates, MonomialCandidate, DEFAULT_CANDIDATE_CAP};
pub use oracle::{compare_pipelines, oracle_solve, sample_soundness, OracleConfig, OracleReport};
pub use refine::{refine, ProblemInstance, RefineVerdict, RefinedSystem};
pub use semifield::{float_epsilon, set_float_epsilon, MaxPlus, Number, Semifield};
pub use solver::{
    assemble, check_solution, evaluate_candidate, partial_solve_lemma3, solve, solve_with, CandidateEvaluation,
    CandidateSource, Rejection, Solution, SolutionKind, SolveReport,
};

/// Exact rational carrier.
pub type Rational = num_rational::BigRational;

/// Max-plus over exact rationals; the default scalar.
pub type Scalar = MaxPlus<Rational>;
pub type Matrix = TropMatrix<Scalar>;
pub type Instance = ProblemInstance<Scalar>;

/// Max-plus over `f64`, compared with [`float_epsilon`].
pub type FloatScalar = MaxPlus<f64>;
pub type FloatMatrix = TropMatrix<FloatScalar>;
pub type FloatInstance = ProblemInstance<FloatScalar>;
