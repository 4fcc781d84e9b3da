use thiserror::Error;

/// Library-wide error type. The CLI maps these onto exit codes:
/// input problems → 2, budget overruns → 3, unmet preconditions → 4.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not symmetric at entry ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("degenerate basis: rows are linearly dependent")]
    DegenerateBasis,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("lattice is odd; operation requires an even lattice")]
    OddLattice,
    #[error("form is even; target value must be even, got {0}")]
    FormOdd(String),
    #[error("matrix does not preserve the form: entry ({row},{col}) maps to {got}, expected {want}")]
    NotIsometry {
        row: usize,
        col: usize,
        got: String,
        want: String,
    },
    #[error("surface carries no period; operation requires an explicit period")]
    MissingPeriod,
    #[error("invalid period: {0}")]
    InvalidPeriod(String),
    #[error("basis is not saturated; replace it with its saturation first")]
    NotSaturated,
    #[error("budget exceeded: operation requires budget {required}, configured {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("criterion requires nonzero rank")]
    CriterionInapplicable,
    #[error("the given plane is not positive definite")]
    NotPositivePlane,
    #[error("search bound exhausted; no witness within the configured box")]
    SearchBoundExhausted,
    #[error("integral solve unsolvable: the pair (y1, y2) spans a non-primitive sublattice")]
    NonPrimitivePair,
    #[error("class is not of type (1,1): {0}")]
    TypeMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
