use thiserror::Error;

/// Errors raised by the algebra, group and invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("subgroup is not central: {0}")]
    NotCentral(String),
    #[error("cocycle identity fails at ({g}, {h}, {k})")]
    CocycleViolation { g: usize, h: usize, k: usize },
    #[error("cocycle is not normalized at ({g}, {h})")]
    NotNormalized { g: usize, h: usize },
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("algebra is not semisimple (radical of dimension {0})")]
    NotSemisimple(usize),
    #[error("scalar field does not split block {block}: {detail}")]
    SplittingFailure { block: usize, detail: String },
    #[error("radical is not spanned by homogeneous elements")]
    RadicalNotHomogeneous,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("every right coset is represented; no degenerate witness exists")]
    CosetConditionHolds,
    #[error("representation check failed: {0}")]
    InvalidRepresentation(String),
    #[error("not a right transversal: {0}")]
    NotTransversal(String),
    #[error("hypothesis not verified: {0}")]
    HypothesisUnverified(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
