use thiserror::Error;

/// Errors raised by the library.
///
/// Variants named after internal assertions (`BijectionViolation`,
/// `SearchExhausted`, `IterationCap`, `NumericalDrift`, `NonInteger`) signal
/// that a structural theorem the code relies on failed to hold for the input.
/// They are never expected on well-formed finite systems.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed Coxeter matrix: {0}")]
    MalformedMatrix(String),
    #[error("Coxeter system is not finite: {0}")]
    NotFinite(String),
    #[error("elements belong to different Coxeter systems")]
    SystemMismatch,
    #[error("simple generator index {index} out of range for rank {rank}")]
    InvalidGenerator { index: usize, rank: usize },
    #[error("reflection id {0} out of range")]
    InvalidReflection(usize),
    #[error("word {0:?} is not a Coxeter element (must use each generator of its support once)")]
    NotCoxeterWord(Vec<usize>),
    #[error("generator s{0} is not initial in the Coxeter element")]
    NotInitial(usize),
    #[error("element is not in the standard parabolic subgroup of the Coxeter element's support")]
    NotInParabolic,
    #[error("element is not c-sortable")]
    NotSortable,
    #[error("element is not below c in absolute order")]
    NotNoncrossing,
    #[error("reflections {0} and {1} generate a reducible rank-two parabolic subgroup")]
    Reducible(usize, usize),
    #[error("reflections must be distinct")]
    SameReflection,
    #[error("operation requires a system of type {expected}, found {found}")]
    KindMismatch { expected: String, found: String },
    #[error("invalid one-line notation: {0}")]
    InvalidOneLine(String),
    #[error("bijection violated: {0}")]
    BijectionViolation(String),
    #[error("search space exhausted without reaching a formal negative")]
    SearchExhausted,
    #[error("compatibility recursion exceeded {0} steps")]
    IterationCap(usize),
    #[error("numerical drift: {0}")]
    NumericalDrift(String),
    #[error("Catalan product is not an integer: {0}")]
    NonInteger(String),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
