use std::fmt;

use thiserror::Error;

use crate::classify::Violation;

/// One of the three operators of a triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    A,
    APrime,
    ADouble,
}

impl Operator {
    pub const ALL: [Operator; 3] = [Operator::A, Operator::APrime, Operator::ADouble];

    pub fn index(self) -> usize {
        match self {
            Operator::A => 0,
            Operator::APrime => 1,
            Operator::ADouble => 2,
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::A => "A",
            Operator::APrime => "A'",
            Operator::ADouble => "A''",
        })
    }
}

/// The restriction families whose bijectivity defines a pair or a triple.
///
/// The first six belong to triples; `PairDual` is the second family of a
/// pair, taken over the pair's own ordering of the eigenspaces of `A'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BijectionFamily {
    /// `[A',A]^(d-2i)` from `V_i` onto `V_(d-i)`.
    RaiseV,
    /// `[A'',A]^(d-2i)` from `V_(d-i)` onto `V_i`.
    LowerV,
    /// `[A'',A']^(d-2i)` from `V'_i` onto `V'_(d-i)`.
    RaiseVPrime,
    /// `[A,A']^(d-2i)` from `V'_(d-i)` onto `V'_i`.
    LowerVPrime,
    /// `[A,A'']^(d-2i)` from `V''_i` onto `V''_(d-i)`.
    RaiseVDouble,
    /// `[A',A'']^(d-2i)` from `V''_(d-i)` onto `V''_i`.
    LowerVDouble,
    /// `[A,A']^(d-2i)` from `V'_i` onto `V'_(d-i)` in the pair ordering.
    PairDual,
}

impl fmt::Display for BijectionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BijectionFamily::RaiseV => "[A',A]^(d-2i): V_i -> V_(d-i)",
            BijectionFamily::LowerV => "[A'',A]^(d-2i): V_(d-i) -> V_i",
            BijectionFamily::RaiseVPrime => "[A'',A']^(d-2i): V'_i -> V'_(d-i)",
            BijectionFamily::LowerVPrime => "[A,A']^(d-2i): V'_(d-i) -> V'_i",
            BijectionFamily::RaiseVDouble => "[A,A'']^(d-2i): V''_i -> V''_(d-i)",
            BijectionFamily::LowerVDouble => "[A',A'']^(d-2i): V''_(d-i) -> V''_i",
            BijectionFamily::PairDual => "[A,A']^(d-2i): V'_i -> V'_(d-i)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    #[error("expected {expected} matrix entries, found {found}")]
    EntryCount { expected: usize, found: usize },
    #[error("rows of unequal length")]
    RaggedRows,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("{0} is not square")]
    NotSquare(Operator),
    #[error("operators act on spaces of different dimension")]
    SizeMismatch,
    #[error("operators act on the zero space")]
    EmptySpace,
    #[error("map does not carry the source subspace into the target")]
    NotInvariant,
    #[error("matrix is singular")]
    Singular,
    #[error("subspaces do not form a decomposition")]
    NotADecomposition,
    #[error("{0} is not diagonalizable")]
    NotDiagonalizable(Operator),
    #[error("{0} has an eigenvalue outside the rationals (unsupported)")]
    IrrationalSpectrum(Operator),
    #[error("no standard ordering exists for the eigenspaces of {0}")]
    NoStandardOrdering(Operator),
    #[error("more than one ordering of the eigenspaces of {0} is standard")]
    AmbiguousOrdering(Operator),
    #[error("restriction {family} is not a bijection at i = {index}")]
    BijectionFails { family: BijectionFamily, index: usize },
    #[error("diameters differ: {0:?}")]
    DiameterMismatch(Vec<usize>),
    #[error("eigenspace dimensions do not agree with a common shape")]
    ShapeMismatch,
    #[error("sequence is not b-recurrent")]
    NotBRecurrent,
    #[error("sequence has repeated entries")]
    RepeatedEntries,
    #[error("sequence lengths differ")]
    LengthMismatch,
    #[error("no rational q with q^2 = 1/b for b = {0}")]
    Unrepresentable(String),
    #[error("invalid q: {0}")]
    InvalidQ(String),
    #[error("module is not segregated")]
    NotSegregated,
    #[error("triple is not reduced")]
    NotReduced,
    #[error("relation violated: {0}")]
    RelationViolation(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("parameter array violates {}", violation_list(.0))]
    InvalidParameterArray(Vec<Violation>),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

fn violation_list(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.condition.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    /// Errors that come from leaving the rationals rather than from a
    /// false mathematical claim.
    pub fn is_unrepresentable(&self) -> bool {
        matches!(self, Error::Unrepresentable(_) | Error::IrrationalSpectrum(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
