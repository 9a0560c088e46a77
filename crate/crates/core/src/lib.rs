//! Exact construction, verification and classification of bidiagonal (BD)
//! triples over the rationals.
//!
//! A BD triple is three diagonalizable operators `A, A', A''` on a
//! finite-dimensional space, each acting bidiagonally on the ordered
//! eigenspaces of the other two. The crate verifies such triples, reads off
//! their parameter arrays, classifies valid arrays, builds triples from
//! sl2 and U_q(sl2) modules, and extends BD pairs to triples.
//!
//! All arithmetic is exact; nothing is approximated.

pub mod bdcore;
pub mod classify;
pub mod corpus;
pub mod error;
pub mod exactlinalg;
pub mod extension;
pub mod repmod;

pub use bdcore::{
    AffineMap, BdTriple, ParameterArray, ReducedKind, StandardOrdering, VerifiedPair,
    VerifiedTriple,
};
pub use classify::{Condition, RelationScalars, Violation};
pub use error::{BijectionFamily, Error, Operator, Result};
pub use exactlinalg::{Decomposition, Matrix, Rational, Subspace};
pub use extension::SplitDecomposition;
pub use repmod::{Algebra, EquitableActions, ModuleSpec, StandardGenerators, Summand};
