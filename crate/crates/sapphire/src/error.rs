use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A matrix that must lie in GL(2,Z) does not.
    #[error("determinant is {det}, not +1 or -1")]
    NotUnimodular { det: i64 },

    /// A sapphire gluing matrix has a zero entry, so the manifold is not Sol.
    #[error("entry {entry} is zero: not a Sol sapphire")]
    ZeroEntry { entry: char },

    /// An argument is outside the mathematical domain of the operation.
    #[error("{0}")]
    Domain(String),

    /// No all-positive matrix exists in a Morimoto orbit. Valid sapphire
    /// matrices always have one, so this signals a broken invariant upstream.
    #[error("no all-positive representative in the orbit: upstream invariant violated")]
    NoPositiveRepresentative,

    /// A Z/2 homomorphism does not fit the presentation it was paired with.
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    /// A cover case with b sent to 1 was requested although s is odd.
    #[error("cases sending b to 1 require the s entry to be even")]
    CaseRequiresEvenS,

    /// Hypotheses of a factorization solver fail; the message names them.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The cover table is defined on all-positive representatives only.
    #[error("the cover table needs all entries positive; canonicalize first")]
    RequiresPositiveEntries,

    /// Unparseable matrix text.
    #[error("cannot parse {0:?} as a matrix: expected \"r s; t u\" or [[r,s],[t,u]]")]
    ParseMatrix(String),
}
