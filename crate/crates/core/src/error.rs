use thiserror::Error;

use crate::monomial::CanonicalReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed token `{token}`")]
    MalformedToken { line: usize, token: String },

    #[error("line {line}: negative exponent in `{token}`")]
    NegativeExponent { line: usize, token: String },

    #[error("line {line}: duplicate monomial `{text}`")]
    DuplicateMonomial { line: usize, text: String },

    #[error("unknown variable `{0}` (not in the declared variable list)")]
    UnknownVariable(String),

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("need at least two variables, found {0}")]
    TooFewVariables(usize),

    #[error("no monomials given")]
    EmptySet,

    #[error("exponent vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid JSON monomial set: {0}")]
    Json(#[from] serde_json::Error),

    #[error("monomials do not share a common degree")]
    NotStochastic,

    #[error("need at least as many monomials as variables (q = {q}, n = {n})")]
    TooFewColumns { q: usize, n: usize },

    #[error("canonical restrictions violated (rows {:?})", .0.offending_rows)]
    CanonicalViolated(CanonicalReport),

    #[error("not a Cremona set: |det| = {det}, degree = {degree}, q = {q}, n = {n}")]
    NotCremona {
        det: String,
        degree: u64,
        q: usize,
        n: usize,
    },

    #[error("inversion invariant failed: {0}")]
    InversionInvariant(String),

    #[error("degree-2 analysis requires degree 2, found {0:?}")]
    DegreeNotTwo(Option<u64>),

    #[error("graph is not a degree-2 Cremona graph: {0}")]
    NotCremonaGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("internal cross-check disagreement: {0}")]
    CrossCheck(String),

    #[error("cannot generate a Cremona graph with n = {n}, r = {r}: {reason}")]
    InfeasibleShape { n: usize, r: usize, reason: &'static str },

    #[error("column lattice has rank {rank} < {n}")]
    RankDeficient { rank: usize, n: usize },

    #[error("ideal is not normal: lattice point {0:?} lies in the cone but not in the semigroup")]
    NotNormal(Vec<i64>),

    #[error("no n-subset of columns has |det| = d")]
    NoCremonaSubset,

    #[error("negative last coordinate {0}")]
    NegativeLevel(i64),

    #[error("search bound must be at least 1")]
    ZeroBound,
}

impl Error {
    /// True for errors raised while reading input, as opposed to contract violations.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::MalformedToken { .. }
                | Error::NegativeExponent { .. }
                | Error::DuplicateMonomial { .. }
                | Error::UnknownVariable(_)
                | Error::DuplicateVariable(_)
                | Error::TooFewVariables(_)
                | Error::EmptySet
                | Error::DimensionMismatch { .. }
                | Error::Json(_)
        )
    }
}
