use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0} is not irreducible over F_{1}")]
    Reducible(String, u32),
    #[error("no embedding of F_{{p^{from}}} into F_{{p^{to}}}")]
    NoEmbedding { from: u32, to: u32 },
    #[error("field of size {0} exceeds the supported table size")]
    FieldTooLarge(u64),
    #[error("zero polynomial has no squarefree part")]
    ZeroPolynomial,
    #[error("{0}")]
    Invalid(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// Errors raised by automaton constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("symbol {symbol} is not in the alphabet of base {p}")]
    ForeignSymbol { symbol: u32, p: u32 },
    #[error("alphabet mismatch: base {0} vs base {1}")]
    AlphabetMismatch(u32, u32),
    #[error("output alphabet mismatch")]
    OutputMismatch,
    #[error("state cap of {cap} exceeded during {construction}")]
    StateCap {
        cap: usize,
        construction: &'static str,
    },
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Errors raised by the series layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("invalid expansion: {0}")]
    InvalidExpansion(&'static str),
    #[error("exponent {0} does not have a {1}-power denominator")]
    NotPAdicExponent(String, u32),
    #[error("duplicate exponent {0}")]
    DuplicateExponent(String),
    #[error("negative exponent {0}")]
    NegativeExponent(String),
    #[error("automaton is not well-formed: {0}")]
    NotWellFormed(String),
    #[error("automaton is not well-ordered: {0}")]
    NotWellOrdered(String),
    #[error("search cap of {0} prefix expansions exceeded")]
    SearchCap(usize),
    #[error("internal validation failure after {op}: {reason}")]
    Internal { op: &'static str, reason: String },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors raised by the valuation-theoretic computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    #[error("empty line family")]
    EmptyEnvelope,
    #[error("polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("additive multiple failed the divisibility check")]
    DivisibilityCheck,
    #[error("branch refinement exceeded depth {0}")]
    DepthExceeded(usize),
    #[error("residue field F_{{{0}}} exceeds the supported size")]
    ResidueFieldTooLarge(u64),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Errors raised by the root decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("m = {m} is not coprime to p = {p}")]
    NotCoprime { m: u64, p: u32 },
    #[error("query polynomial must be monic in X with coefficients in F_q[t]")]
    BadQuery,
    #[error("search found {found} roots but the branch oracle counts {oracle}")]
    OracleMismatch { found: usize, oracle: usize },
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
