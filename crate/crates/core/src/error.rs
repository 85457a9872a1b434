use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: unknown symbol {symbol:?}")]
    UnknownSymbol { line: usize, symbol: char },
    #[error("line {line}: generator mixes the Pauli and GF(4) alphabets")]
    MixedAlphabet { line: usize },
    #[error("line {line}: expected length {expected}, found {found}")]
    RaggedRows {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: explicit phase prefixes are not supported (only implicit +)")]
    SignPrefix { line: usize },
    #[error("line {line}: malformed header {text:?}; expected \"n=<int> k=<int>\"")]
    MalformedHeader { line: usize, text: String },
    #[error("header declares {field}={declared} but the generators give {actual}")]
    HeaderMismatch {
        field: &'static str,
        declared: usize,
        actual: usize,
    },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("code has 2^{rank} words, above the enumeration cap of 2^{cap}")]
    EnumerationCap { rank: usize, cap: usize },
    #[error("the adjoined error is already a codeword")]
    AdjoinInCode,
    #[error("the adjoined error is not orthogonal to the code")]
    AdjoinNotInDual,
    #[error("code is not self-orthogonal and does not define a stabilizer group")]
    NotSelfOrthogonal,
    #[error("MacWilliams transform is not integral at weight {weight}")]
    NonIntegral { weight: usize },
    #[error("invalid enumerator pair: {0}")]
    InvalidPair(String),
    #[error("probability {0} outside the admissible range")]
    ProbabilityOutOfRange(f64),
    #[error("n = {n} exceeds the oracle cap of {cap} qubits")]
    OracleCap { n: usize, cap: usize },
    #[error("generators {0} and {1} anticommute")]
    NonCommuting(usize, usize),
    #[error("-I appears in the generated group")]
    MinusIdentity,
    #[error("projector check failed: {0}")]
    ProjectorAssertion(String),
    #[error("oracle residual {residual:e} at weight {weight} exceeds tolerance")]
    Residual { weight: usize, residual: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("projection of a random vector vanished {0} times in a row")]
    DegenerateProjection(usize),
    #[error("measurement probabilities sum to {0}, not 1")]
    BornNormalization(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
