use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(String),
    #[error("{0} is not prime")]
    InvalidPrime(String),
    #[error("field of size {p}^{k} does not fit in 64 bits")]
    FieldTooLarge { p: u64, k: usize },
    #[error("defining polynomial is not irreducible of the stated degree")]
    BadModulus,
    #[error("no embedding of GF({p}^{small}) into GF({p}^{big})")]
    NoEmbedding { p: u64, small: usize, big: usize },
    #[error("element does not lie in the embedded subfield")]
    NotInSubfield,
    #[error("requested order {order} does not divide {group}")]
    OrderDoesNotDivide { order: String, group: String },
    #[error("element is not annihilated by the supplied exponent bound")]
    NotAnnihilated,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("Frobenius conjugates repeat; element lies in a proper subfield")]
    DegenerateConjugates,
    #[error("polynomial has the wrong shape: {0}")]
    WrongShape(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("matrix is singular")]
    Singular,
    #[error("computed order bound does not annihilate the matrix")]
    OrderBoundViolated,
    #[error("word is empty after normalization")]
    EmptyWord,
    #[error("cannot parse word: {0}")]
    WordSyntax(String),
    #[error("n = {0} is not supported (expected 9, 10 or 11)")]
    UnsupportedN(u32),
    #[error("q = {q} is outside the generic range for n = {n}")]
    OutOfRange { n: u32, q: u64 },
    #[error("(n, q) = ({n}, {q}) is not one of the hard-coded special cases")]
    NotSpecialCase { n: u32, q: u64 },
    #[error("spin seed is the zero vector")]
    ZeroSeed,
    #[error("MeatAxe inconclusive after {0} random algebra elements")]
    InconclusiveAfterRetries(usize),
    #[error("Q-divisibility scan found divisible cases {found:?}, expected exactly [7]")]
    ScanMismatch { found: Vec<u32> },
    #[error("construction check failed: {0}")]
    ConstructionCheck(String),
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
