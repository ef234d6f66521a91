use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    CompositeP(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields (F_{{{p}^{a}}} vs F_{{{p}^{b}}})")]
    FieldMismatch { p: u64, a: usize, b: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("F_{{p^{sub}}} is not a subfield of F_{{p^{sup}}}")]
    NotASubfield { sub: usize, sup: usize },
    #[error("element is not a unit of the Galois ring")]
    NotAUnit,
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("cannot invert a series with no terms at its precision")]
    ZeroDivisor,
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("exponent class {0} lies outside the character's domain")]
    UnassignedClass(String),
    #[error("character assignments are not a homomorphism: {0}")]
    InconsistentCharacter(String),
    #[error("{0} is not a root of the residue polynomial")]
    NotAResidueRoot(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("branch tree exceeded the node budget of {0}")]
    BranchExplosion(usize),
    #[error("requested precision {0} exceeds the range of the closed form")]
    PrecisionBeyondFormula(String),
    #[error("working modulus {p}^{n} does not fit in 63 bits")]
    Overflow { p: u64, n: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
