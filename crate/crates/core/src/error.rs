use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generators have mismatched degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("subgroup enumeration incomplete: group order {order} exceeds cap {cap}")]
    EnumerationIncomplete { order: usize, cap: usize },
    #[error("subgroup lattice is possibly incomplete")]
    LatticeIncomplete,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("map does not define a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("action is not by automorphisms: {0}")]
    NotAnAutomorphism(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid resolution data: {0}")]
    InvalidResolutionData(String),
    #[error("no resolving function with value -1 at the whole group")]
    NoUnitResolving,
    #[error("invalid resolving function: {0}")]
    InvalidResolving(String),
    #[error("non-integral attaching count at class {class}: {numerator} / {weyl}")]
    NonIntegral { class: usize, numerator: String, weyl: String },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("representability cap exceeded: {size} > {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
