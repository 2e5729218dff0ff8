use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars or structures come from different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid field description: {0}")]
    BadField(String),
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit vector fails the unit law at basis element {0}")]
    BadUnit(usize),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not an algebra homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("invalid bimodule: {0}")]
    BadBimodule(String),
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("extension is not proper (structure map is not injective)")]
    NotProper,
    #[error("enumeration budget of {0} states exceeded")]
    BudgetExceeded(u64),
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}
