use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("specialization needs values up to h_{needed}, only {given} supplied")]
    InsufficientValues { needed: usize, given: usize },

    #[error("series order {have} is too small, need at least {need}")]
    OrderTooSmall { have: usize, need: usize },

    #[error("constant term {coeff} is not an invertible scalar")]
    NonUnitConstant { coeff: String },

    #[error("constant term {coeff} must be zero")]
    NonZeroConstant { coeff: String },

    #[error("constant term {coeff} must be one")]
    ConstantNotOne { coeff: String },

    #[error("linear term {coeff} is not an invertible scalar")]
    NonUnitLinear { coeff: String },

    #[error("bundle {bundle} has no representation in complex cobordism of this model")]
    NotRepresentable { bundle: String },

    #[error("real dimension {dim} is not divisible by 4")]
    WrongDimension { dim: usize },

    #[error("factor {factor} is not a CP^1 factor of the model, so it carries no tangent line subbundle")]
    NoLineFactor { factor: usize },

    #[error("line bundle degree vector has {got} entries, model has {expected} factors")]
    FactorMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
