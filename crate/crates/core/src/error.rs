use thiserror::Error;

use crate::parity_ring::GradedInt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not divisible by theta^{power}")]
    NotThetaDivisible { value: GradedInt, power: u32 },

    #[error("dominance comparison needs equal sizes, got {left} and {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("parts {0:?} do not form a strict partition")]
    NotStrict(Vec<u32>),

    #[error("no calibrated theta exponent for length class {0:?}")]
    ExponentUncalibrated((usize, usize, usize)),

    #[error("Q-function expansion left a nonzero residual at monomial {0:?}")]
    BasisSolveFailure(Vec<u32>),

    #[error("diagrams do not compose: bottom ({0}, {1}) vs top ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),

    #[error("rank {rank} is below the required {required}")]
    RankTooSmall { rank: usize, required: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
