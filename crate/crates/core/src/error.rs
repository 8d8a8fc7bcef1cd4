use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime power in [2, 65536]")]
    InvalidModulus(u64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("pairing is incompatible with the module relations: {0}")]
    Incompatible(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("{what} has order {order}, above the limit {limit}")]
    LimitExceeded {
        what: String,
        order: usize,
        limit: usize,
    },
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn limit(what: impl Into<String>, order: usize, limit: usize) -> Result<()> {
    if order > limit {
        Err(Error::LimitExceeded {
            what: what.into(),
            order,
            limit,
        })
    } else {
        Ok(())
    }
}
