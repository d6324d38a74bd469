use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^15")]
    PrimeTooLarge(u64),
    #[error("group order {p}^{k} is too large")]
    OrderTooLarge { p: u64, k: u32 },
    #[error("exponent must be at least 1")]
    ZeroExponent,
    #[error("not invertible")]
    NotInvertible,
    #[error("singular matrix")]
    Singular,
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("automorphisms do not commute")]
    NotCommuting,
    #[error("not a designated conjugacy class representative")]
    NotRepresentative,
    #[error("unknown prime-power count for {p}^{k}")]
    UnknownPrimePowerCount { p: u64, k: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(i64),
    #[error("order {order} exceeds the oracle cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("tables of different orders cannot be classified together")]
    MixedOrders,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
