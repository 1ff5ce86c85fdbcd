use thiserror::Error;

/// Errors shared by all modules of the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("mould kind mismatch: {0} vs {1}")]
    KindMismatch(&'static str, &'static str),

    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("polynomial lies outside the span of C-monomials")]
    NotInCSpan,

    #[error("polynomial is not divisible by the given linear form")]
    NotDivisible,

    #[error("linear system has no solution")]
    NoSolution,

    #[error("polynomial is not push-invariant")]
    NotPushInvariant,

    #[error("no [a, -] factorization: a monomial starts and ends with b")]
    NoFactor,

    #[error("not in the span of triple brackets [a^i.b,[a^j.b,a^k.b]], i,j,k >= 1")]
    NotMember,

    #[error("mould is not alternal")]
    NotAlternal,

    #[error("derivation is not in Der^0: {0}")]
    NotDerZero(String),

    #[error("polynomial is not a Lie element")]
    NotLie,

    #[error("no lift over the triple-bracket family")]
    NoLift,

    #[error("invalid parameter: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),
}
