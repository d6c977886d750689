use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph6 error: {0}")]
    Graph6(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("graph is not simple (loops or parallel edges present)")]
    NotSimple,

    #[error("graph is not minimally 2-rigid")]
    NotMinimallyRigid,

    #[error("matroid has a loop at element {0}")]
    Loop(usize),

    #[error("rank condition violated: r(M) + r(N) = {rank_sum}, but |E| + 1 = {expected}")]
    RankMismatch { rank_sum: usize, expected: usize },

    #[error("ground sets differ in size ({0} vs {1})")]
    GroundMismatch(usize, usize),

    #[error("chain is not maximal")]
    NonMaximalChain,

    #[error("edge set is not a basis")]
    NotABasis,

    #[error("graph is disconnected; chromatic relation P = λ·χ does not hold")]
    Disconnected,

    #[error("invalid edge order: {0}")]
    InvalidOrder(String),

    #[error("alpha remained degenerate after {0} resamples")]
    Genericity(usize),

    #[error("time budget exceeded")]
    Timeout,
}
