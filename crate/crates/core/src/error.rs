use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("bilinear form is degenerate (rank {rank} of {dim})")]
    DegenerateForm { rank: usize, dim: usize },
    #[error("algebra is not semisimple")]
    NotSemisimple,
    #[error("algebra has a nonzero odd part")]
    NotPurelyEven,
    #[error("does not split over the rationals: {0}")]
    NotSplit(String),
    #[error("unsupported polynomial shape: {0}")]
    UnsupportedShape(String),
    #[error("invalid matrix factorization: {0}")]
    InvalidFactorization(String),
    #[error("cohomology cutoff unstable: {0}")]
    CutoffInstability(String),
    #[error("morphism is not closed: {0}")]
    NotClosed(String),
    #[error("variable sets overlap: {0}")]
    VariableClash(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
}
