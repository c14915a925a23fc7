use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not in the range of chi (symmetry residual {residual:e})")]
    SymmetryViolation { residual: f64 },
    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("singular matrix in linear solve")]
    SingularMatrix,
    #[error("symmetric product of {0} factors exceeds the limit of 8")]
    TooManyFactors(usize),
    #[error("point of norm {norm} is outside the certified region |x| < 1")]
    DivergentPoint { norm: f64 },
    #[error("coefficient {index} is not real (imaginary part {imag:e})")]
    NotIntrinsic { index: usize, imag: f64 },
    #[error("constant term is too small to invert")]
    SingularConstantTerm,
    #[error("constant term {residual:e} left after subtraction; cannot divide by t")]
    DivisionByT { residual: f64 },
    #[error("iterate {step} is not contractive (section norm {norm})")]
    NonContractiveIterate { step: usize, norm: f64 },
    #[error("matrix is not unitary (residual {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("resolvent I - tA is singular")]
    SingularResolvent,
    #[error("feedthrough term H is singular")]
    SingularH,
    #[error("state does not decay: tail {tail:e} exceeds 0.1, raise the number of terms")]
    NonDecayingState { tail: f64 },
    #[error("Gram matrix is singular (min eigenvalue {min_eigenvalue:e}); sample points too close")]
    GramSingular { min_eigenvalue: f64 },
    #[error("I + S is singular; Cayley transform undefined")]
    SingularCayley,
    #[error("kernel function not representable in the sampled span (residual {residual:e})")]
    NotRepresentable { residual: f64 },
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
