//! Finite sections of lower-triangular and Hermitian block Toeplitz operators over H.

use crate::error::{Error, Result};
use crate::quatlin::{self, QuatMatrix};

pub const DEFAULT_N_MAX: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToeplitzKind {
    /// Block `(j, k)` is `S_(j-k)` on and below the diagonal, zero above.
    LowerTriangular,
    /// Block `(j, k)` is `Phi_(j-k)/2` below, `(Phi_0 + Phi_0*)/2` on, `Phi_(k-j)*/2` above the diagonal.
    Hermitian,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSection {
    symbols: Vec<QuatMatrix>,
    rows: usize,
    cols: usize,
    size: usize,
    kind: ToeplitzKind,
}

impl ToeplitzSection {
    pub fn new(symbols: Vec<QuatMatrix>, rows: usize, cols: usize, size: usize, kind: ToeplitzKind) -> Result<Self> {
        if symbols.iter().any(|s| s.shape() != (rows, cols)) {
            return Err(Error::ShapeMismatch("symbols differ in shape".into()));
        }
        if kind == ToeplitzKind::Hermitian && rows != cols {
            return Err(Error::ShapeMismatch("Hermitian sections need square symbols".into()));
        }
        Ok(ToeplitzSection { symbols, rows, cols, size, kind })
    }

    /// Lower-triangular section of size `size`; shape taken from the first symbol (1x1 if none).
    pub fn lower(symbols: &[QuatMatrix], size: usize) -> Result<Self> {
        let (r, c) = symbols.first().map(|s| s.shape()).unwrap_or((1, 1));
        Self::new(symbols.to_vec(), r, c, size, ToeplitzKind::LowerTriangular)
    }

    pub fn hermitian(symbols: &[QuatMatrix], size: usize) -> Result<Self> {
        let (r, c) = symbols.first().map(|s| s.shape()).unwrap_or((1, 1));
        Self::new(symbols.to_vec(), r, c, size, ToeplitzKind::Hermitian)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> ToeplitzKind {
        self.kind
    }

    fn symbol(&self, k: usize) -> QuatMatrix {
        self.symbols.get(k).cloned().unwrap_or_else(|| QuatMatrix::zeros(self.rows, self.cols))
    }

    /// The dense `(rows * size) x (cols * size)` quaternion matrix.
    pub fn matrix(&self) -> QuatMatrix {
        let (r, c, n) = (self.rows, self.cols, self.size);
        let mut m = QuatMatrix::zeros(r * n, c * n);
        match self.kind {
            ToeplitzKind::LowerTriangular => {
                for j in 0..n {
                    for k in 0..=j {
                        if j - k < self.symbols.len() {
                            m.set_block(j * r, k * c, &self.symbols[j - k]);
                        }
                    }
                }
            }
            ToeplitzKind::Hermitian => {
                let s0 = self.symbol(0);
                let diag = (&s0 + &s0.adjoint()).scale(0.5);
                for j in 0..n {
                    m.set_block(j * r, j * c, &diag);
                    for k in 0..j {
                        if j - k < self.symbols.len() {
                            let below = self.symbols[j - k].scale(0.5);
                            m.set_block(k * r, j * c, &below.adjoint());
                            m.set_block(j * r, k * c, &below);
                        }
                    }
                }
            }
        }
        m
    }
}

/// Operator norm of a lower-triangular section.
pub fn section_norm(t: &ToeplitzSection) -> Result<f64> {
    if t.kind != ToeplitzKind::LowerTriangular {
        return Err(Error::Domain("section_norm needs a lower-triangular section".into()));
    }
    Ok(quatlin::operator_norm(&t.matrix()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContractionVerdict {
    Contraction { size: usize, norm: f64 },
    ViolatedAt { size: usize, norm: f64 },
}

impl ContractionVerdict {
    pub fn is_contraction(&self) -> bool {
        matches!(self, ContractionVerdict::Contraction { .. })
    }

    pub fn norm(&self) -> f64 {
        match *self {
            ContractionVerdict::Contraction { norm, .. } | ContractionVerdict::ViolatedAt { norm, .. } => norm,
        }
    }
}

/// Contraction test at `n_max`; on failure, the smallest violating section size.
///
/// Section norms are nondecreasing in the size, so the largest section decides and a
/// bisection finds the first violation.
pub fn is_contraction(symbols: &[QuatMatrix], n_max: usize, tol: f64) -> Result<ContractionVerdict> {
    let norm_at = |n: usize| -> Result<f64> { section_norm(&ToeplitzSection::lower(symbols, n)?) };
    let top = norm_at(n_max)?;
    if top <= 1.0 + tol {
        return Ok(ContractionVerdict::Contraction { size: n_max, norm: top });
    }
    let (mut lo, mut hi, mut hi_norm) = (0usize, n_max, top);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let v = norm_at(mid)?;
        if v > 1.0 + tol {
            hi = mid;
            hi_norm = v;
        } else {
            lo = mid;
        }
    }
    Ok(ContractionVerdict::ViolatedAt { size: hi, norm: hi_norm })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdVerdict {
    pub psd: bool,
    pub min_eigenvalue: f64,
}

/// PSD test of a Hermitian section.
pub fn hermitian_psd(t: &ToeplitzSection, tol: f64) -> Result<PsdVerdict> {
    if t.kind != ToeplitzKind::Hermitian {
        return Err(Error::Domain("hermitian_psd needs a Hermitian section".into()));
    }
    let m = t.matrix();
    Ok(PsdVerdict { psd: quatlin::is_psd(&m, tol)?, min_eigenvalue: quatlin::min_eigenvalue(&m)? })
}
