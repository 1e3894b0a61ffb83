//! Fundamental symmetries and the indefinite inner products they induce.
//!
//! A fundamental symmetry is a Hermitian involution `J`. It turns the
//! Euclidean space into a Krein space via `[x, y] = (Jx, y)`, and every
//! notion in this crate (adjoints, sign types, non-negativity) is taken
//! with respect to that product.

use ndarray::Array2;
use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::{
    self, dagger, euclid_inner, identity, spectral_norm, CMat, CVec, NumericsError,
};
use crate::tol::Tolerances;

/// Structural validation failures for symmetries, operators, and bases.
#[derive(Debug, thiserror::Error)]
pub enum StructureError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds {tol:.3e}")]
    NotHermitian { residual: f64, tol: f64 },
    #[error("matrix is not an involution: ||J^2 - I|| = {residual:.3e} exceeds {tol:.3e}")]
    NotInvolutive { residual: f64, tol: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("basis columns are not orthonormal: residual {residual:.3e} exceeds {tol:.3e}")]
    NotOrthonormal { residual: f64, tol: f64 },
    #[error("operator is not certified self-adjoint: residual {residual:.3e} exceeds {tol:.3e}")]
    NotCertified { residual: f64, tol: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// A Hermitian involution `J` together with its spectral bookkeeping.
#[derive(Debug, Clone)]
pub struct FundamentalSymmetry {
    j: CMat,
    dim: usize,
    signature: (usize, usize),
    /// Unitary `U` with `U† J U = diag(I_p, -I_q)`.
    diagonalizer: CMat,
    hermitian_residual: f64,
    involution_residual: f64,
}

/// Signature summary suitable for reports.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
}

impl FundamentalSymmetry {
    /// Validate a candidate matrix as a fundamental symmetry.
    pub fn from_matrix(j: CMat, tols: &Tolerances) -> Result<Self, StructureError> {
        if j.nrows() != j.ncols() {
            return Err(StructureError::NotSquare {
                rows: j.nrows(),
                cols: j.ncols(),
            });
        }
        let dim = j.nrows();
        let scale = spectral_norm(&j);
        let tol = tols.tol_struct(scale);
        let hermitian_residual = spectral_norm(&(&j - &dagger(&j)));
        if hermitian_residual > tol {
            return Err(StructureError::NotHermitian {
                residual: hermitian_residual,
                tol,
            });
        }
        let involution_residual = spectral_norm(&(j.dot(&j) - identity(dim)));
        if involution_residual > tol {
            return Err(StructureError::NotInvolutive {
                residual: involution_residual,
                tol,
            });
        }
        // Eigenvalues of a Hermitian involution are exactly +-1; order the
        // eigenvectors so the positive ones come first.
        let (vals, vecs) = linalg::herm_eigs(&j)?;
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).expect("finite eigenvalues"));
        let p = vals.iter().filter(|&&v| v > 0.0).count();
        let mut diagonalizer = Array2::zeros((dim, dim));
        for (col, &src) in order.iter().enumerate() {
            diagonalizer.column_mut(col).assign(&vecs.column(src));
        }
        Ok(FundamentalSymmetry {
            j,
            dim,
            signature: (p, dim - p),
            diagonalizer,
            hermitian_residual,
            involution_residual,
        })
    }

    /// The canonical symmetry `diag(I_p, -I_q)`.
    pub fn from_signature(p: usize, q: usize) -> Self {
        let dim = p + q;
        let mut j = Array2::zeros((dim, dim));
        for i in 0..dim {
            j[[i, i]] = Complex64::new(if i < p { 1.0 } else { -1.0 }, 0.0);
        }
        FundamentalSymmetry {
            j,
            dim,
            signature: (p, q),
            diagonalizer: identity(dim),
            hermitian_residual: 0.0,
            involution_residual: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat {
        &self.j
    }

    pub fn signature(&self) -> Signature {
        Signature {
            plus: self.signature.0,
            minus: self.signature.1,
        }
    }

    /// Unitary `U` with `U† J U = diag(I_p, -I_q)`, positive block first.
    pub fn diagonalizer(&self) -> &CMat {
        &self.diagonalizer
    }

    pub fn hermitian_residual(&self) -> f64 {
        self.hermitian_residual
    }

    pub fn involution_residual(&self) -> f64 {
        self.involution_residual
    }

    /// The indefinite inner product `[x, y] = (Jx, y)`, linear in `x`.
    pub fn inner(&self, x: &CVec, y: &CVec) -> Complex64 {
        let jx = self.j.dot(x);
        euclid_inner(&jx, y)
    }

    /// Gram matrix `Q† J Q` of the product restricted to given columns.
    ///
    /// No orthonormality requirement; see [`gram_restriction`] for the
    /// validated variant.
    pub fn gram(&self, q: &CMat) -> CMat {
        dagger(q).dot(&self.j.dot(q))
    }

    /// Whether two symmetries agree within the structural tolerance.
    pub fn agrees_with(&self, other: &FundamentalSymmetry, tols: &Tolerances) -> bool {
        self.dim == other.dim
            && spectral_norm(&(&self.j - &other.j)) <= tols.tol_struct(1.0)
    }
}

/// View of the indefinite inner product induced by a symmetry.
///
/// `apply` is linear in its first argument and conjugate-linear in the
/// second, and satisfies `apply(y, x) = conj(apply(x, y))`.
#[derive(Debug, Clone, Copy)]
pub struct IndefiniteInnerProduct<'a> {
    symmetry: &'a FundamentalSymmetry,
}

impl<'a> IndefiniteInnerProduct<'a> {
    pub fn new(symmetry: &'a FundamentalSymmetry) -> Self {
        IndefiniteInnerProduct { symmetry }
    }

    pub fn apply(&self, x: &CVec, y: &CVec) -> Complex64 {
        self.symmetry.inner(x, y)
    }

    /// True when the product is the Euclidean one (J = I).
    pub fn is_hilbert(&self, tols: &Tolerances) -> bool {
        let n = self.symmetry.dim();
        spectral_norm(&(self.symmetry.matrix() - &identity(n))) <= tols.tol_struct(1.0)
    }
}

/// Gram matrix of the product restricted to an orthonormal column set.
///
/// # Errors
///
/// Rejects bases whose Euclidean orthonormality residual exceeds the
/// structural tolerance, and bases of mismatched dimension.
pub fn gram_restriction(
    j: &FundamentalSymmetry,
    basis: &CMat,
    tols: &Tolerances,
) -> Result<CMat, StructureError> {
    if basis.nrows() != j.dim() {
        return Err(StructureError::DimensionMismatch {
            left: j.dim(),
            right: basis.nrows(),
        });
    }
    let residual = linalg::orthonormality_residual(basis);
    let tol = tols.tol_struct(1.0);
    if residual > tol {
        return Err(StructureError::NotOrthonormal { residual, tol });
    }
    Ok(j.gram(basis))
}
