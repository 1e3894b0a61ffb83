//! Operators on a Krein space and their adjoints.

use num_complex::Complex64;

use crate::linalg::{dagger, euclid_inner, hermitian_part, spectral_norm, CMat, CVec};
use crate::symmetry::{FundamentalSymmetry, StructureError};
use crate::tol::Tolerances;

/// A square matrix paired with the fundamental symmetry of its space.
///
/// Construction measures the self-adjointness defect `||JA - (JA)†||`, which
/// equals `||A⁺ - A||` for the Krein adjoint `A⁺ = J A† J`. Operators whose
/// defect is within the structural tolerance are certified; analyses that
/// assume self-adjointness refuse uncertified operators.
#[derive(Debug, Clone)]
pub struct KreinOperator {
    a: CMat,
    sym: FundamentalSymmetry,
    norm: f64,
    selfadjoint_residual: f64,
    certified: bool,
}

impl KreinOperator {
    pub fn new(
        a: CMat,
        sym: FundamentalSymmetry,
        tols: &Tolerances,
    ) -> Result<Self, StructureError> {
        if a.nrows() != a.ncols() {
            return Err(StructureError::NotSquare {
                rows: a.nrows(),
                cols: a.ncols(),
            });
        }
        if a.nrows() != sym.dim() {
            return Err(StructureError::DimensionMismatch {
                left: a.nrows(),
                right: sym.dim(),
            });
        }
        let norm = spectral_norm(&a);
        let ja = sym.matrix().dot(&a);
        let selfadjoint_residual = spectral_norm(&(&ja - &dagger(&ja)));
        let certified = selfadjoint_residual <= tols.tol_struct(norm);
        Ok(KreinOperator {
            a,
            sym,
            norm,
            selfadjoint_residual,
            certified,
        })
    }

    pub fn dim(&self) -> usize {
        self.sym.dim()
    }

    pub fn matrix(&self) -> &CMat {
        &self.a
    }

    pub fn symmetry(&self) -> &FundamentalSymmetry {
        &self.sym
    }

    /// Cached spectral norm of the matrix.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// The product `JA`, Hermitian exactly when the operator is self-adjoint.
    pub fn jmul(&self) -> CMat {
        self.sym.matrix().dot(&self.a)
    }

    /// Hermitian part of `JA`; the Gram matrix of the form `[Ax, x]`.
    pub fn gram_matrix(&self) -> CMat {
        hermitian_part(&self.jmul())
    }

    /// The Krein adjoint `A⁺ = J A† J`.
    pub fn krein_adjoint(&self) -> CMat {
        let j = self.sym.matrix();
        j.dot(&dagger(&self.a)).dot(j)
    }

    pub fn selfadjoint_residual(&self) -> f64 {
        self.selfadjoint_residual
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Self-adjointness test against an explicit tolerance.
    pub fn is_selfadjoint_with(&self, tol: f64) -> (bool, f64) {
        (self.selfadjoint_residual <= tol, self.selfadjoint_residual)
    }

    /// Guard for analyses that require a certified operator.
    pub fn require_certified(&self, tols: &Tolerances) -> Result<(), StructureError> {
        if self.certified {
            Ok(())
        } else {
            Err(StructureError::NotCertified {
                residual: self.selfadjoint_residual,
                tol: tols.tol_struct(self.norm),
            })
        }
    }

    pub fn apply(&self, x: &CVec) -> CVec {
        self.a.dot(x)
    }

    /// The quadratic form `[Ax, x]`.
    pub fn form(&self, x: &CVec) -> Complex64 {
        let ax = self.a.dot(x);
        let jax = self.sym.matrix().dot(&ax);
        euclid_inner(&jax, x)
    }

    /// Same symmetry, different matrix; used to assemble sums like `A + V`.
    pub fn with_matrix(&self, a: CMat, tols: &Tolerances) -> Result<Self, StructureError> {
        KreinOperator::new(a, self.sym.clone(), tols)
    }
}
