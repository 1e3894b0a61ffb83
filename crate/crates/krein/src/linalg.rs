//! Thin dense-matrix helpers over the LAPACK backend.
//!
//! Everything in the crate works with square complex matrices small enough
//! that full factorizations are cheap, so the helpers favour clarity over
//! allocation thrift. Eigen and singular value computations delegate to
//! LAPACK through `ndarray-linalg`; the numerical logic built on top of them
//! (clustering, contour quadrature, classification) lives in the other
//! modules.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Eigh, Inverse, SVD, UPLO};
use num_complex::Complex64;

use crate::tol::Tolerances;

pub type CMat = Array2<Complex64>;
pub type CVec = Array1<Complex64>;

/// Failures surfaced by the dense backend.
#[derive(Debug, thiserror::Error)]
pub enum NumericsError {
    #[error("dense linear algebra backend failed: {0}")]
    Backend(#[from] ndarray_linalg::error::LinalgError),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

pub fn identity(n: usize) -> CMat {
    Array2::eye(n)
}

/// Conjugate transpose.
pub fn dagger(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

/// Hermitian part `(M + M†)/2`.
pub fn hermitian_part(m: &CMat) -> CMat {
    let mut h = dagger(m);
    h += m;
    h.mapv_into(|z| 0.5 * z)
}

/// Largest singular value; zero for an empty matrix.
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    if m.nrows() == 1 && m.ncols() == 1 {
        return m[[0, 0]].norm();
    }
    // The LAPACK bridge rejects the zero strides ndarray gives length-1
    // axes, so normalize the layout first.
    let owned = m.as_standard_layout().into_owned();
    let (_, s, _) = owned.svd(false, false).expect("svd of finite matrix");
    s[0]
}

/// Smallest singular value of a square matrix.
pub fn smallest_singular_value(m: &CMat) -> Result<f64, NumericsError> {
    require_square(m)?;
    if m.nrows() == 1 {
        return Ok(m[[0, 0]].norm());
    }
    let owned = m.as_standard_layout().into_owned();
    let (_, s, _) = owned.svd(false, false)?;
    Ok(s[s.len() - 1])
}

fn require_square(m: &CMat) -> Result<(), NumericsError> {
    if m.nrows() != m.ncols() {
        return Err(NumericsError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

/// Eigenvalues of a general square matrix, in backend order.
pub fn eigenvalues(m: &CMat) -> Result<Vec<Complex64>, NumericsError> {
    require_square(m)?;
    let (vals, _) = m.eig()?;
    Ok(vals.to_vec())
}

/// Eigenvalue/eigenvector pairs of a general square matrix.
pub fn eig_pairs(m: &CMat) -> Result<(Vec<Complex64>, CMat), NumericsError> {
    require_square(m)?;
    let (vals, vecs) = m.eig()?;
    Ok((vals.to_vec(), vecs))
}

/// Eigenvalues (ascending) and eigenvectors of the Hermitian part of `m`.
///
/// The input is symmetrized first, so callers may pass matrices that are
/// Hermitian only up to a structural residual.
pub fn herm_eigs(m: &CMat) -> Result<(Vec<f64>, CMat), NumericsError> {
    require_square(m)?;
    if m.nrows() == 0 {
        return Ok((Vec::new(), Array2::zeros((0, 0))));
    }
    let h = hermitian_part(m);
    let (vals, vecs) = h.eigh(UPLO::Lower)?;
    Ok((vals.to_vec(), vecs))
}

pub fn inverse(m: &CMat) -> Result<CMat, NumericsError> {
    require_square(m)?;
    Ok(m.inv()?)
}

/// Inverse of `z*I - M`, the resolvent factor used by contour quadrature.
pub fn shifted_inverse(m: &CMat, z: Complex64) -> Result<CMat, NumericsError> {
    require_square(m)?;
    let mut shifted = m.mapv(|w| -w);
    for i in 0..m.nrows() {
        shifted[[i, i]] += z;
    }
    Ok(shifted.inv()?)
}

/// Orthonormal kernel basis with the rank bookkeeping behind it.
#[derive(Debug, Clone)]
pub struct NullSpace {
    /// Columns form an orthonormal basis of the numerical kernel.
    pub basis: CMat,
    pub rank: usize,
    /// Singular values in descending order.
    pub singular_values: Vec<f64>,
    /// Cutoff that separated range from kernel directions.
    pub threshold: f64,
    /// True when some singular value sits within a decade of the cutoff,
    /// i.e. the rank decision is ill-conditioned.
    pub flagged: bool,
}

/// Numerical kernel of a square matrix via SVD.
pub fn null_space(m: &CMat, tols: &Tolerances) -> Result<NullSpace, NumericsError> {
    require_square(m)?;
    let n = m.nrows();
    if n == 0 {
        return Ok(NullSpace {
            basis: Array2::zeros((0, 0)),
            rank: 0,
            singular_values: Vec::new(),
            threshold: 0.0,
            flagged: false,
        });
    }
    let (_, s, vt) = m.svd(false, true)?;
    let vt = vt.expect("requested right singular vectors");
    let sigma_max = s[0];
    let threshold = tols.rank_threshold(n, sigma_max);
    let rank = s.iter().filter(|&&sv| sv > threshold).count();
    let flagged = threshold > 0.0
        && s.iter()
            .any(|&sv| sv > threshold / 10.0 && sv < threshold * 10.0);
    // Rows rank.. of V† span the kernel; transpose them back into columns.
    let basis = dagger(&vt.slice(ndarray::s![rank.., ..]).to_owned());
    Ok(NullSpace {
        basis,
        rank,
        singular_values: s.to_vec(),
        threshold,
        flagged,
    })
}

/// Orthonormal basis of the range, keeping directions with `sigma > cut`.
pub fn orthonormal_range(m: &CMat, cut: f64) -> Result<CMat, NumericsError> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Ok(Array2::zeros((m.nrows(), 0)));
    }
    let (u, s, _) = m.svd(true, false)?;
    let u = u.expect("requested left singular vectors");
    let rank = s.iter().filter(|&&sv| sv > cut).count();
    Ok(u.slice(ndarray::s![.., ..rank]).to_owned())
}

/// `||Q†Q - I||`, the orthonormality defect of a column set.
pub fn orthonormality_residual(q: &CMat) -> f64 {
    let k = q.ncols();
    let mut g = dagger(q).dot(q);
    for i in 0..k {
        g[[i, i]] -= Complex64::new(1.0, 0.0);
    }
    spectral_norm(&g)
}

/// Euclidean inner product, linear in the first argument.
pub fn euclid_inner(x: &CVec, y: &CVec) -> Complex64 {
    x.iter().zip(y.iter()).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &CVec) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Apply a real function to a Hermitian matrix through its spectrum.
pub fn herm_function(m: &CMat, f: impl Fn(f64) -> f64) -> Result<CMat, NumericsError> {
    let (vals, vecs) = herm_eigs(m)?;
    let mut scaled = vecs.clone();
    for (j, &v) in vals.iter().enumerate() {
        let fv = Complex64::new(f(v), 0.0);
        scaled.column_mut(j).mapv_inplace(|z| z * fv);
    }
    Ok(scaled.dot(&dagger(&vecs)))
}

pub fn real_to_complex(m: &Array2<f64>) -> CMat {
    m.mapv(|x| Complex64::new(x, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dagger_conjugates_and_transposes() {
        let m = ndarray::array![[c(1.0, 2.0), c(3.0, 0.0)], [c(0.0, 4.0), c(5.0, -1.0)]];
        let d = dagger(&m);
        assert_eq!(d[[0, 1]], c(0.0, -4.0));
        assert_eq!(d[[1, 0]], c(3.0, 0.0));
        assert_eq!(d[[1, 1]], c(5.0, 1.0));
    }

    #[test]
    fn spectral_norm_of_nilpotent_shift() {
        let m = ndarray::array![[c(0.0, 0.0), c(2.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        assert_abs_diff_eq!(spectral_norm(&m), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = ndarray::array![[c(1.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(1.0, 0.0)]];
        let ns = null_space(&m, &Tolerances::default()).unwrap();
        assert_eq!(ns.rank, 1);
        assert_eq!(ns.basis.ncols(), 1);
        // Kernel of [[1,1],[1,1]] is the span of (1,-1).
        let v = ns.basis.column(0);
        assert_abs_diff_eq!((v[0] + v[1]).norm(), 0.0, epsilon = 1e-12);
        assert!(!ns.flagged);
    }

    #[test]
    fn shifted_inverse_matches_direct() {
        let m = ndarray::array![[c(1.0, 0.0), c(2.0, 0.0)], [c(0.0, 1.0), c(-1.0, 0.0)]];
        let z = c(0.5, 1.5);
        let r = shifted_inverse(&m, z).unwrap();
        let mut check = m.mapv(|w| -w);
        check[[0, 0]] += z;
        check[[1, 1]] += z;
        let prod = r.dot(&check);
        assert_abs_diff_eq!(spectral_norm(&(prod - identity(2))), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn herm_function_square_root() {
        let m = ndarray::array![[c(2.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(2.0, 0.0)]];
        let r = herm_function(&m, f64::sqrt).unwrap();
        let back = r.dot(&r);
        assert_abs_diff_eq!(spectral_norm(&(back - m)), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn herm_eigs_ascending() {
        let m = ndarray::array![[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
        let (vals, _) = herm_eigs(&m).unwrap();
        assert_abs_diff_eq!(vals[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vals[1], 1.0, epsilon = 1e-14);
    }
}
