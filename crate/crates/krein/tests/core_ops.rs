//! Hand-verified oracles and invariants for symmetries, inner products,
//! and Krein adjoints.

use approx::assert_abs_diff_eq;
use krein::linalg::{dagger, identity, spectral_norm, CMat, CVec};
use krein::{gram_restriction, FundamentalSymmetry, IndefiniteInnerProduct, KreinOperator, Tolerances};
use ndarray::array;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sip2(tols: &Tolerances) -> FundamentalSymmetry {
    let j = array![[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
    FundamentalSymmetry::from_matrix(j, tols).unwrap()
}

/// For J = [[0,1],[1,0]] the adjoint of [[a,b],[c,d]] is [[conj d, conj b],[conj c, conj a]].
#[test]
fn krein_adjoint_hand_product_sip() {
    let tols = Tolerances::default();
    let sym = sip2(&tols);
    let a = array![[c(1.0, 2.0), c(3.0, 0.0)], [c(0.0, 4.0), c(5.0, -1.0)]];
    let op = KreinOperator::new(a, sym, &tols).unwrap();
    let adj = op.krein_adjoint();
    let expected = array![[c(5.0, 1.0), c(3.0, 0.0)], [c(0.0, -4.0), c(1.0, -2.0)]];
    assert!(spectral_norm(&(adj - expected)) < 1e-14);
}

#[test]
fn krein_adjoint_hand_product_diag() {
    let tols = Tolerances::default();
    let sym = FundamentalSymmetry::from_signature(1, 1);
    let a = array![[c(1.0, 0.0), c(2.0, 1.0)], [c(0.0, -3.0), c(4.0, 0.0)]];
    // J A† J with J = diag(1,-1) flips the sign of the off-diagonal entries
    // of the conjugate transpose.
    let op = KreinOperator::new(a.clone(), sym, &tols).unwrap();
    let adj = op.krein_adjoint();
    let at = dagger(&a);
    let expected = array![
        [at[[0, 0]], -at[[0, 1]]],
        [-at[[1, 0]], at[[1, 1]]]
    ];
    assert!(spectral_norm(&(adj - expected)) < 1e-14);
}

#[test]
fn selfadjointness_examples() {
    let tols = Tolerances::default();
    // Nilpotent shift is self-adjoint for the sip symmetry: JA = diag(0,1).
    let sym = sip2(&tols);
    let shift = array![[c(0.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
    let op = KreinOperator::new(shift, sym.clone(), &tols).unwrap();
    assert!(op.is_certified());

    // The sign-flipped shift is also sip-self-adjoint: JA = diag(0,-1).
    let flipped = array![[c(0.0, 0.0), c(-1.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
    let op = KreinOperator::new(flipped, sym.clone(), &tols).unwrap();
    assert!(op.is_certified());

    // A generic matrix is not.
    let generic = array![[c(1.0, 0.0), c(2.0, 0.0)], [c(0.5, 0.0), c(1.0, 1.0)]];
    let op = KreinOperator::new(generic, sym, &tols).unwrap();
    assert!(!op.is_certified());
    let (ok, residual) = op.is_selfadjoint_with(1e-10);
    assert!(!ok);
    assert!(residual > 0.1);
}

#[test]
fn inner_product_neutral_vector_sip() {
    let tols = Tolerances::default();
    let sym = sip2(&tols);
    // e1 is neutral for the sip product: [e1, e1] = 0.
    let e1: CVec = array![c(1.0, 0.0), c(0.0, 0.0)];
    assert_abs_diff_eq!(sym.inner(&e1, &e1).norm(), 0.0, epsilon = 1e-15);
    // [x, x] for x = (1, 1) is 2.
    let x: CVec = array![c(1.0, 0.0), c(1.0, 0.0)];
    assert_abs_diff_eq!(sym.inner(&x, &x).re, 2.0, epsilon = 1e-15);
}

#[test]
fn inner_product_signature_values() {
    let sym = FundamentalSymmetry::from_signature(1, 1);
    let x: CVec = array![c(2.0, 0.0), c(-1.0, 0.0)];
    // [x, x] = |x1|^2 - |x2|^2 = 4 - 1 = 3.
    assert_abs_diff_eq!(sym.inner(&x, &x).re, 3.0, epsilon = 1e-15);
    let y: CVec = array![c(1.0, 0.0), c(-2.0, 0.0)];
    // [y, y] = 1 - 4 = -3.
    assert_abs_diff_eq!(sym.inner(&y, &y).re, -3.0, epsilon = 1e-15);
    // [x, y] = 2*conj(1) - (-1)*conj(-2) = 0: the eigenvectors of the
    // 2x2 hand example are [.,.]-orthogonal.
    assert_abs_diff_eq!(sym.inner(&x, &y).norm(), 0.0, epsilon = 1e-15);
}

#[test]
fn gram_restriction_validates_basis() {
    let tols = Tolerances::default();
    let sym = FundamentalSymmetry::from_signature(1, 1);
    let ok = identity(2);
    let g = gram_restriction(&sym, &ok, &tols).unwrap();
    assert!(spectral_norm(&(g - sym.matrix().clone())) < 1e-14);

    let skewed: CMat = array![[c(1.0, 0.0)], [c(1.0, 0.0)]];
    assert!(gram_restriction(&sym, &skewed, &tols).is_err());
}

#[test]
fn hilbert_reduction() {
    let tols = Tolerances::default();
    let sym = FundamentalSymmetry::from_signature(3, 0);
    let ip = IndefiniteInnerProduct::new(&sym);
    assert!(ip.is_hilbert(&tols));
    let indef = FundamentalSymmetry::from_signature(2, 1);
    assert!(!IndefiniteInnerProduct::new(&indef).is_hilbert(&tols));
}

fn arb_complex() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(re, im)| c(re, im))
}

fn arb_cmat(n: usize) -> impl Strategy<Value = CMat> {
    proptest::collection::vec(arb_complex(), n * n)
        .prop_map(move |v| CMat::from_shape_vec((n, n), v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The adjoint is an involution and reverses products:
    /// (A⁺)⁺ = A and [Ax, y] = [x, A⁺y].
    #[test]
    fn adjoint_involution_and_pairing(m in arb_cmat(3), xs in proptest::collection::vec(arb_complex(), 6)) {
        let tols = Tolerances::default();
        let sym = FundamentalSymmetry::from_signature(2, 1);
        let op = KreinOperator::new(m.clone(), sym.clone(), &tols).unwrap();
        let adj = op.krein_adjoint();
        let adj_op = KreinOperator::new(adj.clone(), sym.clone(), &tols).unwrap();
        let back = adj_op.krein_adjoint();
        prop_assert!(spectral_norm(&(back - m.clone())) <= 1e-12 * (1.0 + spectral_norm(&m)));

        let x: CVec = ndarray::Array1::from_vec(xs[..3].to_vec());
        let y: CVec = ndarray::Array1::from_vec(xs[3..].to_vec());
        let lhs = sym.inner(&op.apply(&x), &y);
        let rhs = sym.inner(&x, &adj.dot(&y));
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
    }

    /// Hermitian symmetry of the product: [y, x] = conj([x, y]).
    #[test]
    fn inner_hermitian_symmetry(xs in proptest::collection::vec(arb_complex(), 6)) {
        let sym = FundamentalSymmetry::from_signature(1, 2);
        let x: CVec = ndarray::Array1::from_vec(xs[..3].to_vec());
        let y: CVec = ndarray::Array1::from_vec(xs[3..].to_vec());
        let fwd = sym.inner(&x, &y);
        let bwd = sym.inner(&y, &x);
        prop_assert!((fwd - bwd.conj()).norm() <= 1e-12 * (1.0 + fwd.norm()));
    }

    /// JA Hermitian is equivalent to certification, and A⁺ = A then.
    #[test]
    fn jsa_iff_gram_hermitian(h in arb_cmat(3)) {
        let tols = Tolerances::default();
        let sym = FundamentalSymmetry::from_signature(2, 1);
        // Build a self-adjoint operator from an arbitrary matrix: A = J*(H + H†)/2.
        let herm = krein::linalg::hermitian_part(&h);
        let a = sym.matrix().dot(&herm);
        let op = KreinOperator::new(a.clone(), sym, &tols).unwrap();
        prop_assert!(op.is_certified());
        prop_assert!(spectral_norm(&(op.krein_adjoint() - a.clone())) <= 1e-12 * (1.0 + spectral_norm(&a)));
    }
}
