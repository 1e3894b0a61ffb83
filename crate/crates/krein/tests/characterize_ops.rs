//! Non-negativity verdicts, similarity construction, and local analysis
//! against hand-worked examples.
//!
//! Hand values used below:
//! - Canonical nilpotent pair (sip metric): JA = diag(0, 1) is positive
//!   semidefinite; the kernel chain at 0 is (1, 2, 2).
//! - Sign-flipped nilpotent: JA = diag(0, -1), so the form takes value -1.
//! - The 2x2 pair A = (1/3)[[5,4],[-4,-5]], J = diag(1,-1) is uniformly
//!   positive; its similarity metric G = J J_A has eigenvalues {1/3, 3}.
//! - The block pair J = diag(1,-1,1), A = blkdiag([[0,1],[-1,0]], 5) is
//!   non-negative outside any region containing the pair +-i, and the
//!   certified form bound on the inside block is exactly -1.

use approx::assert_abs_diff_eq;
use krein::characterize::{
    check_local_nonneg, check_nonneg_root, check_nonneg_spectral, decompose_locally,
    is_nonnegative_direct, lower_bound_gamma, similarity_transform, SimilarityRefusal,
};
use krein::linalg::{identity, spectral_norm};
use krein::regions::{EnclosureRegion, Neighborhood};
use krein::symmetry::FundamentalSymmetry;
use krein::verdict::Verdict;
use krein::{KreinOperator, Tolerances};
use ndarray::array;
use num_complex::Complex64;
use proptest::prelude::*;

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn tols() -> Tolerances {
    Tolerances::default()
}

fn sip2() -> FundamentalSymmetry {
    FundamentalSymmetry::from_matrix(array![[r(0.0), r(1.0)], [r(1.0), r(0.0)]], &tols()).unwrap()
}

fn canonical_nilpotent() -> KreinOperator {
    let a = array![[r(0.0), r(1.0)], [r(0.0), r(0.0)]];
    KreinOperator::new(a, sip2(), &tols()).unwrap()
}

fn flipped_nilpotent() -> KreinOperator {
    let a = array![[r(0.0), r(-1.0)], [r(0.0), r(0.0)]];
    KreinOperator::new(a, sip2(), &tols()).unwrap()
}

fn hand_pair() -> KreinOperator {
    let j = FundamentalSymmetry::from_signature(1, 1);
    let a = array![
        [r(5.0 / 3.0), r(4.0 / 3.0)],
        [r(-4.0 / 3.0), r(-5.0 / 3.0)]
    ];
    KreinOperator::new(a, j, &tols()).unwrap()
}

#[test]
fn direct_test_hand_values() {
    let (ok, min) = is_nonnegative_direct(&canonical_nilpotent(), &tols());
    assert!(ok);
    assert_abs_diff_eq!(min, 0.0, epsilon = 1e-12);

    let (ok, min) = is_nonnegative_direct(&flipped_nilpotent(), &tols());
    assert!(!ok);
    assert_abs_diff_eq!(min, -1.0, epsilon = 1e-12);

    let (ok, min) = is_nonnegative_direct(&hand_pair(), &tols());
    assert!(ok);
    assert_abs_diff_eq!(min, 1.0 / 3.0, epsilon = 1e-12);
}

#[test]
fn criteria_pass_for_canonical_nilpotent() {
    let v = check_nonneg_spectral(&canonical_nilpotent(), &tols()).unwrap();
    assert!(v.is_nonnegative);
    assert_eq!(v.criteria_verdict, Verdict::Pass);
    assert_eq!(v.agreement(), Some(true));
    assert_eq!(v.kernel_dims.as_deref(), Some(&[1, 2, 2][..]));
    assert_abs_diff_eq!(v.zero_gram_min.unwrap(), 0.0, epsilon = 1e-10);
    assert!(!v.uniformly_positive);
}

#[test]
fn criteria_fail_for_flipped_nilpotent() {
    let v = check_nonneg_spectral(&flipped_nilpotent(), &tols()).unwrap();
    assert!(!v.is_nonnegative);
    assert_eq!(v.criteria_verdict, Verdict::Fail);
    assert_eq!(v.agreement(), Some(true));
    // The kernel chain itself is fine; the form on ker A^2 is what fails.
    assert_eq!(v.kernel_dims.as_deref(), Some(&[1, 2, 2][..]));
    assert_abs_diff_eq!(v.zero_gram_min.unwrap(), -1.0, epsilon = 1e-10);
}

#[test]
fn criteria_detect_wrong_sign_type() {
    // Eigenvalue 2 with a negative-type eigenvector.
    let j = FundamentalSymmetry::from_signature(1, 1);
    let a = array![[r(1.0), r(0.0)], [r(0.0), r(2.0)]];
    let op = KreinOperator::new(a, j, &tols()).unwrap();
    let v = check_nonneg_spectral(&op, &tols()).unwrap();
    assert!(!v.is_nonnegative);
    assert_eq!(v.criteria_verdict, Verdict::Fail);
    assert_eq!(v.agreement(), Some(true));
}

#[test]
fn uniformly_positive_hand_pair() {
    let v = check_nonneg_spectral(&hand_pair(), &tols()).unwrap();
    assert!(v.is_nonnegative);
    assert!(v.uniformly_positive);
    assert_eq!(v.criteria_verdict, Verdict::Pass);
    assert!(v.kernel_dims.is_none());
    assert_abs_diff_eq!(v.direct_min_eigenvalue, 1.0 / 3.0, epsilon = 1e-12);
}

#[test]
fn root_route_agrees_and_attaches_profile() {
    for op in [canonical_nilpotent(), flipped_nilpotent(), hand_pair()] {
        let a = check_nonneg_spectral(&op, &tols()).unwrap();
        let b = check_nonneg_root(&op, &tols()).unwrap();
        assert_eq!(a.criteria_verdict, b.criteria_verdict);
        assert_eq!(a.is_nonnegative, b.is_nonnegative);
        assert!(b.projection_profile.is_some());
    }
}

#[test]
fn similarity_of_hand_pair_has_frozen_metric() {
    let op = hand_pair();
    let s = similarity_transform(&op, &tols()).unwrap();
    // J_A = P(+1) - P(-1) = A itself here.
    assert!(spectral_norm(&(&s.j_a - op.matrix())) < 1e-8);
    assert!(s.involution_residual < 1e-8);
    assert!(s.ga_hermitian_residual < 1e-8);
    assert!(s.commutation_residual < 1e-8);
    assert_eq!(s.g_eigenvalues.len(), 2);
    assert_abs_diff_eq!(s.g_eigenvalues[0], 1.0 / 3.0, epsilon = 1e-8);
    assert_abs_diff_eq!(s.g_eigenvalues[1], 3.0, epsilon = 1e-8);
    assert!(s.g_min_eigenvalue > 0.3);
}

#[test]
fn similarity_with_kernel_block() {
    // A = diag(4, 0) with J = diag(1, -1): the kernel has negative sign,
    // so the assembled symmetry equals J and the metric is the identity.
    let j = FundamentalSymmetry::from_signature(1, 1);
    let a = array![[r(4.0), r(0.0)], [r(0.0), r(0.0)]];
    let op = KreinOperator::new(a, j, &tols()).unwrap();
    let s = similarity_transform(&op, &tols()).unwrap();
    assert!(spectral_norm(&(&s.j_a - op.symmetry().matrix())) < 1e-8);
    assert!(spectral_norm(&(&s.g - &identity(2))) < 1e-8);
}

#[test]
fn similarity_refusals() {
    let err = similarity_transform(&canonical_nilpotent(), &tols()).unwrap_err();
    match err {
        SimilarityRefusal::KernelChain { d1, d2 } => assert_eq!((d1, d2), (1, 2)),
        other => panic!("expected kernel-chain refusal, got {other}"),
    }

    // Eigenvalues +-i.
    let j = FundamentalSymmetry::from_signature(1, 1);
    let a = array![[r(0.0), r(1.0)], [r(-1.0), r(0.0)]];
    let op = KreinOperator::new(a, j, &tols()).unwrap();
    assert!(matches!(
        similarity_transform(&op, &tols()),
        Err(SimilarityRefusal::NonRealSpectrum { .. })
    ));

    // Eigenvalue 2 of negative type.
    let j = FundamentalSymmetry::from_signature(1, 1);
    let a = array![[r(1.0), r(0.0)], [r(0.0), r(2.0)]];
    let op = KreinOperator::new(a, j, &tols()).unwrap();
    assert!(matches!(
        similarity_transform(&op, &tols()),
        Err(SimilarityRefusal::WrongSignType { .. })
    ));
}

#[test]
fn similarity_metric_really_symmetrizes() {
    // For a valid similarity output, G is positive definite and GA is
    // Hermitian, which makes A similar to a Hilbert-space self-adjoint
    // operator via G^{1/2}.
    let op = hand_pair();
    let s = similarity_transform(&op, &tols()).unwrap();
    let ga = s.g.dot(op.matrix());
    let defect = spectral_norm(&(&ga - &krein::linalg::dagger(&ga)));
    assert!(defect < 1e-8);
}

fn block_pair() -> KreinOperator {
    let j = FundamentalSymmetry::from_matrix(
        array![
            [r(1.0), r(0.0), r(0.0)],
            [r(0.0), r(-1.0), r(0.0)],
            [r(0.0), r(0.0), r(1.0)]
        ],
        &tols(),
    )
    .unwrap();
    let a = array![
        [r(0.0), r(1.0), r(0.0)],
        [r(-1.0), r(0.0), r(0.0)],
        [r(0.0), r(0.0), r(5.0)]
    ];
    KreinOperator::new(a, j, &tols()).unwrap()
}

#[test]
fn local_split_of_block_pair() {
    let op = block_pair();
    let nb = Neighborhood::disc(Complex64::new(0.0, 0.0), 2.0);
    let split = decompose_locally(&op, &nb, &tols()).unwrap();
    assert_eq!(split.inside_centers.len(), 1);
    assert_eq!(split.outside_centers.len(), 1);
    assert_abs_diff_eq!(split.outside_centers[0].re, 5.0, epsilon = 1e-8);
    assert_eq!(split.a_inside.nrows(), 2);
    assert_eq!(split.a_outside.nrows(), 1);
    assert!(split.invariance_residual < 1e-8);
    // The inside restriction in this basis-independent sense still has
    // eigenvalues +-i.
    let eigs = krein::linalg::eigenvalues(&split.a_inside).unwrap();
    let mut ims: Vec<f64> = eigs.iter().map(|z| z.im).collect();
    ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_abs_diff_eq!(ims[0], -1.0, epsilon = 1e-8);
    assert_abs_diff_eq!(ims[1], 1.0, epsilon = 1e-8);
}

#[test]
fn gamma_bound_of_block_pair_is_minus_one() {
    let op = block_pair();
    let nb = Neighborhood::disc(Complex64::new(0.0, 0.0), 2.0);
    let split = decompose_locally(&op, &nb, &tols()).unwrap();
    let bound = lower_bound_gamma(&split, &tols()).unwrap();
    assert_abs_diff_eq!(bound.gamma, -1.0, epsilon = 1e-8);
    // The certificate inequality holds on the drawn samples.
    assert!(bound.sample_min_ratio >= bound.gamma - 1e-8);
}

#[test]
fn local_nonneg_check_of_block_pair() {
    let op = block_pair();
    let region = EnclosureRegion::capsule(0.0, 0.0, 1.5).unwrap();
    let report = check_local_nonneg(&op, &region, &tols()).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
    assert!(report.outside_form_min.unwrap() > 4.9);
    assert!(report.dilation_consistent.iter().all(|(_, same)| *same));
    // One cluster inside (the pair at +-i), one outside (5).
    let inside: usize = report.checks.iter().filter(|c| c.inside).count();
    assert_eq!(inside, 1);
}

#[test]
fn local_nonneg_check_fails_for_bad_outside_spectrum() {
    // Same block shape, but the outside eigenvalue 5 gets negative type.
    let j = FundamentalSymmetry::from_matrix(
        array![
            [r(1.0), r(0.0), r(0.0)],
            [r(0.0), r(-1.0), r(0.0)],
            [r(0.0), r(0.0), r(-1.0)]
        ],
        &tols(),
    )
    .unwrap();
    let a = array![
        [r(0.0), r(1.0), r(0.0)],
        [r(-1.0), r(0.0), r(0.0)],
        [r(0.0), r(0.0), r(5.0)]
    ];
    let op = KreinOperator::new(a, j, &tols()).unwrap();
    let region = EnclosureRegion::capsule(0.0, 0.0, 1.5).unwrap();
    let report = check_local_nonneg(&op, &region, &tols()).unwrap();
    assert_eq!(report.verdict, Verdict::Fail);
    assert!(report.outside_form_min.unwrap() < -4.9);
}

#[test]
fn empty_region_reduces_to_global_check() {
    let op = hand_pair();
    let report = check_local_nonneg(&op, &EnclosureRegion::Empty, &tols()).unwrap();
    assert_eq!(report.verdict, Verdict::Pass);
    assert!(report.checks.iter().all(|c| !c.inside));
}

/// Build J A = B^* B + floor, a guaranteed non-negative operator.
fn random_nonneg(n: usize, seed: u64, floor: f64) -> KreinOperator {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = (n + 1) / 2;
    let j = FundamentalSymmetry::from_signature(p, n - p);
    let mut b = krein::CMat::zeros((n, n));
    for i in 0..n {
        for k in 0..n {
            b[[i, k]] = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
    }
    let mut h = krein::linalg::dagger(&b).dot(&b);
    for i in 0..n {
        h[[i, i]] += floor;
    }
    let a = j.matrix().dot(&h);
    KreinOperator::new(a, j, &tols()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Direct non-negativity and the spectral criteria agree whenever the
    /// criteria return a definite verdict.
    #[test]
    fn criteria_biconditional_on_nonneg_instances(seed in 0u64..500, n in 2usize..6) {
        let op = random_nonneg(n, seed, 0.1);
        let v = check_nonneg_spectral(&op, &tols()).unwrap();
        prop_assert!(v.is_nonnegative);
        if let Some(agree) = v.agreement() {
            prop_assert!(agree, "criteria disagree with the direct test");
        }
    }

    /// Generic operators: whenever the verdict is definite it matches the
    /// direct test.
    #[test]
    fn criteria_biconditional_on_generic_instances(seed in 0u64..500, n in 2usize..6) {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = (n + 1) / 2;
        let j = FundamentalSymmetry::from_signature(p, n - p);
        let mut h = krein::CMat::zeros((n, n));
        for i in 0..n {
            for k in 0..n {
                h[[i, k]] = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            }
        }
        let herm = krein::linalg::hermitian_part(&h);
        let a = j.matrix().dot(&herm);
        let op = KreinOperator::new(a, j, &tols()).unwrap();
        let v = check_nonneg_spectral(&op, &tols()).unwrap();
        if let Some(agree) = v.agreement() {
            prop_assert!(agree, "criteria disagree with the direct test");
        }
    }

    /// Uniformly positive instances admit the similarity construction, and
    /// the resulting metric certifies them.
    #[test]
    fn similarity_exists_for_positive_instances(seed in 0u64..500, n in 2usize..6) {
        let op = random_nonneg(n, seed, 0.5);
        let s = similarity_transform(&op, &tols()).unwrap();
        prop_assert!(s.g_min_eigenvalue > 0.0);
        prop_assert!(s.involution_residual < 1e-7);
        prop_assert!(s.ga_hermitian_residual < 1e-6 * (1.0 + op.norm()));
    }
}
