//! Non-negativity verdicts, the similarity-to-Hilbert construction, and
//! local non-negativity outside a compact region.
//!
//! Non-negativity of a Krein-space self-adjoint matrix has two independent
//! routes here. The direct route tests whether `JA` is positive
//! semidefinite. The spectral route checks the characterizing criteria:
//! real spectrum with the matching sign type on each half-axis, controlled
//! resolvent growth at infinity, and at the origin a kernel chain that
//! stabilizes after the second power together with a positive semidefinite
//! form on `ker A^2`. Both routes are reported side by side and never
//! collapsed into one code path.

use crate::linalg::{
    self, dagger, herm_eigs, herm_function, hermitian_part, identity, null_space,
    orthonormal_range, spectral_norm, CMat, NumericsError,
};
use crate::operator::KreinOperator;
use crate::regions::{EnclosureRegion, Neighborhood};
use crate::spectral::{
    classify_real_point, decompose, growth_at_infinity, projection_norm_profile, root_chain,
    InfinityGrowth, SignType, SpectralDecomposition, SpectralError,
};
use crate::tol::Tolerances;
use crate::verdict::{Condition, Verdict};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CharacterizeError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("{0}")]
    Degenerate(String),
}

/// Direct non-negativity: smallest eigenvalue of the Hermitian part of
/// `JA`, compared against the sign tolerance.
pub fn is_nonnegative_direct(op: &KreinOperator, tols: &Tolerances) -> (bool, f64) {
    let gram = op.gram_matrix();
    let min = herm_eigs(&gram)
        .map(|(vals, _)| vals.first().copied().unwrap_or(0.0))
        .unwrap_or(f64::NEG_INFINITY);
    (min >= -tols.tol_sign(op.norm()), min)
}

/// Which spectral route produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriteriaRoute {
    /// Kernel-chain form of the zero condition.
    KernelChain,
    /// Root-subspace form, with spectral projection norms as evidence.
    RootVectors,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonnegVerdict {
    /// Result of the direct `JA >= 0` test.
    pub is_nonnegative: bool,
    pub direct_min_eigenvalue: f64,
    /// Combined verdict of the spectral criteria.
    pub criteria_verdict: Verdict,
    pub conditions: Vec<Condition>,
    pub route: CriteriaRoute,
    /// Non-negative with 0 in the resolvent set.
    pub uniformly_positive: bool,
    /// Kernel chain dimensions at 0, when 0 belongs to the spectrum.
    pub kernel_dims: Option<Vec<usize>>,
    /// Smallest eigenvalue of the form of `JA` restricted to `ker A^2`.
    pub zero_gram_min: Option<f64>,
    /// Projection norms over shrinking contours (root-vector route only).
    pub projection_profile: Option<Vec<(f64, f64)>>,
    pub infinity_growth: InfinityGrowth,
}

impl NonnegVerdict {
    /// Agreement between the spectral criteria and the direct test; `None`
    /// while the criteria are indeterminate.
    pub fn agreement(&self) -> Option<bool> {
        match self.criteria_verdict {
            Verdict::Indeterminate => None,
            Verdict::Pass => Some(self.is_nonnegative),
            Verdict::Fail => Some(!self.is_nonnegative),
        }
    }
}

/// Spectral non-negativity criteria, kernel-chain form of the condition at
/// the origin.
pub fn check_nonneg_spectral(
    op: &KreinOperator,
    tols: &Tolerances,
) -> Result<NonnegVerdict, CharacterizeError> {
    nonneg_via_criteria(op, tols, CriteriaRoute::KernelChain)
}

/// Spectral non-negativity criteria, root-subspace form: same decision
/// core, plus projection-norm profiles around the real spectrum as
/// boundedness evidence.
pub fn check_nonneg_root(
    op: &KreinOperator,
    tols: &Tolerances,
) -> Result<NonnegVerdict, CharacterizeError> {
    nonneg_via_criteria(op, tols, CriteriaRoute::RootVectors)
}

fn nonneg_via_criteria(
    op: &KreinOperator,
    tols: &Tolerances,
    route: CriteriaRoute,
) -> Result<NonnegVerdict, CharacterizeError> {
    let (is_nonnegative, direct_min_eigenvalue) = is_nonnegative_direct(op, tols);
    let decomp = decompose(op, tols)?;
    let band = tols.margin(op.norm());
    let mut conditions = Vec::new();

    // Condition: real spectrum, positive type on the right half-axis,
    // negative type on the left, the origin exempt.
    conditions.push(real_sign_condition(op, &decomp, band, tols)?);

    // Condition: resolvent growth of order at most two at infinity. For a
    // matrix this holds automatically; the samples document the constant.
    let infinity_growth = growth_at_infinity(op);
    conditions.push(if infinity_growth.bounded {
        Condition::pass(format!(
            "resolvent decays at infinity (max |z| ||R(z)|| = {:.3e})",
            infinity_growth.constant
        ))
    } else {
        Condition::indeterminate(
            "resolvent samples at infinity exceed the bounded-operator envelope".to_string(),
        )
    });

    // Condition at the origin: the kernel chain stabilizes at the second
    // power and the form of JA on ker A^2 is positive semidefinite.
    let zero_cluster = decomp
        .clusters
        .iter()
        .find(|cl| cl.is_real && cl.center.norm() == 0.0);
    let mut kernel_dims = None;
    let mut zero_gram_min = None;
    if zero_cluster.is_some() {
        let dims = root_chain(op, Complex64::new(0.0, 0.0), op.dim() + 1, tols)?;
        let d2 = dims.get(1).copied().unwrap_or_else(|| dims[0]);
        let d3 = dims.get(2).copied().unwrap_or(d2);
        let chain_ok = d2 == d3;
        let basis = kernel_power_basis(op, 2, tols)?;
        let form = hermitian_part(&basis_form(op, &basis));
        let (eigs, _) = herm_eigs(&form)?;
        let min = eigs.first().copied().unwrap_or(0.0);
        zero_gram_min = Some(min);
        kernel_dims = Some(dims);
        let tol = tols.tol_sign(op.norm());
        let cond = if !chain_ok {
            Condition::fail(format!(
                "kernel chain keeps growing: dim ker A^2 = {d2}, dim ker A^3 = {d3}"
            ))
        } else if min >= -tol {
            Condition::pass(format!(
                "ker A^2 stabilizes and the form of JA on it is semidefinite (min {min:.3e})"
            ))
        } else if min >= -tols.margin_factor * tol {
            Condition::indeterminate(format!(
                "form of JA on ker A^2 is slightly negative (min {min:.3e})"
            ))
        } else {
            Condition::fail(format!(
                "form of JA on ker A^2 has a negative direction (min {min:.3e})"
            ))
        };
        conditions.push(cond);
    } else {
        conditions.push(Condition::pass(
            "0 is in the resolvent set; no condition at the origin".to_string(),
        ));
    }

    let projection_profile = if route == CriteriaRoute::RootVectors {
        // Evidence of uniformly bounded spectral projections near the
        // spectral point that matters most: the origin when present,
        // otherwise the real point closest to it.
        let target = zero_cluster
            .map(|cl| cl.center)
            .or_else(|| {
                decomp
                    .clusters
                    .iter()
                    .filter(|cl| cl.is_real)
                    .min_by(|a, b| {
                        a.center
                            .norm()
                            .partial_cmp(&b.center.norm())
                            .expect("finite centers")
                    })
                    .map(|cl| cl.center)
            });
        match target {
            Some(center) => Some(projection_norm_profile(op, &decomp, center, tols)?),
            None => None,
        }
    } else {
        None
    };

    let criteria_verdict = Verdict::combine(conditions.iter().map(|c| c.verdict));
    let has_zero = zero_cluster.is_some();
    let uniformly_positive = is_nonnegative && !has_zero;

    Ok(NonnegVerdict {
        is_nonnegative,
        direct_min_eigenvalue,
        criteria_verdict,
        conditions,
        route,
        uniformly_positive,
        kernel_dims,
        zero_gram_min,
        projection_profile,
        infinity_growth,
    })
}

/// Sign-type condition over the whole spectrum, with an indeterminate band
/// of width `band` around the real axis and around the origin.
fn real_sign_condition(
    op: &KreinOperator,
    decomp: &SpectralDecomposition,
    band: f64,
    tols: &Tolerances,
) -> Result<Condition, CharacterizeError> {
    let mut worst = Verdict::Pass;
    let mut notes = Vec::new();
    for cl in &decomp.clusters {
        if !cl.is_real {
            let im = cl
                .eigenvalues
                .iter()
                .map(|e| e.im.abs())
                .fold(0.0, f64::max);
            if im <= band {
                worst = Verdict::combine([worst, Verdict::Indeterminate]);
                notes.push(format!(
                    "cluster near {} is non-real within the margin band",
                    cl.center
                ));
            } else {
                worst = Verdict::Fail;
                notes.push(format!("non-real spectrum at {}", cl.center));
            }
            continue;
        }
        let x = cl.center.re;
        if x == 0.0 {
            continue;
        }
        let cls = classify_real_point(op, decomp, cl.center, tols)?;
        let expected = if x > 0.0 {
            SignType::PositiveType
        } else {
            SignType::NegativeType
        };
        if cls.sign == expected {
            continue;
        }
        if x.abs() <= band {
            worst = Verdict::combine([worst, Verdict::Indeterminate]);
            notes.push(format!(
                "point {x:.3e} of type {:?} sits in the margin band around 0",
                cls.sign
            ));
        } else {
            worst = Verdict::Fail;
            notes.push(format!("{:?} at {x:.6} (expected {expected:?})", cls.sign));
        }
    }
    let summary = if notes.is_empty() {
        "spectrum real with matching sign types on both half-axes".to_string()
    } else {
        notes.join("; ")
    };
    Ok(Condition {
        verdict: worst,
        summary,
    })
}

/// Orthonormal basis of `ker A^k`.
fn kernel_power_basis(
    op: &KreinOperator,
    k: usize,
    tols: &Tolerances,
) -> Result<CMat, CharacterizeError> {
    let mut power = identity(op.dim());
    for _ in 0..k {
        power = power.dot(op.matrix());
    }
    let scale = spectral_norm(&power);
    let scaled = if scale > 0.0 {
        power.mapv(|x| x / scale)
    } else {
        power
    };
    Ok(null_space(&scaled, tols)?.basis)
}

/// Matrix of the form `[A ., .]` in the columns of `basis`:
/// `basis^† (JA) basis`.
fn basis_form(op: &KreinOperator, basis: &CMat) -> CMat {
    dagger(basis).dot(&op.jmul()).dot(basis)
}

/// Why the similarity construction was refused.
#[derive(Debug, thiserror::Error)]
pub enum SimilarityRefusal {
    #[error("spectrum is not real: cluster at {center}")]
    NonRealSpectrum { center: Complex64 },
    #[error("sign type {sign:?} at {point} blocks the construction")]
    WrongSignType { point: Complex64, sign: SignType },
    #[error("kernel chain does not stabilize: dim ker A = {d1}, dim ker A^2 = {d2}")]
    KernelChain { d1: usize, d2: usize },
    #[error("inner product degenerates on ker A (smallest |eigenvalue| {min_abs:e})")]
    DegenerateKernelForm { min_abs: f64 },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("constructed metric failed validation: {0}")]
    Validation(String),
}

/// The assembled similarity data: a fundamental symmetry commuting with
/// `A` and the positive definite metric that turns `A` into a Hilbert-space
/// self-adjoint operator.
#[derive(Debug, Clone, Serialize)]
pub struct SimilarityResult {
    /// New fundamental symmetry `J_A` built from the spectral halves and
    /// the signed kernel part.
    #[serde(skip)]
    pub j_a: CMat,
    /// `G = J J_A`, Hermitian positive definite, with `GA` Hermitian.
    #[serde(skip)]
    pub g: CMat,
    pub g_eigenvalues: Vec<f64>,
    pub g_min_eigenvalue: f64,
    /// `|| J_A^2 - I ||`.
    pub involution_residual: f64,
    /// `|| GA - (GA)^† ||`.
    pub ga_hermitian_residual: f64,
    /// `|| J_A A - A J_A ||`.
    pub commutation_residual: f64,
}

/// Build the similarity metric for a non-negative operator with real
/// spectrum, definite sign types, and `ker A = ker A^2`.
///
/// `J_A = E(+) - E(-) + Q0 S0 Q0^† E(0)`, where `E(+-)` are the spectral
/// projections of the open half-axes, `Q0` is an orthonormal kernel basis,
/// and `S0` is the sign of the kernel Gram matrix in that basis.
pub fn similarity_transform(
    op: &KreinOperator,
    tols: &Tolerances,
) -> Result<SimilarityResult, SimilarityRefusal> {
    let decomp = decompose(op, tols)?;
    let n = op.dim();

    for cl in &decomp.clusters {
        if !cl.is_real {
            return Err(SimilarityRefusal::NonRealSpectrum { center: cl.center });
        }
    }

    let mut j_a = CMat::zeros((n, n));
    for cl in &decomp.clusters {
        let x = cl.center.re;
        if x == 0.0 {
            let dims = root_chain(op, Complex64::new(0.0, 0.0), 3, tols)?;
            let d1 = dims[0];
            let d2 = dims.get(1).copied().unwrap_or(d1);
            if d1 != d2 {
                return Err(SimilarityRefusal::KernelChain { d1, d2 });
            }
            let q0 = null_space(op.matrix(), tols)?.basis;
            let g0 = hermitian_part(&op.symmetry().gram(&q0));
            let (mu, w) = herm_eigs(&g0)?;
            let min_abs = mu.iter().map(|m| m.abs()).fold(f64::INFINITY, f64::min);
            if min_abs <= tols.tol_sign(1.0) {
                return Err(SimilarityRefusal::DegenerateKernelForm { min_abs });
            }
            let s0 = herm_function(&g0, |m| m.signum())?;
            let _ = (mu, w);
            let term = q0.dot(&s0).dot(&dagger(&q0)).dot(&cl.projection);
            j_a = j_a + term;
        } else {
            let cls = classify_real_point(op, &decomp, cl.center, tols)?;
            let expected = if x > 0.0 {
                SignType::PositiveType
            } else {
                SignType::NegativeType
            };
            if cls.sign != expected {
                return Err(SimilarityRefusal::WrongSignType {
                    point: cl.center,
                    sign: cls.sign,
                });
            }
            if x > 0.0 {
                j_a = j_a + &cl.projection;
            } else {
                j_a = j_a - &cl.projection;
            }
        }
    }

    let involution_residual = spectral_norm(&(&j_a.dot(&j_a) - &identity(n)));
    let g = op.symmetry().matrix().dot(&j_a);
    let g_sym = hermitian_part(&g);
    let hermiticity = spectral_norm(&(&g - &g_sym));
    let (g_eigenvalues, _) = herm_eigs(&g_sym)?;
    let g_min_eigenvalue = g_eigenvalues.first().copied().unwrap_or(0.0);
    let ga = g_sym.dot(op.matrix());
    let ga_hermitian_residual = spectral_norm(&(&ga - &dagger(&ga)));
    let commutation_residual =
        spectral_norm(&(&j_a.dot(op.matrix()) - &op.matrix().dot(&j_a)));

    let scale = 1.0 + op.norm() + spectral_norm(&j_a);
    let budget = 1e-6 * scale * scale;
    if involution_residual > budget {
        return Err(SimilarityRefusal::Validation(format!(
            "J_A is not an involution (residual {involution_residual:e})"
        )));
    }
    if hermiticity > budget {
        return Err(SimilarityRefusal::Validation(format!(
            "G is not Hermitian (residual {hermiticity:e})"
        )));
    }
    if g_min_eigenvalue <= 0.0 {
        return Err(SimilarityRefusal::Validation(format!(
            "G is not positive definite (min eigenvalue {g_min_eigenvalue:e})"
        )));
    }
    if ga_hermitian_residual > budget {
        return Err(SimilarityRefusal::Validation(format!(
            "GA is not Hermitian (residual {ga_hermitian_residual:e})"
        )));
    }

    Ok(SimilarityResult {
        j_a,
        g: g_sym,
        g_eigenvalues,
        g_min_eigenvalue,
        involution_residual,
        ga_hermitian_residual,
        commutation_residual,
    })
}

/// The spectrum split across a neighborhood: invariant subspaces, their
/// compressions, and the inner-product Gram matrices in orthonormal
/// coordinates.
#[derive(Debug, Clone)]
pub struct LocalSplit {
    pub inside_centers: Vec<Complex64>,
    pub outside_centers: Vec<Complex64>,
    /// Centers whose distance to the neighborhood boundary is below the
    /// margin band; they are still assigned by the sign of the margin.
    pub band_centers: Vec<Complex64>,
    pub e_inside: CMat,
    pub e_outside: CMat,
    pub q_inside: CMat,
    pub q_outside: CMat,
    pub a_inside: CMat,
    pub a_outside: CMat,
    pub gram_inside: CMat,
    pub gram_outside: CMat,
    /// Largest `||A Q - Q (Q^† A Q)||` over both blocks.
    pub invariance_residual: f64,
}

/// Split the operator across a neighborhood of part of its spectrum.
pub fn decompose_locally(
    op: &KreinOperator,
    nb: &Neighborhood,
    tols: &Tolerances,
) -> Result<LocalSplit, CharacterizeError> {
    let decomp = decompose(op, tols)?;
    let band = tols.margin(op.norm());
    let mut inside_centers = Vec::new();
    let mut outside_centers = Vec::new();
    let mut band_centers = Vec::new();
    let n = op.dim();
    let mut e_inside = CMat::zeros((n, n));
    let mut e_outside = CMat::zeros((n, n));
    for cl in &decomp.clusters {
        let margin = nb.signed_margin(cl.center);
        if margin.abs() <= band {
            band_centers.push(cl.center);
        }
        if margin < 0.0 {
            inside_centers.push(cl.center);
            e_inside = e_inside + &cl.projection;
        } else {
            outside_centers.push(cl.center);
            e_outside = e_outside + &cl.projection;
        }
    }
    let (q_inside, a_inside, gram_inside, res_in) = compress_block(op, &e_inside, tols)?;
    let (q_outside, a_outside, gram_outside, res_out) = compress_block(op, &e_outside, tols)?;
    Ok(LocalSplit {
        inside_centers,
        outside_centers,
        band_centers,
        e_inside,
        e_outside,
        q_inside,
        q_outside,
        a_inside,
        a_outside,
        gram_inside,
        gram_outside,
        invariance_residual: res_in.max(res_out),
    })
}

/// Orthonormal basis of the range of a spectral projection, the compression
/// of `A` to it, and the Gram matrix of the inner product there. The range
/// is `A`-invariant, so the compression represents the restriction; the
/// returned residual quantifies that.
fn compress_block(
    op: &KreinOperator,
    projection: &CMat,
    tols: &Tolerances,
) -> Result<(CMat, CMat, CMat, f64), CharacterizeError> {
    // Nonzero singular values of an idempotent are at least 1.
    let q = orthonormal_range(projection, 0.5)?;
    let a_block = dagger(&q).dot(op.matrix()).dot(&q);
    let gram = op.symmetry().gram(&q);
    let residual = if q.ncols() == 0 {
        0.0
    } else {
        spectral_norm(&(&op.matrix().dot(&q) - &q.dot(&a_block)))
    };
    let _ = tols;
    Ok((q, a_block, gram, residual))
}

/// A certified lower bound for the quadratic form on the inside block.
#[derive(Debug, Clone, Serialize)]
pub struct GammaBound {
    /// `[A f, f] >= gamma * <f, f>_H` for `f` in the inside subspace,
    /// where `H = |G|` is the positively rectified coordinate metric.
    pub gamma: f64,
    #[serde(skip)]
    pub h_metric: CMat,
    /// Smallest sampled Rayleigh ratio, a spot check of the certificate.
    pub sample_min_ratio: f64,
    pub samples: usize,
}

/// Lower bound `gamma = -|| H^{1/2} A_b H^{-1/2} ||` for the inside block
/// of a local split, with fixed-seed random Rayleigh samples as a
/// cross-check.
pub fn lower_bound_gamma(
    split: &LocalSplit,
    tols: &Tolerances,
) -> Result<GammaBound, CharacterizeError> {
    let g = hermitian_part(&split.gram_inside);
    let (mu, _) = herm_eigs(&g)?;
    let min_abs = mu.iter().map(|m| m.abs()).fold(f64::INFINITY, f64::min);
    if !min_abs.is_finite() || min_abs <= tols.tol_sign(1.0) {
        return Err(CharacterizeError::Degenerate(format!(
            "inner product degenerates on the inside block (smallest |eigenvalue| {min_abs:e})"
        )));
    }
    let h = herm_function(&g, f64::abs)?;
    let h_half = herm_function(&g, |m| m.abs().sqrt())?;
    let h_half_inv = herm_function(&g, |m| 1.0 / m.abs().sqrt())?;
    let gamma = -spectral_norm(&h_half.dot(&split.a_inside).dot(&h_half_inv));

    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let k = split.a_inside.nrows();
    let form = g.dot(&split.a_inside);
    let samples = 64usize;
    let mut sample_min_ratio = f64::INFINITY;
    for _ in 0..samples {
        let u = crate::linalg::CVec::from_shape_fn(k, |_| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let num = linalg::euclid_inner(&form.dot(&u), &u).re;
        let den = linalg::euclid_inner(&h.dot(&u), &u).re;
        if den > 0.0 {
            sample_min_ratio = sample_min_ratio.min(num / den);
        }
    }
    Ok(GammaBound {
        gamma,
        h_metric: h,
        sample_min_ratio,
        samples,
    })
}

/// Per-cluster record of the local non-negativity check.
#[derive(Debug, Clone, Serialize)]
pub struct EigCheck {
    pub center: Complex64,
    pub inside: bool,
    /// Signed distance of the center to the region boundary.
    pub margin: f64,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalNonnegReport {
    pub verdict: Verdict,
    pub checks: Vec<EigCheck>,
    /// Smallest eigenvalue of the form of `JA` compressed to the outside
    /// spectral subspace, when that subspace is nontrivial.
    pub outside_form_min: Option<f64>,
    /// Whether the inside/outside partition is unchanged under dilation of
    /// the region by each factor.
    pub dilation_consistent: Vec<(f64, bool)>,
    pub conditions: Vec<Condition>,
}

/// Check that the operator is non-negative outside a compact region: the
/// spectrum away from the region must be real with the matching half-axis
/// sign types, and the form of `JA` on the outside spectral subspace must
/// be positive semidefinite.
pub fn check_local_nonneg(
    op: &KreinOperator,
    region: &EnclosureRegion,
    tols: &Tolerances,
) -> Result<LocalNonnegReport, CharacterizeError> {
    let decomp = decompose(op, tols)?;
    let band = tols.margin(op.norm());
    let tol = tols.tol_sign(op.norm());
    let mut checks = Vec::new();
    let n = op.dim();
    let mut e_outside = CMat::zeros((n, n));
    let mut outside_count = 0usize;

    for cl in &decomp.clusters {
        let margin = region.signed_margin(cl.center);
        let inside = margin <= 0.0;
        if inside {
            checks.push(EigCheck {
                center: cl.center,
                inside: true,
                margin,
                verdict: Verdict::Pass,
                detail: "inside the region, unconstrained".to_string(),
            });
            continue;
        }
        e_outside = e_outside + &cl.projection;
        outside_count += 1;
        if margin.abs() <= band {
            checks.push(EigCheck {
                center: cl.center,
                inside: false,
                margin,
                verdict: Verdict::Indeterminate,
                detail: format!("center within the margin band of the boundary ({margin:.3e})"),
            });
            continue;
        }
        if !cl.is_real {
            let im = cl
                .eigenvalues
                .iter()
                .map(|e| e.im.abs())
                .fold(0.0, f64::max);
            let verdict = if im <= band {
                Verdict::Indeterminate
            } else {
                Verdict::Fail
            };
            checks.push(EigCheck {
                center: cl.center,
                inside: false,
                margin,
                verdict,
                detail: format!("non-real spectrum outside the region (imag {im:.3e})"),
            });
            continue;
        }
        let x = cl.center.re;
        if x.abs() <= band {
            checks.push(EigCheck {
                center: cl.center,
                inside: false,
                margin,
                verdict: Verdict::Pass,
                detail: "origin outside the region is exempt from sign typing".to_string(),
            });
            continue;
        }
        let cls = classify_real_point(op, &decomp, cl.center, tols)?;
        let expected = if x > 0.0 {
            SignType::PositiveType
        } else {
            SignType::NegativeType
        };
        let (verdict, detail) = if cls.sign == expected {
            (Verdict::Pass, format!("{:?} as required", cls.sign))
        } else {
            (
                Verdict::Fail,
                format!("{:?} at {x:.6} (expected {expected:?})", cls.sign),
            )
        };
        checks.push(EigCheck {
            center: cl.center,
            inside: false,
            margin,
            verdict,
            detail,
        });
    }

    let mut conditions = Vec::new();
    let outside_form_min = if outside_count > 0 {
        let q = orthonormal_range(&e_outside, 0.5)?;
        let form = hermitian_part(&dagger(&q).dot(&op.jmul()).dot(&q));
        let (eigs, _) = herm_eigs(&form)?;
        let min = eigs.first().copied().unwrap_or(0.0);
        conditions.push(if min >= -tol {
            Condition::pass(format!(
                "form of JA on the outside subspace is semidefinite (min {min:.3e})"
            ))
        } else if min >= -tols.margin_factor * tol {
            Condition::indeterminate(format!(
                "form of JA on the outside subspace is slightly negative (min {min:.3e})"
            ))
        } else {
            Condition::fail(format!(
                "form of JA on the outside subspace has a negative direction (min {min:.3e})"
            ))
        });
        Some(min)
    } else {
        conditions.push(Condition::pass(
            "no spectrum outside the region".to_string(),
        ));
        None
    };

    // Partition stability under dilation: a robust enclosure keeps the
    // same inside/outside split when modestly inflated.
    let base: Vec<bool> = decomp
        .clusters
        .iter()
        .map(|cl| region.signed_margin(cl.center) <= 0.0)
        .collect();
    let mut dilation_consistent = Vec::new();
    for factor in [1.05, 1.2, 1.5] {
        let grown = region
            .dilate(factor)
            .map_err(|e| CharacterizeError::Degenerate(e.to_string()))?;
        let part: Vec<bool> = decomp
            .clusters
            .iter()
            .map(|cl| grown.signed_margin(cl.center) <= 0.0)
            .collect();
        // Dilation may only move clusters from outside to inside.
        let same = base
            .iter()
            .zip(&part)
            .all(|(b, p)| *b == *p || (!*b && *p));
        let unchanged = base == part;
        dilation_consistent.push((factor, same && unchanged));
    }

    let verdict = Verdict::combine(
        checks
            .iter()
            .map(|c| c.verdict)
            .chain(conditions.iter().map(|c| c.verdict)),
    );
    Ok(LocalNonnegReport {
        verdict,
        checks,
        outside_form_min,
        dilation_consistent,
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::FundamentalSymmetry;
    use ndarray::array;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn direct_test_on_definite_pair() {
        let tols = Tolerances::default();
        let j = FundamentalSymmetry::from_signature(2, 0);
        let a = array![[r(2.0), r(0.0)], [r(0.0), r(1.0)]];
        let op = KreinOperator::new(a, j, &tols).unwrap();
        let (ok, min) = is_nonnegative_direct(&op, &tols);
        assert!(ok);
        assert!((min - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hilbert_case_always_passes_criteria() {
        let tols = Tolerances::default();
        let j = FundamentalSymmetry::from_signature(2, 0);
        let a = array![[r(3.0), r(1.0)], [r(1.0), r(2.0)]];
        let op = KreinOperator::new(a, j, &tols).unwrap();
        let v = check_nonneg_spectral(&op, &tols).unwrap();
        assert!(v.is_nonnegative);
        assert_eq!(v.criteria_verdict, Verdict::Pass);
        assert!(v.uniformly_positive);
    }
}
