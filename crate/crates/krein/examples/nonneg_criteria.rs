//! Non-negativity: spectral criteria against the direct form test.
//!
//! The direct test diagonalizes JA. The criteria instead inspect the
//! spectrum: real, correct sign types on each half-axis, and a controlled
//! degeneracy at 0 (kernel chain or root-vector route). On finite matrices
//! the two must agree; the point of the criteria is that they generalize.

use krein::characterize::{check_nonneg_root, check_nonneg_spectral};
use krein::instances::{generate, InstanceSpec};
use krein::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tols = Tolerances::default();

    let good = generate(&InstanceSpec::random_nonnegative(11, 6, 4, 0.2), &tols)?;
    let verdict = check_nonneg_spectral(&good.operator, &tols)?;
    println!(
        "constructed non-negative: direct {} (min eig {:.3e}), criteria {:?}, agree: {:?}",
        verdict.is_nonnegative,
        verdict.direct_min_eigenvalue,
        verdict.criteria_verdict,
        verdict.agreement()
    );
    for cond in &verdict.conditions {
        println!("  [{:?}] {}", cond.verdict, cond.summary);
    }
    println!(
        "  uniformly positive: {} (0 in the resolvent set)",
        verdict.uniformly_positive
    );

    // A size-3 Jordan block at 0 breaks the kernel-chain condition even
    // though the spectrum is real.
    let bad = generate(&InstanceSpec::jordan_at_zero(3, 5, 3), &tols)?;
    let verdict = check_nonneg_spectral(&bad.operator, &tols)?;
    println!(
        "size-3 Jordan block at 0: direct {} , criteria {:?}, kernel dims {:?}",
        verdict.is_nonnegative, verdict.criteria_verdict, verdict.kernel_dims
    );
    for cond in verdict.conditions.iter().filter(|c| !c.verdict.is_pass()) {
        println!("  [{:?}] {}", cond.verdict, cond.summary);
    }

    // The root-vector route replaces the kernel chain by the boundedness of
    // Riesz projections over shrinking contours around 0.
    let verdict = check_nonneg_root(&bad.operator, &tols)?;
    println!(
        "same instance via root vectors: criteria {:?}, projection profile tail:",
        verdict.criteria_verdict
    );
    if let Some(profile) = &verdict.projection_profile {
        for (radius, norm) in profile.iter().rev().take(3).rev() {
            println!("  contour radius {radius:>9.3e} -> projection norm {norm:>10.4e}");
        }
    }
    Ok(())
}
