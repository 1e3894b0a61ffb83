//! Similarity to a self-adjoint operator.
//!
//! A non-negative operator with trivial root structure at 0 is similar to a
//! self-adjoint one: G = J J_A is positive definite and GA is Hermitian, so
//! A is self-adjoint in the <G.,.> inner product. A genuine Jordan block at
//! 0 blocks the construction, and the refusal names the obstruction.

use krein::characterize::similarity_transform;
use krein::instances::{generate, InstanceSpec};
use krein::linalg::{dagger, spectral_norm};
use krein::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tols = Tolerances::default();

    let inst = generate(&InstanceSpec::random_nonnegative(21, 6, 4, 0.2), &tols)?;
    let op = &inst.operator;
    let res = similarity_transform(op, &tols)?;
    println!(
        "metric G: eigenvalues in [{:.4}, {:.4}], all positive",
        res.g_min_eigenvalue,
        res.g_eigenvalues.last().copied().unwrap_or(f64::NAN)
    );
    println!(
        "residuals: ||J_A^2 - I|| = {:.2e}, ||GA - (GA)*|| = {:.2e}, ||J_A A - A J_A|| = {:.2e}",
        res.involution_residual, res.ga_hermitian_residual, res.commutation_residual
    );

    // Spot check: GA really is Hermitian to machine precision.
    let ga = res.g.dot(op.matrix());
    let herm_defect = spectral_norm(&(&ga - &dagger(&ga)));
    println!("recomputed Hermiticity defect of GA: {herm_defect:.2e}");

    // A nilpotent part at 0 makes the operator genuinely non-diagonalizable;
    // no positive metric can symmetrize it.
    let jordan = generate(&InstanceSpec::jordan_at_zero(4, 5, 2), &tols)?;
    match similarity_transform(&jordan.operator, &tols) {
        Ok(_) => println!("unexpectedly succeeded"),
        Err(err) => println!("size-2 Jordan block at 0 is refused: {err}"),
    }
    Ok(())
}
