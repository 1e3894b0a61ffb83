//! Enclosure for perturbations of a block-diagonal non-negative operator.
//!
//! A = diag(A+, A-) with A+ >= 0 and A- <= 0 gets perturbed by a
//! J-self-adjoint V with blocks V+, V-, V0. The spectrum of A + V stays
//! within the capsule around [-||V+||, ||V-||] of radius ||V0||, except for
//! real points that keep the sign type of their half-axis. The certificate
//! re-checks every eigenvalue of A + V against the region.

use krein::instances::{generate, InstanceSpec};
use krein::perturb::{block_diagonal_region, split_blocks};
use krein::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tols = Tolerances::default();
    let inst = generate(&InstanceSpec::block_diagonal(5, 6, 0.8, 0.35, 0.25, 0.45), &tols)?;
    let v = inst
        .perturbation_operator(&tols)?
        .expect("block instances carry a perturbation");

    let blocks = split_blocks(&v, &tols)?;
    println!(
        "perturbation blocks: ||V+|| = {:.3}, ||V-|| = {:.3}, ||V0|| = {:.3} (signature {:?})",
        blocks.norm_plus, blocks.norm_minus, blocks.norm_zero, blocks.signature
    );

    let cert = block_diagonal_region(&inst.operator, &v, &tols)?;
    println!(
        "certificate {:?}: region {} , verified: {}",
        cert.theorem,
        serde_json::to_string(&cert.region)?,
        cert.verified
    );
    println!("eigenvalues of A + V against the region:");
    for check in &cert.verification.checks {
        println!(
            "  {:+.4}{:+.4}i  {}  margin {:+.3e}  {}",
            check.center.re,
            check.center.im,
            if check.inside { "inside " } else { "outside" },
            check.margin,
            check.detail
        );
    }
    println!(
        "indeterminate: {}, smallest boundary distance: {:?}",
        cert.verification.indeterminate, cert.verification.boundary_gap
    );
    Ok(())
}
