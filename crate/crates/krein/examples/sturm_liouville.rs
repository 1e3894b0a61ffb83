//! An indefinite-weight Sturm-Liouville discretization.
//!
//! -f'' + q f on (-1, 1) with Dirichlet ends and weight w(x) = sign(x - c)
//! becomes J A with J = diag(sign(w(x_i))) and A = J L for the tridiagonal
//! stiffness matrix L > 0. The result is a non-negative operator in an
//! indefinite metric whose spectrum splits by half-line, the discrete
//! shadow of a left-definite eigenvalue problem.

use krein::characterize::{check_nonneg_spectral, similarity_transform};
use krein::instances::{generate, InstanceSpec};
use krein::perturb::compute_tau;
use krein::spectral::{classify_real_point, decompose, SignType};
use krein::Tolerances;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tols = Tolerances::default();
    let n = 48;
    let inst = generate(&InstanceSpec::sturm_liouville(0, n, 0.0, vec![1.0; n]), &tols)?;
    let op = &inst.operator;
    let sig = op.symmetry().signature();
    println!("mesh size {n}, signature ({}, {})", sig.plus, sig.minus);

    let verdict = check_nonneg_spectral(op, &tols)?;
    println!(
        "non-negative: direct {} / criteria {:?}, uniformly positive: {}",
        verdict.is_nonnegative, verdict.criteria_verdict, verdict.uniformly_positive
    );

    let decomp = decompose(op, &tols)?;
    let mut positive = 0usize;
    let mut negative = 0usize;
    let mut misplaced = 0usize;
    let mut smallest = f64::INFINITY;
    for cl in &decomp.clusters {
        let cls = classify_real_point(op, &decomp, cl.center, &tols)?;
        match cls.sign {
            SignType::PositiveType if cl.center.re > 0.0 => positive += 1,
            SignType::NegativeType if cl.center.re < 0.0 => negative += 1,
            _ => misplaced += 1,
        }
        smallest = smallest.min(cl.center.re.abs());
    }
    println!(
        "{positive} positive-type eigenvalues on R+, {negative} negative-type on R-, {misplaced} misplaced"
    );
    println!("smallest |eigenvalue| = {smallest:.4} (the gap that tau needs)");

    let tau = compute_tau(op, &tols)?;
    println!("tau = {:.6} with {} quadrature nodes", tau.tau, tau.quadrature_nodes);

    let sim = similarity_transform(op, &tols)?;
    println!(
        "similar to self-adjoint: min eig(G) = {:.4e}, Hermiticity residual {:.2e}",
        sim.g_min_eigenvalue, sim.ga_hermitian_residual
    );

    // A nonzero potential shifts the diagonal; an asymmetric weight shifts
    // the signature.
    let shifted = generate(&InstanceSpec::sturm_liouville(0, n, 0.5, vec![]), &tols)?;
    let sig = shifted.operator.symmetry().signature();
    println!("weight sign change at 0.5: signature becomes ({}, {})", sig.plus, sig.minus);
    Ok(())
}
