//! The skew constant tau of a non-negative invertible operator.
//!
//! Such an operator induces its own fundamental symmetry J~ = E(R+) - E(R-);
//! tau = ||J~|| >= 1 measures how far that decomposition tilts against the
//! reference one. tau = 1 means the two are compatible (the Hilbert case).
//! The constant is computed twice: from spectral projections and from a
//! resolvent quadrature along the imaginary axis, and the routes must agree.

use krein::perturb::compute_tau;
use krein::symmetry::FundamentalSymmetry;
use krein::{KreinOperator, Tolerances};
use ndarray::array;
use num_complex::Complex64;

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn report(name: &str, op: &KreinOperator, tols: &Tolerances) -> Result<(), Box<dyn std::error::Error>> {
    let tau = compute_tau(op, tols)?;
    println!("{name}:");
    println!("  tau = {:.12}", tau.tau);
    println!(
        "  gap at 0: {:.3}, quadrature nodes: {}, route disagreement ||J~_proj - J~_quad|| = {:.2e}",
        tau.gap, tau.quadrature_nodes, tau.cross_residual
    );
    println!("  involution residual ||J~^2 - I|| = {:.2e}", tau.involution_residual);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tols = Tolerances::default();
    let sym = FundamentalSymmetry::from_signature(1, 1);

    // Eigenvectors tilted against the reference decomposition: tau = 3.
    let skew = array![
        [r(5.0 / 3.0), r(4.0 / 3.0)],
        [r(-4.0 / 3.0), r(-5.0 / 3.0)]
    ];
    let op = KreinOperator::new(skew, sym.clone(), &tols)?;
    report("skew pair (tau = 3 exactly)", &op, &tols)?;

    // A reducible pair: the operator's decomposition is the reference one.
    let diag = array![[r(2.0), r(0.0)], [r(0.0), r(-2.0)]];
    let op = KreinOperator::new(diag, sym, &tols)?;
    report("reducible pair (tau = 1)", &op, &tols)?;

    // An operator with spectrum touching 0 is refused: J~ needs the two
    // spectral halves to be separated.
    let null = array![[r(0.0), r(1.0)], [r(0.0), r(0.0)]];
    let flip = FundamentalSymmetry::from_matrix(array![[r(0.0), r(1.0)], [r(1.0), r(0.0)]], &tols)?;
    let op = KreinOperator::new(null, flip, &tols)?;
    match compute_tau(&op, &tols) {
        Ok(_) => println!("unexpectedly computed tau"),
        Err(err) => println!("nilpotent pair is refused: {err}"),
    }
    Ok(())
}
