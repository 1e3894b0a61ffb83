//! Fundamental symmetries and the Krein adjoint.
//!
//! Builds the canonical nilpotent pair A = [[0,1],[0,0]] with the flip
//! symmetry J = [[0,1],[1,0]], certifies J-self-adjointness, and shows what
//! the indefinite inner product does to plain Euclidean geometry.

use krein::linalg::CVec;
use krein::symmetry::FundamentalSymmetry;
use krein::{KreinOperator, Tolerances};
use ndarray::array;
use num_complex::Complex64;

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tols = Tolerances::default();

    let flip = array![[r(0.0), r(1.0)], [r(1.0), r(0.0)]];
    let sym = FundamentalSymmetry::from_matrix(flip, &tols)?;
    let sig = sym.signature();
    println!(
        "symmetry: dim {}, signature ({}, {}), residuals herm {:.2e} / invol {:.2e}",
        sym.dim(),
        sig.plus,
        sig.minus,
        sym.hermitian_residual(),
        sym.involution_residual()
    );

    // [x, x] can be negative or zero: e_1 is neutral under the flip.
    let e1: CVec = array![r(1.0), r(0.0)];
    let mixed: CVec = array![r(1.0), r(-1.0)];
    println!("[e1, e1]    = {:.3}", sym.inner(&e1, &e1).re);
    println!("[x, x]      = {:.3}  for x = e1 - e2", sym.inner(&mixed, &mixed).re);

    let a = array![[r(0.0), r(1.0)], [r(0.0), r(0.0)]];
    let op = KreinOperator::new(a, sym, &tols)?;
    println!(
        "operator: ||A|| = {:.3}, J-self-adjoint residual {:.2e}, certified: {}",
        op.norm(),
        op.selfadjoint_residual(),
        op.is_certified()
    );
    println!("Krein adjoint equals A itself:\n{:.3}", op.krein_adjoint());
    println!("form matrix JA (Hermitian):\n{:.3}", op.gram_matrix());

    // A matrix that is not J-self-adjoint still constructs (check and
    // classify can inspect it), but stays uncertified and is refused by
    // every analysis that assumes self-adjointness.
    let bad = op.with_matrix(array![[r(1.0), r(0.0)], [r(0.0), r(2.0)]], &tols)?;
    println!(
        "diag(1,2) under the flip: residual {:.3}, certified: {}",
        bad.selfadjoint_residual(),
        bad.is_certified()
    );
    match bad.require_certified(&tols) {
        Ok(()) => println!("unexpectedly usable"),
        Err(err) => println!("analyses refuse it: {err}"),
    }
    Ok(())
}
