//! Sign types of real spectral points.
//!
//! The pair A = (1/3)[[5,4],[-4,-5]], J = diag(1,-1) has eigenvalues -1 and
//! +1; both are definite-type points, so the operator behaves like a
//! self-adjoint one despite the indefinite metric. A Jordan block at zero
//! shows the critical case, and a rotated block a non-real pair.

use krein::instances::{generate, InstanceSpec};
use krein::spectral::{classify_real_point, decompose};
use krein::symmetry::FundamentalSymmetry;
use krein::{KreinOperator, Tolerances};
use ndarray::array;
use num_complex::Complex64;

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn describe(op: &KreinOperator, tols: &Tolerances) -> Result<(), Box<dyn std::error::Error>> {
    let decomp = decompose(op, tols)?;
    for cl in &decomp.clusters {
        if cl.is_real {
            let cls = classify_real_point(op, &decomp, cl.center, tols)?;
            println!(
                "  {:>8.4}: {:?}, multiplicities {}/{}, gram {:?}",
                cl.center.re, cls.sign, cls.algebraic, cls.geometric, cls.gram_eigenvalues
            );
        } else {
            println!("  {:+.4} +- {:.4}i: conjugate pair, no sign type", cl.center.re, cl.center.im.abs());
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tols = Tolerances::default();

    let a = array![
        [r(5.0 / 3.0), r(4.0 / 3.0)],
        [r(-4.0 / 3.0), r(-5.0 / 3.0)]
    ];
    let op = KreinOperator::new(a, FundamentalSymmetry::from_signature(1, 1), &tols)?;
    println!("skew pair, eigenvalues -1 and +1:");
    describe(&op, &tols)?;

    let inst = generate(&InstanceSpec::jordan_at_zero(0, 4, 2), &tols)?;
    println!("size-2 Jordan block at 0 (plus positive padding):");
    describe(&inst.operator, &tols)?;

    let b = array![[r(0.0), r(1.0)], [r(-1.0), r(0.0)]];
    let rot = KreinOperator::new(b, FundamentalSymmetry::from_signature(1, 1), &tols)?;
    println!("rotation under diag(1,-1), eigenvalues +-i:");
    describe(&rot, &tols)?;
    Ok(())
}
