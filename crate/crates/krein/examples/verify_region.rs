//! Checking a proposed region against an actual spectrum.
//!
//! Verification is per eigenvalue: non-real points must lie inside the
//! region; real points outside it must carry the sign type of their
//! half-axis; anything within the margin band of the boundary is counted
//! indeterminate rather than guessed. The same routine backs every
//! enclosure certificate in this crate.

use krein::perturb::verify_enclosure;
use krein::regions::EnclosureRegion;
use krein::symmetry::FundamentalSymmetry;
use krein::{KreinOperator, Tolerances};
use ndarray::array;
use num_complex::Complex64;

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tols = Tolerances::default();
    // diag(2,-2) plus an off-diagonal coupling of 3: eigenvalues +-i sqrt(5).
    let a = array![[r(2.0), r(3.0)], [r(-3.0), r(-2.0)]];
    let op = KreinOperator::new(a, FundamentalSymmetry::from_signature(1, 1), &tols)?;

    for radius in [1.0, 3.0] {
        let region = EnclosureRegion::capsule(0.0, 0.0, radius)?;
        let verification = verify_enclosure(&op, &region, &tols)?;
        println!(
            "capsule radius {radius}: verified {}, {} violation(s), {} indeterminate",
            verification.verified,
            verification.violations.len(),
            verification.indeterminate
        );
        for violation in &verification.violations {
            println!(
                "  escape at {:+.4}{:+.4}i: {}",
                violation.eigenvalue.re, violation.eigenvalue.im, violation.reason
            );
        }
    }

    // Region geometry is a first-class object: margins, dilation, boundary.
    let region = EnclosureRegion::ball_union(0.8, 0.5, 0.04)?;
    println!(
        "{}: diameter {:.3}, margin at 1+0.1i = {:+.4}, contains 0: {}",
        region.label(),
        region.diameter(),
        region.signed_margin(Complex64::new(1.0, 0.1)),
        region.contains(Complex64::new(0.0, 0.0))
    );
    let csv = region.boundary_csv(8)?;
    print!("{csv}");
    Ok(())
}
