//! Local non-negativity: good behavior outside a compact region.
//!
//! The operator here has a conjugate pair at +-i and a simple eigenvalue at
//! 5. It is not non-negative, but it is non-negative over the complement of
//! a disc around 0: split off the inside part, bound its form from below,
//! and certify the outside part.

use krein::characterize::{check_local_nonneg, decompose_locally, lower_bound_gamma};
use krein::regions::{EnclosureRegion, Neighborhood};
use krein::symmetry::FundamentalSymmetry;
use krein::{KreinOperator, Tolerances};
use ndarray::array;
use num_complex::Complex64;

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tols = Tolerances::default();
    let j = FundamentalSymmetry::from_matrix(
        array![
            [r(0.0), r(1.0), r(0.0)],
            [r(1.0), r(0.0), r(0.0)],
            [r(0.0), r(0.0), r(1.0)]
        ],
        &tols,
    )?;
    let a = array![
        [r(0.0), r(1.0), r(0.0)],
        [r(-1.0), r(0.0), r(0.0)],
        [r(0.0), r(0.0), r(5.0)]
    ];
    let op = KreinOperator::new(a, j, &tols)?;

    let nb = Neighborhood::disc(Complex64::new(0.0, 0.0), 2.0);
    let split = decompose_locally(&op, &nb, &tols)?;
    println!(
        "split: {} cluster(s) inside the disc, {} outside, invariance residual {:.2e}",
        split.inside_centers.len(),
        split.outside_centers.len(),
        split.invariance_residual
    );
    println!(
        "  inside centers: {:?}",
        split.inside_centers.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>()
    );
    println!(
        "  outside centers: {:?}",
        split.outside_centers.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>()
    );

    let bound = lower_bound_gamma(&split, &tols)?;
    println!(
        "inside form bound: [Af,f] >= {:.4} <f,f>_H, sampled min ratio {:.4} over {} draws",
        bound.gamma, bound.sample_min_ratio, bound.samples
    );

    let region = EnclosureRegion::capsule(0.0, 0.0, 1.5)?;
    let report = check_local_nonneg(&op, &region, &tols)?;
    println!("local non-negativity outside {}: {:?}", region.label(), report.verdict);
    for check in &report.checks {
        println!(
            "  {:+.3}{:+.3}i inside={} margin={:+.3} [{:?}] {}",
            check.center.re, check.center.im, check.inside, check.margin, check.verdict, check.detail
        );
    }
    if let Some(min) = report.outside_form_min {
        println!("  form of JA on the outside subspace >= {min:.4}");
    }
    Ok(())
}
