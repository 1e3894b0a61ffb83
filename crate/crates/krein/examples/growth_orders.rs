//! Resolvent growth orders at a spectral point and at infinity.
//!
//! For a Jordan block of size m at 0 the resolvent norm scales like
//! |Im z|^-m along the imaginary axis, so a log-log fit recovers the block
//! size. Non-negative operators never exceed order two, which is what makes
//! the order a usable diagnostic.

use krein::instances::{generate, InstanceSpec};
use krein::spectral::{decompose, growth_at_infinity, growth_order_at};
use krein::Tolerances;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tols = Tolerances::default();
    println!("{:>5} {:>9} {:>6} {:>12}", "size", "slope", "order", "order<=2?");
    for size in 1..=3usize {
        let inst = generate(&InstanceSpec::jordan_at_zero(7, size + 2, size), &tols)?;
        let decomp = decompose(&inst.operator, &tols)?;
        let est = growth_order_at(&inst.operator, &decomp, Complex64::new(0.0, 0.0), &tols)?;
        println!(
            "{size:>5} {:>9.4} {:>6} {:>12}",
            est.slope,
            est.order,
            if est.order <= 2 { "yes" } else { "no" }
        );
    }

    // At infinity every bounded operator is tame: ||R(z)|| <= 1/(|z|-||A||).
    let inst = generate(&InstanceSpec::jordan_at_zero(7, 5, 3), &tols)?;
    let infinity = growth_at_infinity(&inst.operator);
    println!(
        "at infinity: bounded growth {} with sup |z|*||R(z)|| = {:.3} over {} samples",
        infinity.bounded,
        infinity.constant,
        infinity.samples.len()
    );

    // The sampled profile behind the size-3 fit, thinned to a few rows.
    let decomp = decompose(&inst.operator, &tols)?;
    let est = growth_order_at(&inst.operator, &decomp, Complex64::new(0.0, 0.0), &tols)?;
    println!("size-3 profile (y, ||R(iy)||):");
    for (y, norm) in est.samples.iter().step_by(6) {
        println!("  {y:>10.3e}  {norm:>12.5e}");
    }
    Ok(())
}
