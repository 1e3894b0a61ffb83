//! Resolvent growth estimation near spectral points and at infinity.

use super::{SpectralDecomposition, SpectralError};
use crate::linalg::{identity, smallest_singular_value};
use crate::operator::KreinOperator;
use crate::tol::Tolerances;
use num_complex::Complex64;
use serde::Serialize;

/// `||(A - z)^{-1}||`, infinite when `z` is an eigenvalue.
pub fn resolvent_norm(op: &KreinOperator, z: Complex64) -> f64 {
    let n = op.dim();
    let shifted = op.matrix() - &(identity(n).mapv(|x| x * z));
    match smallest_singular_value(&shifted) {
        Ok(s) if s > 0.0 => 1.0 / s,
        _ => f64::INFINITY,
    }
}

/// Least-squares estimate of the resolvent growth order at a spectral
/// point: the slope of `log ||R(point + iy)||` against `log (1/y)` over a
/// three-decade window below the isolation gap.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthEstimate {
    pub point: Complex64,
    /// Fitted slope; close to the size of the largest Jordan block.
    pub slope: f64,
    /// Slope rounded to the nearest integer order.
    pub order: usize,
    /// `sup y^2 ||R(point + iy)||` over the sampled window, the constant in
    /// an order-two growth bound.
    pub constant_order2: f64,
    /// Sampled `(y, ||R(point + iy)||)` pairs.
    pub samples: Vec<(f64, f64)>,
    pub y_max: f64,
}

pub fn growth_order_at(
    op: &KreinOperator,
    decomp: &SpectralDecomposition,
    point: Complex64,
    _tols: &Tolerances,
) -> Result<GrowthEstimate, SpectralError> {
    let cluster = decomp.cluster_at(point).ok_or(SpectralError::NoCluster {
        point,
        tol: 10.0 * decomp.cluster_tol,
    })?;
    let center = cluster.center;
    let gap = decomp
        .clusters
        .iter()
        .filter(|cl| (cl.center - center).norm() > 0.0)
        .map(|cl| (cl.center - center).norm() - cl.radius)
        .fold(f64::INFINITY, f64::min);
    let y_max = (0.5 * (1.0 + decomp.norm_a)).min(if gap.is_finite() {
        gap / 4.0
    } else {
        f64::INFINITY
    });
    if !(y_max > 0.0) {
        return Err(SpectralError::Degenerate(format!(
            "no isolation window around {center}"
        )));
    }
    let m = 25usize;
    let mut samples = Vec::with_capacity(m);
    for k in 0..m {
        // Three decades, log-spaced.
        let y = y_max * 10f64.powf(-3.0 * k as f64 / (m - 1) as f64);
        let norm = resolvent_norm(op, center + Complex64::new(0.0, y));
        samples.push((y, norm));
    }
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (y, norm) in &samples {
        let x = (1.0 / y).ln();
        let v = norm.ln();
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
    }
    let mf = m as f64;
    let slope = (mf * sxy - sx * sy) / (mf * sxx - sx * sx);
    let order = slope.round().max(0.0) as usize;
    let constant_order2 = samples
        .iter()
        .map(|(y, norm)| y * y * norm)
        .fold(0.0, f64::max);
    Ok(GrowthEstimate {
        point: center,
        slope,
        order,
        constant_order2,
        samples,
        y_max,
    })
}

/// Resolvent samples far outside the spectrum. For a bounded operator the
/// growth condition at infinity holds automatically; the samples record the
/// constant realized along vertical and oblique rays.
#[derive(Debug, Clone, Serialize)]
pub struct InfinityGrowth {
    /// Every sample satisfies `||R(z)|| <= 1/(|z| - ||A||)`.
    pub bounded: bool,
    /// `max |z| ||R(z)||` over the samples.
    pub constant: f64,
    pub samples: Vec<(Complex64, f64)>,
}

pub fn growth_at_infinity(op: &KreinOperator) -> InfinityGrowth {
    let norm_a = op.norm();
    let base = 2.0 * (1.0 + norm_a);
    let mut samples = Vec::new();
    let mut bounded = true;
    let mut constant = 0.0f64;
    for scale in [1.0, 2.0, 4.0, 8.0] {
        for phi in [
            0.0,
            std::f64::consts::FRAC_PI_4,
            std::f64::consts::FRAC_PI_2,
            3.0 * std::f64::consts::FRAC_PI_4,
            std::f64::consts::PI,
        ] {
            let z = Complex64::from_polar(base * scale, phi);
            let r = resolvent_norm(op, z);
            bounded &= r <= (1.0 + 1e-8) / (z.norm() - norm_a);
            constant = constant.max(r * z.norm());
            samples.push((z, r));
        }
    }
    InfinityGrowth {
        bounded,
        constant,
        samples,
    }
}

/// Norms of Riesz projections over a family of shrinking contours around
/// an isolated spectral point. A flat profile witnesses uniformly bounded
/// spectral projections near the point.
pub fn projection_norm_profile(
    op: &KreinOperator,
    decomp: &SpectralDecomposition,
    point: Complex64,
    tols: &Tolerances,
) -> Result<Vec<(f64, f64)>, SpectralError> {
    let cluster = decomp.cluster_at(point).ok_or(SpectralError::NoCluster {
        point,
        tol: 10.0 * decomp.cluster_tol,
    })?;
    let mut out = Vec::new();
    let mut radius = cluster.contour_radius;
    for _ in 0..8 {
        if radius <= cluster.radius + 4.0 * decomp.cluster_tol {
            break;
        }
        let (p, _, _) = super::contour_projection(op.matrix(), cluster.center, radius, tols)?;
        out.push((radius, crate::linalg::spectral_norm(&p)));
        radius *= 0.7;
    }
    if out.is_empty() {
        return Err(SpectralError::Degenerate(format!(
            "no admissible contour radii around {point}"
        )));
    }
    Ok(out)
}
