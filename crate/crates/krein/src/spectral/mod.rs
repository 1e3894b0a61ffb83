//! Spectral decomposition of Krein-space self-adjoint matrices.
//!
//! Eigenvalues are grouped into conjugate-symmetric clusters, each isolated
//! from the rest of the spectrum, and every cluster gets a Riesz projection
//! computed by trapezoid quadrature of the resolvent over a circle through
//! the midpoint ring between the cluster and the remaining spectrum. The
//! trapezoid rule on a circle converges geometrically in the number of
//! nodes, so a handful of doublings reaches projection residuals near
//! machine precision whenever the cluster separation is genuine.

pub mod growth;
pub mod quadrature;

pub use growth::{
    growth_at_infinity, growth_order_at, projection_norm_profile, resolvent_norm,
    GrowthEstimate, InfinityGrowth,
};

use crate::linalg::{
    self, dagger, eigenvalues, identity, null_space, shifted_inverse, spectral_norm, CMat,
    NumericsError,
};
use crate::operator::KreinOperator;
use crate::tol::Tolerances;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum SpectralError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("contour projection did not converge: residual {residual:e} with {nodes} nodes")]
    ProjectionNotConverged { residual: f64, nodes: usize },
    #[error("projection trace {trace} is not close to an integer")]
    TraceMismatch { trace: Complex64 },
    #[error("no spectral cluster within {tol:e} of {point}")]
    NoCluster { point: Complex64, tol: f64 },
    #[error("set boundary at {endpoint} collides with cluster center {center} (gap {gap:e})")]
    BoundaryCollision {
        center: Complex64,
        endpoint: f64,
        gap: f64,
    },
    #[error("{0}")]
    Degenerate(String),
}

/// One isolated group of eigenvalues with its Riesz projection.
#[derive(Debug, Clone, Serialize)]
pub struct Cluster {
    /// Mean of the member eigenvalues; exactly real for real clusters and
    /// exactly zero when the cluster sits at the origin.
    pub center: Complex64,
    /// Member eigenvalues with multiplicity, as returned by the solver.
    pub eigenvalues: Vec<Complex64>,
    pub algebraic: usize,
    pub geometric: usize,
    /// Largest distance of a member from the center.
    pub radius: f64,
    /// All members within the clustering tolerance of the real axis.
    pub is_real: bool,
    #[serde(skip)]
    pub projection: CMat,
    pub projection_norm: f64,
    /// Idempotency defect of the computed projection.
    pub projection_residual: f64,
    pub contour_nodes: usize,
    pub contour_radius: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralDecomposition {
    pub clusters: Vec<Cluster>,
    pub dim: usize,
    pub norm_a: f64,
    pub cluster_tol: f64,
    /// Norm of (sum of projections) - identity.
    pub completeness_residual: f64,
}

impl SpectralDecomposition {
    /// The cluster whose members contain `point`, matched within
    /// `10 * cluster_tol`.
    pub fn cluster_at(&self, point: Complex64) -> Option<&Cluster> {
        let tol = 10.0 * self.cluster_tol;
        self.clusters.iter().find(|cl| {
            (cl.center - point).norm() <= tol + cl.radius
                || cl.eigenvalues.iter().any(|e| (e - point).norm() <= tol)
        })
    }

    /// Sum of projections over clusters selected by a predicate.
    pub fn sum_projections<F: Fn(&Cluster) -> bool>(&self, keep: F) -> CMat {
        let mut acc = CMat::zeros((self.dim, self.dim));
        for cl in &self.clusters {
            if keep(cl) {
                acc = acc + &cl.projection;
            }
        }
        acc
    }
}

/// Decompose the spectrum into isolated conjugate-symmetric clusters and
/// compute their Riesz projections by contour quadrature.
pub fn decompose(
    op: &KreinOperator,
    tols: &Tolerances,
) -> Result<SpectralDecomposition, SpectralError> {
    let n = op.dim();
    let a = op.matrix();
    let norm_a = op.norm();
    let ctol = tols.cluster_tol(norm_a);

    let mut vals = eigenvalues(a)?;
    // Snap eigenvalues that are numerically real onto the axis so clusters
    // at real points get exactly real centers.
    for v in vals.iter_mut() {
        if v.im.abs() <= ctol {
            v.im = 0.0;
        }
    }

    let groups = cluster_eigenvalues(&vals, ctol);

    let mut clusters = Vec::with_capacity(groups.len());
    for members_idx in &groups {
        let members: Vec<Complex64> = members_idx.iter().map(|&i| vals[i]).collect();
        let mut center = members.iter().sum::<Complex64>() / members.len() as f64;
        let is_real = members.iter().all(|m| m.im == 0.0);
        if is_real {
            center.im = 0.0;
        }
        if center.norm() <= ctol {
            center = Complex64::new(0.0, 0.0);
        }
        let radius = members
            .iter()
            .map(|m| (m - center).norm())
            .fold(0.0, f64::max);
        let min_other = vals
            .iter()
            .enumerate()
            .filter(|(i, _)| !members_idx.contains(i))
            .map(|(_, v)| (v - center).norm())
            .fold(f64::INFINITY, f64::min);
        let contour_radius = if min_other.is_finite() {
            0.5 * (radius + min_other)
        } else {
            radius + 0.5 * (1.0 + norm_a)
        };

        let (projection, projection_residual, contour_nodes) =
            contour_projection(a, center, contour_radius, tols)?;

        let trace = projection.diag().sum();
        let algebraic = trace.re.round();
        if (trace - Complex64::new(algebraic, 0.0)).norm() > 1e-6 * (1.0 + trace.norm()) {
            return Err(SpectralError::TraceMismatch { trace });
        }
        let algebraic = algebraic as usize;

        let geometric = cluster_geometric_multiplicity(a, &members, ctol, tols)?;

        clusters.push(Cluster {
            center,
            eigenvalues: members,
            algebraic,
            geometric,
            radius,
            is_real,
            projection_norm: spectral_norm(&projection),
            projection_residual,
            contour_nodes,
            contour_radius,
            projection,
        });
    }

    clusters.sort_by(|x, y| {
        (x.center.re, x.center.im)
            .partial_cmp(&(y.center.re, y.center.im))
            .expect("finite centers")
    });

    let mut total = CMat::zeros((n, n));
    for cl in &clusters {
        total = total + &cl.projection;
    }
    let completeness_residual = spectral_norm(&(&total - &identity(n)));

    Ok(SpectralDecomposition {
        clusters,
        dim: n,
        norm_a,
        cluster_tol: ctol,
        completeness_residual,
    })
}

/// Union-find grouping of eigenvalues: indices are merged when they are
/// within `ctol` of each other or of each other's conjugate, so every
/// cluster is conjugate-symmetric as a set. Groups are merged further until
/// every cluster keeps an isolating annulus: the nearest outside eigenvalue
/// must be at least `1.1 * spread + 4 * ctol` from the cluster center, or
/// the trapezoid contour between them would converge too slowly.
fn cluster_eigenvalues(vals: &[Complex64], ctol: f64) -> Vec<Vec<usize>> {
    let n = vals.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut root = i;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = i;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    let union = |parent: &mut Vec<usize>, i: usize, j: usize| {
        let (ri, rj) = (find(parent, i), find(parent, j));
        if ri != rj {
            parent[ri] = rj;
        }
    };
    for i in 0..n {
        for j in (i + 1)..n {
            let close = (vals[i] - vals[j]).norm() <= ctol;
            let conj_close = (vals[i].conj() - vals[j]).norm() <= ctol;
            if close || conj_close {
                union(&mut parent, i, j);
            }
        }
    }
    let collect = |parent: &mut Vec<usize>| -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_of: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let r = find(parent, i);
            match root_of[r] {
                Some(g) => groups[g].push(i),
                None => {
                    root_of[r] = Some(groups.len());
                    groups.push(vec![i]);
                }
            }
        }
        groups
    };
    loop {
        let groups = collect(&mut parent);
        let mut merged = false;
        'outer: for gi in 0..groups.len() {
            let center = groups[gi].iter().map(|&i| vals[i]).sum::<Complex64>()
                / groups[gi].len() as f64;
            let spread = groups[gi]
                .iter()
                .map(|&i| (vals[i] - center).norm())
                .fold(0.0, f64::max);
            for gj in 0..groups.len() {
                if gi == gj {
                    continue;
                }
                let min_other = groups[gj]
                    .iter()
                    .map(|&j| (vals[j] - center).norm())
                    .fold(f64::INFINITY, f64::min);
                if min_other < 1.1 * spread + 4.0 * ctol {
                    union(&mut parent, groups[gi][0], groups[gj][0]);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            return groups;
        }
    }
}

/// Riesz projection by trapezoid quadrature on the circle
/// `center + radius e^{i theta}`, doubling the node count until the
/// idempotency residual passes or the node budget is exhausted.
fn contour_projection(
    a: &CMat,
    center: Complex64,
    radius: f64,
    tols: &Tolerances,
) -> Result<(CMat, f64, usize), SpectralError> {
    let n = a.nrows();
    let mut nodes = 64usize;
    let mut best: Option<(CMat, f64, usize)> = None;
    loop {
        let mut acc = CMat::zeros((n, n));
        for k in 0..nodes {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / nodes as f64;
            let w = Complex64::from_polar(radius, theta);
            let resolvent = shifted_inverse(a, center + w)?;
            acc = acc + resolvent.mapv(|x| x * w);
        }
        let p = acc.mapv(|x| x / nodes as f64);
        let residual = spectral_norm(&(&p.dot(&p) - &p));
        let better = best.as_ref().map(|(_, r, _)| residual < *r).unwrap_or(true);
        if better {
            best = Some((p, residual, nodes));
        }
        let (_, best_res, _) = best.as_ref().expect("set above");
        if *best_res <= tols.proj_abs || nodes >= 1024 {
            break;
        }
        nodes *= 2;
    }
    let (p, residual, used) = best.expect("at least one pass");
    if residual > 1e-6 {
        return Err(SpectralError::ProjectionNotConverged {
            residual,
            nodes: used,
        });
    }
    Ok((p, residual, used))
}

/// Sum of eigenspace dimensions over the distinct eigenvalues of a cluster.
fn cluster_geometric_multiplicity(
    a: &CMat,
    members: &[Complex64],
    ctol: f64,
    tols: &Tolerances,
) -> Result<usize, SpectralError> {
    let mut reps: Vec<Complex64> = Vec::new();
    for m in members {
        if !reps.iter().any(|r| (r - m).norm() <= ctol) {
            reps.push(*m);
        }
    }
    let n = a.nrows();
    let mut total = 0usize;
    for rep in reps {
        let shifted = a - &(identity(n).mapv(|x| x * rep));
        let ns = null_space(&shifted, tols)?;
        total += ns.basis.ncols();
    }
    Ok(total)
}

/// Sign type of a point of the spectrum with respect to the indefinite
/// inner product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignType {
    PositiveType,
    NegativeType,
    Critical,
    NonReal,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub sign: SignType,
    pub point: Complex64,
    pub algebraic: usize,
    pub geometric: usize,
    /// Eigenvalues of the Gram matrix of the inner product restricted to an
    /// orthonormal basis of the geometric eigenspace.
    pub gram_eigenvalues: Vec<f64>,
    pub summary: String,
}

/// Classify a spectral point: positive/negative type when the inner product
/// is definite on the eigenspace, critical when it degenerates or when the
/// algebraic multiplicity exceeds the geometric one.
pub fn classify_real_point(
    op: &KreinOperator,
    decomp: &SpectralDecomposition,
    point: Complex64,
    tols: &Tolerances,
) -> Result<Classification, SpectralError> {
    let cluster = decomp
        .cluster_at(point)
        .ok_or(SpectralError::NoCluster {
            point,
            tol: 10.0 * decomp.cluster_tol,
        })?;
    if !cluster.is_real {
        return Ok(Classification {
            sign: SignType::NonReal,
            point: cluster.center,
            algebraic: cluster.algebraic,
            geometric: cluster.geometric,
            gram_eigenvalues: Vec::new(),
            summary: format!("cluster at {} is not real", cluster.center),
        });
    }
    let n = op.dim();
    let shifted = op.matrix() - &(identity(n).mapv(|x| x * cluster.center));
    let ns = null_space(&shifted, tols)?;
    let basis = ns.basis;
    let gram = op.symmetry().gram(&basis);
    let gram_h = linalg::hermitian_part(&gram);
    let (gram_eigenvalues, _) = linalg::herm_eigs(&gram_h)?;
    let tol = tols.tol_sign(1.0);
    let min = gram_eigenvalues.first().copied().unwrap_or(0.0);
    let max = gram_eigenvalues.last().copied().unwrap_or(0.0);
    let degenerate = cluster.algebraic > basis.ncols();
    let (sign, summary) = if degenerate {
        (
            SignType::Critical,
            format!(
                "algebraic multiplicity {} exceeds geometric {}",
                cluster.algebraic,
                basis.ncols()
            ),
        )
    } else if min > tol {
        (
            SignType::PositiveType,
            format!("inner product positive definite on eigenspace (min {min:.3e})"),
        )
    } else if max < -tol {
        (
            SignType::NegativeType,
            format!("inner product negative definite on eigenspace (max {max:.3e})"),
        )
    } else {
        (
            SignType::Critical,
            format!("inner product degenerate or indefinite on eigenspace (range [{min:.3e}, {max:.3e}])"),
        )
    };
    Ok(Classification {
        sign,
        point: cluster.center,
        algebraic: cluster.algebraic,
        geometric: basis.ncols(),
        gram_eigenvalues,
        summary,
    })
}

/// Dimensions of ker (A - c)^k for k = 1, 2, ... until the chain
/// stabilizes (the stabilized value is reported once more) or `max_k`
/// is reached.
pub fn root_chain(
    op: &KreinOperator,
    center: Complex64,
    max_k: usize,
    tols: &Tolerances,
) -> Result<Vec<usize>, SpectralError> {
    let n = op.dim();
    let shifted = op.matrix() - &(identity(n).mapv(|x| x * center));
    let mut dims = Vec::new();
    let mut power = identity(n);
    for _ in 0..max_k {
        power = power.dot(&shifted);
        // Rescale so rank thresholds stay meaningful for high powers.
        let scale = spectral_norm(&power);
        let scaled = if scale > 0.0 {
            power.mapv(|x| x / scale)
        } else {
            power.clone()
        };
        let ns = null_space(&scaled, tols)?;
        dims.push(ns.basis.ncols());
        let k = dims.len();
        if k >= 2 && dims[k - 1] == dims[k - 2] {
            break;
        }
    }
    Ok(dims)
}

/// A finite union of real intervals with open or closed endpoints.
#[derive(Debug, Clone, Serialize)]
pub struct RealBorelSet {
    pub intervals: Vec<Interval>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl RealBorelSet {
    pub fn interval(lo: f64, hi: f64) -> Self {
        RealBorelSet {
            intervals: vec![Interval {
                lo,
                hi,
                lo_open: false,
                hi_open: false,
            }],
        }
    }

    /// The open positive half-axis (0, +inf).
    pub fn positive_axis() -> Self {
        RealBorelSet {
            intervals: vec![Interval {
                lo: 0.0,
                hi: f64::INFINITY,
                lo_open: true,
                hi_open: true,
            }],
        }
    }

    /// The open negative half-axis (-inf, 0).
    pub fn negative_axis() -> Self {
        RealBorelSet {
            intervals: vec![Interval {
                lo: f64::NEG_INFINITY,
                hi: 0.0,
                lo_open: true,
                hi_open: true,
            }],
        }
    }

    pub fn singleton(x: f64) -> Self {
        RealBorelSet::interval(x, x)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|iv| {
            let above = if iv.lo_open { x > iv.lo } else { x >= iv.lo };
            let below = if iv.hi_open { x < iv.hi } else { x <= iv.hi };
            above && below
        })
    }

    /// Distance from `x` to the nearest finite endpoint.
    pub fn boundary_distance(&self, x: f64) -> f64 {
        let mut d = f64::INFINITY;
        for iv in &self.intervals {
            if iv.lo.is_finite() {
                d = d.min((x - iv.lo).abs());
            }
            if iv.hi.is_finite() {
                d = d.min((x - iv.hi).abs());
            }
        }
        d
    }
}

/// Value of the spectral function on a real Borel set: the sum of the Riesz
/// projections of the real clusters whose centers lie in the set.
///
/// A singleton endpoint at 0 is safe against the zero cluster because the
/// decomposition snaps centers within the clustering tolerance of 0 onto 0
/// exactly; any other center closer than `4 * cluster_tol` to a finite
/// endpoint is refused as ambiguous.
pub fn spectral_function(
    decomp: &SpectralDecomposition,
    set: &RealBorelSet,
    _tols: &Tolerances,
) -> Result<CMat, SpectralError> {
    let guard = 4.0 * decomp.cluster_tol;
    let mut acc = CMat::zeros((decomp.dim, decomp.dim));
    for cl in &decomp.clusters {
        if !cl.is_real {
            continue;
        }
        let x = cl.center.re;
        let d = set.boundary_distance(x);
        if d > 0.0 && d <= guard {
            let endpoint = set
                .intervals
                .iter()
                .flat_map(|iv| [iv.lo, iv.hi])
                .filter(|e| e.is_finite())
                .min_by(|a, b| {
                    (x - a).abs().partial_cmp(&(x - b).abs()).expect("finite")
                })
                .unwrap_or(x);
            return Err(SpectralError::BoundaryCollision {
                center: cl.center,
                endpoint,
                gap: d,
            });
        }
        if set.contains(x) {
            acc = acc + &cl.projection;
        }
    }
    Ok(acc)
}

/// J-self-adjointness defect of a matrix, `|| J M^* J - M ||`.
pub fn krein_adjoint_defect(op: &KreinOperator, m: &CMat) -> f64 {
    let j = op.symmetry().matrix();
    let adj = j.dot(&dagger(m)).dot(j);
    spectral_norm(&(&adj - m))
}
