//! Reproducible instance generation.
//!
//! Seeded random J-self-adjoint families, the canonical Jordan pair, a
//! block-diagonal pair with prescribed perturbation norms, and a crude
//! finite-difference discretizer for an indefinite-weight Sturm-Liouville
//! problem. Equal specs produce bit-identical matrices: the ChaCha stream is
//! fixed by the seed and every draw happens in a fixed order.

use ndarray::s;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{dagger, hermitian_part, spectral_norm, CMat};
use crate::operator::KreinOperator;
use crate::symmetry::{FundamentalSymmetry, StructureError};
use crate::tol::Tolerances;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid instance spec: {0}")]
    Invalid(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

fn invalid(msg: impl Into<String>) -> InstanceError {
    InstanceError::Invalid(msg.into())
}

/// Instance family. The parameters are part of the identity: together with
/// the seed and dimension they pin the output down to the bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InstanceKind {
    /// `A = J H` with `H = B*B + floor I`, so `J A` is positive semidefinite
    /// and the spectrum of `A` keeps a gap of at least `floor` around zero.
    RandomNonnegative { plus: usize, floor: f64 },
    /// `A = J H` with `H` a Gaussian Hermitian draw; J-self-adjoint and
    /// nothing else.
    RandomGeneric { plus: usize },
    /// A nilpotent Jordan block of the given size at zero in the flip frame,
    /// padded with a positive diagonal on a Hilbert complement.
    JordanAtZero { block_size: usize },
    /// Non-negative `A = diag(P, -N)` together with a perturbation whose
    /// diagonal and coupling blocks have the prescribed Euclidean norms.
    BlockDiagonalPair {
        floor: f64,
        v_plus: f64,
        v_minus: f64,
        v_zero: f64,
    },
    /// Dirichlet finite differences for `-f'' + q f` on `(-1, 1)` with the
    /// indefinite weight `sign(x - sign_change)`. An empty potential means
    /// `q = 0`; otherwise one sample per mesh point.
    SturmLiouville { sign_change: f64, potential: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub kind: InstanceKind,
    pub seed: u64,
    pub dimension: usize,
}

impl InstanceSpec {
    pub fn random_nonnegative(seed: u64, dimension: usize, plus: usize, floor: f64) -> Self {
        InstanceSpec {
            kind: InstanceKind::RandomNonnegative { plus, floor },
            seed,
            dimension,
        }
    }

    pub fn random_generic(seed: u64, dimension: usize, plus: usize) -> Self {
        InstanceSpec {
            kind: InstanceKind::RandomGeneric { plus },
            seed,
            dimension,
        }
    }

    pub fn jordan_at_zero(seed: u64, dimension: usize, block_size: usize) -> Self {
        InstanceSpec {
            kind: InstanceKind::JordanAtZero { block_size },
            seed,
            dimension,
        }
    }

    pub fn block_diagonal(
        seed: u64,
        dimension: usize,
        floor: f64,
        v_plus: f64,
        v_minus: f64,
        v_zero: f64,
    ) -> Self {
        InstanceSpec {
            kind: InstanceKind::BlockDiagonalPair {
                floor,
                v_plus,
                v_minus,
                v_zero,
            },
            seed,
            dimension,
        }
    }

    pub fn sturm_liouville(
        seed: u64,
        dimension: usize,
        sign_change: f64,
        potential: Vec<f64>,
    ) -> Self {
        InstanceSpec {
            kind: InstanceKind::SturmLiouville {
                sign_change,
                potential,
            },
            seed,
            dimension,
        }
    }
}

/// A generated `(J, A)` pair with the optional perturbation `V`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub operator: KreinOperator,
    pub perturbation: Option<CMat>,
}

impl Instance {
    /// The perturbation as an operator over the same symmetry.
    pub fn perturbation_operator(
        &self,
        tols: &Tolerances,
    ) -> Result<Option<KreinOperator>, StructureError> {
        self.perturbation
            .as_ref()
            .map(|v| self.operator.with_matrix(v.clone(), tols))
            .transpose()
    }
}

pub fn generate(spec: &InstanceSpec, tols: &Tolerances) -> Result<Instance, InstanceError> {
    let n = spec.dimension;
    if n < 2 {
        return Err(invalid(format!("dimension {n} is below 2")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (sym, a, v) = match &spec.kind {
        InstanceKind::RandomNonnegative { plus, floor } => {
            check_signature(*plus, n)?;
            if !floor.is_finite() || *floor < 0.0 {
                return Err(invalid(format!("eigenvalue floor {floor} must be >= 0")));
            }
            let sym = FundamentalSymmetry::from_signature(*plus, n - plus);
            let h = psd_with_floor(&mut rng, n, *floor);
            let a = sym.matrix().dot(&h);
            (sym, a, None)
        }
        InstanceKind::RandomGeneric { plus } => {
            check_signature(*plus, n)?;
            let sym = FundamentalSymmetry::from_signature(*plus, n - plus);
            let h = gaussian_hermitian(&mut rng, n);
            let a = sym.matrix().dot(&h);
            (sym, a, None)
        }
        InstanceKind::JordanAtZero { block_size } => {
            let k = *block_size;
            if k == 0 || k > n {
                return Err(invalid(format!("block size {k} does not fit dimension {n}")));
            }
            let mut j = CMat::zeros((n, n));
            let mut a = CMat::zeros((n, n));
            for i in 0..k {
                j[[i, k - 1 - i]] = Complex64::new(1.0, 0.0);
            }
            for i in 0..k - 1 {
                a[[i, i + 1]] = Complex64::new(1.0, 0.0);
            }
            // Positive diagonal padding in [1, 2] keeps the complement away
            // from the nilpotent part.
            for i in k..n {
                j[[i, i]] = Complex64::new(1.0, 0.0);
                a[[i, i]] = Complex64::new(1.0 + rng.random::<f64>(), 0.0);
            }
            (FundamentalSymmetry::from_matrix(j, tols)?, a, None)
        }
        InstanceKind::BlockDiagonalPair {
            floor,
            v_plus,
            v_minus,
            v_zero,
        } => {
            if !floor.is_finite() || *floor < 0.0 {
                return Err(invalid(format!("eigenvalue floor {floor} must be >= 0")));
            }
            for norm in [v_plus, v_minus, v_zero] {
                if !norm.is_finite() || *norm < 0.0 {
                    return Err(invalid(format!("block norm {norm} must be >= 0")));
                }
            }
            let p = n.div_ceil(2);
            let q = n - p;
            let sym = FundamentalSymmetry::from_signature(p, q);
            let pos = psd_with_floor(&mut rng, p, *floor);
            let neg = psd_with_floor(&mut rng, q, *floor);
            let mut a = CMat::zeros((n, n));
            a.slice_mut(s![..p, ..p]).assign(&pos);
            a.slice_mut(s![p.., p..]).assign(&neg.mapv(|z| -z));

            let vp = scaled_to(gaussian_hermitian(&mut rng, p), *v_plus)?;
            let vm = scaled_to(gaussian_hermitian(&mut rng, q), *v_minus)?;
            let v0 = scaled_to(gaussian_matrix(&mut rng, p, q), *v_zero)?;
            let mut v = CMat::zeros((n, n));
            v.slice_mut(s![..p, ..p]).assign(&vp);
            v.slice_mut(s![p.., p..]).assign(&vm);
            v.slice_mut(s![..p, p..]).assign(&v0);
            v.slice_mut(s![p.., ..p]).assign(&dagger(&v0).mapv(|z| -z));
            (sym, a, Some(v))
        }
        InstanceKind::SturmLiouville {
            sign_change,
            potential,
        } => {
            let c = *sign_change;
            if !(-1.0..=1.0).contains(&c) || c.abs() == 1.0 {
                return Err(invalid(format!(
                    "sign change {c} must lie strictly inside (-1, 1)"
                )));
            }
            if !potential.is_empty() && potential.len() != n {
                return Err(invalid(format!(
                    "potential has {} samples for {n} mesh points",
                    potential.len()
                )));
            }
            let h = 2.0 / (n as f64 + 1.0);
            let mut j = CMat::zeros((n, n));
            let mut l = CMat::zeros((n, n));
            for i in 0..n {
                let x = -1.0 + (i as f64 + 1.0) * h;
                let w = if x - c >= 0.0 { 1.0 } else { -1.0 };
                j[[i, i]] = Complex64::new(w, 0.0);
                let q = potential.get(i).copied().unwrap_or(0.0);
                l[[i, i]] = Complex64::new(2.0 / (h * h) + q, 0.0);
                if i + 1 < n {
                    l[[i, i + 1]] = Complex64::new(-1.0 / (h * h), 0.0);
                    l[[i + 1, i]] = Complex64::new(-1.0 / (h * h), 0.0);
                }
            }
            let a = j.dot(&l);
            (FundamentalSymmetry::from_matrix(j, tols)?, a, None)
        }
    };
    let operator = KreinOperator::new(a, sym, tols)?;
    Ok(Instance {
        spec: spec.clone(),
        operator,
        perturbation: v,
    })
}

fn check_signature(plus: usize, n: usize) -> Result<(), InstanceError> {
    if plus > n {
        return Err(invalid(format!(
            "signature asks for {plus} positive directions in dimension {n}"
        )));
    }
    Ok(())
}

/// Row-major fill, real part before imaginary part; the draw order is part
/// of the determinism contract.
fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat {
    let mut m = CMat::zeros((rows, cols));
    for i in 0..rows {
        for k in 0..cols {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            m[[i, k]] = Complex64::new(re, im);
        }
    }
    m
}

fn gaussian_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMat {
    hermitian_part(&gaussian_matrix(rng, n, n))
}

fn psd_with_floor(rng: &mut ChaCha8Rng, n: usize, floor: f64) -> CMat {
    let b = gaussian_matrix(rng, n, n);
    let mut h = hermitian_part(&dagger(&b).dot(&b));
    for i in 0..n {
        h[[i, i]] += Complex64::new(floor, 0.0);
    }
    h
}

fn scaled_to(raw: CMat, target: f64) -> Result<CMat, InstanceError> {
    if target == 0.0 {
        return Ok(CMat::zeros(raw.dim()));
    }
    let norm = spectral_norm(&raw);
    if norm == 0.0 {
        return Err(invalid("degenerate draw cannot be scaled to a nonzero norm"));
    }
    Ok(raw.mapv(|z| z * (target / norm)))
}
