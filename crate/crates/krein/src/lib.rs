//! Finite-dimensional spectral analysis in Krein spaces.
//!
//! A Krein space here is the coordinate space `C^n` equipped with the
//! indefinite inner product `[x, y] = (Jx, y)` induced by a fundamental
//! symmetry `J` (a Hermitian involution). The crate analyses square matrices
//! that are self-adjoint with respect to such a product:
//!
//! - spectral decomposition with contour-quadrature Riesz projections and
//!   sign-type classification of real eigenvalues,
//! - resolvent growth estimation at finite points and at infinity,
//! - non-negativity checks, both direct (`JA` positive semidefinite) and via
//!   the spectral criteria that characterize non-negativity, together with
//!   construction of a similarity-to-Hilbert metric when one exists,
//! - local non-negativity outside a compact region, with certified lower
//!   bounds for the quadratic form,
//! - spectral enclosure regions for perturbed operators `A + V`, in capsule
//!   and ball-union shape, with per-eigenvalue verification.
//!
//! The `examples/` directory carries one runnable walkthrough per
//! capability; the `krein` binary exposes the same analyses as subcommands
//! over Matrix Market inputs bound by a JSON manifest.

pub mod characterize;
pub mod cli;
pub mod instances;
pub mod linalg;
pub mod mm;
pub mod operator;
pub mod perturb;
pub mod regions;
pub mod report;
pub mod spectral;
pub mod symmetry;
pub mod tol;
pub mod verdict;

pub use linalg::{CMat, CVec};
pub use operator::KreinOperator;
pub use regions::{EnclosureRegion, Neighborhood, RegionError};
pub use symmetry::{gram_restriction, FundamentalSymmetry, IndefiniteInnerProduct, StructureError};
pub use tol::Tolerances;
pub use verdict::{Condition, Verdict};
