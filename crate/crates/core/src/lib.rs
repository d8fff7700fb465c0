//! Cylindrical dual RSK, periodic TASEP transition kernels, and the
//! brute-force oracles used to cross-check them.

pub mod cyl_rsk;
pub mod dual_rsk;
pub mod gt;
pub mod kernels;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod schur;
pub mod shapes;
pub mod tasep;
pub mod verify;

pub use cyl_rsk::{cyl_rsk, cyl_rsk_invert, CylError, CylTriple};
pub use dual_rsk::{dual_rsk, dual_rsk_invert, InnovationArray, RskError, RskPair};
pub use gt::{cgt_to_paths, cgt_to_tableau, paths_to_cgt, tableau_to_cgt, CgtPattern, GtError, PathFamily};
pub use kernels::{KernelError, KernelParams};
pub use scalar::{RealScalar, Scalar};
pub use shapes::{Partition, ShapeError, Tableau};
pub use tasep::{BernoulliDriver, Geometry, TasepError};
pub use verify::{CheckRecord, SuiteConfig};

/// Floating-point scalar used by the kernel evaluators.
pub type Real = f64;
/// Exact scalar used by the discrete-time oracles.
pub type Exact = num_rational::BigRational;
/// Polynomial coefficients in the flagged Schur identities.
pub type Coefficient = num_bigint::BigInt;
