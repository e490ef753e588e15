//! Exact Gaussian lattices and the complex hyperbolic reflection group of the
//! p-modular Gaussian lattice `L = BW16 ⊕ G_{1,1} ≅ 4D4 ⊕ G_{1,1}` of signature (9,1).
//!
//! Everything is generic over the integer backend [`scalar::IntScalar`]; the aliases
//! below fix it to `BigInt`. Hot enumeration kernels instantiate with machine
//! integers under overflow checks.

pub mod enumtau;
pub mod error;
pub mod fingeom;
pub mod hnf;
pub mod hyperbolic;
pub mod isometry;
pub mod lattices;
pub mod matrix;
pub mod reduction;
pub mod scalar;
pub mod shortvec;
pub mod verify;

pub use error::{Error, Result};

use num_bigint::BigInt;

pub type GaussInt = scalar::Gauss<BigInt>;
pub type GaussRat = scalar::GaussQ<BigInt>;
pub type Cyclo8 = scalar::Cyc8<BigInt>;
pub type RealQuad = scalar::RQuad<BigInt>;
