//! Exact canonical Jordan bases for real H-selfadjoint matrices.
//!
//! All arithmetic happens in the field `Q(i, sqrt 2)` (see [`Scalar`]), so every
//! identity this crate produces or checks holds with zero tolerance.
//!
//! The crate is `no_std` and only needs `alloc`. JSON formats and the
//! command-line front end live in the companion `focs` crate.
//!
//! Module map:
//!
//! - [`scalar`]: field arithmetic and the textual scalar grammar.
//! - [`linalg`]: dense exact matrices, rank, kernel, inverse, solve.
//! - [`spectral`]: characteristic polynomial, eigenvalues in `Q(i)`,
//!   Jordan structure and explicit Jordan chains.
//! - [`canonical`]: flipped orthogonal pairs, the real canonical form, the
//!   transformation `S` and the i-FOCS basis `N = R S`.
//! - [`verify`]: construction-independent predicates with witnesses.
//! - [`generator`]: seeded construction of H-selfadjoint test pairs.
//! - [`corpus`]: the worked 4x4 example with its three reference bases.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod canonical;
pub mod corpus;
mod error;
pub mod generator;
pub mod layout;
pub mod linalg;
pub mod scalar;
pub mod spectral;
pub mod verify;

pub use canonical::{BasisKind, CanonicalPair, PairKind, SignCharacteristic, SignEntry};
pub use error::{Error, Result};
pub use generator::{GeneratedPair, GeneratorRecipe};
pub use layout::{Block, BlockLayout};
pub use linalg::{ExactMatrix, Vector};
pub use scalar::{Rational, Scalar};
pub use spectral::{CharPoly, Eigenvalue, JordanChain, JordanChainSet, JordanSpec};
pub use verify::{BasisCertificate, Check, Verdict, Witness};
