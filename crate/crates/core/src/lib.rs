//! Character polynomials built from the Jacobi symbol, their Littlewood
//! completions, and exact `L4` norm / merit factor computations.
//!
//! The crate is organised bottom-up:
//!
//! * [`numbers`]: Jacobi symbols, Möbius, Ramanujan and Gauss sums.
//! * [`sequences`]: the character polynomial, rotations and completions.
//! * [`norms`]: exact and spectral `L4` norms, merit factors, identities.
//! * [`experiments`]: parameter sweeps, exhaustive search and CSV output.

pub mod error;
pub mod experiments;
pub mod norms;
pub mod numbers;
pub mod sequences;

pub use error::{Error, Result};
pub use numbers::{factor_odd_squarefree, FactoredModulus};
pub use sequences::{Rotation, SequenceKind, TernarySequence};
