//! Bound states of H = −½ d²/dx² + V(x) + g δ(x) for parity-invariant
//! polynomial potentials V(x) = Σ A_k |x|^{b_k}, by the Rayleigh-Ritz method
//! over a Gaussian basis whose even functions carry the derivative jump the
//! delta imposes at the origin.
//!
//! All matrix elements are evaluated in closed form and the generalized
//! eigenproblem is solved in configurable-precision arithmetic, because the
//! monomial-Gaussian overlap matrix becomes badly conditioned well before the
//! basis sizes of interest.

pub mod analysis;
pub mod basis;
pub mod eigensolver;
pub mod error;
pub mod linalg;
pub mod numerics;
pub mod par;
pub mod polynomial;
pub mod potential;
pub mod precision;
pub mod report;
pub mod roots;

pub use basis::{assemble, AssembledSystem, BasisSpec, DerivativeForm, Sector};
pub use eigensolver::{solve_generalized, Spectrum};
pub use error::{Error, Result};
pub use potential::{MonomialPotential, Preset};
pub use precision::{PrecisionContext, Real};
