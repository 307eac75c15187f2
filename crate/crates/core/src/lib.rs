//! Pseudo-Hermitian two-level systems, pseudo-fermion ladder operators and
//! their Grassmann-valued coherent states.
//!
//! The crate is layered bottom-up:
//!
//! * [`grassmann`]: exact arithmetic in a finite complex Grassmann algebra,
//!   with conjugation, left derivatives and Berezin integrals.
//! * [`graded`]: kets, bras and operators with Grassmann coefficients over a
//!   two-slot biorthonormal basis, with Koszul signs.
//! * [`twolevel`]: the damped two-level Hamiltonian, its biorthonormal
//!   eigensystem, metric and ladder operators, with numeric identity checks.
//! * [`coherent`]: displacement operators and the two coherent-state families.
//! * [`evolution`]: propagators, coherent-state time evolution and an RK4
//!   integrator of the bare amplitude equation used as an oracle.

pub mod coherent;
pub mod error;
pub mod evolution;
pub mod graded;
pub mod grassmann;
pub mod linalg;
pub mod report;
pub mod twolevel;

pub use error::{Error, Result};
pub use grassmann::{GeneratorSignature, GrassmannElement, Monomial, Parity};
pub use linalg::{Mat2, Vec2};
pub use report::{CheckEntry, CheckReport};
pub use twolevel::{Regime, Spectrum, SystemParams};
