//! Exact computation with left orderings and circular orderings on groups.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! - [`group`]: concrete computable groups (cyclic, integers, free abelian,
//!   direct products, the Hantzsche–Wendt group in its affine representation,
//!   and the solvable witness group), words, presentations, balls,
//!   homomorphisms, Smith normal form and abelianization.
//! - [`orders`]: left and circular orderings, their validators, and the
//!   natural, secret, lexicographic and product constructions.
//! - [`lift`]: the `{0,1}`-valued inhomogeneous cocycle of a circular
//!   ordering and the left-ordered central extension it defines.
//! - [`secret`]: finite-carrier detection of circular orderings that come
//!   from a left ordering, with cone recovery.
//! - [`obstruction`]: obstruction spectra, their certificates and the worked
//!   Hantzsche–Wendt computation.
//! - [`witness`]: the torsion-free solvable group whose spectrum is `pℕ`,
//!   with membership and relation checks.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod group;
pub mod lift;
pub mod obstruction;
pub mod orders;
pub mod report;
pub mod secret;
pub mod witness;

pub use error::{GroupError, LiftError, ObstructionError, PresentationError};
pub use group::{Ball, Element, Group, Homomorphism, Presentation, Word};
pub use lift::{Cocycle, LiftElement, LiftGroup, TwoCocycle};
pub use obstruction::{SpectrumReport, UnobstructedCertificate};
pub use orders::{CircularOrdering, CircularTable, LeftOrdering, Provenance, SesData};
pub use report::{CheckReport, Mode, Status};
