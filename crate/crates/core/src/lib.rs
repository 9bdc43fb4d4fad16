//! Binary cubic forms as the prehomogeneous vector space attached to the
//! Levi subgroup GL(2) of the split group G2.
//!
//! Modules:
//! - [`g2`]: Chevalley basis, root datum, Levi action on V, truncation combinatorics.
//! - [`forms`]: the twisted GL(2) action, discriminant, pairing, orbit classes,
//!   reduction, equivalence and stabilizers.
//! - [`finite`]: Fourier and Poisson identities on V(Z/N).
//! - [`enumeration`]: GL(2,Z)-class tables and truncated Dirichlet series.
//! - [`zeta`]: principal-part assembly, local factors and densities.
//! - [`report`]: verification suites and JSON reports.

pub mod enumeration;
pub mod error;
pub mod finite;
pub mod forms;
pub mod g2;
pub mod quadrature;
pub mod zeta;
pub mod report;

pub use error::{Error, Result};
