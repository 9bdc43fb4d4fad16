//! Principal parts, local factors and height terms of the zeta integral.

pub mod bundle;
pub mod height;
pub mod local;
pub mod principal;

pub use bundle::{FunctionalBundle, Sampler};
pub use principal::{
    pole_terms, principal_part, residues, theorem_rhs, tilde_z_principal, with_bookkeeping, PoleTerm, Residue,
};
