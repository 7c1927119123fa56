//! Example catalog and Hopf-Galois models.

pub mod catalog;
pub mod galois_models;
pub mod group_hopf;
pub mod groups;
pub mod sidecar;

pub use catalog::{generate_example, CatalogError, CATALOG};
pub use galois_models::{galois_frobenius_system, ModelBundle, ModelError};
pub use group_hopf::{group_hopf, GroupHopf, GroupHopfError};
pub use groups::{Group, GroupError};
pub use sidecar::sidecar;
