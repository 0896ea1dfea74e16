//! Computational algebra for finite quandles.
//!
//! The crate covers quandle tables and their structural properties, the
//! identity language used to generate congruences, congruence closure and
//! quotients, affine meshes of abelian groups, two independent engines for
//! `Hom(S, T)`, and exhaustive enumeration of small quandles.

pub mod cli;
pub mod congruence;
pub mod enumerate;
pub mod hom;
pub mod iso;
pub mod mesh;
pub mod partition;
pub mod property;
pub mod table;
pub mod terms;

pub use congruence::{congruence_closure, quotient, standard_congruence, CongruenceKind};
pub use enumerate::{canonical_form, enumerate_quandles, Catalog, CatalogEntry};
pub use hom::{HomEngine, HomRecord, HomSet};
pub use iso::is_isomorphic;
pub use mesh::{AbelianGroup, AffineMesh, GroupHom};
pub use partition::Partition;
pub use property::{check_property, has_property, Property, PropertyCheck};
pub use table::{verify_quandle, AxiomFailure, Quandle, QuandleError, ValidationReport};
pub use terms::{parse_identity, Identity, Term};
