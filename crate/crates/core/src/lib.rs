//! Finite relation algebra for preorder morphisms ("proms") and
//! representations, the functors between them, and the adjunction they
//! form.
//!
//! Relations are dense bit matrices between labelled finite sets. All
//! structure checks are exact.

pub mod adjunction;
pub mod error;
pub mod exactness;
pub mod functors;
pub mod powerset;
pub mod rel;
pub mod structures;
pub mod workspace;

pub use error::Error;
pub use powerset::PowersetCap;
pub use rel::{FinSet, FnMap, Rel};
pub use structures::{Axiom, Preorder, Prom, PromMorphism, RepMorphism, Representation, Violation};
