//! Law catalog, instance generators and enumerators, and a deterministic
//! counterexample search over the prom/representation kernel.

pub mod check;
pub mod enumerate;
pub mod error;
pub mod gen;
pub mod instance;
pub mod laws;
pub mod search;
pub mod witness;

pub use check::{check_law, Failure, Verdict};
pub use error::HarnessError;
pub use instance::Instance;
pub use laws::{InstanceKind, LawId, CATALOG};
pub use search::{search, Mode, SearchConfig, Summary};
pub use witness::{Witness, WitnessSeed};
