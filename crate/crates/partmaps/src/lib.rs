//! Partition statistics, constrained enumeration, the φ_m bijection and the
//! bijective chains built on it, colored partitions, truncated q-series, and
//! exhaustive verification sweeps.

pub mod colored;
pub mod enumeration;
pub mod error;
pub mod maps;
pub mod partition;
pub mod qseries;
pub mod stockhofe;
pub mod verify;

pub use colored::{ColoredPart, ColoredPartition};
pub use enumeration::{partitions_of, ConstraintSpec, Family, Preset};
pub use error::{Error, Result};
pub use maps::{ChainTrace, Direction};
pub use partition::{Modulus, Partition, TypeVector};
pub use qseries::TruncatedSeries;
pub use stockhofe::{phi, phi_inv};
pub use verify::{Exec, VerificationReport};
