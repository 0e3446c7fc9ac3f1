//! Exact computations in the category of tensor modules over the queer Lie
//! superalgebra q(∞): parity-ring multiplicities, type-Q Littlewood–Richardson
//! coefficients, marked diagram algebras, socle and Ext data of injectives.

pub mod diagrams;
pub mod error;
pub mod linalg;
pub mod lr;
pub mod oracle;
pub mod parity_ring;
pub mod partitions;
pub mod symfunc;
pub mod trep;

pub use error::{Error, Result};
pub use parity_ring::GradedInt;
pub use partitions::{Bipartition, SimpleType, StrictPartition};
