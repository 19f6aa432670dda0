//! Exact combinatorics of exceptional sequences in the derived category of a
//! Dynkin quiver.

pub mod clique;
pub mod derived;
pub mod error;
pub mod exceptional;
pub mod linalg;
pub mod riedtmann;
pub mod root_system;
pub mod silting;
pub mod weyl;

pub use derived::{DObj, DObjRecord, DerivedCategory, Translate, WindowSpec};
pub use error::{Error, Result};
pub use exceptional::{Direction, ExcSeq, MutationRun, MutationSign, MutationStep};
pub use riedtmann::{PeriodicConfig, TorsionWindow};
pub use root_system::{DimVector, DynkinType, Family, QuiverDescriptor, RootSystem};
pub use silting::{DCollection, Kind, Side, Transport};
pub use weyl::{NCTuple, NCTupleRecord, Weyl, WeylElt};
