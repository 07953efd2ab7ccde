//! Exact base-60 arithmetic with the scribal procedures of the Susa canal
//! excavation problems, and a replay engine that checks each intermediate
//! value against the tablets.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod geometry;
pub mod procedures;
pub mod sexcore;
pub mod units;

pub use error::{Error, ProcedureError, Result};
pub use sexcore::Sexa;
pub use units::{Dimension, Quantity};
