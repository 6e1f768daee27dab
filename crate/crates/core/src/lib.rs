//! Conversion circuits between one-hot, staircase and binary amplitude
//! encodings, with a statevector simulator to check them and a binomial
//! state preparation built on top.

pub mod analysis;
pub mod circuit;
pub mod converters;
pub mod dicke;
pub mod encodings;
pub mod error;
pub mod statevector;

pub use circuit::{Circuit, CostReport, Gate, GateKind, Granularity};
pub use converters::{ConverterPlan, Direction, EvenMethod};
pub use encodings::{AmplitudeVector, EncodingKind};
pub use error::{Error, Result};
pub use statevector::Statevector;
