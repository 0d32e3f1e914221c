//! Minimum-cost co-design of inputs, outputs and feedback links for
//! structural linear time-invariant systems.
//!
//! Given binary patterns `(A, B, C)` and costs for every candidate actuator,
//! sensor and sensor-to-actuator link, [`codesign::solve_codesign`] returns the
//! cheapest selection whose closed loop has no structurally fixed modes. It runs
//! in cubic time when `A` is irreducible. [`oracle`] gives an exhaustive
//! reference for small instances of any shape.

pub mod analysis;
pub mod assignment;
pub mod codesign;
pub mod error;
pub mod fixtures;
pub mod generator;
pub mod graph;
pub mod model;
pub mod oracle;

pub use error::{Error, Result};
pub use model::{selection_cost, Cost, Instance, Selection, SparsityPattern};
