//! Function-correcting codes for the Hamming weight and weight-distribution
//! functions: Gray-ordered linear-code encoders, bounds on the optimal
//! redundancy, an exact `N(D)` solver, and verification and simulation of
//! the resulting tables.

pub mod bits;
pub mod bounds;
pub mod channel;
pub mod construct;
pub mod drm;
pub mod error;
pub mod graph;
pub mod gray;
pub mod linear;
pub mod solver;
pub mod verify;

pub use bits::BitVector;
pub use bounds::{BoundValue, BoundsReport};
pub use channel::SimulationReport;
pub use construct::{CodeChoice, Mode, RedundancyTable};
pub use drm::DistanceRequirementMatrix;
pub use error::{FccError, Result};
pub use gray::GrayOrdering;
pub use linear::{GeneratorMatrix, GrayOrderedCode};
pub use solver::SolveResult;
pub use verify::{Counterexample, Verdict};
