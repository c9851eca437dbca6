//! Exact arithmetic for tilt stability on polarized surfaces: Chern
//! characters and their plane images, central charges and phases, walls,
//! phase bounds along parameter segments, an Ext^2-vanishing certificate,
//! and a matrix model of the trace pairing on complexes.
//!
//! Everything is computed over the rationals or over real quadratic fields;
//! floating point only appears in approximate displays.

pub mod error;
pub mod lattice;
pub mod phase;
pub mod plane;
pub mod quad;
pub mod rational;
pub mod stability;
pub mod trace;
pub mod walls;

pub use error::{Error, Result};
pub use lattice::{CharVec, DivisorClass, SurfaceLattice, VTilde};
pub use phase::{LiftedPhase, Ray};
pub use plane::{ParabolaShift, PlaneLine, PlanePoint, QuadPoint};
pub use quad::QuadNum;
pub use rational::Rat;
pub use stability::{central_charge, phase, phase_compare, wall_of, ChargeValue, StabPoint};
