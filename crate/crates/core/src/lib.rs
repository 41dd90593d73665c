//! Beta-expansions: admissibility, cylinders, run lengths, Diophantine exponents
//! and explicit Cantor-set constructions in the unit interval and the parameter space.

pub mod admissibility;
pub mod cylinders;
pub mod dimension;
pub mod error;
pub mod expansion;
pub mod levelset;
pub mod numerics;
pub mod paramspace;
pub mod runlength;

pub use error::{Error, Result};
pub use cylinders::CylinderInterval;
pub use dimension::{DimensionValue, Family};
pub use expansion::{digits, lex_compare, CompressedWord, DigitStream, Seed, Word};
pub use levelset::{LevelSetPoint, Schedule};
pub use numerics::{BetaSpec, Enclosure};
pub use paramspace::{ParamCylinder, ParamPoint};
