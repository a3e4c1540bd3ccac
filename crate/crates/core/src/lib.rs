//! Tools for near-matchstick graphs: straight-line plane graphs whose edges
//! should all have unit length, apart from a few marked "forbidden distances".
//!
//! The crate covers
//!
//! * [`model`]: the [`Graph`] type and its JSON file format,
//! * [`verifier`]: unit-length, regularity, crossing and coincidence checks
//!   plus the construction-rule checker,
//! * [`rigidity`]: rigidity matrix, numeric rank and infinitesimal flexes,
//! * [`relax`]: Levenberg–Marquardt relaxation toward unit lengths and flex
//!   continuation of Epsilon graphs,
//! * [`analysis`]: outer boundary, frame triangles and symmetry detection,
//! * [`corpus`]: the embedded set of published coordinate sets,
//! * [`svg`]: deterministic SVG export.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod geometry;
pub mod model;
pub mod relax;
pub mod rigidity;
pub mod svg;
pub mod verifier;

pub use error::{Error, ParseError, Result};
pub use geometry::{IntersectionClass, IntersectionKind, Point, Segment};
pub use model::{Edge, Graph, ToleranceProfile};
