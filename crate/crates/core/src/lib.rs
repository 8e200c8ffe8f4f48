//! Planar cubic Cayley graphs of connectivity 2: construction of finite balls,
//! structural diagnostics, spin embeddings, planarity and classification.

pub mod presentation;

pub use presentation::{Presentation, PresentationError, Word};
pub mod construct;

pub use construct::{construct, CayleyBall, GraphType, TypeParams};
pub mod analyze;
pub mod classify;
pub mod embed;
