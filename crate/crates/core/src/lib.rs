//! Morphing edge drawings of straight-line graph layouts.
//!
//! A partial edge drawing omits the middle of each edge and keeps a stub at
//! each end. In a morphing edge drawing the stubs periodically stretch until
//! they meet and then shrink back. This crate computes the stub geometry,
//! schedules the morphing so that stretching stubs never create new
//! crossings, verifies that property independently, and exports the result
//! as a JSON timeline or an animated SVG.

pub mod cli;
pub mod error;
pub mod export;
pub mod geometry;
pub mod graphgen;
pub mod scheduler;
pub mod verifier;

pub use error::{MedError, Result};
