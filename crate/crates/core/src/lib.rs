//! Surface-following stroke trajectories from depth images.
//!
//! The pipeline reads (or synthesizes) a depth image of a back, extracts the
//! depth profile along a vertical stroke line, fits a cubic
//! `z = a·y³ + b·y² + c·y + d` to it, samples waypoints every millimeter
//! along the fitted curve with a pitch angle that keeps the end-effector
//! tangent to the surface, maps them into the robot frame and timestamps
//! them at constant speed. Trajectories are scored by the angle between the
//! surface normal and the end-effector normal at every waypoint.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod curvefit;
pub mod depthcam;
pub mod error;
pub mod eval;
pub mod exec;
pub mod geometry;
mod kv;
pub mod pipeline;
pub mod profile;
pub mod trajgen;

pub use error::{Error, Result};
pub use exec::Execution;
