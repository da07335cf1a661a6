//! Saturation games on intersecting k-uniform families.

pub mod check;
pub mod cli;
pub mod error;
pub mod game;
pub mod maximizer;
pub mod minimizer;
pub mod points;
pub mod setfam;
pub mod solver;
pub mod sperner;
pub mod verify;

pub use error::{Error, Result};
pub use points::PointSet;
