//! Optimal planning and simulated two-skill execution for the 2x2x2 cube.
//!
//! [`cube`] models states and moves, [`tables`] enumerates the full state
//! space, [`solver`] finds optimal move sequences, [`compiler`] lowers moves
//! to hand actions, [`executor`] simulates those actions with rollback, and
//! [`harness`] runs the success-rate experiment.

pub mod compiler;
pub mod cube;
pub mod executor;
pub mod harness;
pub mod quaternion;
pub mod solver;
pub mod tables;
