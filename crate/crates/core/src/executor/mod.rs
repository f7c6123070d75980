//! Stochastic stand-ins for the two hand skills, the rollback workflow that
//! checks and retries them, and an open-loop baseline.
//!
//! Every Rotate, Twist, randomize-pose and restore attempt counts as one
//! atomic action.
//!
//! Trace lines (one per action) look like
//!
//! ```text
//!    7 rotate    ok   pos_err=0.004123 ori_err=0.031200 rank=1234567
//!    8 twist     FAIL angle_err=0.812000 rank=1234567
//!    9 restore   ok   angle_err=0.000000 rank=1234570
//!   10 randomize ok   - rank=1234570
//! ```
//!
//! fields: action index (from 0), kind, goal outcome, error against the
//! action's goal (meters / radians), logical state rank after the action.

mod actions;
mod episode;

use std::f64::consts::PI;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::compiler::Thresholds;
use crate::cube::{CanonicalState, GeneralizedMove};
use crate::quaternion::Quaternion;

pub use actions::{attempt_restore, attempt_rotate, attempt_twist, randomize_pose, ActionRecord};
pub use episode::{
    execute_episode, execute_move_rollback, EpisodeReport, Mode, MoveOutcome, Recorder,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{name} = {value} is not a probability")]
    Probability { name: &'static str, value: f64 },
    #[error("{name} = {value} must be positive")]
    NonPositive { name: &'static str, value: f64 },
}

/// Success rates and failure shapes of the simulated actuators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActuationModel {
    /// Rotate reaches its pose goal.
    pub p_rot: f64,
    /// Twist reaches its angle goal.
    pub p_op: f64,
    /// Restore re-aligns the two halves.
    pub p_restore: f64,
    /// Failed or random poses land uniformly in a ball of this radius
    /// (meters) around the palm point.
    pub failure_position_radius: f64,
    pub seed: u64,
}

impl Default for ActuationModel {
    fn default() -> Self {
        ActuationModel {
            p_rot: 0.952,
            p_op: 0.923,
            p_restore: 0.95,
            failure_position_radius: 0.05,
            seed: 0,
        }
    }
}

impl ActuationModel {
    pub fn perfect() -> Self {
        ActuationModel {
            p_rot: 1.0,
            p_op: 1.0,
            p_restore: 1.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, value) in [
            ("p_rot", self.p_rot),
            ("p_op", self.p_op),
            ("p_restore", self.p_restore),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::Probability { name, value });
            }
        }
        if self.failure_position_radius.is_nan() || self.failure_position_radius <= 0.0 {
            return Err(ConfigError::NonPositive {
                name: "failure_position_radius",
                value: self.failure_position_radius,
            });
        }
        Ok(())
    }
}

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExecutorConfig {
    pub thresholds: Thresholds,
    /// Largest layer misalignment (radians) a twist can start from.
    pub chamfer_tolerance: f64,
    /// Stage-1 attempts per move.
    pub max_rotate_attempts: u32,
    /// Restore attempts after each twist.
    pub max_restore_attempts: u32,
    /// Atomic actions allowed per rollback episode.
    pub action_budget: u32,
    pub target_position: [f64; 3],
}

impl Default for ExecutorConfig {
    fn default() -> Self {
        ExecutorConfig {
            thresholds: Thresholds::default(),
            chamfer_tolerance: 5.0 * PI / 180.0,
            max_rotate_attempts: 10,
            max_restore_attempts: 10,
            action_budget: 200,
            target_position: [0.0; 3],
        }
    }
}

impl ExecutorConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let t = &self.thresholds;
        for (name, value) in [
            ("delta_x", t.position),
            ("delta_q", t.orientation),
            ("delta_theta", t.angle),
            ("chamfer_tolerance", self.chamfer_tolerance),
        ] {
            if value.is_nan() || value <= 0.0 {
                return Err(ConfigError::NonPositive { name, value });
            }
        }
        Ok(())
    }
}

/// Logical state plus the continuous quantities the actuators act on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalCube {
    pub logical: CanonicalState,
    /// Meters, hand frame.
    pub position: [f64; 3],
    /// Body-to-hand rotation.
    pub orientation: Quaternion,
    /// Angle of the top layer relative to the bottom since the last aligned
    /// position, radians in (-π/2, 0]. Zero when aligned.
    pub layer_angle: f64,
}

impl PhysicalCube {
    pub fn new(logical: CanonicalState) -> Self {
        PhysicalCube {
            logical,
            position: [0.0; 3],
            orientation: Quaternion::IDENTITY,
            layer_angle: 0.0,
        }
    }

    pub fn is_aligned(&self) -> bool {
        self.layer_angle == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    Rotate,
    Twist,
    RandomizePose,
    Restore,
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            ActionKind::Rotate => "rotate",
            ActionKind::Twist => "twist",
            ActionKind::RandomizePose => "randomize",
            ActionKind::Restore => "restore",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GoalError {
    Pose { position: f64, orientation: f64 },
    Angle(f64),
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub index: u32,
    pub kind: ActionKind,
    pub success: bool,
    pub error: GoalError,
    /// Generalized move committed to the logical state by this action.
    pub committed: Option<GeneralizedMove>,
    pub rank: u32,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.success { "ok  " } else { "FAIL" };
        write!(f, "{:>4} {:<9} {} ", self.index, self.kind, status)?;
        match self.error {
            GoalError::Pose {
                position,
                orientation,
            } => write!(f, "pos_err={position:.6} ori_err={orientation:.6}")?,
            GoalError::Angle(a) => write!(f, "angle_err={a:.6}")?,
            GoalError::None => f.write_str("-")?,
        }
        write!(f, " rank={}", self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        assert!(ActuationModel::default().validate().is_ok());
        assert!(ExecutorConfig::default().validate().is_ok());
        let bad = ActuationModel {
            p_op: 1.2,
            ..Default::default()
        };
        assert_eq!(
            bad.validate(),
            Err(ConfigError::Probability {
                name: "p_op",
                value: 1.2
            })
        );
        let mut cfg = ExecutorConfig::default();
        cfg.thresholds.angle = 0.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn trace_line_format() {
        let e = TraceEntry {
            index: 7,
            kind: ActionKind::Rotate,
            success: true,
            error: GoalError::Pose {
                position: 0.004123,
                orientation: 0.0312,
            },
            committed: None,
            rank: 1234567,
        };
        assert_eq!(
            e.to_string(),
            "   7 rotate    ok   pos_err=0.004123 ori_err=0.031200 rank=1234567"
        );
        let e = TraceEntry {
            index: 10,
            kind: ActionKind::RandomizePose,
            error: GoalError::None,
            ..e
        };
        assert_eq!(e.to_string(), "  10 randomize ok   - rank=1234567");
    }

    #[test]
    fn streams_are_independent_and_repeatable() {
        use rand::Rng;
        let a: u64 = stream_rng(5, 1).gen();
        let b: u64 = stream_rng(5, 2).gen();
        assert_ne!(a, b);
        assert_eq!(a, stream_rng(5, 1).gen::<u64>());
    }
}
