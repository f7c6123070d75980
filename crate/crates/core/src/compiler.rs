//! Lowers generalized moves to the two hand skills: re-pose the cube so the
//! target layer faces up, then turn the top layer by -90° (a prime turn),
//! three times over when the clockwise turn is wanted.
//!
//! Pose convention: a pose quaternion maps the cube body frame into the
//! hand frame. The body frame is fixed to the half holding the DBL anchor
//! cubelet, so turning the opposite layer never moves it. "Up" in the hand
//! frame is [`HAND_UP`]; in the body frame the U, R and F faces point along
//! -z, -x and -y.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use crate::cube::{Face, GeneralizedMove};
use crate::quaternion::{orientation_distance, Quaternion};

pub const HAND_UP: [f64; 3] = [0.0, 0.0, -1.0];

/// Target relative angle of the top layer for one twist.
pub const TWIST_TARGET: f64 = -FRAC_PI_2;

/// Goal thresholds (meters, radians).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub position: f64,
    pub orientation: f64,
    pub angle: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            position: 0.01,
            orientation: 0.1,
            angle: 0.1,
        }
    }
}

/// Outward normal of a face, in body coordinates.
pub fn body_face_normal(face: Face) -> [f64; 3] {
    match face {
        Face::U => [0.0, 0.0, -1.0],
        Face::D => [0.0, 0.0, 1.0],
        Face::R => [-1.0, 0.0, 0.0],
        Face::L => [1.0, 0.0, 0.0],
        Face::F => [0.0, -1.0, 0.0],
        Face::B => [0.0, 1.0, 0.0],
    }
}

/// The face pointing most nearly along [`HAND_UP`] at the given pose. Ties
/// go to the earlier face in U, D, R, L, F, B order.
pub fn face_up(orientation: Quaternion) -> Face {
    let mut best = (Face::U, f64::NEG_INFINITY);
    for face in Face::ALL {
        let n = orientation.rotate(body_face_normal(face));
        let score = n[0] * HAND_UP[0] + n[1] * HAND_UP[1] + n[2] * HAND_UP[2];
        if score > best.1 + 1e-12 {
            best = (face, score);
        }
    }
    best.0
}

pub fn goal_orientation(m: GeneralizedMove) -> Quaternion {
    match m.face() {
        Face::U => Quaternion::IDENTITY,
        Face::R => Quaternion::new(FRAC_1_SQRT_2, 0.0, -FRAC_1_SQRT_2, 0.0),
        Face::F => Quaternion::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0),
        _ => unreachable!("generalized moves turn U, R or F"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseGoal {
    pub position: [f64; 3],
    pub orientation: Quaternion,
}

pub fn position_error(position: [f64; 3], target: [f64; 3]) -> f64 {
    position
        .iter()
        .zip(target)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

pub fn pose_goal_reached(
    position: [f64; 3],
    orientation: Quaternion,
    goal: &PoseGoal,
    thresholds: &Thresholds,
) -> bool {
    position_error(position, goal.position) < thresholds.position
        && orientation_distance(orientation, goal.orientation) < thresholds.orientation
}

pub fn twist_goal_reached(angle: f64, target: f64, threshold: f64) -> bool {
    (angle - target).abs() < threshold
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AtomicAction {
    Rotate(PoseGoal),
    TwistUPrime { target: f64, threshold: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanStep {
    pub mv: GeneralizedMove,
    pub actions: Vec<AtomicAction>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExecutionPlan {
    pub steps: Vec<PlanStep>,
}

impl ExecutionPlan {
    pub fn atomic_count(&self) -> usize {
        self.steps.iter().map(|s| s.actions.len()).sum()
    }

    pub fn actions(&self) -> impl Iterator<Item = &AtomicAction> {
        self.steps.iter().flat_map(|s| s.actions.iter())
    }
}

/// Prime turns need one twist; the others are three prime twists.
pub fn twists_for(m: GeneralizedMove) -> usize {
    if m.is_prime() {
        1
    } else {
        3
    }
}

/// Number of atomic actions a move compiles to.
pub fn action_cost(m: GeneralizedMove) -> usize {
    1 + twists_for(m)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompileOptions {
    /// Palm point the cube is re-posed to, meters in the hand frame.
    pub target_position: [f64; 3],
    pub angle_threshold: f64,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            target_position: [0.0; 3],
            angle_threshold: Thresholds::default().angle,
        }
    }
}

pub fn compile(seq: &[GeneralizedMove]) -> ExecutionPlan {
    compile_with(seq, &CompileOptions::default())
}

pub fn compile_with(seq: &[GeneralizedMove], options: &CompileOptions) -> ExecutionPlan {
    let twist = AtomicAction::TwistUPrime {
        target: TWIST_TARGET,
        threshold: options.angle_threshold,
    };
    let steps = seq
        .iter()
        .map(|&mv| {
            let goal = PoseGoal {
                position: options.target_position,
                orientation: goal_orientation(mv),
            };
            let mut actions = vec![AtomicAction::Rotate(goal)];
            actions.extend(std::iter::repeat_n(twist, twists_for(mv)));
            PlanStep { mv, actions }
        })
        .collect();
    ExecutionPlan { steps }
}
