use rand::Rng;

use super::{ActionKind, ActuationModel, ExecutorConfig, GoalError, PhysicalCube};
use crate::compiler::{
    body_face_normal, face_up, pose_goal_reached, position_error, PoseGoal, TWIST_TARGET,
};
use crate::cube::{reduce_move, Face, GeneralizedMove, Move};
use crate::quaternion::{orientation_distance, Quaternion};

/// Outcome of one atomic action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionRecord {
    pub kind: ActionKind,
    pub success: bool,
    pub error: GoalError,
    pub committed: Option<GeneralizedMove>,
}

/// Uniform point strictly inside the ball of the given radius.
fn in_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if r2 < 1.0 {
            return v.map(|c| c * radius * (1.0 - 1e-9));
        }
    }
}

fn offset(center: [f64; 3], d: [f64; 3]) -> [f64; 3] {
    [center[0] + d[0], center[1] + d[1], center[2] + d[2]]
}

fn pose_error(cube: &PhysicalCube, goal: &PoseGoal) -> GoalError {
    GoalError::Pose {
        position: position_error(cube.position, goal.position),
        orientation: orientation_distance(cube.orientation, goal.orientation),
    }
}

/// Stage 1. With probability `p_rot` the cube ends somewhere inside the goal
/// tolerance region; otherwise at a uniformly random orientation near the
/// palm. The logical state is untouched.
pub fn attempt_rotate<R: Rng + ?Sized>(
    cube: &mut PhysicalCube,
    goal: &PoseGoal,
    model: &ActuationModel,
    config: &ExecutorConfig,
    rng: &mut R,
) -> ActionRecord {
    let th = &config.thresholds;
    if rng.gen_bool(model.p_rot) {
        cube.position = offset(goal.position, in_ball(rng, th.position));
        cube.orientation =
            goal.orientation * Quaternion::from_rotation_vector(in_ball(rng, th.orientation));
    } else {
        cube.position = offset(goal.position, in_ball(rng, model.failure_position_radius));
        cube.orientation = Quaternion::random(rng);
    }
    ActionRecord {
        kind: ActionKind::Rotate,
        success: pose_goal_reached(cube.position, cube.orientation, goal, th),
        error: pose_error(cube, goal),
        committed: None,
    }
}

/// Throws the cube into a random pose near the palm.
pub fn randomize_pose<R: Rng + ?Sized>(
    cube: &mut PhysicalCube,
    model: &ActuationModel,
    config: &ExecutorConfig,
    rng: &mut R,
) -> ActionRecord {
    cube.position = offset(
        config.target_position,
        in_ball(rng, model.failure_position_radius),
    );
    cube.orientation = Quaternion::random(rng);
    ActionRecord {
        kind: ActionKind::RandomizePose,
        success: true,
        error: GoalError::None,
        committed: None,
    }
}

/// Finishes a quarter turn of whatever layer is on top.
fn commit(cube: &mut PhysicalCube) -> GeneralizedMove {
    let up = face_up(cube.orientation);
    let g = reduce_move(Move::new(up, true));
    cube.logical = cube.logical.apply(g);
    if matches!(up, Face::D | Face::L | Face::B) {
        // the anchor half turned, and the body frame with it
        let axis = cube.orientation.rotate(body_face_normal(up));
        cube.orientation = (Quaternion::from_axis_angle(axis, std::f64::consts::FRAC_PI_2)
            * cube.orientation)
            .normalized();
    }
    cube.layer_angle = 0.0;
    g
}

/// Snaps a residual angle within the chamfer tolerance of an aligned
/// position. Returns the committed move when it snapped to -90°.
fn settle(cube: &mut PhysicalCube, angle: f64, tolerance: f64) -> Option<GeneralizedMove> {
    if angle.abs() <= tolerance {
        cube.layer_angle = 0.0;
        None
    } else if (angle - TWIST_TARGET).abs() <= tolerance {
        Some(commit(cube))
    } else {
        cube.layer_angle = angle;
        None
    }
}

/// Stage 2: turn the top layer by -90°. Jams without effect when the halves
/// are misaligned beyond the chamfer tolerance.
pub fn attempt_twist<R: Rng + ?Sized>(
    cube: &mut PhysicalCube,
    model: &ActuationModel,
    config: &ExecutorConfig,
    rng: &mut R,
) -> ActionRecord {
    let delta = config.thresholds.angle;
    let mut record = ActionRecord {
        kind: ActionKind::Twist,
        success: false,
        error: GoalError::Angle((cube.layer_angle - TWIST_TARGET).abs()),
        committed: None,
    };
    if cube.layer_angle.abs() > config.chamfer_tolerance {
        return record;
    }
    let angle = if rng.gen_bool(model.p_op) {
        TWIST_TARGET + rng.gen_range(-delta..delta)
    } else {
        // anywhere short of the goal band
        let low = (TWIST_TARGET + delta).min(0.0);
        if low < 0.0 {
            rng.gen_range(low..0.0)
        } else {
            0.0
        }
    };
    let error = (angle - TWIST_TARGET).abs();
    record.error = GoalError::Angle(error);
    record.success = error < delta;
    record.committed = if record.success {
        Some(commit(cube))
    } else {
        settle(cube, angle, config.chamfer_tolerance)
    };
    record
}

/// Shakes a misaligned cube back to the nearest aligned position.
pub fn attempt_restore<R: Rng + ?Sized>(
    cube: &mut PhysicalCube,
    model: &ActuationModel,
    rng: &mut R,
) -> ActionRecord {
    let mut record = ActionRecord {
        kind: ActionKind::Restore,
        success: false,
        error: GoalError::Angle(
            cube.layer_angle
                .abs()
                .min((cube.layer_angle - TWIST_TARGET).abs()),
        ),
        committed: None,
    };
    if cube.is_aligned() || rng.gen_bool(model.p_restore) {
        if (cube.layer_angle - TWIST_TARGET).abs() < cube.layer_angle.abs() {
            record.committed = Some(commit(cube));
        }
        cube.layer_angle = 0.0;
        record.success = true;
        record.error = GoalError::Angle(0.0);
    }
    record
}
