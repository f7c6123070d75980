use rand::Rng;

use super::actions::{
    attempt_restore, attempt_rotate, attempt_twist, randomize_pose, ActionRecord,
};
use super::{ActuationModel, ExecutorConfig, PhysicalCube, TraceEntry};
use crate::compiler::{
    compile_with, goal_orientation, pose_goal_reached, twists_for, AtomicAction, CompileOptions,
    PoseGoal,
};
use crate::cube::{CanonicalState, GeneralizedMove};
use crate::solver::Planner;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Rollback,
    OpenLoop,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Rollback => "rollback",
            Mode::OpenLoop => "open_loop",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveOutcome {
    Completed,
    NeedsReplan,
    BudgetExhausted,
}

/// Counts actions against the episode budget and optionally keeps a trace.
#[derive(Debug, Clone)]
pub struct Recorder {
    budget: u32,
    actions: u32,
    failures: u32,
    trace: Option<Vec<TraceEntry>>,
}

impl Recorder {
    pub fn new(budget: u32, keep_trace: bool) -> Self {
        Recorder {
            budget,
            actions: 0,
            failures: 0,
            trace: keep_trace.then(Vec::new),
        }
    }

    pub fn actions(&self) -> u32 {
        self.actions
    }

    pub fn failures(&self) -> u32 {
        self.failures
    }

    pub fn exhausted(&self) -> bool {
        self.actions >= self.budget
    }

    pub fn record(&mut self, rec: ActionRecord, cube: &PhysicalCube) {
        if !rec.success {
            self.failures += 1;
        }
        if let Some(trace) = &mut self.trace {
            trace.push(TraceEntry {
                index: self.actions,
                kind: rec.kind,
                success: rec.success,
                error: rec.error,
                committed: rec.committed,
                rank: cube.logical.rank(),
            });
        }
        self.actions += 1;
    }

    fn into_trace(self) -> Vec<TraceEntry> {
        self.trace.unwrap_or_default()
    }
}

/// One move under the rollback workflow: pose, check, re-randomize and
/// retry; twist, check alignment, restore; finally compare the logical
/// state against the intended one.
pub fn execute_move_rollback<R: Rng + ?Sized>(
    cube: &mut PhysicalCube,
    m: GeneralizedMove,
    model: &ActuationModel,
    config: &ExecutorConfig,
    rng: &mut R,
    rec: &mut Recorder,
) -> MoveOutcome {
    macro_rules! act {
        ($e:expr) => {{
            if rec.exhausted() {
                return MoveOutcome::BudgetExhausted;
            }
            let r = $e;
            rec.record(r, cube);
        }};
    }

    let expected = cube.logical.apply(m);
    let goal = PoseGoal {
        position: config.target_position,
        orientation: goal_orientation(m),
    };

    let mut posed = false;
    for attempt in 0..config.max_rotate_attempts {
        if attempt > 0 {
            act!(randomize_pose(cube, model, config, rng));
        }
        act!(attempt_rotate(cube, &goal, model, config, rng));
        if pose_goal_reached(cube.position, cube.orientation, &goal, &config.thresholds) {
            posed = true;
            break;
        }
    }
    if !posed {
        return MoveOutcome::NeedsReplan;
    }

    for _ in 0..twists_for(m) {
        act!(attempt_twist(cube, model, config, rng));
        let mut restores = 0;
        while !cube.is_aligned() {
            if restores == config.max_restore_attempts {
                return MoveOutcome::NeedsReplan;
            }
            act!(attempt_restore(cube, model, rng));
            restores += 1;
        }
    }

    if cube.logical == expected {
        MoveOutcome::Completed
    } else {
        MoveOutcome::NeedsReplan
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeReport {
    pub success: bool,
    /// Atomic actions spent (AN).
    pub atomic_actions: u32,
    /// Actions that missed their goal.
    pub atomic_failures: u32,
    pub moves_attempted: u32,
    pub replans: u32,
    pub final_state: CanonicalState,
    /// Filled only when tracing was requested.
    pub trace: Vec<TraceEntry>,
}

/// Solves `scramble` with the simulated hand. Rollback mode re-plans from
/// the current logical state whenever a move is not completed and stops on
/// solved or when the action budget runs out. Open-loop mode compiles one
/// plan and runs every action blindly.
#[allow(clippy::too_many_arguments)]
pub fn execute_episode<R: Rng + ?Sized>(
    scramble: CanonicalState,
    mode: Mode,
    planner: &dyn Planner,
    model: &ActuationModel,
    config: &ExecutorConfig,
    rng: &mut R,
    keep_trace: bool,
) -> EpisodeReport {
    let mut cube = PhysicalCube::new(scramble);
    cube.position = config.target_position;
    let mut rec = Recorder::new(config.action_budget, keep_trace);
    let mut moves_attempted = 0;
    let mut replans = 0;

    match mode {
        Mode::Rollback => {
            'episode: while !cube.logical.is_solved() {
                let plan = planner.plan(&cube.logical);
                if plan.is_empty() {
                    break;
                }
                for m in plan {
                    moves_attempted += 1;
                    match execute_move_rollback(&mut cube, m, model, config, rng, &mut rec) {
                        MoveOutcome::Completed => {}
                        MoveOutcome::NeedsReplan => {
                            replans += 1;
                            continue 'episode;
                        }
                        MoveOutcome::BudgetExhausted => break 'episode,
                    }
                }
            }
        }
        Mode::OpenLoop => {
            let options = CompileOptions {
                target_position: config.target_position,
                angle_threshold: config.thresholds.angle,
            };
            let plan = compile_with(&planner.plan(&cube.logical), &options);
            for step in &plan.steps {
                moves_attempted += 1;
                for action in &step.actions {
                    let r = match action {
                        AtomicAction::Rotate(goal) => {
                            attempt_rotate(&mut cube, goal, model, config, rng)
                        }
                        AtomicAction::TwistUPrime { .. } => {
                            attempt_twist(&mut cube, model, config, rng)
                        }
                    };
                    rec.record(r, &cube);
                }
            }
        }
    }

    EpisodeReport {
        success: cube.logical.is_solved(),
        atomic_actions: rec.actions(),
        atomic_failures: rec.failures(),
        moves_attempted,
        replans,
        final_state: cube.logical,
        trace: rec.into_trace(),
    }
}
