use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use cube2_core::compiler::Thresholds;
use cube2_core::cube::{
    format_moves, parse_moves, reduce_move, CanonicalState, CoordMoves, CubeletState, FaceletState,
    GeneralizedMove, Move, STATE_COUNT,
};
use cube2_core::executor::{execute_episode, stream_rng, ActuationModel, ExecutorConfig, Mode};
use cube2_core::harness::{
    export_csv, run_experiment_with_progress, DepthBuckets, ExperimentConfig, PlannerKind,
};
use cube2_core::solver::{ida_star, oracle_solve, IdaPlanner, OraclePlanner, Planner};
use cube2_core::tables::{TableSet, DISTANCE_FILE};

#[derive(Parser)]
#[command(
    name = "cube2",
    version,
    about = "Optimal 2x2x2 cube solving and simulated in-hand execution"
)]
struct Cli {
    /// Directory holding distance.bin, ori_pdb.bin and perm_pdb.bin. Tables
    /// are built in memory when it is unset or holds no tables.
    #[arg(long, global = true, env = "CUBE2_TABLES")]
    tables: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the state space and write the three table files.
    BuildTables {
        #[arg(long)]
        out: PathBuf,
    },
    /// Print an optimal solution.
    Solve {
        #[command(flatten)]
        input: StateInput,
        #[arg(long, value_enum, default_value = "ida")]
        planner: PlannerArg,
    },
    /// Print random states at an exact distance, one facelet string per line.
    Scramble {
        #[arg(long)]
        distance: u8,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run one solve episode on the simulated hand.
    Simulate {
        #[command(flatten)]
        input: StateInput,
        #[arg(long, value_enum, default_value = "rollback")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print one line per atomic action.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "oracle")]
        planner: PlannerArg,
        #[command(flatten)]
        actuator: ActuatorArgs,
    },
    /// Success rate and action count per distance; writes a CSV.
    Eval {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_enum, default_value = "both")]
        modes: ModesArg,
        /// Comma-separated distances.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "1,2,3,4,5,6,7,8,9,10,11,12,13,14"
        )]
        distances: Vec<u8>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "oracle")]
        planner: PlannerArg,
        #[command(flatten)]
        actuator: ActuatorArgs,
    },
    /// Check the tables and the move algebra; exits nonzero on any failure.
    Verify {
        /// Also check every state against its neighbours and solve every
        /// antipode with IDA*.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct StateInput {
    /// 24 color letters (W Y R O G B) in U D R L F B face order.
    #[arg(long)]
    state: Option<String>,
    /// Quarter turns applied to the solved cube, e.g. "R U' F".
    #[arg(long, allow_hyphen_values = true)]
    scramble: Option<String>,
}

impl StateInput {
    fn resolve(&self) -> Result<CanonicalState> {
        let raw = match (&self.state, &self.scramble) {
            (Some(text), _) => text.parse::<FaceletState>()?.to_cubelets()?,
            (None, Some(moves)) => CubeletState::SOLVED.apply_seq(&parse_moves(moves)?),
            (None, None) => unreachable!("clap enforces one input"),
        };
        Ok(raw.canonicalize())
    }
}

#[derive(Args)]
struct ActuatorArgs {
    #[arg(long)]
    p_rot: Option<f64>,
    #[arg(long)]
    p_op: Option<f64>,
    #[arg(long)]
    p_restore: Option<f64>,
    /// Position tolerance, meters.
    #[arg(long)]
    delta_x: Option<f64>,
    /// Orientation tolerance, radians.
    #[arg(long)]
    delta_q: Option<f64>,
    /// Twist angle tolerance, radians.
    #[arg(long)]
    delta_theta: Option<f64>,
    /// Atomic actions allowed per rollback episode.
    #[arg(long)]
    budget: Option<u32>,
}

impl ActuatorArgs {
    fn resolve(&self) -> Result<(ActuationModel, ExecutorConfig)> {
        let mut model = ActuationModel::default();
        let mut config = ExecutorConfig::default();
        let t: &mut Thresholds = &mut config.thresholds;
        model.p_rot = self.p_rot.unwrap_or(model.p_rot);
        model.p_op = self.p_op.unwrap_or(model.p_op);
        model.p_restore = self.p_restore.unwrap_or(model.p_restore);
        t.position = self.delta_x.unwrap_or(t.position);
        t.orientation = self.delta_q.unwrap_or(t.orientation);
        t.angle = self.delta_theta.unwrap_or(t.angle);
        config.action_budget = self.budget.unwrap_or(config.action_budget);
        model.validate()?;
        config.validate()?;
        Ok((model, config))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PlannerArg {
    Ida,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Rollback,
    Open,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModesArg {
    Rollback,
    Open,
    Both,
}

fn load_tables(dir: Option<&Path>) -> Result<TableSet> {
    if let Some(dir) = dir {
        if dir.join(DISTANCE_FILE).exists() {
            return TableSet::load_dir(dir)
                .with_context(|| format!("loading tables from {}", dir.display()));
        }
    }
    eprintln!("building tables in memory");
    Ok(TableSet::build())
}

fn planner(kind: PlannerArg, tables: &TableSet) -> Box<dyn Planner + '_> {
    match kind {
        PlannerArg::Ida => Box::new(IdaPlanner(&tables.pdb)),
        PlannerArg::Oracle => Box::new(OraclePlanner(&tables.distance)),
    }
}

fn build_tables(out: &Path) -> Result<()> {
    let start = Instant::now();
    let tables = TableSet::build();
    tables
        .save_dir(out)
        .with_context(|| format!("writing tables to {}", out.display()))?;
    let t = &tables.distance;
    println!("distance  states");
    for (d, n) in t.histogram().iter().enumerate() {
        println!("{d:>8}  {n}");
    }
    println!("states: {}", t.histogram().iter().sum::<u64>());
    println!("max depth: {}", t.max_depth());
    eprintln!("built in {:.1}s", start.elapsed().as_secs_f64());
    Ok(())
}

fn solve(input: &StateInput, kind: PlannerArg, tables: &TableSet) -> Result<()> {
    let s = input.resolve()?;
    let solution = match kind {
        PlannerArg::Ida => ida_star(&s, &tables.pdb).solution,
        PlannerArg::Oracle => oracle_solve(&s, &tables.distance),
    };
    println!(
        "{}",
        format!("solution: {}", format_moves(&solution)).trim_end()
    );
    println!("length: {}", solution.len());
    Ok(())
}

fn scramble(distance: u8, count: usize, seed: u64, tables: &TableSet) -> Result<()> {
    let buckets = DepthBuckets::new(&tables.distance);
    let mut rng = stream_rng(seed, 0);
    for s in buckets.sample(distance, count, &mut rng)? {
        println!("{}", s.cubelets().to_facelets());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    input: &StateInput,
    mode: ModeArg,
    seed: u64,
    trace: bool,
    kind: PlannerArg,
    actuator: &ActuatorArgs,
    tables: &TableSet,
) -> Result<()> {
    let s = input.resolve()?;
    let (model, config) = actuator.resolve()?;
    let mode = match mode {
        ModeArg::Rollback => Mode::Rollback,
        ModeArg::Open => Mode::OpenLoop,
    };
    let planner = planner(kind, tables);
    let mut rng = stream_rng(seed, 0);
    let report = execute_episode(s, mode, planner.as_ref(), &model, &config, &mut rng, trace);
    for line in &report.trace {
        println!("{line}");
    }
    println!("mode: {}", mode.name());
    println!("success: {}", report.success);
    println!("atomic actions: {}", report.atomic_actions);
    println!("atomic failures: {}", report.atomic_failures);
    println!("moves attempted: {}", report.moves_attempted);
    println!("replans: {}", report.replans);
    println!(
        "final state: {}",
        report.final_state.cubelets().to_facelets()
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn eval(
    trials: usize,
    modes: ModesArg,
    distances: Vec<u8>,
    out: &Path,
    seed: u64,
    kind: PlannerArg,
    actuator: &ActuatorArgs,
    tables: &TableSet,
) -> Result<()> {
    let (model, executor) = actuator.resolve()?;
    let modes = match modes {
        ModesArg::Rollback => vec![Mode::Rollback],
        ModesArg::Open => vec![Mode::OpenLoop],
        ModesArg::Both => vec![Mode::Rollback, Mode::OpenLoop],
    };
    let config = ExperimentConfig {
        distances,
        trials_per_distance: trials,
        modes: modes.clone(),
        model,
        executor,
        planner: match kind {
            PlannerArg::Ida => PlannerKind::Ida,
            PlannerArg::Oracle => PlannerKind::Oracle,
        },
        seed,
    };
    let result = run_experiment_with_progress(&config, tables, &|d, mode, row| {
        eprintln!(
            "distance {d:>2} {:<9} sr={:.4} an={:.2}",
            mode.name(),
            row.sr(),
            row.an_mean()
        );
    })?;
    export_csv(&result, out)?;
    for mode in modes {
        if let Some(sr) = result.overall_sr(mode) {
            println!("overall SR {}: {sr:.4}", mode.name());
        }
    }
    Ok(())
}

fn verify(full: bool, dir: Option<&Path>) -> Result<bool> {
    let mut all = true;
    let mut report = |name: &str, ok: bool, detail: String| {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        all &= ok;
    };

    let tables = match load_tables(dir) {
        Ok(t) => {
            report(
                "table files",
                true,
                dir.map_or("built in memory".into(), |d| d.display().to_string()),
            );
            t
        }
        Err(e) => {
            report("table files", false, format!("{e:#}"));
            return Ok(false);
        }
    };
    let t = &tables.distance;

    let n: u64 = t.histogram().iter().sum();
    report(
        "state count",
        n == STATE_COUNT as u64 && t.len() == STATE_COUNT,
        n.to_string(),
    );
    report(
        "diameter",
        t.max_depth() == 14,
        format!("max depth {}", t.max_depth()),
    );

    let bad = par_count(STATE_COUNT as u32, |r| {
        CanonicalState::unrank(r).map(|s| s.rank()) != Ok(r)
    });
    report("rank round trip", bad == 0, format!("{bad} failures"));

    let bad = par_count(STATE_COUNT as u32, |r| {
        tables.pdb.heuristic_rank(r) > t.distance_of_rank(r)
    });
    report(
        "pattern database admissibility",
        bad == 0,
        format!("{bad} violations"),
    );

    let mut pairs = Vec::new();
    let mut ok = true;
    for m in Move::ALL {
        let g = reduce_move(m);
        if g.to_move() != m {
            pairs.push(format!("{m}->{g}"));
        }
        for r in (0..STATE_COUNT as u32).step_by(36_739) {
            let s = CanonicalState::unrank(r)?;
            ok &= s.cubelets().apply(m).canonicalize() == s.apply(g);
        }
    }
    report("move equivalence", ok && pairs.len() == 6, pairs.join(" "));

    if full {
        let moves = CoordMoves::get();
        let bad = par_count(STATE_COUNT as u32, |r| {
            let d = t.distance_of_rank(r);
            let next: Vec<u8> = GeneralizedMove::ALL
                .iter()
                .map(|&g| t.distance_of_rank(moves.step_rank(r, g)))
                .collect();
            next.iter().any(|n| n.abs_diff(d) != 1) || (d > 0 && !next.contains(&(d - 1)))
        });
        report(
            "neighbour consistency",
            bad == 0,
            format!("{bad} inconsistent states"),
        );

        let antipodes: Vec<u32> = (0..STATE_COUNT as u32)
            .filter(|&r| t.distance_of_rank(r) == 14)
            .collect();
        let bad = antipodes
            .iter()
            .filter(|&&r| {
                let s = CanonicalState::unrank(r).unwrap();
                let sol = ida_star(&s, &tables.pdb).solution;
                sol.len() != 14 || !s.apply_seq(&sol).is_solved()
            })
            .count();
        report(
            "antipodes solve optimally",
            bad == 0,
            format!("{} states, {bad} failures", antipodes.len()),
        );
    }
    Ok(all)
}

fn par_count(n: u32, pred: impl Fn(u32) -> bool + Sync + Send) -> usize {
    (0..n).into_par_iter().filter(|&i| pred(i)).count()
}

fn run(cli: Cli) -> Result<ExitCode> {
    let dir = cli.tables.as_deref();
    match cli.command {
        Command::BuildTables { out } => build_tables(&out)?,
        Command::Solve { input, planner } => solve(&input, planner, &load_tables(dir)?)?,
        Command::Scramble {
            distance,
            count,
            seed,
        } => {
            if !(1..=14).contains(&distance) {
                bail!("distance must be between 1 and 14, got {distance}");
            }
            scramble(distance, count, seed, &load_tables(dir)?)?
        }
        Command::Simulate {
            input,
            mode,
            seed,
            trace,
            planner,
            actuator,
        } => simulate(
            &input,
            mode,
            seed,
            trace,
            planner,
            &actuator,
            &load_tables(dir)?,
        )?,
        Command::Eval {
            trials,
            modes,
            distances,
            out,
            seed,
            planner,
            actuator,
        } => eval(
            trials,
            modes,
            distances,
            &out,
            seed,
            planner,
            &actuator,
            &load_tables(dir)?,
        )?,
        Command::Verify { full } => {
            if !verify(full, dir)? {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
