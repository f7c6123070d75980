//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::time::Instant;

use cube2_core::compiler::{action_cost, compile, goal_orientation, PoseGoal};
use cube2_core::cube::{reduce_move, CanonicalState, GeneralizedMove, Move, STATE_COUNT};
use cube2_core::executor::{
    attempt_rotate, attempt_twist, execute_episode, execute_move_rollback, ActuationModel,
    ExecutorConfig, Mode, MoveOutcome, PhysicalCube, Recorder,
};
use cube2_core::harness::{run_experiment, DepthBuckets, ExperimentConfig};
use cube2_core::solver::{ida_star, oracle_solve, OraclePlanner, Planner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ContinuousCDF, StudentsT};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn state_count() -> Outcome {
    let n: u64 = common::tables().distance.histogram().iter().sum();
    ensure(
        n == 3_674_160 && common::tables().distance.len() == STATE_COUNT,
        format!("{n} states"),
    )
}

fn diameter() -> Outcome {
    let d = common::tables().distance.max_depth();
    ensure(d == 14, format!("max distance {d}"))
}

fn solver_optimality() -> Outcome {
    let tables = common::tables();
    let buckets = DepthBuckets::new(&tables.distance);
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut states: Vec<CanonicalState> = (0..1000)
        .map(|_| common::random_canonical(&mut rng))
        .collect();
    for d in [1, 2, 13, 14] {
        let bucket = buckets.bucket(d);
        let take: Vec<u32> = if bucket.len() <= 1000 {
            bucket.to_vec()
        } else {
            (0..1000)
                .map(|_| bucket[rng.gen_range(0..bucket.len())])
                .collect()
        };
        states.extend(take.into_iter().map(|r| CanonicalState::unrank(r).unwrap()));
    }
    let bad = states
        .par_iter()
        .filter(|s| {
            let sol = ida_star(s, &tables.pdb).solution;
            sol.len() != tables.distance.distance(s) as usize || !s.apply_seq(&sol).is_solved()
        })
        .count();
    ensure(
        bad == 0,
        format!("{} states, {bad} mismatches", states.len()),
    )
}

fn pdb_admissibility() -> Outcome {
    let tables = common::tables();
    let bad = (0..STATE_COUNT as u32)
        .into_par_iter()
        .filter(|&r| tables.pdb.heuristic_rank(r) > tables.distance.distance_of_rank(r))
        .count();
    ensure(
        bad == 0,
        format!("{bad} violations over {STATE_COUNT} states"),
    )
}

fn rank_bijection() -> Outcome {
    let bad = (0..STATE_COUNT as u32)
        .into_par_iter()
        .filter(|&r| CanonicalState::unrank(r).map(|s| s.rank()) != Ok(r))
        .count();
    ensure(bad == 0, format!("{bad} round-trip failures"))
}

fn move_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut checked = Vec::new();
    for m in Move::ALL
        .into_iter()
        .filter(|m| reduce_move(*m).to_move() != *m)
    {
        let g = reduce_move(m);
        for _ in 0..100 {
            let s = common::random_canonical(&mut rng);
            if s.cubelets().apply(m).canonicalize() != s.apply(g) {
                return Err(format!("{m} -> {g} fails on rank {}", s.rank()));
            }
        }
        checked.push(format!("{m}->{g}"));
    }
    ensure(checked.len() == 6, checked.join(" "))
}

fn composition() -> Outcome {
    let tables = common::tables();
    let model = ActuationModel::perfect();
    let config = ExecutorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..1000 {
        let s = common::random_canonical(&mut rng);
        let plan = oracle_solve(&s, &tables.distance);
        let expected_an: usize = plan.iter().map(|&m| action_cost(m)).sum();
        if compile(&plan).atomic_count() != expected_an {
            return Err("compiled plan length disagrees".into());
        }
        let mut cube = PhysicalCube::new(s);
        let mut rec = Recorder::new(u32::MAX, false);
        for &m in &plan {
            if execute_move_rollback(&mut cube, m, &model, &config, &mut rng, &mut rec)
                != MoveOutcome::Completed
            {
                return Err(format!("move {m} not completed"));
            }
        }
        if cube.logical != s.apply_seq(&plan) || rec.actions() as usize != expected_an {
            return Err(format!("rank {} diverged", s.rank()));
        }
        let r = execute_episode(
            s,
            Mode::OpenLoop,
            &OraclePlanner(&tables.distance),
            &model,
            &config,
            &mut rng,
            false,
        );
        if r.final_state != s.apply_seq(&plan) || r.atomic_actions as usize != expected_an {
            return Err(format!("open loop diverged on rank {}", s.rank()));
        }
    }
    Ok("1000 plans reproduced exactly".into())
}

fn calibration() -> Outcome {
    let model = ActuationModel::default();
    let config = ExecutorConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let n = 10_000u64;
    let mut cube = PhysicalCube::new(CanonicalState::SOLVED);
    let mut rot = 0;
    let mut op = 0;
    for i in 0..n as usize {
        let goal = PoseGoal {
            position: [0.0; 3],
            orientation: goal_orientation(GeneralizedMove::ALL[i % 6]),
        };
        rot += attempt_rotate(&mut cube, &goal, &model, &config, &mut rng).success as u64;
        op += attempt_twist(
            &mut PhysicalCube::new(CanonicalState::SOLVED),
            &model,
            &config,
            &mut rng,
        )
        .success as u64;
    }
    let z = |k: u64, p: f64| (k as f64 - n as f64 * p) / (n as f64 * p * (1.0 - p)).sqrt();
    let (zr, zo) = (z(rot, model.p_rot), z(op, model.p_op));
    ensure(
        zr.abs() <= 3.0 && zo.abs() <= 3.0,
        format!("rotate {rot}/{n} (z={zr:.2}), twist {op}/{n} (z={zo:.2})"),
    )
}

fn product_law() -> Outcome {
    let tables = common::tables();
    let model = ActuationModel::default();
    let config = ExecutorConfig::default();
    let planner = OraclePlanner(&tables.distance);
    let buckets = DepthBuckets::new(&tables.distance);
    let n = 10_000;
    let scrambles = buckets
        .sample(5, n, &mut ChaCha8Rng::seed_from_u64(109))
        .unwrap();
    let (clean, expected, variance) = scrambles
        .par_iter()
        .enumerate()
        .map(|(i, &s)| {
            let p: f64 = planner
                .plan(&s)
                .iter()
                .map(|&m| model.p_rot * model.p_op.powi(action_cost(m) as i32 - 1))
                .product();
            let mut rng = cube2_core::executor::stream_rng(109, i as u64);
            let r = execute_episode(
                s,
                Mode::OpenLoop,
                &planner,
                &model,
                &config,
                &mut rng,
                false,
            );
            ((r.atomic_failures == 0) as u64, p, p * (1.0 - p))
        })
        .reduce(|| (0, 0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let sigma = variance.sqrt();
    let z = (clean as f64 - expected) / sigma;
    ensure(
        z.abs() <= 3.0,
        format!(
            "clean {clean}/{n}, expected {:.1} ± {sigma:.1} (z={z:.2})",
            expected
        ),
    )
}

fn rollback_domination() -> Outcome {
    let config = ExperimentConfig {
        trials_per_distance: 1000,
        seed: 110,
        ..Default::default()
    };
    let result = run_experiment(&config, common::tables()).unwrap();
    let z_crit = 2.326; // one-sided α = 0.01
    let mut worst_z = f64::INFINITY;
    for d in 1..=14 {
        let rb = result.row(d, Mode::Rollback).unwrap();
        let ol = result.row(d, Mode::OpenLoop).unwrap();
        let (p1, p2, n) = (rb.sr(), ol.sr(), rb.trials as f64);
        let pooled = (p1 + p2) / 2.0;
        let se = (pooled * (1.0 - pooled) * 2.0 / n).sqrt();
        let z = if se == 0.0 { 0.0 } else { (p1 - p2) / se };
        worst_z = worst_z.min(z);
        if z < z_crit {
            return Err(format!(
                "distance {d}: rollback {p1:.3} vs open {p2:.3}, z={z:.2}"
            ));
        }
        if rb.an_mean() < ol.an_mean() {
            return Err(format!(
                "distance {d}: AN rollback {:.2} < open {:.2}",
                rb.an_mean(),
                ol.an_mean()
            ));
        }
    }
    Ok(format!(
        "overall SR rollback {:.3}, open {:.3}; smallest z {worst_z:.1}",
        result.overall_sr(Mode::Rollback).unwrap(),
        result.overall_sr(Mode::OpenLoop).unwrap()
    ))
}

fn open_loop_trend() -> Outcome {
    let config = ExperimentConfig {
        trials_per_distance: 1000,
        modes: vec![Mode::OpenLoop],
        seed: 111,
        ..Default::default()
    };
    let result = run_experiment(&config, common::tables()).unwrap();
    let srs: Vec<f64> = result.rows.iter().map(|r| r.sr()).collect();
    let rho = spearman(&(1..=14).map(f64::from).collect::<Vec<_>>(), &srs);
    let n = srs.len() as f64;
    let t = rho * ((n - 2.0) / (1.0 - rho * rho).max(1e-12)).sqrt();
    let p = StudentsT::new(0.0, 1.0, n - 2.0).unwrap().cdf(t);
    ensure(
        rho < 0.0 && p < 0.05,
        format!("spearman rho {rho:.3}, one-sided p {p:.2e}"),
    )
}

fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        for &k in &idx[i..=j] {
            out[k] = (i + j) as f64 / 2.0 + 1.0;
        }
        i = j + 1;
    }
    out
}

fn spearman(x: &[f64], y: &[f64]) -> f64 {
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let cov: f64 = rx
        .iter()
        .zip(&ry)
        .map(|(a, b)| (a - mean) * (b - mean))
        .sum();
    let vx: f64 = rx.iter().map(|a| (a - mean).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - mean).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 state count", state_count),
        ("2 quarter-turn diameter", diameter),
        ("3 solver optimality", solver_optimality),
        ("4 pattern database admissibility", pdb_admissibility),
        ("5 rank bijectivity", rank_bijection),
        ("6 move reduction", move_reduction),
        ("7 compiler/executor composition", composition),
        ("8 actuator calibration", calibration),
        ("9 open-loop product law", product_law),
        ("10 rollback domination", rollback_domination),
        ("10b open-loop SR falls with distance", open_loop_trend),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    println!(
        "N/A   11 absolute SR/AN values: not reproducible here; they depend on a physics \
         simulator, learned hand policies and an unreported action-counting convention. \
         Criteria 8-10 check the same effects with the reported success rates as inputs."
    );
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
