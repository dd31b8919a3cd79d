//! Seeded multi-restart Nelder–Mead maximization.
//!
//! Each restart draws from its own ChaCha stream, so results do not depend on
//! how rayon schedules the restarts.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::random;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop when the simplex spread in objective value drops below this.
    pub step_tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 32,
            max_iters: 1500,
            step_tolerance: 1e-12,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        OptimizerConfig { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Contract("optimizer needs at least one restart".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OptimizerMeta {
    pub restarts: usize,
    pub seed: u64,
    pub best_restart: usize,
    /// Best value reached by each restart, in restart order.
    pub trace: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct Maximum {
    pub value: f64,
    pub point: Vec<f64>,
    pub meta: OptimizerMeta,
}

/// Maximizes `f` from `cfg.restarts` starting points. `start(restart, rng)`
/// supplies each initial point; restart 0 may use a deterministic guess.
pub fn maximize<F, S>(cfg: &OptimizerConfig, f: F, start: S) -> Result<Maximum>
where
    F: Fn(&[f64]) -> f64 + Sync,
    S: Fn(usize, &mut ChaCha8Rng) -> Vec<f64> + Sync,
{
    cfg.validate()?;
    let runs: Vec<(f64, Vec<f64>)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = random::rng(cfg.seed, r as u64);
            let x0 = start(r, &mut rng);
            nelder_mead(&|x: &[f64]| -f(x), x0, 0.3, cfg.max_iters, cfg.step_tolerance)
        })
        .map(|(v, x)| (-v, x))
        .collect();
    let mut best = 0;
    for (i, (v, _)) in runs.iter().enumerate() {
        if *v > runs[best].0 {
            best = i;
        }
    }
    let trace = runs.iter().map(|(v, _)| *v).collect();
    let (value, point) = runs[best].clone();
    Ok(Maximum {
        value,
        point,
        meta: OptimizerMeta {
            restarts: cfg.restarts,
            seed: cfg.seed,
            best_restart: best,
            trace,
        },
    })
}

/// Standard Nelder–Mead minimization (reflection 1, expansion 2,
/// contraction ½, shrink ½) with an axis-aligned initial simplex.
pub fn nelder_mead<F>(f: &F, x0: Vec<f64>, step: f64, max_iters: usize, ftol: f64) -> (f64, Vec<f64>)
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(x0.clone());
    for i in 0..n {
        let mut x = x0.clone();
        x[i] += step;
        simplex.push(x);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();

    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect() };

    for _ in 0..max_iters {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if (values[n] - values[0]).abs() <= ftol {
            break;
        }
        let mut centroid = vec![0.0; n];
        for x in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let reflected = lerp(&centroid, &worst, -1.0);
        let fr = f(&reflected);
        if fr < values[0] {
            let expanded = lerp(&centroid, &worst, -2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
        } else {
            let (contracted, fc) = if fr < values[n] {
                let x = lerp(&centroid, &worst, -0.5);
                let v = f(&x);
                (x, v)
            } else {
                let x = lerp(&centroid, &worst, 0.5);
                let v = f(&x);
                (x, v)
            };
            if fc < values[n].min(fr) {
                simplex[n] = contracted;
                values[n] = fc;
            } else {
                let best = simplex[0].clone();
                for i in 1..=n {
                    simplex[i] = lerp(&best, &simplex[i], 0.5);
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }
    let best = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    (values[best], simplex[best].clone())
}
