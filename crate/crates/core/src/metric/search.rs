use super::ricci::{InnerProductParams, MetricFamily, RicciReport};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct SearchConfig {
    pub restarts: usize,
    /// Ricci evaluations allowed per restart.
    pub budget: usize,
    pub seed: u64,
    /// Accept when the largest eigenvalue is below `−accept_rel · ρ`.
    pub accept_rel: f64,
    /// Restarts after the first start from log-scalars uniform in
    /// `[−spread, spread]`.
    pub spread: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { restarts: 8, budget: 2000, seed: 0, accept_rel: 1e-6, spread: 2.0 }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub params: InnerProductParams,
    pub report: RicciReport,
    /// Largest eigenvalue over spectral radius.
    pub objective: f64,
    pub restart: usize,
    pub seed: u64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    /// A metric with negative definite Ricci operator.
    Found(Certificate),
    /// Every restart converged without reaching the threshold. This does not
    /// prove that no such metric exists in the family.
    NotFound(Certificate),
}

/// Largest Ricci eigenvalue over the spectral radius; `0` for flat metrics.
fn objective(family: &MetricFamily, x: &[f64]) -> f64 {
    let p = family.params(x.iter().map(|v| v.exp()).collect());
    match family.ricci(&p) {
        Ok(r) => {
            let rho = r.spectral_radius();
            if rho == 0.0 {
                0.0
            } else {
                r.max_eigenvalue() / rho
            }
        }
        Err(_) => f64::INFINITY,
    }
}

struct RunResult {
    x: Vec<f64>,
    f: f64,
    evaluations: usize,
    converged: bool,
}

/// Nelder–Mead with standard coefficients, stopping early once `f < stop`.
fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: Vec<f64>, step: f64, budget: usize, stop: f64) -> RunResult {
    let n = x0.len();
    let evals = std::cell::Cell::new(0usize);
    let eval = |x: &[f64]| {
        evals.set(evals.get() + 1);
        f(x)
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let f0 = eval(&x0);
    simplex.push((x0.clone(), f0));
    for i in 0..n {
        let mut x = x0.clone();
        x[i] += step;
        let fx = eval(&x);
        simplex.push((x, fx));
    }
    let mut converged = false;
    while evals.get() < budget {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[0].1 < stop {
            break;
        }
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread.abs() < 1e-12 && size < 1e-6 || size < 1e-10 {
            converged = true;
            break;
        }
        let centroid: Vec<f64> =
            (0..n).map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<f64>() / n as f64).collect();
        let along =
            |t: f64| -> Vec<f64> { (0..n).map(|k| centroid[k] + t * (simplex[n].0[k] - centroid[k])).collect() };
        let xr = along(-1.0);
        let fr = eval(&xr);
        if fr < simplex[0].1 {
            let xe = along(-2.0);
            let fe = eval(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[n].1 {
                let xc = along(-0.5);
                let fc = eval(&xc);
                (xc, fc)
            } else {
                let xc = along(0.5);
                let fc = eval(&xc);
                (xc, fc)
            };
            if fc < simplex[n].1.min(fr) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = v.0.iter().zip(&best).map(|(a, b)| b + 0.5 * (a - b)).collect();
                    let fx = eval(&x);
                    *v = (x, fx);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, f) = simplex.swap_remove(0);
    RunResult { x, f, evaluations: evals.get(), converged }
}

/// Search the family for a metric with negative definite Ricci operator by
/// Nelder–Mead over log-scalars. Restart `r` uses the seed `seed + r`;
/// restart 0 starts from all scalars equal to one.
pub fn find_negative_ricci(family: &MetricFamily, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if cfg.restarts == 0 || cfg.budget == 0 {
        return Err(Error::InvalidParams("search needs at least one restart and a positive budget".into()));
    }
    let m = family.len();
    let stop = -(cfg.accept_rel.max(1e-2));
    let runs: Vec<(usize, RunResult)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(r as u64));
            let x0: Vec<f64> = if r == 0 {
                vec![0.0; m]
            } else {
                (0..m).map(|_| rng.random_range(-cfg.spread..=cfg.spread)).collect()
            };
            (r, nelder_mead(|x| objective(family, x), x0, 1.0, cfg.budget, stop))
        })
        .collect();
    let (restart, best) =
        runs.iter().min_by(|a, b| a.1.f.total_cmp(&b.1.f).then(a.0.cmp(&b.0))).expect("at least one restart");
    let params = family.params(best.x.iter().map(|v| v.exp()).collect());
    let report = family.ricci(&params)?;
    let cert = Certificate {
        params,
        objective: best.f,
        report,
        restart: *restart,
        seed: cfg.seed.wrapping_add(*restart as u64),
        evaluations: runs.iter().map(|(_, r)| r.evaluations).sum(),
    };
    let rho = cert.report.spectral_radius();
    if cert.report.max_eigenvalue() < -cfg.accept_rel * rho {
        return Ok(SearchOutcome::Found(cert));
    }
    if runs.iter().any(|(_, r)| !r.converged) {
        return Err(Error::BudgetExceeded(cfg.budget));
    }
    Ok(SearchOutcome::NotFound(cert))
}
