//! Ascent on the unit p-sphere for p > 1.
//!
//! The main step moves toward the fixed point of the eigenequations,
//! `T(x)_i ∝ grad_i^{1/(p-1)}`. With `y = x^{p-1}` and `a = grad/(sλ)`,
//! Euler's identity and Hölder give `<a - y, T - x> ≥ 0`, with equality only
//! at an eigenvector, so `T(x) - x` is an ascent direction for the
//! normalized objective. We step to `(1-t)x + tT(x)`, renormalize, and halve
//! `t` until the objective does not drop. The damped start value kills the
//! period-two oscillation plain power iteration has on bipartite inputs.
//! Close to p = 1 the exponent `1/(p-1)` is numerically useless and we fall
//! back to projected gradient ascent with an Armijo rule.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_p, finish, p_norm, Poly, SolverOptions, SpectralResult};
use crate::count::WeightedSGraph;
use crate::error::{Error, Result};

const STALL_ROUNDS: usize = 20;
const GRADIENT_BELOW: f64 = 1.25;

pub fn spectral_radius(w: &WeightedSGraph, p: f64, opts: &SolverOptions) -> Result<SpectralResult> {
    if p.is_nan() || p <= 1.0 {
        return Err(Error::InvalidParameter(alloc::format!("p must exceed 1, got {p}")));
    }
    check_p(p, 1.0)?;
    opts.validate()?;
    let poly = Poly::new(w);
    Ok(solve(&poly, p, opts, &[], true))
}

pub(crate) struct Run {
    pub value: f64,
    pub x: Vec<f64>,
    pub residual: f64,
    pub converged: bool,
}

/// Random starts uniform on the simplex, mapped to the p-sphere.
pub(crate) fn dirichlet_starts(n: usize, p: f64, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut y: Vec<f64> = (0..n).map(|_| -libm::log(1.0 - rng.random::<f64>())).collect();
            let total: f64 = y.iter().sum();
            for v in &mut y {
                *v = libm::pow(*v / total, 1.0 / p);
            }
            y
        })
        .collect()
}

/// Runs every start (uniform, `restarts - 1` random ones when `random` is
/// set, then `extra`) and keeps the first best value.
pub(crate) fn solve(
    poly: &Poly,
    p: f64,
    opts: &SolverOptions,
    extra: &[Vec<f64>],
    random: bool,
) -> SpectralResult {
    if poly.is_empty() {
        return finish(poly, p, None, 0.0, true, 0, true);
    }
    let mut starts = Vec::new();
    if random {
        starts.push(super::PVector::uniform(poly.n, p).into_vec());
        starts.extend(dirichlet_starts(poly.n, p, opts.restarts - 1, opts.seed));
    }
    starts.extend(extra.iter().cloned());
    let mut best: Option<Run> = None;
    for start in &starts {
        let run = ascend(poly, p, start, opts);
        if best.as_ref().is_none_or(|b| run.value > b.value) {
            best = Some(run);
        }
    }
    let used = starts.len();
    match best {
        Some(run) => finish(poly, p, Some((run.value, run.x)), run.residual, run.converged, used, false),
        None => finish(poly, p, None, f64::INFINITY, false, 0, false),
    }
}

fn normalize(x: &mut [f64], p: f64) -> bool {
    let norm = p_norm(x, p);
    if !(norm > 0.0 && norm.is_finite()) {
        return false;
    }
    for v in x.iter_mut() {
        *v /= norm;
    }
    true
}

fn residual(poly: &Poly, p: f64, lambda: f64, x: &[f64], g: &[f64]) -> f64 {
    let s = poly.s as f64;
    x.iter()
        .zip(g)
        .filter(|(xi, _)| **xi > 0.0)
        .map(|(xi, gi)| libm::fabs(lambda * libm::pow(*xi, p - 1.0) - gi / s))
        .fold(0.0, f64::max)
}

pub(crate) fn ascend(poly: &Poly, p: f64, start: &[f64], opts: &SolverOptions) -> Run {
    let n = poly.n;
    let mut x: Vec<f64> = start.iter().map(|v| v.max(0.0)).collect();
    if !normalize(&mut x, p) {
        x = super::PVector::uniform(n, p).into_vec();
    }
    let mut value = poly.eval(&x);
    let mut g = vec![0.0; n];
    let mut target = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let damp = (p - 1.0) / (p + poly.s as f64 - 2.0);
    let mut alpha = 1.0;
    let mut best_res = f64::INFINITY;
    let mut stalled = 0;
    let mut res = f64::INFINITY;
    let mut converged = false;

    for _ in 0..opts.max_iter {
        poly.grad(&x, &mut g);
        res = residual(poly, p, value, &x, &g);
        if res < opts.tol_residual {
            converged = true;
            break;
        }
        let before = value;
        let moved = if p < GRADIENT_BELOW {
            gradient_step(poly, p, &mut x, &mut value, &g, &mut trial, &mut alpha)
        } else {
            for (t, gi) in target.iter_mut().zip(&g) {
                *t = libm::pow(gi.max(0.0), 1.0 / (p - 1.0));
            }
            normalize(&mut target, p)
                && fixed_point_step(poly, p, &mut x, &mut value, &target, &mut trial, damp)
        };
        if !moved {
            break;
        }
        let gain = value - before;
        if gain <= opts.tol_stall * value && res >= 0.999 * best_res {
            stalled += 1;
            if stalled >= STALL_ROUNDS {
                break;
            }
        } else {
            stalled = 0;
        }
        best_res = best_res.min(res);
    }
    if !converged {
        poly.grad(&x, &mut g);
        res = residual(poly, p, value, &x, &g);
        converged = res < opts.tol_residual;
    }
    Run { value, x, residual: res, converged }
}

/// Accepts a trial point when it does not lose more than rounding noise.
fn acceptable(new: f64, old: f64) -> bool {
    new >= old - 4.0 * f64::EPSILON * old
}

fn fixed_point_step(
    poly: &Poly,
    p: f64,
    x: &mut [f64],
    value: &mut f64,
    target: &[f64],
    trial: &mut [f64],
    damp: f64,
) -> bool {
    let mut t = damp;
    while t > 1e-12 {
        for ((y, xi), ti) in trial.iter_mut().zip(x.iter()).zip(target) {
            *y = (1.0 - t) * xi + t * ti;
        }
        if normalize(trial, p) {
            let v = poly.eval(trial);
            if acceptable(v, *value) {
                x.copy_from_slice(trial);
                *value = v.max(*value);
                return true;
            }
        }
        t *= 0.5;
    }
    false
}

fn gradient_step(
    poly: &Poly,
    p: f64,
    x: &mut [f64],
    value: &mut f64,
    g: &[f64],
    trial: &mut [f64],
    alpha: &mut f64,
) -> bool {
    let gmax = g.iter().fold(0.0f64, |a, v| a.max(libm::fabs(*v)));
    if gmax == 0.0 {
        return false;
    }
    let mut a = *alpha * 2.0;
    while a * gmax > 1e-14 {
        for ((y, xi), gi) in trial.iter_mut().zip(x.iter()).zip(g) {
            *y = (xi + a * gi).max(0.0);
        }
        if normalize(trial, p) {
            let v = poly.eval(trial);
            let slope: f64 = g.iter().zip(trial.iter()).zip(x.iter()).map(|((gi, y), xi)| gi * (y - xi)).sum();
            if v - *value >= 1e-4 * slope.max(0.0) && acceptable(v, *value) {
                x.copy_from_slice(trial);
                *value = v.max(*value);
                *alpha = a;
                return true;
            }
        }
        a *= 0.5;
    }
    false
}
