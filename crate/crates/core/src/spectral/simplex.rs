//! Maximization over the standard simplex (p = 1).
//!
//! Three sources of candidates: Baum–Eagon (replicator) ascent from the
//! uniform point and random interior points; the uniform vector on every
//! support of size at most `support_cap`, evaluated at once through a
//! subset-sum transform; and replicator polishing started from the best of
//! those supports. The replicator map keeps zero entries at zero, so a
//! polished support stays on its face.

use alloc::vec;
use alloc::vec::Vec;

use super::solver::dirichlet_starts;
use super::{finish, Poly, SolverOptions, SpectralResult};
use crate::count::WeightedSGraph;
use crate::error::Result;

/// Largest order for which the subset-sum table is built.
const TABLE_LIMIT: usize = 20;
const STALL_ROUNDS: usize = 20;
/// Entries below this fraction of the largest are treated as off-support.
const SUPPORT_EPS: f64 = 1e-12;

pub fn spectral_radius_p1(w: &WeightedSGraph, opts: &SolverOptions) -> Result<SpectralResult> {
    opts.validate()?;
    Ok(solve(&Poly::new(w), opts, &[], true))
}

struct Run {
    value: f64,
    x: Vec<f64>,
    residual: f64,
    converged: bool,
}

pub(crate) fn solve(poly: &Poly, opts: &SolverOptions, extra: &[Vec<f64>], random: bool) -> SpectralResult {
    let n = poly.n;
    if poly.is_empty() {
        return finish(poly, 1.0, None, 0.0, true, 0, true);
    }
    let mut best: Option<Run> = None;
    let keep = |run: Run, best: &mut Option<Run>| {
        if best.as_ref().is_none_or(|b| run.value > b.value) {
            *best = Some(run);
        }
    };
    let mut starts = Vec::new();
    if random {
        starts.push(vec![1.0 / n as f64; n]);
        starts.extend(dirichlet_starts(n, 1.0, opts.restarts - 1, opts.seed));
    }
    starts.extend(extra.iter().cloned());
    for start in &starts {
        let run = replicator(poly, start, opts);
        keep(run, &mut best);
    }
    let mut used = starts.len();

    let mut complete = false;
    if random && n <= TABLE_LIMIT {
        let cap = opts.support_cap.min(n);
        let mut supports = support_values(poly, cap);
        supports.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let positive = supports.iter().take_while(|(_, v)| *v > 0.0).count();
        let polish = positive.min(opts.polish_limit);
        let mut all_converged = true;
        for &(mask, value) in &supports[..polish] {
            let size = mask.count_ones() as f64;
            let start: Vec<f64> = (0..n).map(|i| if mask >> i & 1 == 1 { 1.0 / size } else { 0.0 }).collect();
            let run = replicator(poly, &start, opts);
            all_converged &= run.converged;
            if run.value >= value {
                keep(run, &mut best);
            } else {
                keep(Run { value, x: start, residual: f64::INFINITY, converged: false }, &mut best);
            }
        }
        used += polish;
        complete = n <= opts.support_cap && polish == positive && all_converged;
    }
    match best {
        Some(run) => finish(poly, 1.0, Some((run.value, run.x)), run.residual, run.converged, used, complete),
        None => finish(poly, 1.0, None, f64::INFINITY, false, used, false),
    }
}

/// `(mask, P(uniform on mask))` for every non-empty mask of size ≤ cap.
fn support_values(poly: &Poly, cap: usize) -> Vec<(u32, f64)> {
    let n = poly.n;
    let mut table = vec![0.0f64; 1usize << n];
    for (key, c) in poly.keys() {
        let mask = key.iter().fold(0usize, |m, &i| m | 1 << i);
        table[mask] += c;
    }
    for bit in 0..n {
        for mask in 0..table.len() {
            if mask >> bit & 1 == 1 {
                table[mask] += table[mask ^ 1 << bit];
            }
        }
    }
    let s = poly.s as f64;
    (1..table.len())
        .filter(|m| (m.count_ones() as usize) <= cap)
        .map(|m| (m as u32, table[m] * libm::pow(m.count_ones() as f64, -s)))
        .collect()
}

fn simplex_residual(poly: &Poly, value: f64, x: &[f64], g: &[f64]) -> f64 {
    let s = poly.s as f64;
    let top = x.iter().fold(0.0f64, |a, v| a.max(*v));
    x.iter()
        .zip(g)
        .filter(|(xi, _)| **xi > SUPPORT_EPS * top)
        .map(|(_, gi)| libm::fabs(value - gi / s))
        .fold(0.0, f64::max)
}

fn replicator(poly: &Poly, start: &[f64], opts: &SolverOptions) -> Run {
    let n = poly.n;
    let mut x: Vec<f64> = start.iter().map(|v| v.max(0.0)).collect();
    let total: f64 = x.iter().sum();
    if total > 0.0 {
        x.iter_mut().for_each(|v| *v /= total);
    } else {
        x = vec![1.0 / n as f64; n];
    }
    let s = poly.s as f64;
    let mut g = vec![0.0; n];
    let mut value = poly.eval(&x);
    let mut res = f64::INFINITY;
    let mut converged = false;
    let mut stalled = 0;
    for _ in 0..opts.max_iter {
        poly.grad(&x, &mut g);
        res = simplex_residual(poly, value, &x, &g);
        if res < opts.tol_residual || value == 0.0 {
            converged = res < opts.tol_residual;
            break;
        }
        let scale = 1.0 / (s * value);
        let mut next: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi * gi * scale).collect();
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);
        let v = poly.eval(&next);
        if v < value - 4.0 * f64::EPSILON * value {
            break;
        }
        if v - value <= opts.tol_stall * value {
            stalled += 1;
        } else {
            stalled = 0;
        }
        x = next;
        value = v.max(value);
        if stalled >= STALL_ROUNDS {
            break;
        }
    }
    if !converged {
        poly.grad(&x, &mut g);
        res = simplex_residual(poly, value, &x, &g);
        converged = res < opts.tol_residual;
    }
    Run { value, x, residual: res, converged }
}
