//! λ^(p) over an ascending list of exponents.
//!
//! Each exponent is solved from the usual starts plus the neighbouring
//! witnesses moved across exponents through `y = x^p` on the simplex. A
//! witness from a smaller exponent can only gain at a larger one, and one
//! from a larger exponent `b` mapped to `a` keeps `f(a) ≥ f(b)` by the
//! power-mean inequality. Alternating passes in both directions therefore
//! settle on values that are monotone in p with `f` non-increasing, which
//! also implies the Lipschitz bound.

use alloc::vec::Vec;

use serde::Serialize;

use super::{check_p, simplex, solver, Poly, SolverOptions, SpectralResult};
use crate::count::WeightedSGraph;
use crate::error::{Error, Result};

const MAX_PASSES: usize = 8;

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub result: SpectralResult,
    /// `(λ / s!N)^p`.
    pub f: f64,
    /// `λ n^{s/p - s}`.
    pub scaled: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum SweepViolation {
    /// `λ` dropped from row `index - 1` to row `index`.
    Decrease(usize),
    Lipschitz(usize),
    /// `f` grew from row `index - 1` to row `index`.
    FIncrease(usize),
    BelowUniform(usize),
    AboveTotal(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    pub violations: Vec<SweepViolation>,
}

fn transport(x: &[f64], from: f64, to: f64) -> Vec<f64> {
    x.iter().map(|v| libm::pow(libm::pow(*v, from), 1.0 / to)).collect()
}

fn run(poly: &Poly, p: f64, opts: &SolverOptions, extra: &[Vec<f64>], random: bool) -> SpectralResult {
    if p == 1.0 {
        simplex::solve(poly, opts, extra, random)
    } else {
        solver::solve(poly, p, opts, extra, random)
    }
}

/// Re-solves row `k` from the witness of row `from`; true if it improved.
fn improve(poly: &Poly, rows: &mut [SpectralResult], ps: &[f64], k: usize, from: usize, opts: &SolverOptions) -> bool {
    let start = transport(rows[from].witness.as_slice(), ps[from], ps[k]);
    let mut res = run(poly, ps[k], opts, &[start], false);
    if res.lambda > rows[k].lambda {
        res.restarts_used += rows[k].restarts_used;
        res.heuristic |= rows[k].heuristic;
        rows[k] = res;
        true
    } else {
        rows[k].restarts_used += 1;
        false
    }
}

/// `slack` is an absolute tolerance applied to every flagged comparison.
pub fn p_sweep(w: &WeightedSGraph, p_list: &[f64], opts: &SolverOptions, slack: f64) -> Result<Sweep> {
    opts.validate()?;
    for &p in p_list {
        check_p(p, 1.0)?;
    }
    if p_list.windows(2).any(|pair| pair[0] >= pair[1]) {
        return Err(Error::InvalidParameter("p list must be strictly ascending".into()));
    }
    let poly = Poly::new(w);
    let mut rows: Vec<SpectralResult> = Vec::with_capacity(p_list.len());
    for (k, &p) in p_list.iter().enumerate() {
        let extra: Vec<Vec<f64>> = match k {
            0 => Vec::new(),
            _ => alloc::vec![transport(rows[k - 1].witness.as_slice(), p_list[k - 1], p)],
        };
        rows.push(run(&poly, p, opts, &extra, true));
    }
    for _ in 0..MAX_PASSES {
        let mut changed = false;
        for k in (0..rows.len().saturating_sub(1)).rev() {
            changed |= improve(&poly, &mut rows, p_list, k, k + 1, opts);
        }
        for k in 1..rows.len() {
            changed |= improve(&poly, &mut rows, p_list, k, k - 1, opts);
        }
        if !changed {
            break;
        }
    }

    let total = poly.total;
    let n = w.n() as f64;
    let s = w.s() as f64;
    let rows: Vec<SweepRow> = rows
        .into_iter()
        .zip(p_list)
        .map(|(result, &p)| SweepRow {
            p,
            f: if total > 0.0 { libm::pow(result.lambda / total, p) } else { 0.0 },
            scaled: result.lambda * libm::pow(n, s / p - s),
            result,
        })
        .collect();

    let mut violations = Vec::new();
    for (k, row) in rows.iter().enumerate() {
        let uniform = total * libm::pow(n, -s / row.p);
        if row.result.lambda < uniform - slack {
            violations.push(SweepViolation::BelowUniform(k));
        }
        if row.result.lambda > total + slack {
            violations.push(SweepViolation::AboveTotal(k));
        }
        if k == 0 {
            continue;
        }
        let prev = &rows[k - 1];
        if row.result.lambda < prev.result.lambda - slack {
            violations.push(SweepViolation::Decrease(k));
        }
        if libm::fabs(row.result.lambda - prev.result.lambda) > (row.p - prev.p) * total + slack {
            violations.push(SweepViolation::Lipschitz(k));
        }
        if row.f > prev.f + slack {
            violations.push(SweepViolation::FIncrease(k));
        }
    }
    Ok(Sweep { rows, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::derive_weighted;
    use crate::hypergraph::Generator;

    #[test]
    fn triangle_sweep() {
        let k2 = Generator::Complete { n: 2, r: 2 }.build().unwrap();
        let k3 = Generator::Complete { n: 3, r: 2 }.build().unwrap();
        let w = derive_weighted(&k2, &k3).unwrap();
        let sweep = p_sweep(&w, &[1.0, 2.0, 4.0], &SolverOptions::default(), 1e-9).unwrap();
        assert!(sweep.violations.is_empty());
        let l: Vec<f64> = sweep.rows.iter().map(|r| r.result.lambda).collect();
        assert!((l[0] - 2.0 / 3.0).abs() < 1e-9);
        assert!((l[1] - 2.0).abs() < 1e-9);
        assert!(l[1] <= l[2] && l[2] <= 6.0);
        assert!(sweep.rows.windows(2).all(|r| r[0].f >= r[1].f - 1e-12));
    }

    #[test]
    fn unsorted_list_is_rejected() {
        let k2 = Generator::Complete { n: 2, r: 2 }.build().unwrap();
        let w = derive_weighted(&k2, &k2).unwrap();
        assert!(p_sweep(&w, &[2.0, 1.0], &SolverOptions::default(), 0.0).is_err());
        assert!(p_sweep(&w, &[0.5], &SolverOptions::default(), 0.0).is_err());
    }
}
