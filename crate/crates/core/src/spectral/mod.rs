//! The Q-Lagrangian polynomial `P(x) = s! Σ_I w(I) Π_{i∈I} x_i` of a weighted
//! s-graph and its maximum `λ^(p)` on the non-negative unit p-sphere.

use alloc::vec::Vec;
use core::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::count::WeightedSGraph;
use crate::error::{Error, Result};
use crate::subsets::{binomial, factorial};

mod simplex;
mod solver;
mod sweep;

pub use simplex::spectral_radius_p1;
pub use solver::spectral_radius;
pub use sweep::{p_sweep, Sweep, SweepRow, SweepViolation};

/// A non-negative vector on the unit p-sphere.
#[derive(Clone, PartialEq)]
pub struct PVector {
    x: Vec<f64>,
    p: f64,
}

impl PVector {
    /// Checks that all entries are finite and non-negative and that the
    /// p-norm is 1 within 1e-12.
    pub fn new(x: Vec<f64>, p: f64) -> Result<PVector> {
        check_p(p, 1.0)?;
        if x.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidParameter("entries must be finite and non-negative".into()));
        }
        if !x.is_empty() && libm::fabs(p_norm(&x, p) - 1.0) > 1e-12 {
            return Err(Error::InvalidParameter("vector is not on the unit p-sphere".into()));
        }
        Ok(PVector { x, p })
    }

    /// Absolute values of `x` scaled to unit p-norm.
    pub fn normalized(x: &[f64], p: f64) -> Result<PVector> {
        check_p(p, 1.0)?;
        let mut x: Vec<f64> = x.iter().map(|v| libm::fabs(*v)).collect();
        let norm = p_norm(&x, p);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidParameter("cannot normalize a zero vector".into()));
        }
        for v in &mut x {
            *v /= norm;
        }
        Ok(PVector { x, p })
    }

    pub fn uniform(n: usize, p: f64) -> PVector {
        let v = if n == 0 { 0.0 } else { libm::pow(n as f64, -1.0 / p) };
        PVector { x: alloc::vec![v; n], p }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.x
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.x
    }

    pub(crate) fn from_raw(x: Vec<f64>, p: f64) -> PVector {
        PVector { x, p }
    }
}

impl fmt::Debug for PVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PVector(p={}, {:?})", self.p, self.x)
    }
}

/// Serialized as the bare entry list.
impl Serialize for PVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.x.len()))?;
        for v in &self.x {
            seq.serialize_element(v)?;
        }
        seq.end()
    }
}

#[derive(Clone, Debug, DeriveSerialize)]
pub struct SpectralResult {
    pub lambda: f64,
    pub p: f64,
    pub witness: PVector,
    /// `max_i |λ x_i^{p-1} - grad_i / s|` over the support of the witness.
    pub residual: f64,
    pub converged: bool,
    /// The objective at the uniform vector.
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub restarts_used: usize,
    /// False only when the value is known to be the global maximum.
    pub heuristic: bool,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOptions {
    pub restarts: usize,
    pub tol_residual: f64,
    pub tol_stall: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// p = 1 only: largest support size evaluated exhaustively.
    pub support_cap: usize,
    /// p = 1 only: how many of the best supports get polished.
    pub polish_limit: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            restarts: 32,
            tol_residual: 1e-9,
            tol_stall: 1e-12,
            max_iter: 100_000,
            seed: 0,
            support_cap: 12,
            polish_limit: 64,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("at least one restart is required".into()));
        }
        if !(self.tol_residual > 0.0 && self.tol_stall >= 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be positive".into()));
        }
        Ok(())
    }
}

pub(crate) fn check_p(p: f64, min: f64) -> Result<()> {
    if !(p.is_finite() && p >= min) {
        return Err(Error::InvalidParameter(alloc::format!("p must be at least {min}, got {p}")));
    }
    Ok(())
}

pub(crate) fn p_norm(x: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        return x.iter().map(|v| libm::fabs(*v)).sum();
    }
    let m = x.iter().fold(0.0f64, |a, v| a.max(libm::fabs(*v)));
    if m == 0.0 {
        return 0.0;
    }
    let s: f64 = x.iter().map(|v| libm::pow(libm::fabs(*v) / m, p)).sum();
    m * libm::pow(s, 1.0 / p)
}

/// `P(x) = s! Σ_I w(I) Π_{i∈I} x_i`.
pub fn poly_eval(w: &WeightedSGraph, x: &[f64]) -> Result<f64> {
    Poly::new(w).checked(x).map(|poly| poly.eval(x))
}

/// `∂P/∂x_v = s! Σ_{I∋v} w(I) Π_{i∈I∖v} x_i`.
pub fn poly_grad(w: &WeightedSGraph, x: &[f64]) -> Result<Vec<f64>> {
    let poly = Poly::new(w);
    let poly = poly.checked(x)?;
    let mut g = alloc::vec![0.0; x.len()];
    poly.grad(x, &mut g);
    Ok(g)
}

/// Dispatches to [`spectral_radius_p1`] at p = 1 and [`spectral_radius`] above.
pub fn solve_at(w: &WeightedSGraph, p: f64, opts: &SolverOptions) -> Result<SpectralResult> {
    if p == 1.0 {
        spectral_radius_p1(w, opts)
    } else {
        spectral_radius(w, p, opts)
    }
}

/// Certified upper bound on `λ^(p)` used to skip hopeless inputs.
pub fn upper_bound(w: &WeightedSGraph, p: f64) -> f64 {
    Poly::new(w).upper_bound(p)
}

/// `(1 - s x) / (1 - x)^{s/p}`, non-increasing on `[0, 1)` for p ≥ 1.
pub fn shrink_ratio(s: usize, p: f64, x: f64) -> f64 {
    (1.0 - s as f64 * x) / libm::pow(1.0 - x, s as f64 / p)
}

/// Flat copy of a weighted s-graph with `s!` folded into the coefficients.
pub(crate) struct Poly {
    pub n: usize,
    pub s: usize,
    keys: Vec<u32>,
    coef: Vec<f64>,
    /// `s! N` and `s!` times the largest weighted degree and weight.
    pub total: f64,
    pub max_degree: f64,
    pub max_coef: f64,
}

impl Poly {
    pub fn new(w: &WeightedSGraph) -> Poly {
        let sf = factorial(w.s()) as f64;
        let mut keys = Vec::with_capacity(w.len() * w.s());
        let mut coef = Vec::with_capacity(w.len());
        let mut degree = alloc::vec![0u128; w.n()];
        for (key, weight) in w.entries() {
            keys.extend_from_slice(key);
            coef.push(sf * weight as f64);
            for &v in key {
                degree[v as usize] += weight as u128;
            }
        }
        Poly {
            n: w.n(),
            s: w.s(),
            keys,
            coef,
            total: sf * w.total_weight() as f64,
            max_degree: sf * degree.iter().copied().max().unwrap_or(0) as f64,
            max_coef: sf * w.max_weight() as f64,
        }
    }

    fn checked(&self, x: &[f64]) -> Result<&Poly> {
        if x.len() != self.n {
            return Err(Error::Dimension { expected: self.n, found: x.len() });
        }
        Ok(self)
    }

    pub fn is_empty(&self) -> bool {
        self.coef.is_empty()
    }

    pub fn keys(&self) -> impl Iterator<Item = (&[u32], f64)> + '_ {
        self.keys.chunks_exact(self.s.max(1)).zip(self.coef.iter().copied())
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.keys().map(|(key, c)| c * key.iter().map(|&i| x[i as usize]).product::<f64>()).sum()
    }

    pub fn grad(&self, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        let s = self.s;
        let mut prefix = [0.0f64; 17];
        let mut big = Vec::new();
        let pre: &mut [f64] = if s < 17 {
            &mut prefix[..=s]
        } else {
            big.resize(s + 1, 0.0);
            &mut big
        };
        for (key, c) in self.keys() {
            pre[0] = c;
            for (j, &i) in key.iter().enumerate() {
                pre[j + 1] = pre[j] * x[i as usize];
            }
            let mut suffix = 1.0;
            for j in (0..s).rev() {
                let i = key[j] as usize;
                out[i] += pre[j] * suffix;
                suffix *= x[i];
            }
        }
    }

    /// Certified upper bound on the maximum over the unit p-sphere.
    ///
    /// Besides `s! N`: by the power-mean inequality each monomial is at most
    /// `(Σ_{i∈I} y_i / s)^{s/p}` with `y = x^p` on the simplex. For p ≤ s that
    /// is convex in `y`, so the sum peaks at a vertex, giving the largest
    /// weighted degree; otherwise every monomial is at most `s^{-s/p}`.
    /// Maclaurin's inequality gives the last term.
    pub fn upper_bound(&self, p: f64) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let s = self.s as f64;
        let shrink = libm::pow(s, -s / p);
        let local = if p <= s { self.max_degree } else { self.total };
        let maclaurin =
            self.max_coef * binomial(self.n, self.s) as f64 * libm::pow(self.n as f64, -s / p);
        let bound = self.total.min(local * shrink).min(maclaurin);
        // room for rounding in the solver's own evaluation
        bound * (1.0 + 1e-12)
    }
}

/// Shared end-of-solve bookkeeping.
pub(crate) fn finish(
    poly: &Poly,
    p: f64,
    best: Option<(f64, Vec<f64>)>,
    residual: f64,
    converged: bool,
    restarts_used: usize,
    exhaustive: bool,
) -> SpectralResult {
    let uniform = PVector::uniform(poly.n, p);
    let lower = poly.eval(uniform.as_slice());
    let upper = poly.upper_bound(p);
    let (lambda, witness) = match best {
        Some((v, x)) if v >= lower => (v, PVector::from_raw(x, p)),
        _ => (lower, uniform),
    };
    let tight = lambda >= upper / (1.0 + 1e-12) * (1.0 - 1e-12);
    SpectralResult {
        lambda,
        p,
        witness,
        residual,
        converged,
        lower_bound: lower,
        upper_bound: upper,
        restarts_used,
        heuristic: !(exhaustive || tight),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::derive_weighted;
    use crate::hypergraph::Generator;

    fn complete(n: usize) -> crate::Hypergraph {
        Generator::Complete { n, r: 2 }.build().unwrap()
    }

    #[test]
    fn eval_examples() {
        let k2 = complete(2);
        let w = derive_weighted(&k2, &k2).unwrap();
        let h = libm::sqrt(0.5);
        assert!((poly_eval(&w, &[h, h]).unwrap() - 1.0).abs() < 1e-15);

        let c5 = Generator::Cycle { n: 5 }.build().unwrap();
        let w = derive_weighted(&c5, &c5).unwrap();
        let v = poly_eval(&w, &[0.2; 5]).unwrap();
        assert!((v - 0.0384).abs() < 1e-15);
        assert_eq!(poly_eval(&w, &[0.0, 1.0, 1.0, 1.0, 1.0]).unwrap(), 0.0);
        assert!(matches!(poly_eval(&w, &[0.2; 4]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn grad_examples() {
        let w = derive_weighted(&complete(2), &complete(3)).unwrap();
        let g = poly_grad(&w, &[1.0 / 3.0; 3]).unwrap();
        for v in g {
            assert!((v - 4.0 / 3.0).abs() < 1e-15);
        }
        let c5 = Generator::Cycle { n: 5 }.build().unwrap();
        let w = derive_weighted(&c5, &c5).unwrap();
        assert_eq!(poly_grad(&w, &[0.0; 5]).unwrap(), alloc::vec![0.0; 5]);
    }

    #[test]
    fn shrink_ratio_is_non_increasing() {
        for s in 1..=6 {
            for p in [1.5, 2.0, 4.0] {
                let mut prev = f64::INFINITY;
                for k in 0..1000 {
                    let v = shrink_ratio(s, p, k as f64 / 1000.0);
                    assert!(v <= prev + 1e-12, "s={s} p={p} k={k}");
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn pvector_validation() {
        assert!(PVector::new(alloc::vec![0.6, 0.8], 2.0).is_ok());
        assert!(PVector::new(alloc::vec![0.6, 0.9], 2.0).is_err());
        assert!(PVector::new(alloc::vec![-0.6, 0.8], 2.0).is_err());
        assert!(PVector::new(alloc::vec![1.0], 0.5).is_err());
        let v = PVector::normalized(&[3.0, 4.0], 2.0).unwrap();
        assert!((v.as_slice()[0] - 0.6).abs() < 1e-15);
    }
}
