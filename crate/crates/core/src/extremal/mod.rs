//! Exhaustive small-order versions of the extremal statements: exact
//! `ex(Q, 𝓟_n)` and `λ^(p)(Q, 𝓟_n)` by enumeration, and one report-producing
//! harness per statement.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use serde::Serialize;

use crate::canon::CanonicalLabel;
use crate::count::{derive_weighted, is_free, FamilySpec, WeightedSGraph};
use crate::enumerate::{enumerate_sorted, Member};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::hypergraph::Hypergraph;
use crate::spectral::{solve_at, upper_bound, SolverOptions, SpectralResult};
use crate::subsets::{binomial, factorial, falling};

mod checks;

pub use checks::{
    blowup_inequality_check, flat_bounds_check, pentagon_check, stability_check, turan_check,
};

/// Relative slack on every solver-produced side of an inequality.
pub const SLACK: f64 = 1e-7;

/// A hereditary family given by forbidden subgraphs, or all r-graphs.
#[derive(Clone, Debug)]
pub enum Family {
    All { r: usize },
    Free(FamilySpec),
}

impl Family {
    pub fn r(&self) -> usize {
        match self {
            Family::All { r } => *r,
            Family::Free(spec) => spec.r(),
        }
    }

    pub fn admits(&self, h: &Hypergraph) -> bool {
        match self {
            Family::All { .. } => true,
            Family::Free(spec) => is_free(h, spec).expect("uniformity checked by the family"),
        }
    }

    /// Every member of order `n`, sorted by canonical label.
    pub fn members(&self, n: usize, ceiling: Option<usize>) -> Result<Vec<Member>> {
        enumerate_sorted(n, self.r(), |h| self.admits(h), true, ceiling)
    }
}

/// One row of a density run.
#[derive(Clone, Debug, Serialize)]
pub struct DensityPoint {
    pub n: usize,
    pub s: usize,
    pub p: f64,
    pub ex_count: u128,
    /// `ex_count / C(n, s)`.
    pub ex_ratio: f64,
    pub lambda_max: f64,
    /// `lambda_max n^{s/p} / (n)_s`.
    pub lambda_scaled: f64,
    pub witness_ex: CanonicalLabel,
    pub witness_lambda: CanonicalLabel,
    #[serde(skip)]
    pub ex_graph: Hypergraph,
    #[serde(skip)]
    pub lambda_graph: Hypergraph,
}

impl DensityPoint {
    pub fn new(n: usize, s: usize, p: f64, ex: (u128, Hypergraph), lambda: (f64, Hypergraph)) -> DensityPoint {
        let ex_ratio = if n >= s { ex.0 as f64 / binomial(n, s) as f64 } else { 0.0 };
        let lambda_scaled = if n >= s {
            lambda.0 * libm::pow(n as f64, s as f64 / p) / falling(n, s) as f64
        } else {
            0.0
        };
        DensityPoint {
            n,
            s,
            p,
            ex_count: ex.0,
            ex_ratio,
            lambda_max: lambda.0,
            lambda_scaled,
            witness_ex: crate::canonical_form(&ex.1),
            witness_lambda: crate::canonical_form(&lambda.1),
            ex_graph: ex.1,
            lambda_graph: lambda.1,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Margin {
    pub instance: String,
    /// Non-negative when the inequality holds.
    pub margin: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub role: String,
    pub label: String,
    pub graph: Hypergraph,
}

#[derive(Clone, Debug, Serialize)]
pub struct Observation {
    pub name: String,
    pub value: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub parameters: BTreeMap<String, String>,
    pub passed: bool,
    pub margins: Vec<Margin>,
    pub witnesses: Vec<Witness>,
    pub exceptions: Vec<String>,
    pub observations: Vec<Observation>,
    pub table: Table,
}

impl VerificationReport {
    pub fn new(claim: &str) -> VerificationReport {
        VerificationReport {
            claim: claim.to_string(),
            parameters: BTreeMap::new(),
            passed: true,
            margins: Vec::new(),
            witnesses: Vec::new(),
            exceptions: Vec::new(),
            observations: Vec::new(),
            table: Table::default(),
        }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(name.to_string(), value.to_string());
        self
    }

    pub fn margin(&mut self, instance: impl Into<String>, margin: f64) {
        self.margins.push(Margin { instance: instance.into(), margin });
    }

    pub fn witness(&mut self, role: &str, graph: &Hypergraph) {
        self.witnesses.push(Witness {
            role: role.to_string(),
            label: crate::canonical_form(graph).to_hex(),
            graph: graph.clone(),
        });
    }

    pub fn observe(&mut self, name: &str, value: f64) {
        self.observations.push(Observation { name: name.to_string(), value });
    }

    /// Marks the report failed; `graph` is the witness of the violation.
    pub fn fail(&mut self, what: String, graph: &Hypergraph) {
        self.passed = false;
        self.exceptions.push(what);
        let label = crate::canonical_form(graph).to_hex();
        if !self.witnesses.iter().any(|w| w.role == "violation" && w.label == label) {
            self.witness("violation", graph);
        }
    }
}

/// A family member with its derived s-graph and, unless it was ruled out by
/// the upper bound, its solver result.
#[derive(Clone, Debug)]
pub struct Evaluated {
    pub member: Member,
    pub derived: WeightedSGraph,
    pub count: u128,
    pub upper: f64,
    pub result: Option<SpectralResult>,
}

impl Evaluated {
    pub fn lambda(&self) -> Option<f64> {
        self.result.as_ref().map(|r| r.lambda)
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Solver options for one graph: the seed is mixed with the graph's label so
/// results do not depend on scheduling.
pub fn seeded(opts: &SolverOptions, label: &CanonicalLabel) -> SolverOptions {
    SolverOptions { seed: opts.seed ^ fnv1a(label.as_bytes()), ..opts.clone() }
}

/// Counts and solves every member. The member with the most copies (first
/// by label on ties) is solved first; its value is a lower bound on the
/// maximum, and members whose certified upper bound is below it by more than
/// [`SLACK`] are left unsolved.
pub fn evaluate<E: Executor>(
    q: &Hypergraph,
    members: Vec<Member>,
    p: f64,
    opts: &SolverOptions,
    exec: &E,
) -> Result<Vec<Evaluated>> {
    let derived: Vec<Result<WeightedSGraph>> = exec.map(&members, |m| derive_weighted(q, &m.graph));
    let mut evals: Vec<Evaluated> = Vec::with_capacity(members.len());
    for (member, derived) in members.into_iter().zip(derived) {
        let derived = derived?;
        let count = derived.total_weight();
        let upper = upper_bound(&derived, p);
        evals.push(Evaluated { member, derived, count, upper, result: None });
    }
    let Some(lead) = (0..evals.len()).reduce(|a, b| if evals[b].count > evals[a].count { b } else { a }) else {
        return Ok(evals);
    };
    let first = solve_at(&evals[lead].derived, p, &seeded(opts, &evals[lead].member.label))?;
    let threshold = first.lambda * (1.0 - SLACK);
    evals[lead].result = Some(first);
    let todo: Vec<usize> = (0..evals.len()).filter(|&i| i != lead && evals[i].upper >= threshold).collect();
    let solved = exec.map(&todo, |&i| solve_at(&evals[i].derived, p, &seeded(opts, &evals[i].member.label)));
    for (i, res) in todo.into_iter().zip(solved) {
        evals[i].result = Some(res?);
    }
    Ok(evals)
}

/// Index of the largest value, the first one in label order on ties.
fn argmax_by<F: Fn(&Evaluated) -> Option<f64>>(evals: &[Evaluated], key: F) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, e) in evals.iter().enumerate() {
        if let Some(v) = key(e) {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((i, v));
            }
        }
    }
    best.map(|(i, _)| i)
}

pub fn max_count(evals: &[Evaluated]) -> Option<&Evaluated> {
    let i = (0..evals.len()).reduce(|a, b| if evals[b].count > evals[a].count { b } else { a })?;
    Some(&evals[i])
}

pub fn max_lambda(evals: &[Evaluated]) -> Option<&Evaluated> {
    argmax_by(evals, Evaluated::lambda).map(|i| &evals[i])
}

/// Members whose value is within [`SLACK`] (relative) of the maximum.
pub fn lambda_maximizers(evals: &[Evaluated]) -> Vec<&Evaluated> {
    let Some(top) = max_lambda(evals).and_then(Evaluated::lambda) else {
        return Vec::new();
    };
    evals
        .iter()
        .filter(|e| e.lambda().is_some_and(|v| v >= top - SLACK * top.abs()))
        .collect()
}

pub(crate) fn solver_for(p: f64) -> Result<()> {
    crate::spectral::check_p(p, 1.0)
}

/// `ex(Q, 𝓟_n)` and `λ^(p)(Q, 𝓟_n)` for every order in `orders`.
pub fn density_sequence<E: Executor>(
    q: &Hypergraph,
    family: &Family,
    orders: RangeInclusive<usize>,
    p: f64,
    opts: &SolverOptions,
    exec: &E,
    ceiling: Option<usize>,
) -> Result<Vec<DensityPoint>> {
    solver_for(p)?;
    if q.r() != family.r() {
        return Err(Error::UniformityMismatch { left: q.r(), right: family.r() });
    }
    let s = q.n();
    let mut points = Vec::new();
    for n in orders {
        let evals = evaluate(q, family.members(n, ceiling)?, p, opts, exec)?;
        let empty = || Hypergraph::empty(n, q.r());
        let ex = match max_count(&evals) {
            Some(e) => (e.count, e.member.graph.clone()),
            None => (0, empty()?),
        };
        let lambda = match max_lambda(&evals) {
            Some(e) => (e.lambda().unwrap_or(0.0), e.member.graph.clone()),
            None => (0.0, empty()?),
        };
        points.push(DensityPoint::new(n, s, p, ex, lambda));
    }
    Ok(points)
}

/// Checks the monotonicity laws on one density run: `λ` non-decreasing and
/// at most `s!` for p = 1, the scaled value non-increasing for p > 1, the
/// count ratio non-increasing, and the scaled value above the count ratio.
pub fn verify_monotone(points: &[DensityPoint]) -> VerificationReport {
    let mut report = VerificationReport::new("monotone density sequences");
    report.param("points", points.len());
    let Some(first) = points.first() else {
        return report;
    };
    let (p, s) = (first.p, first.s);
    report.param("p", p).param("s", s);
    let mut table = Table::new(&["n", "ex_count", "ex_ratio", "lambda_max", "lambda_scaled"]);
    for pt in points {
        table.push(alloc::vec![
            pt.n.to_string(),
            pt.ex_count.to_string(),
            pt.ex_ratio.to_string(),
            pt.lambda_max.to_string(),
            pt.lambda_scaled.to_string(),
        ]);
        if pt.n < s {
            continue;
        }
        let gap = pt.lambda_scaled - pt.ex_ratio * (1.0 - SLACK);
        report.margin(format!("n={} scaled-vs-ratio", pt.n), gap);
        if gap < 0.0 {
            report.fail(format!("n={}: scaled spectral value below the count ratio", pt.n), &pt.lambda_graph);
        }
        if p == 1.0 {
            let cap = factorial(s) as f64;
            if pt.lambda_max > cap * (1.0 + SLACK) {
                report.fail(format!("n={}: lambda exceeds s!", pt.n), &pt.lambda_graph);
            }
        }
    }
    for (i, pair) in points.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        if a.n < s {
            continue;
        }
        let index = i + 1;
        let ratio_gap = a.ex_ratio * (1.0 + SLACK) - b.ex_ratio;
        report.margin(format!("n={} ex_ratio", b.n), ratio_gap);
        if ratio_gap < 0.0 {
            report.fail(format!("index {index} (n={}): ex_ratio increased", b.n), &b.ex_graph);
        }
        let gap = if p == 1.0 {
            b.lambda_max - a.lambda_max * (1.0 - SLACK)
        } else {
            a.lambda_scaled * (1.0 + SLACK) - b.lambda_scaled
        };
        report.margin(format!("n={} lambda", b.n), gap);
        if gap < 0.0 {
            let what = if p == 1.0 { "lambda_max decreased" } else { "lambda_scaled increased" };
            report.fail(format!("index {index} (n={}): {what}", b.n), &b.lambda_graph);
        }
    }
    report.table = table;
    report
}
