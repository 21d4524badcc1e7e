//! `specturan` command line. Exit codes: 0 success, 1 a verification or
//! sweep law failed, 2 bad usage or input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use specturan_core::count::{aut_order, count_copies, derive_weighted, is_free, q_degrees};
use specturan_core::enumerate::{enumerate_graphs, EnumerationStream};
use specturan_core::extremal::{self, Family, VerificationReport};
use specturan_core::spectral::{p_sweep, solve_at};
use specturan_core::{BlowupSpec, FamilySpec, Generator, Hypergraph, SolverOptions, WeightedSGraph};

use crate::config::{ceiling_from_env, load_solver_options};
use crate::formats::{parse_hgr, parse_weighted, write_hgr, write_weighted};
use crate::render;
use crate::runner::Threaded;

#[derive(Parser, Debug)]
#[command(name = "specturan", version, about = "Generalized Turan counts and (p,Q)-spectral radii of hypergraphs")]
pub struct Cli {
    /// Output format; each verb has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest enumerated order; overrides SPECTURAN_CEILING.
    #[arg(long, global = true)]
    pub ceiling: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Complete,
    Turan,
    Cycle,
    C5Blowup,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a named graph as HGR.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Number of parts (turan).
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Copies of Q in H, |Aut(Q)| and the Q-degrees.
    Count {
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        h: PathBuf,
    },
    /// Write the derived weighted s-graph D(Q,H).
    Derive {
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// λ^(p) of a weighted s-graph, or of D(Q,H).
    Specrad {
        #[command(flatten)]
        input: SpectralInput,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// λ^(p) over a list of exponents with the monotonicity laws checked.
    Sweep {
        #[command(flatten)]
        input: SpectralInput,
        #[arg(long, value_delimiter = ',', required = true)]
        p_list: Vec<f64>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// ex(Q, F-free, n) and λ^(p)(Q, F-free, n) over a range of orders.
    Density {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Also write an `n <TAB> lambda_scaled` file.
        #[arg(long)]
        plot: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run a verification harness.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Stream one representative per isomorphism class as HGR records.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Forbidden subgraph (repeatable).
        #[arg(long)]
        forbid: Vec<PathBuf>,
        #[arg(long)]
        limit: Option<usize>,
        /// Resume after a token printed by an earlier run.
        #[arg(long)]
        checkpoint: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Check {
    Pentagon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    Turan {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    Flat {
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        h: PathBuf,
        /// Q-density of the family, as `num/den`.
        #[arg(long)]
        pi: Ratio<u64>,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
    Blowup {
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        h: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u32>,
    },
    Stability {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        pi: Ratio<u64>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    Monotone {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

#[derive(Args, Debug)]
pub struct SpectralInput {
    /// Weighted s-graph file.
    #[arg(long, conflicts_with_all = ["q", "h"])]
    pub weighted: Option<PathBuf>,
    #[arg(long, requires = "h")]
    pub q: Option<PathBuf>,
    #[arg(long, requires = "q")]
    pub h: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long)]
    pub q: PathBuf,
    /// Forbidden subgraph (repeatable); none means all graphs.
    #[arg(long)]
    pub forbid: Vec<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct SolverArgs {
    /// TOML file with solver options; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub tol_residual: Option<f64>,
    #[arg(long)]
    pub tol_stall: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub support_cap: Option<usize>,
    #[arg(long)]
    pub polish_limit: Option<usize>,
}

impl SolverArgs {
    fn options(&self, seed: u64) -> Result<SolverOptions> {
        let mut opts = match &self.config {
            Some(path) => load_solver_options(path)?,
            None => SolverOptions::default(),
        };
        opts.seed = seed;
        if let Some(v) = self.restarts {
            opts.restarts = v;
        }
        if let Some(v) = self.tol_residual {
            opts.tol_residual = v;
        }
        if let Some(v) = self.tol_stall {
            opts.tol_stall = v;
        }
        if let Some(v) = self.max_iter {
            opts.max_iter = v;
        }
        if let Some(v) = self.support_cap {
            opts.support_cap = v;
        }
        if let Some(v) = self.polish_limit {
            opts.polish_limit = v;
        }
        opts.validate()?;
        Ok(opts)
    }
}

/// Outcome of a verb that ran to completion.
enum Status {
    Ok,
    Failed,
}

fn read_hgr(path: &Path) -> Result<Hypergraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_hgr(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_weighted(path: &Path) -> Result<WeightedSGraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_weighted(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p.is_finite() && p >= 1.0) {
        bail!("--p must be a finite number >= 1, got {p}");
    }
    Ok(())
}

fn load_family(args: &FamilyArgs) -> Result<(Hypergraph, Family)> {
    let q = read_hgr(&args.q)?;
    let family = if args.forbid.is_empty() {
        Family::All { r: q.r() }
    } else {
        let members = args.forbid.iter().map(|p| read_hgr(p)).collect::<Result<Vec<_>>>()?;
        Family::Free(FamilySpec::new(members)?)
    };
    Ok((q, family))
}

fn load_spectral_input(input: &SpectralInput) -> Result<WeightedSGraph> {
    match (&input.weighted, &input.q, &input.h) {
        (Some(w), None, None) => read_weighted(w),
        (None, Some(q), Some(h)) => Ok(derive_weighted(&read_hgr(q)?, &read_hgr(h)?)?),
        _ => bail!("give either --weighted FILE or both --q FILE and --h FILE"),
    }
}

struct Context_ {
    format: Option<Format>,
    threads: Option<usize>,
    seed: u64,
    ceiling: Option<usize>,
}

impl Context_ {
    fn runner(&self) -> Result<Threaded> {
        if self.threads == Some(0) {
            bail!("--threads must be positive");
        }
        Ok(Threaded::new(self.threads)?)
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn write_report(ctx: &Context_, out: &mut dyn Write, report: &VerificationReport) -> Result<Status> {
    let text = match ctx.format(Format::Json) {
        Format::Csv => render::report_csv(report)?,
        _ => render::report_json(report)?,
    };
    out.write_all(text.as_bytes())?;
    Ok(if report.passed { Status::Ok } else { Status::Failed })
}

/// Parses `args` (including the program name) and runs the verb.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(Status::Ok) => 0,
        Ok(Status::Failed) => {
            let _ = writeln!(err, "specturan: verification failed");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "specturan: {e:#}");
            2
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<Status> {
    let ceiling = match cli.ceiling {
        Some(c) => Some(c),
        None => ceiling_from_env()?,
    };
    let ctx = Context_ { format: cli.format, threads: cli.threads, seed: cli.seed, ceiling };
    match cli.command {
        Command::Gen { kind, n, r, l, out: path } => {
            let spec = match kind {
                Kind::Complete => Generator::Complete { n, r },
                Kind::Turan => {
                    let Some(l) = l else { bail!("--kind turan needs --l") };
                    Generator::Turan { n, l, r }
                }
                Kind::Cycle => Generator::Cycle { n },
                Kind::C5Blowup => Generator::C5Blowup { n },
            };
            if matches!(kind, Kind::Cycle | Kind::C5Blowup) && r != 2 {
                bail!("--kind cycle and c5-blowup are graphs, --r must be 2");
            }
            let g = spec.build()?;
            emit(out, path.as_deref(), &write_hgr(&g))?;
            Ok(Status::Ok)
        }
        Command::Count { q, h } => {
            let (q, h) = (read_hgr(&q)?, read_hgr(&h)?);
            let copies = count_copies(&q, &h)?;
            let aut = aut_order(&q)?;
            let degrees = q_degrees(&q, &h)?;
            let text = match ctx.format(Format::Text) {
                Format::Json => {
                    let v = serde_json::json!({ "copies": copies, "aut_order": aut, "q_degrees": degrees });
                    format!("{}\n", serde_json::to_string_pretty(&v)?)
                }
                Format::Csv => {
                    let mut s = String::from("vertex,q_degree\n");
                    for (v, d) in degrees.iter().enumerate() {
                        s.push_str(&format!("{v},{d}\n"));
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("copies {copies}\naut_order {aut}\n");
                    for (v, d) in degrees.iter().enumerate() {
                        s.push_str(&format!("qdegree {v} {d}\n"));
                    }
                    s
                }
            };
            out.write_all(text.as_bytes())?;
            Ok(Status::Ok)
        }
        Command::Derive { q, h, out: path } => {
            let w = derive_weighted(&read_hgr(&q)?, &read_hgr(&h)?)?;
            emit(out, path.as_deref(), &write_weighted(&w))?;
            Ok(Status::Ok)
        }
        Command::Specrad { input, p, solver } => {
            check_p(p)?;
            let opts = solver.options(ctx.seed)?;
            let w = load_spectral_input(&input)?;
            let result = solve_at(&w, p, &opts)?;
            out.write_all(render::spectral_json(&result)?.as_bytes())?;
            Ok(Status::Ok)
        }
        Command::Sweep { input, p_list, solver } => {
            for &p in &p_list {
                check_p(p)?;
            }
            let opts = solver.options(ctx.seed)?;
            let w = load_spectral_input(&input)?;
            let sweep = p_sweep(&w, &p_list, &opts, 1e-9 * (1.0 + w.total_weight() as f64))?;
            let text = match ctx.format(Format::Csv) {
                Format::Json => render::sweep_json(&sweep)?,
                _ => render::sweep_csv(&sweep)?,
            };
            out.write_all(text.as_bytes())?;
            Ok(if sweep.violations.is_empty() { Status::Ok } else { Status::Failed })
        }
        Command::Density { family, n_min, n_max, p, plot, solver } => {
            check_p(p)?;
            if n_min > n_max {
                bail!("--n-min exceeds --n-max");
            }
            let opts = solver.options(ctx.seed)?;
            let runner = ctx.runner()?;
            let (q, family) = load_family(&family)?;
            let points = extremal::density_sequence(&q, &family, n_min..=n_max, p, &opts, &runner, ctx.ceiling)?;
            if let Some(path) = plot {
                std::fs::write(&path, render::density_tsv(&points))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let text = match ctx.format(Format::Csv) {
                Format::Json => render::density_json(&points)?,
                _ => render::density_csv(&points)?,
            };
            out.write_all(text.as_bytes())?;
            Ok(Status::Ok)
        }
        Command::Verify { check } => verify(&ctx, check, out),
        Command::Enumerate { n, r, forbid, limit, checkpoint } => {
            let members = forbid.iter().map(|p| read_hgr(p)).collect::<Result<Vec<_>>>()?;
            let family = if members.is_empty() { None } else { Some(FamilySpec::new(members)?) };
            if let Some(f) = &family {
                if f.r() != r {
                    bail!("forbidden graphs are {}-uniform, --r is {r}", f.r());
                }
            }
            let admits = |h: &Hypergraph| family.as_ref().is_none_or(|f| is_free(h, f).unwrap_or(false));
            let mut stream = match &checkpoint {
                Some(token) => EnumerationStream::resume(n, r, admits, true, ctx.ceiling, token)?,
                None => enumerate_graphs(n, r, admits, true, ctx.ceiling)?,
            };
            let mut emitted = 0;
            while limit.is_none_or(|l| emitted < l) {
                let Some(m) = stream.next() else { break };
                if emitted > 0 {
                    out.write_all(b"\n")?;
                }
                write!(out, "# label {}\n{}", m.label, write_hgr(&m.graph))?;
                emitted += 1;
            }
            if emitted > 0 {
                out.write_all(b"\n")?;
            }
            writeln!(out, "# checkpoint {}", stream.checkpoint())?;
            Ok(Status::Ok)
        }
    }
}

fn verify(ctx: &Context_, check: Check, out: &mut dyn Write) -> Result<Status> {
    let report = match check {
        Check::Pentagon { n, p, solver } => {
            check_p(p)?;
            let opts = solver.options(ctx.seed)?;
            extremal::pentagon_check(n, p, &opts, &ctx.runner()?, ctx.ceiling)?
        }
        Check::Turan { l, s, n, p, solver } => {
            check_p(p)?;
            let opts = solver.options(ctx.seed)?;
            extremal::turan_check(l, s, n, p, &opts, &ctx.runner()?, ctx.ceiling)?
        }
        Check::Flat { q, h, pi, p, solver } => {
            check_p(p)?;
            let opts = solver.options(ctx.seed)?;
            extremal::flat_bounds_check(&read_hgr(&q)?, &read_hgr(&h)?, pi, p, &opts)?
        }
        Check::Blowup { q, h, sizes } => {
            let (q, h) = (read_hgr(&q)?, read_hgr(&h)?);
            extremal::blowup_inequality_check(&q, &BlowupSpec::new(h, sizes)?)?
        }
        Check::Stability { family, n, p, eps, pi, solver } => {
            check_p(p)?;
            let opts = solver.options(ctx.seed)?;
            let runner = ctx.runner()?;
            let (q, family) = load_family(&family)?;
            extremal::stability_check(&q, &family, n, p, eps, pi, &opts, &runner, ctx.ceiling)?
        }
        Check::Monotone { family, n_min, n_max, p, solver } => {
            check_p(p)?;
            if n_min > n_max {
                bail!("--n-min exceeds --n-max");
            }
            let opts = solver.options(ctx.seed)?;
            let runner = ctx.runner()?;
            let (q, family) = load_family(&family)?;
            let points = extremal::density_sequence(&q, &family, n_min..=n_max, p, &opts, &runner, ctx.ceiling)?;
            extremal::verify_monotone(&points)
        }
    };
    write_report(ctx, out, &report)
}
