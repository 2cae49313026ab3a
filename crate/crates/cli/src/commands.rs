use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use bpodc::dynamics::{
    format_decimal17, gen_schedule, run_batch, summarize, write_schedule, EvalPolicy, RunJob,
    RunTrace,
};
use bpodc::oracle::{
    brute_force_opt, exact_ic_moments, exact_submodularity_ratio, max_feasible_cardinality,
    min_marginal_cost, total_curvature,
};
use bpodc::{RngStream, Subset};

use crate::config::{repeat_seed, BuiltProblem, RunConfig};
use crate::error::{CliError, CliResult};

pub const RUNS_FILE: &str = "runs.csv";
pub const SUMMARY_FILE: &str = "summary.csv";

pub const RUNS_HEADER: &str =
    "run_id,algorithm,seed,change_index,budget,evals_used,best_f,best_cost,archive_size";
pub const SUMMARY_HEADER: &str = "algorithm,change_index,budget,mean_best_f,std_best_f,runs";

pub struct RunArgs {
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub quiet: bool,
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| io_err(path, e))
}

fn opt_num(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn provenance(w: &mut impl Write, config: &RunConfig, master_seed: u64) -> std::io::Result<()> {
    writeln!(w, "# bpodc {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# config_sha256={}", config.hash())?;
    writeln!(w, "# master_seed={master_seed}")?;
    writeln!(w, "# n_simulations={}", config.problem.n_simulations)
}

fn write_runs(
    path: &Path,
    config: &RunConfig,
    master_seed: u64,
    traces: &[RunTrace],
) -> std::io::Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    provenance(&mut w, config, master_seed)?;
    writeln!(w, "{RUNS_HEADER}")?;
    for (run_id, t) in traces.iter().enumerate() {
        for r in &t.records {
            writeln!(
                w,
                "{run_id},{},{},{},{},{},{},{},{}",
                t.algorithm,
                t.seed,
                r.change_index,
                r.budget,
                r.evals_consumed,
                opt_num(r.best_f),
                opt_num(r.best_cost),
                r.archive_size
            )?;
        }
    }
    w.flush()
}

fn write_summary(
    path: &Path,
    config: &RunConfig,
    master_seed: u64,
    traces: &[RunTrace],
) -> CliResult<()> {
    let mut w = create(path)?;
    let mut write = || -> std::io::Result<()> {
        provenance(&mut w, config, master_seed)?;
        writeln!(w, "{SUMMARY_HEADER}")?;
        for &alg in &config.algorithms {
            let group: Vec<RunTrace> = traces
                .iter()
                .filter(|t| t.algorithm == alg)
                .cloned()
                .collect();
            let rows = summarize(&group).map_err(std::io::Error::other)?;
            for row in rows {
                writeln!(
                    w,
                    "{alg},{},{},{},{},{}",
                    row.change_index, row.budget, row.mean, row.std, row.runs
                )?;
            }
        }
        w.flush()
    };
    write().map_err(|e| io_err(path, e))
}

pub fn cmd_run(args: RunArgs) -> CliResult<()> {
    let config = RunConfig::load(&args.config)?;
    let master_seed = args.seed.unwrap_or(config.seed);
    let out_dir = args
        .out
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from("."));

    let built = config.problem.build()?;
    let problem = built.as_dyn();
    let schedule = config.schedule.build()?;
    let policy = EvalPolicy::from_fractions(problem.size(), config.t_initial, config.t_change)?;
    let jobs: Vec<RunJob> = config
        .algorithms
        .iter()
        .flat_map(|&algorithm| {
            (0..config.repeats).map(move |r| RunJob {
                algorithm,
                seed: repeat_seed(master_seed, algorithm, r),
            })
        })
        .collect();
    if !args.quiet {
        eprintln!(
            "running {} tasks over {} phases (n = {}, t_initial = {}, t_change = {})",
            jobs.len(),
            schedule.n_changes() + 1,
            problem.size(),
            policy.t_initial,
            policy.t_change
        );
    }

    let options = config.options;
    let execute = || run_batch(&jobs, &options, problem, "config", &schedule, policy);
    let results = with_jobs(args.jobs, execute)?;
    let traces = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    fs::create_dir_all(&out_dir).map_err(|e| io_err(&out_dir, e))?;
    let runs_path = out_dir.join(RUNS_FILE);
    write_runs(&runs_path, &config, master_seed, &traces).map_err(|e| io_err(&runs_path, e))?;
    write_summary(&out_dir.join(SUMMARY_FILE), &config, master_seed, &traces)?;
    if !args.quiet {
        eprintln!("wrote {}", runs_path.display());
    }
    Ok(())
}

#[cfg(feature = "parallel")]
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    match jobs {
        Some(0) => Err(CliError::Config("--jobs must be ≥ 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| CliError::Runtime(e.to_string())),
        None => Ok(f()),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    match jobs {
        Some(0) => Err(CliError::Config("--jobs must be ≥ 1".into())),
        _ => Ok(f()),
    }
}

pub struct ScheduleArgs {
    pub initial: f64,
    pub changes: usize,
    pub delta: f64,
    pub low: f64,
    pub high: f64,
    pub seed: u64,
    pub out: PathBuf,
}

/// Path of the cumulative-change CSV written next to a schedule file.
pub fn cumulative_path(schedule: &Path) -> PathBuf {
    let mut name = schedule.file_stem().unwrap_or_default().to_os_string();
    name.push("_cumulative.csv");
    schedule.with_file_name(name)
}

pub fn cmd_schedule(args: ScheduleArgs) -> CliResult<()> {
    let schedule = gen_schedule(
        args.initial,
        args.changes,
        args.delta,
        (args.low, args.high),
        &mut RngStream::new(args.seed),
    )?;
    let mut w = create(&args.out)?;
    write_schedule(&mut w, &schedule)
        .and_then(|_| w.flush())
        .map_err(|e| io_err(&args.out, e))?;

    let csv = cumulative_path(&args.out);
    let mut w = create(&csv)?;
    let mut write = || -> std::io::Result<()> {
        writeln!(w, "change_index,budget,cumulative_change")?;
        writeln!(w, "0,{},0", format_decimal17(schedule.initial))?;
        for (i, (b, d)) in schedule
            .budgets
            .iter()
            .zip(schedule.cumulative_changes())
            .enumerate()
        {
            writeln!(
                w,
                "{},{},{}",
                i + 1,
                format_decimal17(*b),
                format_decimal17(d)
            )?;
        }
        w.flush()
    };
    write().map_err(|e| io_err(&csv, e))
}

pub enum OracleQuery {
    Opt { budget: f64 },
    Ic { seeds: Vec<usize> },
    Alpha,
    Cost { budget: Option<f64> },
}

fn load_problem(config: &Path) -> CliResult<BuiltProblem> {
    RunConfig::load(config)?.problem.build()
}

/// Answers one oracle query as `key=value` lines.
pub fn cmd_oracle(config: &Path, query: OracleQuery) -> CliResult<Vec<String>> {
    let built = load_problem(config)?;
    let problem = built.as_dyn();
    let n = problem.size();
    Ok(match query {
        OracleQuery::Opt { budget } => {
            let r = brute_force_opt(problem, budget)?;
            vec![
                format!("opt={}", r.opt_value),
                format!("subset={}", join(r.opt_subset.items())),
                format!("enumerated={}", r.enumerated_count),
            ]
        }
        OracleQuery::Ic { seeds } => {
            let BuiltProblem::Influence(p) = &built else {
                return Err(CliError::Config(
                    "`oracle ic` needs problem = influence".into(),
                ));
            };
            if let Some(&bad) = seeds.iter().find(|&&v| v >= n) {
                return Err(CliError::Config(format!(
                    "seed vertex {bad} out of range 0..{n}"
                )));
            }
            let (mean, var) = exact_ic_moments(p.model(), &Subset::from_items(n, seeds))?;
            vec![format!("expectation={mean:?}"), format!("variance={var:?}")]
        }
        OracleQuery::Alpha => {
            // surfaces size errors before the infallible enumeration below
            problem.exact_value(&Subset::empty(n))?;
            let ratio =
                exact_submodularity_ratio(|s| problem.exact_value(s).expect("checked above"), n)?;
            vec![format!("alpha_f={ratio:?}")]
        }
        OracleQuery::Cost { budget } => {
            let costs = problem.costs();
            let mut lines = vec![
                format!("delta_c={:?}", min_marginal_cost(costs)),
                format!("kappa_c={:?}", total_curvature(costs)),
            ];
            if let Some(b) = budget {
                lines.push(format!("k_b={}", max_feasible_cardinality(costs, b)));
            }
            lines
        }
    })
}

fn join(items: impl Iterator<Item = usize>) -> String {
    items.map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}
