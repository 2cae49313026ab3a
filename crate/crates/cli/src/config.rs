//! Flat `key = value` experiment configuration.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use bpodc::algorithms::{AlgorithmKind, AlgorithmOptions, DEFAULT_EPSILON};
use bpodc::dynamics::{gen_schedule, read_schedule, BudgetSchedule};
use bpodc::problems::{
    build_im_costs, build_mc_costs, load_edge_list, CoverageInstance, CoverageProblem, Graph,
    IcModel, InfluenceProblem, LinearCost, Problem, DEFAULT_SIMULATIONS,
};
use bpodc::RngStream;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Coverage,
    Influence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostModel {
    Im,
    Mc,
    Unit,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Random {
        vertices: usize,
        arc_probability: f64,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    Graph(GraphSource),
    /// Explicit coverage sets, one per line: `<cost> <element> <element> ...`.
    Sets(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub source: InstanceSource,
    pub directed: bool,
    pub edge_probability: f64,
    pub n_simulations: usize,
    pub cost_model: CostModel,
    pub q: usize,
    pub cost_seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScheduleSpec {
    File(PathBuf),
    Generated {
        initial: f64,
        changes: usize,
        delta: f64,
        low: f64,
        high: f64,
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    pub schedule: ScheduleSpec,
    pub algorithms: Vec<AlgorithmKind>,
    pub t_initial: f64,
    pub t_change: f64,
    pub repeats: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub options: AlgorithmOptions,
    /// Normalized `key=value` lines the config hash is computed from.
    pub canonical: String,
}

const KEYS: &[&str] = &[
    "problem",
    "graph",
    "sets",
    "directed",
    "random_vertices",
    "random_edge_prob",
    "graph_seed",
    "edge_probability",
    "n_simulations",
    "cost_model",
    "q",
    "cost_seed",
    "schedule_file",
    "schedule_initial",
    "schedule_changes",
    "schedule_delta",
    "schedule_low",
    "schedule_high",
    "schedule_seed",
    "algorithms",
    "t_initial",
    "t_change",
    "repeats",
    "seed",
    "output",
    "epsilon",
    "warm_up_fraction",
    "alpha_f",
];

/// Splits config text into key/value pairs. `#` starts a comment.
pub fn parse_pairs(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", idx + 1)))?;
        let key = key.trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!(
                "line {}: unknown key `{key}`",
                idx + 1
            )));
        }
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(CliError::Config(format!(
                "line {}: duplicate key `{key}`",
                idx + 1
            )));
        }
    }
    Ok(map)
}

struct Fields<'a> {
    map: &'a BTreeMap<String, String>,
}

impl Fields<'_> {
    fn raw(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>> {
        self.raw(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|_| CliError::Config(format!("`{key}`: cannot parse `{v}`")))
            })
            .transpose()
    }

    fn or<T: FromStr>(&self, key: &str, default: T) -> CliResult<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    fn required<T: FromStr>(&self, key: &str) -> CliResult<T> {
        self.get(key)?
            .ok_or_else(|| CliError::Config(format!("missing key `{key}`")))
    }
}

fn resolve(base: &Path, value: &str) -> PathBuf {
    let p = PathBuf::from(value);
    if p.is_absolute() {
        p
    } else {
        base.join(p)
    }
}

impl RunConfig {
    /// Parses config text; relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> CliResult<Self> {
        let map = parse_pairs(text)?;
        let f = Fields { map: &map };

        let kind = match f.raw("problem") {
            Some("coverage") => ProblemKind::Coverage,
            Some("influence") => ProblemKind::Influence,
            Some(other) => return Err(CliError::Config(format!("unknown problem `{other}`"))),
            None => return Err(CliError::Config("missing key `problem`".into())),
        };
        let source = match (f.raw("graph"), f.raw("sets")) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config("`graph` and `sets` are exclusive".into()))
            }
            (Some(g), None) => InstanceSource::Graph(GraphSource::File(resolve(base, g))),
            (None, Some(s)) => {
                if kind != ProblemKind::Coverage {
                    return Err(CliError::Config(
                        "`sets` requires problem = coverage".into(),
                    ));
                }
                InstanceSource::Sets(resolve(base, s))
            }
            (None, None) => InstanceSource::Graph(GraphSource::Random {
                vertices: f.required("random_vertices")?,
                arc_probability: f.required("random_edge_prob")?,
                seed: f.or("graph_seed", 0)?,
            }),
        };
        let cost_model = match f.raw("cost_model").unwrap_or(match kind {
            ProblemKind::Influence => "im",
            ProblemKind::Coverage => "mc",
        }) {
            "im" => CostModel::Im,
            "mc" => CostModel::Mc,
            "unit" => CostModel::Unit,
            other => return Err(CliError::Config(format!("unknown cost_model `{other}`"))),
        };
        let problem = ProblemSpec {
            kind,
            source,
            directed: f.or("directed", true)?,
            edge_probability: f.or("edge_probability", 0.05)?,
            n_simulations: f.or("n_simulations", DEFAULT_SIMULATIONS)?,
            cost_model,
            q: f.or("q", 5)?,
            cost_seed: f.or("cost_seed", 0)?,
        };

        let schedule = match f.raw("schedule_file") {
            Some(path) => ScheduleSpec::File(resolve(base, path)),
            None => {
                let initial: f64 = f.required("schedule_initial")?;
                ScheduleSpec::Generated {
                    initial,
                    changes: f.or("schedule_changes", 0)?,
                    delta: f.or("schedule_delta", 0.0)?,
                    low: f.or("schedule_low", initial)?,
                    high: f.or("schedule_high", initial)?,
                    seed: f.or("schedule_seed", 0)?,
                }
            }
        };

        let algorithms = f
            .raw("algorithms")
            .unwrap_or("bpodc,pomc,eamc,gga,agga")
            .split(',')
            .map(|s| s.trim().parse::<AlgorithmKind>().map_err(CliError::from))
            .collect::<CliResult<Vec<_>>>()?;
        if algorithms.is_empty() {
            return Err(CliError::Config("`algorithms` is empty".into()));
        }

        let defaults = AlgorithmOptions::default();
        let options = AlgorithmOptions {
            epsilon: f.or("epsilon", DEFAULT_EPSILON)?,
            warm_up_fraction: f.or("warm_up_fraction", defaults.warm_up_fraction)?,
            alpha_f: f.or("alpha_f", defaults.alpha_f)?,
        };

        let config = RunConfig {
            problem,
            schedule,
            algorithms,
            t_initial: f.or("t_initial", 0.25)?,
            t_change: f.or("t_change", 0.25)?,
            repeats: f.or("repeats", 1)?,
            seed: f.or("seed", 0)?,
            output: f.raw("output").map(|o| resolve(base, o)),
            options,
            canonical: map.iter().map(|(k, v)| format!("{k}={v}\n")).collect(),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    fn validate(&self) -> CliResult<()> {
        if !(self.t_initial >= 0.0 && self.t_change >= 0.0) {
            return Err(CliError::Config(
                "t_initial and t_change must be ≥ 0".into(),
            ));
        }
        if self.repeats < 1 {
            return Err(CliError::Config("repeats must be ≥ 1".into()));
        }
        if !(0.0..=1.0).contains(&self.options.warm_up_fraction) {
            return Err(CliError::Config(
                "warm_up_fraction must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }

    /// Hex SHA-256 of the normalized config, before any command-line override.
    pub fn hash(&self) -> String {
        hex(&Sha256::digest(self.canonical.as_bytes()))
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Seed for one `(algorithm, repeat)` task. Adding an algorithm leaves the
/// other algorithms' seeds untouched.
pub fn repeat_seed(master: u64, algorithm: AlgorithmKind, repeat: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    h.update(algorithm.name().as_bytes());
    h.update((repeat as u64).to_le_bytes());
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("digest has 32 bytes"))
}

fn data_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("{}: {e}", path.display()))
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| data_err(path, e))
}

fn load_sets(path: &Path) -> CliResult<(CoverageInstance, LinearCost)> {
    let text = std::fs::read_to_string(path).map_err(|e| data_err(path, e))?;
    let mut costs = Vec::new();
    let mut sets = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |what: &str| data_err(path, format!("line {}: {what}", idx + 1));
        let mut tokens = line.split_whitespace();
        let cost: f64 = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| bad("expected a cost"))?;
        let elems = tokens
            .map(|t| t.parse::<usize>().map_err(|_| bad("expected element ids")))
            .collect::<CliResult<Vec<_>>>()?;
        costs.push(cost);
        sets.push(elems);
    }
    if sets.is_empty() {
        return Err(data_err(path, "no sets"));
    }
    let universe = sets.iter().flatten().map(|&e| e + 1).max().unwrap_or(0);
    let costs = LinearCost::new(costs).map_err(|e| data_err(path, e))?;
    Ok((CoverageInstance::new(universe, &sets), costs))
}

impl ProblemSpec {
    fn graph(&self, source: &GraphSource) -> CliResult<Graph> {
        match source {
            GraphSource::File(path) => {
                load_edge_list(open(path)?, self.directed).map_err(|e| data_err(path, e))
            }
            GraphSource::Random {
                vertices,
                arc_probability,
                seed,
            } => {
                if !(0.0..=1.0).contains(arc_probability) {
                    return Err(CliError::Config("random_edge_prob outside [0, 1]".into()));
                }
                Ok(Graph::random(
                    *vertices,
                    *arc_probability,
                    &mut RngStream::new(*seed),
                ))
            }
        }
    }

    fn costs(&self, graph: &Graph) -> LinearCost {
        match self.cost_model {
            CostModel::Im => build_im_costs(graph, &mut RngStream::new(self.cost_seed)),
            CostModel::Mc => build_mc_costs(graph, self.q),
            CostModel::Unit => LinearCost::unit(graph.n_vertices()),
        }
    }

    /// Loads data files and builds the objective.
    pub fn build(&self) -> CliResult<BuiltProblem> {
        match &self.source {
            InstanceSource::Sets(path) => {
                let (instance, costs) = load_sets(path)?;
                let costs = match self.cost_model {
                    CostModel::Unit => LinearCost::unit(instance.n_sets()),
                    _ => costs,
                };
                Ok(BuiltProblem::Coverage(CoverageProblem::new(
                    instance, costs,
                )))
            }
            InstanceSource::Graph(source) => {
                let graph = self.graph(source)?;
                let costs = self.costs(&graph);
                Ok(match self.kind {
                    ProblemKind::Coverage => BuiltProblem::Coverage(CoverageProblem::new(
                        CoverageInstance::from_graph(&graph),
                        costs,
                    )),
                    ProblemKind::Influence => BuiltProblem::Influence(InfluenceProblem::new(
                        IcModel::new(graph, self.edge_probability, self.n_simulations)?,
                        costs,
                    )),
                })
            }
        }
    }
}

pub enum BuiltProblem {
    Coverage(CoverageProblem),
    Influence(InfluenceProblem),
}

impl BuiltProblem {
    pub fn as_dyn(&self) -> &dyn Problem {
        match self {
            BuiltProblem::Coverage(p) => p,
            BuiltProblem::Influence(p) => p,
        }
    }
}

impl ScheduleSpec {
    pub fn build(&self) -> CliResult<BudgetSchedule> {
        match self {
            ScheduleSpec::File(path) => read_schedule(open(path)?).map_err(|e| data_err(path, e)),
            ScheduleSpec::Generated {
                initial,
                changes,
                delta,
                low,
                high,
                seed,
            } => Ok(gen_schedule(
                *initial,
                *changes,
                *delta,
                (*low, *high),
                &mut RngStream::new(*seed),
            )?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "problem = coverage\nrandom_vertices = 8\nrandom_edge_prob = 0.3\n\
                           schedule_initial = 5\nalgorithms = bpodc, gga\n";

    #[test]
    fn minimal_config_defaults() {
        let c = RunConfig::parse(MINIMAL, Path::new(".")).unwrap();
        assert_eq!(c.algorithms, vec![AlgorithmKind::Bpodc, AlgorithmKind::Gga]);
        assert_eq!(c.repeats, 1);
        assert_eq!(c.problem.cost_model, CostModel::Mc);
        assert!(matches!(
            c.schedule,
            ScheduleSpec::Generated { changes: 0, .. }
        ));
    }

    #[test]
    fn comments_and_spacing_do_not_change_hash() {
        let a = RunConfig::parse(MINIMAL, Path::new(".")).unwrap();
        let text = format!("# header\n\n{}# trailing\n", MINIMAL.replace(" = ", "="));
        let b = RunConfig::parse(&text, Path::new(".")).unwrap();
        assert_eq!(a.hash(), b.hash());
        let c = RunConfig::parse(&format!("{MINIMAL}seed = 1\n"), Path::new(".")).unwrap();
        assert_ne!(a.hash(), c.hash());
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "problem = coverage\nbogus = 1\n",
            "problem = coverage\nproblem = influence\n",
            "problem coverage\n",
            &format!("{MINIMAL}repeats = 0\n"),
            &format!("{MINIMAL}t_change = -0.5\n"),
            &MINIMAL.replace("gga", "nope"),
        ] {
            let err = RunConfig::parse(bad, Path::new(".")).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{bad}");
        }
    }

    #[test]
    fn repeat_seeds_are_independent_per_algorithm() {
        let a = repeat_seed(7, AlgorithmKind::Bpodc, 0);
        assert_eq!(a, repeat_seed(7, AlgorithmKind::Bpodc, 0));
        assert_ne!(a, repeat_seed(7, AlgorithmKind::Bpodc, 1));
        assert_ne!(a, repeat_seed(7, AlgorithmKind::Pomc, 0));
        assert_ne!(a, repeat_seed(8, AlgorithmKind::Bpodc, 0));
    }
}
