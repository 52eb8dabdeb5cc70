use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use nflab_core::dynamics::{self, IteratedMap, MapKind};
use nflab_core::function_space::{self as fs, EnumerationCap, FiniteDomain, FunctionSubset, Policy};
use nflab_core::markov::{self, TransitionMatrix};
use nflab_core::optimizers::{self as opt, Objective, ObjectiveDomain};
use nflab_core::seed;
use serde_json::{json, Value};

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::emit::{self, render_csv, render_json, Cell, ColumnType, CsvSchema};
use crate::error::{LabError, Result};
use crate::manifest::{sha256_hex, ArtifactEntry, ResultManifest, MANIFEST_FILE};

/// An output file held in memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Computed {
    /// The validated config the artifacts were computed from.
    pub config: ExperimentConfig,
    pub artifacts: Vec<Artifact>,
    /// The analysis came out negative (divergence found, bound violated).
    pub negative: bool,
    /// Index of the artifact a single-command query prints.
    pub primary: usize,
}

impl Computed {
    pub fn primary(&self) -> &Artifact {
        &self.artifacts[self.primary]
    }

    pub fn artifact(&self, name: &str) -> Option<&Artifact> {
        self.artifacts.iter().find(|a| a.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub manifest: ResultManifest,
    pub dir: PathBuf,
}

pub fn series_schema() -> CsvSchema {
    CsvSchema::new(&[("param", ColumnType::Real), ("iterate_index", ColumnType::Int), ("value", ColumnType::Real)])
}

pub fn density_schema() -> CsvSchema {
    CsvSchema::new(&[("bin_lo", ColumnType::Real), ("bin_hi", ColumnType::Real), ("count", ColumnType::Int)])
}

pub fn trace_schema() -> CsvSchema {
    CsvSchema::new(&[("iteration", ColumnType::Int), ("best_so_far", ColumnType::Real)])
}

/// Validates `config` (reading the cap override from the environment),
/// computes it, and writes the artifacts and a manifest into its
/// `output_dir`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunOutcome> {
    let start = Instant::now();
    let computed = compute(&config.validated()?)?;
    let dir = config.output_dir.clone();
    let mut entries = Vec::new();
    for a in &computed.artifacts {
        emit::write_atomic(&dir.join(&a.name), &a.bytes)?;
        entries.push(ArtifactEntry { file: a.name.clone(), bytes: a.bytes.len() as u64, sha256: sha256_hex(&a.bytes) });
    }
    let manifest = ResultManifest {
        config: computed.config,
        artifacts: entries,
        negative: computed.negative,
        wall_clock_seconds: start.elapsed().as_secs_f64(),
        tool_version: concat!("nflab ", env!("CARGO_PKG_VERSION")).into(),
    };
    emit::write_atomic(&dir.join(MANIFEST_FILE), &render_json(&manifest)?)?;
    Ok(RunOutcome { manifest, dir })
}

/// Computes the artifacts of `config` in memory. Parameters are validated
/// again, without the environment override.
pub fn compute(config: &ExperimentConfig) -> Result<Computed> {
    let config = config.validated_with(None)?;
    let p = Params { exp: config.experiment.as_str(), map: &config.parameters };
    let (artifacts, negative, primary) = match config.experiment {
        ExperimentKind::NflVerify => nfl_verify(&p, config.seed)?,
        ExperimentKind::NflFreelunch => nfl_freelunch(&p, config.seed)?,
        ExperimentKind::RevisitDemo => revisit_demo(&p)?,
        ExperimentKind::DynOrbit => dyn_orbit(&p)?,
        ExperimentKind::DynScan => dyn_scan(&p)?,
        ExperimentKind::DynDensity => dyn_density(&p)?,
        ExperimentKind::OptRun => opt_run(&p, &config)?,
        ExperimentKind::MarkovCheck => markov_check(&p)?,
        ExperimentKind::BoundsCalc => bounds_calc(&p)?,
    };
    Ok(Computed { config, artifacts, negative, primary })
}

type Output = (Vec<Artifact>, bool, usize);

struct Params<'a> {
    exp: &'static str,
    map: &'a BTreeMap<String, Value>,
}

impl Params<'_> {
    fn get(&self, key: &str) -> Result<&Value> {
        self.map.get(key).ok_or_else(|| LabError::Validation {
            experiment: self.exp.into(),
            keys: vec![key.into()],
            problems: vec![format!("missing required key `{key}`")],
        })
    }

    fn u(&self, key: &str) -> Result<u64> {
        self.get(key)?.as_u64().ok_or_else(|| self.bad(key, "a non-negative integer"))
    }

    fn us(&self, key: &str) -> Result<usize> {
        usize::try_from(self.u(key)?).map_err(|_| self.bad(key, "an integer in usize range"))
    }

    fn u32(&self, key: &str) -> Result<u32> {
        u32::try_from(self.u(key)?).map_err(|_| self.bad(key, "an integer below 2^32"))
    }

    fn f(&self, key: &str) -> Result<f64> {
        self.get(key)?.as_f64().ok_or_else(|| self.bad(key, "a number"))
    }

    fn opt_f(&self, key: &str) -> Result<Option<f64>> {
        self.map.get(key).map(|_| self.f(key)).transpose()
    }

    fn s(&self, key: &str) -> Result<&str> {
        self.get(key)?.as_str().ok_or_else(|| self.bad(key, "a string"))
    }

    fn b(&self, key: &str) -> Result<bool> {
        self.get(key)?.as_bool().ok_or_else(|| self.bad(key, "a boolean"))
    }

    fn strs(&self, key: &str) -> Result<Vec<String>> {
        serde_json::from_value(self.get(key)?.clone()).map_err(|_| self.bad(key, "an array of strings"))
    }

    fn reals(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.map
            .get(key)
            .map(|v| serde_json::from_value(v.clone()).map_err(|_| self.bad(key, "an array of numbers")))
            .transpose()
    }

    fn bad(&self, key: &str, what: &str) -> LabError {
        LabError::Validation {
            experiment: self.exp.into(),
            keys: vec![key.into()],
            problems: vec![format!("`{key}` must be {what}")],
        }
    }

    fn err(&self, e: impl std::fmt::Display) -> LabError {
        LabError::module(self.exp, e)
    }
}

fn json_artifact<T: serde::Serialize + ?Sized>(name: &str, value: &T) -> Result<Artifact> {
    Ok(Artifact { name: name.into(), bytes: render_json(value)? })
}

fn csv_artifact(name: &str, rows: &[Vec<Cell>], schema: &CsvSchema) -> Result<Artifact> {
    Ok(Artifact { name: name.into(), bytes: render_csv(rows, schema)? })
}

fn domain(p: &Params) -> Result<FiniteDomain> {
    FiniteDomain::new(p.us("nx")?, p.u32("ny")?).map_err(|e| p.err(e))
}

fn policies(p: &Params, domain: &FiniteDomain, root: u64) -> Result<Vec<fs::SearchPolicy>> {
    let default_seed = seed::derive_seed(root, "nfl-shuffle");
    p.strs("policies")?
        .iter()
        .map(|s| fs::parse_policy(s, domain, default_seed).map_err(|e| p.err(e)))
        .collect()
}

fn nfl_verify(p: &Params, root: u64) -> Result<Output> {
    let d = domain(p)?;
    let cap = EnumerationCap(p.u("cap")?);
    let k = p.us("k")?;
    let list = policies(p, &d, root)?;
    if list.len() < 2 {
        return Err(p.bad("policies", "a list of at least two policies"));
    }
    let ks: Vec<usize> = if p.b("all_k")? { (1..=k).collect() } else { vec![k] };
    let mut comparisons = Vec::new();
    for &k in &ks {
        for i in 0..list.len() {
            for j in i + 1..list.len() {
                comparisons.push(fs::nfl_equality(&list[i], &list[j], d, cap, k).map_err(|e| p.err(e))?);
            }
        }
    }
    let equal = comparisons.iter().all(|c| c.equal);
    let report = json!({
        "nx": d.nx(),
        "ny": d.ny(),
        "functions": d.function_count(),
        "policies": list.iter().map(|q| q.name()).collect::<Vec<_>>(),
        "k": ks,
        "equal": equal,
        "comparisons": comparisons,
    });
    Ok((vec![json_artifact("nfl_report.json", &report)?], !equal, 0))
}

fn nfl_freelunch(p: &Params, root: u64) -> Result<Output> {
    let d = domain(p)?;
    let rows: Vec<Vec<u32>> = serde_json::from_value(p.get("subset")?.clone())
        .map_err(|_| p.bad("subset", "an array of arrays of integers below 2^32"))?;
    let subset = FunctionSubset::from_values(d, rows).map_err(|e| p.err(e))?;
    let list = policies(p, &d, root)?;
    if list.len() != 2 {
        return Err(p.bad("policies", "a list of exactly two policies"));
    }
    let r = fs::free_lunch_report(&list[0], &list[1], &subset, p.us("k")?).map_err(|e| p.err(e))?;
    let schema = CsvSchema::new(&[
        ("step", ColumnType::Int),
        ("mean_best_a", ColumnType::Real),
        ("mean_best_b", ColumnType::Real),
    ]);
    let csv_rows: Vec<Vec<Cell>> = r
        .mean_best_so_far_a
        .iter()
        .zip(&r.mean_best_so_far_b)
        .enumerate()
        .map(|(i, (a, b))| vec![(i + 1).into(), (*a).into(), (*b).into()])
        .collect();
    let negative = !r.consistent;
    Ok((vec![json_artifact("freelunch.json", &r)?, csv_artifact("freelunch.csv", &csv_rows, &schema)?], negative, 0))
}

fn revisit_demo(p: &Params) -> Result<Output> {
    let d = domain(p)?;
    let r = fs::revisiting_demo(d, EnumerationCap(p.u("cap")?), p.us("k")?).map_err(|e| p.err(e))?;
    let schema = CsvSchema::new(&[
        ("step", ColumnType::Int),
        ("sweep_mean", ColumnType::Real),
        ("stuck_mean", ColumnType::Real),
    ]);
    let rows: Vec<Vec<Cell>> = r
        .sweep_mean
        .iter()
        .zip(&r.stuck_mean)
        .enumerate()
        .map(|(i, (a, b))| vec![(i + 1).into(), (*a).into(), (*b).into()])
        .collect();
    let shows_gap = r.sweep_total.last() > r.stuck_total.last();
    Ok((vec![json_artifact("revisit.json", &r)?, csv_artifact("revisit.csv", &rows, &schema)?], !shows_gap, 0))
}

fn iterated_map(p: &Params, param: f64) -> Result<IteratedMap> {
    let kind: MapKind = p.s("map")?.parse().map_err(|e| p.err(e))?;
    IteratedMap::new(kind, param, p.f("gamma_scale")?).map_err(|e| p.err(e))
}

fn dyn_orbit(p: &Params) -> Result<Output> {
    let param = p.f("param")?;
    let map = iterated_map(p, param)?;
    let transient = p.us("transient")?;
    let o = dynamics::orbit(map, p.f("u0")?, p.us("steps")?, transient).map_err(|e| p.err(e))?;
    let rows: Vec<Vec<Cell>> =
        o.iterates.iter().enumerate().map(|(i, &u)| vec![param.into(), (transient + i + 1).into(), u.into()]).collect();
    let summary = json!({
        "map": o.map,
        "u0": o.u0,
        "transient": o.transient,
        "iterates": o.iterates.len(),
        "last": o.iterates.last(),
        "classification": o.classification,
    });
    Ok((vec![json_artifact("orbit.json", &summary)?, csv_artifact("orbit.csv", &rows, &series_schema())?], false, 0))
}

fn dyn_scan(p: &Params) -> Result<Output> {
    let (lo, hi) = (p.f("lo")?, p.f("hi")?);
    let map = iterated_map(p, lo)?;
    let steps = p.us("steps")?;
    let keep = p.us("keep")?;
    let scan = dynamics::bifurcation_scan(map, lo, hi, p.us("samples")?, p.f("u0")?, steps, p.us("transient")?, keep)
        .map_err(|e| p.err(e))?;
    let mut rows = Vec::new();
    for r in &scan {
        let first = steps + 1 - r.samples.len();
        rows.extend(r.samples.iter().enumerate().map(|(i, &u)| vec![r.param.into(), (first + i).into(), u.into()]));
    }
    let classes: Vec<Value> =
        scan.iter().map(|r| json!({ "param": r.param, "classification": r.classification })).collect();
    Ok((vec![csv_artifact("scan.csv", &rows, &series_schema())?, json_artifact("scan.json", &classes)?], false, 0))
}

fn dyn_density(p: &Params) -> Result<Output> {
    let h = dynamics::invariant_density(p.f("lambda")?, p.f("u0")?, p.us("n")?, p.us("bins")?, p.us("transient")?)
        .map_err(|e| p.err(e))?;
    let rows: Vec<Vec<Cell>> =
        h.counts.iter().enumerate().map(|(i, &c)| vec![h.edges[i].into(), h.edges[i + 1].into(), c.into()]).collect();
    let summary = json!({
        "lambda": h.lambda,
        "u0": h.u0,
        "bins": h.bins,
        "total": h.total,
        "degenerate": h.degenerate,
        "ks_arcsine": h.ks_arcsine,
    });
    Ok((vec![csv_artifact("density.csv", &rows, &density_schema())?, json_artifact("density.json", &summary)?], false, 0))
}

fn real_bounds(p: &Params, objective: &Objective) -> Result<Vec<(f64, f64)>> {
    let mut bounds = objective.bounds().ok_or_else(|| p.err("objective has no real domain"))?;
    for (key, side) in [("lo", 0), ("hi", 1)] {
        if let Some(v) = p.reals(key)? {
            if v.len() != bounds.len() {
                return Err(p.bad(key, "one number per dimension"));
            }
            for (b, x) in bounds.iter_mut().zip(v) {
                if side == 0 {
                    b.0 = x;
                } else {
                    b.1 = x;
                }
            }
        }
    }
    Ok(bounds)
}

fn opt_run(p: &Params, config: &ExperimentConfig) -> Result<Output> {
    let algo = p.s("algo")?;
    let objective = opt::objective_catalog(p.s("objective")?).map_err(|e| p.err(e))?;
    let iters = p.us("iters")?;
    let s = config.seed;
    let wrong = |algorithm: &'static str| p.err(opt::OptimizerError::WrongDomain { objective: objective.name.clone(), algorithm });
    let (best_so_far, final_best, final_value, evaluations) = match (algo, objective.domain) {
        ("pso", ObjectiveDomain::Real { .. }) => {
            let theta = p.f("theta")?;
            let inertia = match p.opt_f("theta_end")? {
                Some(end) => opt::Inertia::LinearDecay { start: theta, end, horizon: iters },
                None => opt::Inertia::Constant { theta },
            };
            let cfg = opt::PsoConfig::new(p.f("alpha")?, p.f("beta")?, inertia, p.us("swarm")?, real_bounds(p, &objective)?)
                .map_err(|e| p.err(e))?;
            let r = opt::run_pso(|x| objective.eval_real(x), &cfg, iters, s).map_err(|e| p.err(e))?;
            (r.best_so_far, json!(r.final_best), r.final_value, r.evaluations)
        }
        ("fa", ObjectiveDomain::Real { .. }) => {
            let mut cfg = opt::FaConfig::new(
                p.f("beta0")?,
                p.f("gamma")?,
                p.f("randomization")?,
                p.us("fireflies")?,
                real_bounds(p, &objective)?,
            )
            .map_err(|e| p.err(e))?;
            cfg.noise = match p.s("noise")? {
                "gaussian" => opt::Noise::Gaussian,
                "uniform" => opt::Noise::Uniform,
                _ => return Err(p.bad("noise", "`gaussian` or `uniform`")),
            };
            cfg.beta0_final = p.opt_f("beta0_end")?;
            cfg.beta0_horizon = iters;
            cfg.validate().map_err(|e| p.err(e))?;
            let r = opt::run_fa(|x| objective.eval_real(x), &cfg, iters, s).map_err(|e| p.err(e))?;
            (r.best_so_far, json!(r.final_best), r.final_value, r.evaluations)
        }
        ("sa", ObjectiveDomain::Real { .. }) => {
            let bounds = real_bounds(p, &objective)?;
            let mut init_rng = seed::stream(s, "annealing-start");
            let start: Vec<f64> = bounds.iter().map(|&(lo, hi)| lo + (hi - lo) * opt::Sampler::unit(&mut init_rng)).collect();
            let schedule = opt::SaSchedule::new(p.f("a")?).map_err(|e| p.err(e))?;
            let nb = opt::gaussian_neighbor(p.f("step")?, bounds).map_err(|e| p.err(e))?;
            let r = opt::run_sa(start, |x: &Vec<f64>| objective.eval_real(x), nb, schedule, iters, s);
            (r.best_so_far, json!(r.final_best), r.final_value, r.evaluations)
        }
        ("ga", ObjectiveDomain::Bits { length }) => {
            let cfg = opt::GaConfig {
                tournament: p.us("tournament")?,
                crossover: p.b("crossover")?,
                ..opt::GaConfig::new(length, p.us("population")?, p.f("mutation_rate")?, p.b("elitism")?).map_err(|e| p.err(e))?
            };
            let r = opt::run_ga(|b| objective.eval_bits(b), &cfg, iters, s).map_err(|e| p.err(e))?;
            let bits: String = r.final_best.iter().map(|&b| if b { '1' } else { '0' }).collect();
            (r.best_so_far, json!(bits), r.final_value, r.evaluations)
        }
        ("pso", _) => return Err(wrong("pso")),
        ("fa", _) => return Err(wrong("fa")),
        ("sa", _) => return Err(wrong("sa")),
        ("ga", _) => return Err(wrong("ga")),
        _ => return Err(p.bad("algo", "one of pso, fa, sa, ga")),
    };
    let rows: Vec<Vec<Cell>> = best_so_far.iter().enumerate().map(|(i, &v)| vec![(i + 1).into(), v.into()]).collect();
    let summary = json!({
        "algo": algo,
        "objective": objective,
        "seed": s,
        "final_best": final_best,
        "final_value": final_value,
        "evaluations": evaluations,
        // the output directory is left out so artifacts do not depend on it
        "config_echo": { "experiment": config.experiment, "parameters": config.parameters, "seed": config.seed },
    });
    Ok((vec![csv_artifact("trace.csv", &rows, &trace_schema())?, json_artifact("summary.json", &summary)?], false, 0))
}

fn markov_check(p: &Params) -> Result<Output> {
    let rows: Vec<Vec<f64>> = serde_json::from_value(p.get("matrix")?.clone()).map_err(|_| p.bad("matrix", "an array of rows"))?;
    let pm = TransitionMatrix::new(rows).map_err(|e| p.err(e))?;
    let horizon = pm.size() * pm.size() + 1;
    let regularity = markov::is_regular(&pm, horizon);
    let mut report = json!({ "size": pm.size(), "regularity": regularity });
    let mut negative = !regularity.regular;
    if regularity.regular {
        let st = markov::stationary_distribution(&pm).map_err(|e| p.err(e))?;
        report["stationary"] = json!(st);
        report["power_iteration"] = json!(markov::stationary_by_power_iteration(&pm, None, 1e-14, 1_000_000).ok());
        if let Some(zeta) = p.opt_f("zeta")? {
            let b = markov::geometric_bound_check(&pm, zeta, p.us("k_max")?).map_err(|e| p.err(e))?;
            negative |= !b.holds;
            report["geometric_bound"] = json!(b);
        }
    }
    Ok((vec![json_artifact("markov.json", &report)?], negative, 0))
}

fn bounds_calc(p: &Params) -> Result<Output> {
    let report = match p.s("query")? {
        "zeta" => {
            let params = markov::ZetaParams::new(p.u32("n")?, p.u32("n1")?, p.u32("length")?, p.f("mu1")?, p.f("mu2")?)
                .map_err(|e| p.err(e))?;
            json!({ "query": "zeta", "params": params, "result": markov::zeta_two_group(&params) })
        }
        "ga-t" => {
            let params =
                markov::GaBoundParams::new(p.f("zeta")?, p.f("mu")?, p.u32("length")?, p.u32("n")?).map_err(|e| p.err(e))?;
            let t = markov::ga_iteration_bound(&params).map_err(|e| p.err(e))?;
            json!({ "query": "ga-t", "params": params, "t": t })
        }
        "sa-temp" => {
            let (a, k) = (p.f("a")?, p.u("k")?);
            let t = markov::sa_temperature(a, k).map_err(|e| p.err(e))?;
            json!({ "query": "sa-temp", "a": a, "k": k, "temperature": t })
        }
        _ => return Err(p.bad("query", "one of zeta, ga-t, sa-temp")),
    };
    Ok((vec![json_artifact("bounds.json", &report)?], false, 0))
}

/// JSON description of the reduced PSO system at `gamma`.
pub fn pso_eigen_report(gamma: f64) -> Result<Value> {
    let regime = dynamics::classify_pso_regime(gamma).map_err(|e| LabError::module("pso-eig", e))?;
    let e = dynamics::pso_eigenvalues(gamma);
    let c = |z: dynamics::Complex64| json!({ "re": z.re, "im": z.im, "modulus": z.norm() });
    Ok(json!({
        "gamma": gamma,
        "lambda1": c(e.lambda1),
        "lambda2": c(e.lambda2),
        "max_modulus": e.max_modulus(),
        "regime": regime,
    }))
}
