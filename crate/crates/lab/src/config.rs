use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{LabError, Result};

/// Environment variable overriding the enumeration cap of the finite
/// function-space experiments.
pub const CAP_ENV: &str = "NFLAB_CAP";

pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    NflVerify,
    NflFreelunch,
    RevisitDemo,
    DynOrbit,
    DynScan,
    DynDensity,
    OptRun,
    MarkovCheck,
    BoundsCalc,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 9] = [
        ExperimentKind::NflVerify,
        ExperimentKind::NflFreelunch,
        ExperimentKind::RevisitDemo,
        ExperimentKind::DynOrbit,
        ExperimentKind::DynScan,
        ExperimentKind::DynDensity,
        ExperimentKind::OptRun,
        ExperimentKind::MarkovCheck,
        ExperimentKind::BoundsCalc,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::NflVerify => "nfl-verify",
            ExperimentKind::NflFreelunch => "nfl-freelunch",
            ExperimentKind::RevisitDemo => "revisit-demo",
            ExperimentKind::DynOrbit => "dyn-orbit",
            ExperimentKind::DynScan => "dyn-scan",
            ExperimentKind::DynDensity => "dyn-density",
            ExperimentKind::OptRun => "opt-run",
            ExperimentKind::MarkovCheck => "markov-check",
            ExperimentKind::BoundsCalc => "bounds-calc",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| format!("unknown experiment `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub parameters: BTreeMap<String, Value>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind) -> Self {
        Self { experiment, parameters: BTreeMap::new(), seed: 0, output_dir: default_output_dir() }
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.parameters.insert(key.into(), value);
        self
    }

    /// Validates the parameters and fills defaults, reading the cap override
    /// from [`CAP_ENV`].
    pub fn validated(&self) -> Result<Self> {
        let cap = match std::env::var(CAP_ENV) {
            Ok(v) => Some(v.trim().parse::<u64>().map_err(|_| LabError::Validation {
                experiment: self.experiment.to_string(),
                keys: vec![CAP_ENV.into()],
                problems: vec![format!("{CAP_ENV}=`{v}` is not a non-negative integer")],
            })?),
            Err(_) => None,
        };
        self.validated_with(cap)
    }

    /// Like [`validated`](Self::validated) with an explicit cap override.
    pub fn validated_with(&self, cap_override: Option<u64>) -> Result<Self> {
        let mut out = self.clone();
        out.parameters = validate_parameters(self.experiment, &self.parameters, cap_override)?;
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// Parses a JSON config, reporting syntax errors with line and column.
pub fn parse_config(text: &str, origin: &str) -> Result<ExperimentConfig> {
    serde_json::from_str(text).map_err(|e| LabError::Parse {
        path: origin.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Reads, parses and validates a config file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))?;
    parse_config(&text, &path.display().to_string())?.validated()
}

pub fn save_config(config: &ExperimentConfig, path: &Path) -> Result<()> {
    crate::emit::write_atomic(path, format!("{}\n", config.to_json()).as_bytes())
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    UInt,
    Real,
    Str,
    Bool,
    /// An array of strings.
    StrList,
    /// An array of arrays of non-negative integers.
    Table,
    /// An array of arrays of reals.
    Matrix,
    /// An array of reals.
    RealList,
}

enum Default {
    Required,
    Optional,
    Fixed(fn() -> Value),
    /// Computed from the other (already checked) parameters.
    Derived(fn(&BTreeMap<String, Value>) -> Value),
}

struct Spec {
    key: &'static str,
    kind: Kind,
    default: Default,
    /// `(selector key, values)`: the key is only accepted when the selector
    /// takes one of the values.
    only: Option<(&'static str, &'static [&'static str])>,
}

const fn spec(key: &'static str, kind: Kind, default: Default) -> Spec {
    Spec { key, kind, default, only: None }
}

const fn spec_for(key: &'static str, kind: Kind, default: Default, sel: &'static str, vals: &'static [&'static str]) -> Spec {
    Spec { key, kind, default, only: Some((sel, vals)) }
}

fn cap_default() -> Value {
    json!(DEFAULT_CAP)
}

fn k_from_nx(m: &BTreeMap<String, Value>) -> Value {
    m["nx"].clone()
}

fn specs(kind: ExperimentKind) -> Vec<Spec> {
    use Default::*;
    use Kind::*;
    const PSO: &[&str] = &["pso"];
    const FA: &[&str] = &["fa"];
    const SA: &[&str] = &["sa"];
    const GA: &[&str] = &["ga"];
    const CONT: &[&str] = &["pso", "fa", "sa"];
    match kind {
        ExperimentKind::NflVerify => vec![
            spec("nx", UInt, Required),
            spec("ny", UInt, Required),
            spec("k", UInt, Derived(k_from_nx)),
            spec("policies", StrList, Fixed(|| json!(["ascending", "descending"]))),
            spec("cap", UInt, Fixed(cap_default)),
            spec("all_k", Bool, Fixed(|| json!(false))),
        ],
        ExperimentKind::NflFreelunch => vec![
            spec("nx", UInt, Required),
            spec("ny", UInt, Required),
            spec("subset", Table, Required),
            spec("k", UInt, Derived(k_from_nx)),
            spec("policies", StrList, Fixed(|| json!(["ascending", "descending"]))),
        ],
        ExperimentKind::RevisitDemo => vec![
            spec("nx", UInt, Fixed(|| json!(3))),
            spec("ny", UInt, Fixed(|| json!(2))),
            spec("k", UInt, Derived(k_from_nx)),
            spec("cap", UInt, Fixed(cap_default)),
        ],
        ExperimentKind::DynOrbit => vec![
            spec("map", Str, Fixed(|| json!("firefly-normalized"))),
            spec("param", Real, Required),
            spec("gamma_scale", Real, Fixed(|| json!(1.0))),
            spec("u0", Real, Fixed(|| json!(0.5))),
            spec("steps", UInt, Fixed(|| json!(10_000))),
            spec("transient", UInt, Fixed(|| json!(0))),
        ],
        ExperimentKind::DynScan => vec![
            spec("map", Str, Fixed(|| json!("firefly-normalized"))),
            spec("lo", Real, Required),
            spec("hi", Real, Required),
            spec("samples", UInt, Fixed(|| json!(100))),
            spec("gamma_scale", Real, Fixed(|| json!(1.0))),
            spec("u0", Real, Fixed(|| json!(0.5))),
            spec("steps", UInt, Fixed(|| json!(2_000))),
            spec("transient", UInt, Fixed(|| json!(1_000))),
            spec("keep", UInt, Fixed(|| json!(64))),
        ],
        ExperimentKind::DynDensity => vec![
            spec("lambda", Real, Fixed(|| json!(4.0))),
            spec("u0", Real, Fixed(|| json!(0.3))),
            spec("n", UInt, Fixed(|| json!(1_000_000))),
            spec("bins", UInt, Fixed(|| json!(100))),
            spec("transient", UInt, Fixed(|| json!(0))),
        ],
        ExperimentKind::OptRun => vec![
            spec("algo", Str, Required),
            spec("objective", Str, Required),
            spec("iters", UInt, Fixed(|| json!(100))),
            spec_for("alpha", Real, Fixed(|| json!(1.5)), "algo", PSO),
            spec_for("beta", Real, Fixed(|| json!(1.5)), "algo", PSO),
            spec_for("theta", Real, Fixed(|| json!(0.7)), "algo", PSO),
            spec_for("theta_end", Real, Optional, "algo", PSO),
            spec_for("swarm", UInt, Fixed(|| json!(20)), "algo", PSO),
            spec_for("beta0", Real, Fixed(|| json!(1.0)), "algo", FA),
            spec_for("beta0_end", Real, Optional, "algo", FA),
            spec_for("gamma", Real, Fixed(|| json!(1.0)), "algo", FA),
            spec_for("randomization", Real, Fixed(|| json!(0.05)), "algo", FA),
            spec_for("fireflies", UInt, Fixed(|| json!(15)), "algo", FA),
            spec_for("noise", Str, Fixed(|| json!("gaussian")), "algo", FA),
            spec_for("a", Real, Fixed(|| json!(1.0)), "algo", SA),
            spec_for("step", Real, Fixed(|| json!(0.3)), "algo", SA),
            spec_for("population", UInt, Fixed(|| json!(20)), "algo", GA),
            spec_for("mutation_rate", Real, Fixed(|| json!(0.05)), "algo", GA),
            spec_for("elitism", Bool, Fixed(|| json!(true)), "algo", GA),
            spec_for("tournament", UInt, Fixed(|| json!(2)), "algo", GA),
            spec_for("crossover", Bool, Fixed(|| json!(false)), "algo", GA),
            spec_for("lo", RealList, Optional, "algo", CONT),
            spec_for("hi", RealList, Optional, "algo", CONT),
        ],
        ExperimentKind::MarkovCheck => vec![
            spec("matrix", Matrix, Required),
            spec("zeta", Real, Optional),
            spec("k_max", UInt, Fixed(|| json!(100))),
        ],
        ExperimentKind::BoundsCalc => {
            const Z: &[&str] = &["zeta"];
            const T: &[&str] = &["ga-t"];
            const S: &[&str] = &["sa-temp"];
            const ZT: &[&str] = &["zeta", "ga-t"];
            vec![
                spec("query", Str, Required),
                spec_for("n", UInt, Required, "query", ZT),
                spec_for("length", UInt, Required, "query", ZT),
                spec_for("n1", UInt, Required, "query", Z),
                spec_for("mu1", Real, Required, "query", Z),
                spec_for("mu2", Real, Required, "query", Z),
                spec_for("zeta", Real, Required, "query", T),
                spec_for("mu", Real, Required, "query", T),
                spec_for("a", Real, Required, "query", S),
                spec_for("k", UInt, Required, "query", S),
            ]
        }
    }
}

fn is_uint(v: &Value) -> bool {
    v.is_u64() || v.as_f64().is_some_and(|f| f >= 0.0 && f.fract() == 0.0 && f <= u64::MAX as f64)
}

fn check_kind(kind: Kind, v: &Value) -> bool {
    let arr = |pred: &dyn Fn(&Value) -> bool| v.as_array().is_some_and(|a| a.iter().all(pred));
    match kind {
        Kind::UInt => is_uint(v),
        Kind::Real => v.is_number(),
        Kind::Str => v.is_string(),
        Kind::Bool => v.is_boolean(),
        Kind::StrList => arr(&Value::is_string),
        Kind::Table => arr(&|row| row.as_array().is_some_and(|r| r.iter().all(|x| x.is_u64()))),
        Kind::Matrix => arr(&|row| row.as_array().is_some_and(|r| r.iter().all(Value::is_number))),
        Kind::RealList => arr(&Value::is_number),
    }
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::UInt => "a non-negative integer",
        Kind::Real => "a number",
        Kind::Str => "a string",
        Kind::Bool => "a boolean",
        Kind::StrList => "an array of strings",
        Kind::Table => "an array of arrays of non-negative integers",
        Kind::Matrix => "an array of arrays of numbers",
        Kind::RealList => "an array of numbers",
    }
}

/// Normalizes integral floats such as `1e7` to integers.
fn normalize(kind: Kind, v: Value) -> Value {
    match kind {
        Kind::UInt if !v.is_u64() => json!(v.as_f64().unwrap_or(0.0) as u64),
        _ => v,
    }
}

fn validate_parameters(
    experiment: ExperimentKind,
    given: &BTreeMap<String, Value>,
    cap_override: Option<u64>,
) -> Result<BTreeMap<String, Value>> {
    let specs = specs(experiment);
    let mut keys = Vec::new();
    let mut problems = Vec::new();
    let selector = |sel: &str| given.get(sel).and_then(Value::as_str).map(str::to_string);
    let applies = |s: &Spec| match s.only {
        None => true,
        Some((sel, vals)) => selector(sel).is_some_and(|v| vals.contains(&v.as_str())),
    };

    for key in given.keys() {
        match specs.iter().find(|s| s.key == key) {
            None => {
                keys.push(key.clone());
                problems.push(format!("unknown key `{key}`"));
            }
            Some(s) if !applies(s) => {
                let (sel, _) = s.only.expect("restricted");
                keys.push(key.clone());
                problems.push(format!("key `{key}` does not apply to {sel} `{}`", selector(sel).unwrap_or_default()));
            }
            Some(_) => {}
        }
    }

    let mut out = BTreeMap::new();
    for s in specs.iter().filter(|s| applies(s)) {
        match given.get(s.key) {
            Some(v) if check_kind(s.kind, v) => {
                out.insert(s.key.to_string(), normalize(s.kind, v.clone()));
            }
            Some(v) => {
                keys.push(s.key.into());
                problems.push(format!("`{}` must be {}, got {v}", s.key, kind_name(s.kind)));
            }
            None => match &s.default {
                Default::Required => {
                    keys.push(s.key.into());
                    problems.push(format!("missing required key `{}`", s.key));
                }
                Default::Optional | Default::Derived(_) => {}
                Default::Fixed(f) => {
                    out.insert(s.key.to_string(), f());
                }
            },
        }
    }
    if !problems.is_empty() {
        keys.sort();
        keys.dedup();
        return Err(LabError::Validation { experiment: experiment.to_string(), keys, problems });
    }
    for s in specs.iter().filter(|s| applies(s)) {
        if let (Default::Derived(f), None) = (&s.default, out.get(s.key)) {
            let v = f(&out);
            out.insert(s.key.to_string(), v);
        }
    }
    if let (Some(cap), true) = (cap_override, out.contains_key("cap")) {
        out.insert("cap".into(), json!(cap));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_filled() {
        let c = ExperimentConfig::new(ExperimentKind::NflVerify).with("nx", json!(4)).with("ny", json!(2));
        let v = c.validated_with(None).unwrap();
        assert_eq!(v.parameters["cap"], json!(10_000_000u64));
        assert_eq!(v.parameters["k"], json!(4));
        assert_eq!(v.parameters["policies"], json!(["ascending", "descending"]));
        let v = c.validated_with(Some(50)).unwrap();
        assert_eq!(v.parameters["cap"], json!(50));
    }

    #[test]
    fn unknown_and_missing_keys_are_named() {
        let c = ExperimentConfig::new(ExperimentKind::NflVerify).with("nx", json!(4)).with("foo", json!(1));
        let LabError::Validation { keys, .. } = c.validated_with(None).unwrap_err() else { panic!() };
        assert_eq!(keys, vec!["foo".to_string(), "ny".to_string()]);
    }

    #[test]
    fn selector_restricts_keys() {
        let c = ExperimentConfig::new(ExperimentKind::OptRun)
            .with("algo", json!("ga"))
            .with("objective", json!("onemax-8"))
            .with("theta", json!(0.5));
        let LabError::Validation { keys, .. } = c.validated_with(None).unwrap_err() else { panic!() };
        assert_eq!(keys, vec!["theta".to_string()]);
        let ok = ExperimentConfig::new(ExperimentKind::OptRun).with("algo", json!("ga")).with("objective", json!("onemax-8"));
        let v = ok.validated_with(None).unwrap();
        assert_eq!(v.parameters["mutation_rate"], json!(0.05));
        assert!(!v.parameters.contains_key("theta"));
    }

    #[test]
    fn integral_floats_count_as_integers() {
        let c = ExperimentConfig::new(ExperimentKind::NflVerify)
            .with("nx", json!(3))
            .with("ny", json!(3))
            .with("cap", json!(1e7));
        assert_eq!(c.validated_with(None).unwrap().parameters["cap"], json!(10_000_000u64));
        let bad = c.with("nx", json!(2.5));
        assert!(bad.validated_with(None).is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_config("{\n  \"experiment\": \"nfl-verify\",\n  \"seed\": ", "cfg.json").unwrap_err();
        let LabError::Parse { line, .. } = err else { panic!("{err}") };
        assert_eq!(line, 3);
        assert!(parse_config(r#"{"experiment": "nfl-verify", "bogus": 1}"#, "x").is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = ExperimentConfig::new(ExperimentKind::MarkovCheck).with("matrix", json!([[0.5, 0.5], [0.25, 0.75]]));
        assert_eq!(parse_config(&c.to_json(), "x").unwrap(), c);
    }
}
