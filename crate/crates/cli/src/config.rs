//! Plain-text experiment configs.
//!
//! One `key=value` per line; blank lines and lines starting with `#` are
//! ignored. Every key must be known for the configured `kind`, so a typo
//! is an error instead of a silent default. [`ExperimentConfig::echo`]
//! writes the fully resolved config back in the same format, and parsing
//! that echo reproduces the run.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use ogp_core::algorithms::{rule_info, Depth, RuleSpec};
use ogp_core::experiments::{
    Algorithm, CutAlgorithm, Ensemble, InstanceSpec, ProbeConfig, Sampler, DEFAULT_BINS, DEFAULT_FLIP_ROUNDS,
    SMALL_N,
};
use ogp_core::oracle::EXHAUSTIVE_CAP;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    GreedyRatio,
    Density,
    LocalVsGreedy,
    OverlapProbe,
    OgpScan,
    Locality,
    MaxcutScaling,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::GreedyRatio,
        Kind::Density,
        Kind::LocalVsGreedy,
        Kind::OverlapProbe,
        Kind::OgpScan,
        Kind::Locality,
        Kind::MaxcutScaling,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Kind::GreedyRatio => "greedy-ratio",
            Kind::Density => "density",
            Kind::LocalVsGreedy => "local-vs-greedy",
            Kind::OverlapProbe => "overlap-probe",
            Kind::OgpScan => "ogp-scan",
            Kind::Locality => "locality",
            Kind::MaxcutScaling => "maxcut-scaling",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.id() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Params {
    GreedyRatio {
        n: usize,
        d: usize,
        trials: usize,
    },
    Density {
        n: usize,
        d: usize,
        trials: usize,
        algorithm: Algorithm,
    },
    LocalVsGreedy {
        n: usize,
        d: usize,
        trials: usize,
        max_depth: usize,
        rules: Vec<RuleSpec>,
    },
    OverlapProbe(ProbeConfig),
    OgpScan {
        probe: ProbeConfig,
        thetas: Vec<f64>,
    },
    Locality {
        instance: InstanceSpec,
        rule: RuleSpec,
        depth: usize,
        node: usize,
        trials: usize,
    },
    MaxcutScaling {
        k: usize,
        degrees: Vec<f64>,
        n: usize,
        trials: usize,
        algorithm: CutAlgorithm,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Output directory from the file; the `--out` flag takes precedence.
    pub out: Option<PathBuf>,
    pub params: Params,
}

pub const DEFAULT_THETA_GRID: [f64; 6] = [0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

const KNOWN_KEYS: &[&str] = &[
    "kind", "seed", "out", "n", "d", "k", "trials", "algorithm", "rule", "coeffs", "depth", "rules", "ensemble",
    "theta", "thetas", "sampler", "runs", "pairs", "diagonal", "bins", "node", "degrees", "max_rounds",
];

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

/// Raw `key=value` pairs with usage tracking.
struct Keys {
    kind: &'static str,
    values: BTreeMap<String, (usize, String)>,
    used: Vec<String>,
}

impl Keys {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.used.push(key.to_string());
        self.values.get(key).cloned()
    }

    fn parse<T: std::str::FromStr>(&mut self, key: &str, what: &str) -> Result<Option<T>, CliError> {
        match self.take(key) {
            None => Ok(None),
            Some((line, v)) => v
                .parse()
                .map(Some)
                .map_err(|_| invalid(format!("line {line}: `{key}` must be {what}, got `{v}`"))),
        }
    }

    fn required<T: std::str::FromStr>(&mut self, key: &str, what: &str) -> Result<T, CliError> {
        self.parse(key, what)?
            .ok_or_else(|| invalid(format!("kind `{}` needs `{key}`", self.kind)))
    }

    fn or<T: std::str::FromStr>(&mut self, key: &str, what: &str, default: T) -> Result<T, CliError> {
        Ok(self.parse(key, what)?.unwrap_or(default))
    }

    fn list(&mut self, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        match self.take(key) {
            None => Ok(None),
            Some((line, v)) => parse_list(&v)
                .map(Some)
                .map_err(|e| invalid(format!("line {line}: `{key}`: {e}"))),
        }
    }

    fn finish(self) -> Result<(), CliError> {
        for (key, (line, _)) in &self.values {
            if !self.used.contains(key) {
                return Err(if KNOWN_KEYS.contains(&key.as_str()) {
                    invalid(format!("line {line}: key `{key}` is not used by kind `{}`", self.kind))
                } else {
                    invalid(format!("line {line}: unknown key `{key}`"))
                });
            }
        }
        Ok(())
    }
}

fn parse_list(v: &str) -> Result<Vec<f64>, String> {
    if v.trim().is_empty() {
        return Ok(Vec::new());
    }
    v.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("`{x}` is not a number")))
        .collect()
}

fn parse_bool(v: &str) -> Option<bool> {
    match v {
        "true" | "1" | "yes" => Some(true),
        "false" | "0" | "no" => Some(false),
        _ => None,
    }
}

/// `id` or `id[c1,c2,...]`.
pub fn parse_rule_spec(s: &str) -> Result<RuleSpec, String> {
    let s = s.trim();
    let (id, coeffs) = match s.find('[') {
        Some(i) if s.ends_with(']') => (&s[..i], parse_list(&s[i + 1..s.len() - 1])?),
        Some(_) => return Err(format!("unbalanced brackets in `{s}`")),
        None => (s, default_coeffs(s)?),
    };
    Ok(RuleSpec::new(id, coeffs))
}

fn default_coeffs(id: &str) -> Result<Vec<f64>, String> {
    rule_info(id)
        .map(|r| r.default_coeffs.to_vec())
        .ok_or_else(|| format!("unknown rule `{id}` (see `ogp rules`)"))
}

fn check_rule(spec: &RuleSpec) -> Result<(), CliError> {
    spec.build().map(|_| ()).map_err(|e| invalid(e.to_string()))
}

fn core(e: ogp_core::Error) -> CliError {
    invalid(e.to_string())
}

impl ExperimentConfig {
    pub fn kind(&self) -> Kind {
        match self.params {
            Params::GreedyRatio { .. } => Kind::GreedyRatio,
            Params::Density { .. } => Kind::Density,
            Params::LocalVsGreedy { .. } => Kind::LocalVsGreedy,
            Params::OverlapProbe(_) => Kind::OverlapProbe,
            Params::OgpScan { .. } => Kind::OgpScan,
            Params::Locality { .. } => Kind::Locality,
            Params::MaxcutScaling { .. } => Kind::MaxcutScaling,
        }
    }

    /// Parse and validate a config file's contents.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("line {}: expected key=value, got `{line}`", i + 1)))?;
            let (k, v) = (k.trim().to_string(), v.trim().to_string());
            if let Some((first, _)) = values.insert(k.clone(), (i + 1, v)) {
                return Err(invalid(format!("line {}: duplicate key `{k}` (first on line {first})", i + 1)));
            }
        }
        let (_, kind_id) = values.get("kind").cloned().ok_or_else(|| invalid("missing `kind`"))?;
        let kind = Kind::parse(&kind_id).ok_or_else(|| {
            let known: Vec<&str> = Kind::ALL.iter().map(|k| k.id()).collect();
            invalid(format!("unknown experiment kind `{kind_id}` (known: {})", known.join(", ")))
        })?;
        let mut keys = Keys {
            kind: kind.id(),
            values,
            used: vec!["kind".to_string()],
        };
        let seed = keys.or("seed", "an unsigned 64-bit integer", 0u64)?;
        let out = keys.take("out").map(|(_, v)| PathBuf::from(v));
        let params = match kind {
            Kind::GreedyRatio => Params::GreedyRatio {
                n: keys.required("n", "a node count")?,
                d: keys.required("d", "an integer degree")?,
                trials: keys.or("trials", "a trial count", 20)?,
            },
            Kind::Density => Params::Density {
                n: keys.required("n", "a node count")?,
                d: keys.required("d", "an integer degree")?,
                trials: keys.or("trials", "a trial count", 20)?,
                algorithm: algorithm_keys(&mut keys, "algorithm")?
                    .ok_or_else(|| invalid("`algorithm=exact` is only valid as an overlap-probe sampler"))?,
            },
            Kind::LocalVsGreedy => {
                let rules = match keys.take("rules") {
                    None => RuleSpec::library(),
                    Some((_, v)) if v == "library" => RuleSpec::library(),
                    Some((line, v)) => v
                        .split(';')
                        .map(parse_rule_spec)
                        .collect::<Result<_, _>>()
                        .map_err(|e| invalid(format!("line {line}: `rules`: {e}")))?,
                };
                Params::LocalVsGreedy {
                    n: keys.required("n", "a node count")?,
                    d: keys.required("d", "an integer degree")?,
                    trials: keys.or("trials", "a trial count", 10)?,
                    max_depth: keys.or("depth", "a depth", 3)?,
                    rules,
                }
            }
            Kind::OverlapProbe => {
                let probe = probe_keys(&mut keys, true)?;
                Params::OverlapProbe(probe)
            }
            Kind::OgpScan => {
                let probe = probe_keys(&mut keys, false)?;
                let thetas = keys.list("thetas")?.unwrap_or_else(|| DEFAULT_THETA_GRID.to_vec());
                Params::OgpScan { probe, thetas }
            }
            Kind::Locality => {
                let instance = instance_keys(&mut keys)?;
                let rule_id: String = keys.required("rule", "a rule id")?;
                let coeffs = match keys.list("coeffs")? {
                    Some(c) => c,
                    None => default_coeffs(&rule_id).map_err(invalid)?,
                };
                Params::Locality {
                    instance,
                    rule: RuleSpec::new(rule_id, coeffs),
                    depth: keys.or("depth", "a depth", 1)?,
                    node: keys.or("node", "a node id", 0)?,
                    trials: keys.or("trials", "a trial count", 50)?,
                }
            }
            Kind::MaxcutScaling => {
                let algorithm = match keys.take("algorithm").map(|x| x.1).as_deref() {
                    None | Some("random") => {
                        if keys.take("max_rounds").is_some() {
                            return Err(invalid("`max_rounds` only applies to algorithm=local-flip"));
                        }
                        CutAlgorithm::RandomAssignment
                    }
                    Some("local-flip") => CutAlgorithm::LocalFlip {
                        max_rounds: keys.or("max_rounds", "a round count", DEFAULT_FLIP_ROUNDS)?,
                    },
                    Some(other) => {
                        return Err(invalid(format!("unknown cut algorithm `{other}` (random, local-flip)")))
                    }
                };
                Params::MaxcutScaling {
                    k: keys.required("k", "an arity")?,
                    degrees: keys.list("degrees")?.unwrap_or_else(|| vec![8.0, 16.0, 32.0, 64.0]),
                    n: keys.required("n", "a node count")?,
                    trials: keys.or("trials", "a trial count", 10)?,
                    algorithm,
                }
            }
        };
        keys.finish()?;
        let cfg = ExperimentConfig { seed, out, params };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Every precondition that can be checked before computing anything.
    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |what: &str, x: usize| {
            if x == 0 {
                Err(invalid(format!("`{what}` must be at least 1")))
            } else {
                Ok(())
            }
        };
        match &self.params {
            Params::GreedyRatio { n, d, trials } => {
                positive("trials", *trials)?;
                positive("d", *d)?;
                InstanceSpec::regular(*n, *d).validate().map_err(core)
            }
            Params::Density { n, d, trials, algorithm } => {
                positive("trials", *trials)?;
                positive("d", *d)?;
                algorithm.prepare().map_err(core)?;
                InstanceSpec::regular(*n, *d).validate().map_err(core)
            }
            Params::LocalVsGreedy { n, d, trials, rules, .. } => {
                positive("trials", *trials)?;
                positive("d", *d)?;
                rules.iter().try_for_each(check_rule)?;
                InstanceSpec::regular(*n, *d).validate().map_err(core)
            }
            Params::OverlapProbe(p) => validate_probe(p, &[p.theta]),
            Params::OgpScan { probe, thetas } => {
                if thetas.is_empty() {
                    return Err(invalid("`thetas` is empty"));
                }
                validate_probe(probe, thetas)
            }
            Params::Locality {
                instance,
                rule,
                node,
                trials,
                ..
            } => {
                positive("trials", *trials)?;
                instance.validate().map_err(core)?;
                check_rule(rule)?;
                if *node >= instance.n {
                    return Err(invalid(format!("`node` {node} is not below n = {}", instance.n)));
                }
                Ok(())
            }
            Params::MaxcutScaling {
                k, degrees, n, trials, ..
            } => {
                positive("trials", *trials)?;
                if *k < 2 || k > n {
                    return Err(invalid(format!("arity k = {k} needs 2 <= k <= n = {n}")));
                }
                let mut distinct = degrees.clone();
                distinct.sort_by(f64::total_cmp);
                distinct.dedup();
                if distinct.len() < 2 {
                    return Err(invalid(ogp_core::Error::Fit(distinct.len()).to_string()));
                }
                let max = max_hyper_degree(*n, *k);
                for &d in degrees {
                    if d.is_nan() || d < 0.0 || d > max {
                        return Err(invalid(format!("degree {d} outside [0, C(n-1, k-1)] = [0, {max}]")));
                    }
                }
                Ok(())
            }
        }
    }

    /// Parameter string used in CSV rows and summaries: every resolved key
    /// except `kind`, `seed` and `out`, joined by `;`.
    pub fn params_string(&self) -> String {
        self.pairs()
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Fully resolved config in the input format. Parsing it back yields
    /// the same experiment; the output directory is not echoed.
    pub fn echo(&self) -> String {
        let mut s = format!("kind={}\nseed={}\n", self.kind().id(), self.seed);
        for (k, v) in self.pairs() {
            let _ = writeln!(s, "{k}={v}");
        }
        s
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut out: Vec<(&'static str, String)> = Vec::new();
        match &self.params {
            Params::GreedyRatio { n, d, trials } => {
                out.push(("n", n.to_string()));
                out.push(("d", d.to_string()));
                out.push(("trials", trials.to_string()));
            }
            Params::Density { n, d, trials, algorithm } => {
                out.push(("n", n.to_string()));
                out.push(("d", d.to_string()));
                out.push(("trials", trials.to_string()));
                push_algorithm(&mut out, "algorithm", Some(algorithm));
            }
            Params::LocalVsGreedy {
                n,
                d,
                trials,
                max_depth,
                rules,
            } => {
                out.push(("n", n.to_string()));
                out.push(("d", d.to_string()));
                out.push(("trials", trials.to_string()));
                out.push(("depth", max_depth.to_string()));
                let rules: Vec<String> = rules.iter().map(rule_with_brackets).collect();
                out.push(("rules", rules.join(";")));
            }
            Params::OverlapProbe(p) => {
                push_probe(&mut out, p);
                out.push(("theta", p.theta.to_string()));
            }
            Params::OgpScan { probe, thetas } => {
                push_probe(&mut out, probe);
                out.push(("thetas", join(thetas)));
            }
            Params::Locality {
                instance,
                rule,
                depth,
                node,
                trials,
            } => {
                push_instance(&mut out, instance);
                out.push(("rule", rule.id.clone()));
                out.push(("coeffs", join(&rule.coeffs)));
                out.push(("depth", depth.to_string()));
                out.push(("node", node.to_string()));
                out.push(("trials", trials.to_string()));
            }
            Params::MaxcutScaling {
                k,
                degrees,
                n,
                trials,
                algorithm,
            } => {
                out.push(("k", k.to_string()));
                out.push(("degrees", join(degrees)));
                out.push(("n", n.to_string()));
                out.push(("trials", trials.to_string()));
                out.push(("algorithm", algorithm.id().to_string()));
                if let CutAlgorithm::LocalFlip { max_rounds } = algorithm {
                    out.push(("max_rounds", max_rounds.to_string()));
                }
            }
        }
        out
    }
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn rule_with_brackets(spec: &RuleSpec) -> String {
    format!("{}[{}]", spec.id, join(&spec.coeffs))
}

fn max_hyper_degree(n: usize, k: usize) -> f64 {
    // C(n-1, k-1) in floating point; only used as a range bound
    (0..k - 1).fold(1.0, |acc, i| acc * (n - 1 - i) as f64 / (i + 1) as f64)
}

/// `None` means the exact sampler.
fn algorithm_keys(keys: &mut Keys, key: &str) -> Result<Option<Algorithm>, CliError> {
    let id: String = keys.required(key, "an algorithm id")?;
    match id.as_str() {
        "exact" => Ok(None),
        "rule" => {
            let rule_id: String = keys.required("rule", "a rule id")?;
            let coeffs = match keys.list("coeffs")? {
                Some(c) => c,
                None => default_coeffs(&rule_id).map_err(invalid)?,
            };
            let depth = keys.or("depth", "a depth", 1)?;
            Ok(Some(Algorithm::Rule(RuleSpec::new(rule_id, coeffs), Depth(depth))))
        }
        other => Algorithm::parse(other).map(Some).map_err(|e| {
            invalid(format!("{e} (greedy, degree-greedy, random-priority, rule)"))
        }),
    }
}

fn push_algorithm(out: &mut Vec<(&'static str, String)>, key: &'static str, alg: Option<&Algorithm>) {
    match alg {
        None => out.push((key, "exact".into())),
        Some(Algorithm::Rule(spec, depth)) => {
            out.push((key, "rule".into()));
            out.push(("rule", spec.id.clone()));
            out.push(("coeffs", join(&spec.coeffs)));
            out.push(("depth", depth.0.to_string()));
        }
        Some(other) => out.push((key, other.to_string())),
    }
}

fn instance_keys(keys: &mut Keys) -> Result<InstanceSpec, CliError> {
    let ensemble = match keys.take("ensemble") {
        None => Ensemble::Regular,
        Some((line, v)) => Ensemble::parse(&v).map_err(|e| invalid(format!("line {line}: {e} (regular, er)")))?,
    };
    Ok(InstanceSpec {
        ensemble,
        n: keys.required("n", "a node count")?,
        d: keys.required("d", "a degree")?,
    })
}

fn push_instance(out: &mut Vec<(&'static str, String)>, instance: &InstanceSpec) {
    out.push(("ensemble", instance.ensemble.id().to_string()));
    out.push(("n", instance.n.to_string()));
    out.push(("d", instance.d.to_string()));
}

fn probe_keys(keys: &mut Keys, single_theta: bool) -> Result<ProbeConfig, CliError> {
    let instance = instance_keys(keys)?;
    let theta = if single_theta { keys.required("theta", "a number in (0, 1]")? } else { 1.0 };
    let sampler = match algorithm_keys(keys, "sampler")? {
        None => Sampler::Exact,
        Some(a) => Sampler::Algorithm(a),
    };
    let diagonal = match keys.take("diagonal") {
        None => true,
        Some((line, v)) => {
            parse_bool(&v).ok_or_else(|| invalid(format!("line {line}: `diagonal` must be true or false")))?
        }
    };
    let runs = if sampler == Sampler::Exact {
        0
    } else {
        keys.or("runs", "a run count", 200)?
    };
    Ok(ProbeConfig {
        instance,
        theta,
        sampler,
        runs,
        pairs: keys.or("pairs", "a pair count", 100_000)?,
        include_diagonal: diagonal,
        bins: if instance.n <= SMALL_N {
            keys.take("bins");
            DEFAULT_BINS
        } else {
            keys.or("bins", "a bin count", DEFAULT_BINS)?
        },
    })
}

fn push_probe(out: &mut Vec<(&'static str, String)>, p: &ProbeConfig) {
    push_instance(out, &p.instance);
    match &p.sampler {
        Sampler::Exact => push_algorithm(out, "sampler", None),
        Sampler::Algorithm(a) => {
            push_algorithm(out, "sampler", Some(a));
            out.push(("runs", p.runs.to_string()));
        }
    }
    out.push(("pairs", p.pairs.to_string()));
    out.push(("diagonal", p.include_diagonal.to_string()));
    if p.instance.n > SMALL_N {
        out.push(("bins", p.bins.to_string()));
    }
}

fn validate_probe(p: &ProbeConfig, thetas: &[f64]) -> Result<(), CliError> {
    p.instance.validate().map_err(core)?;
    for &t in thetas {
        if !(t > 0.0 && t <= 1.0) {
            return Err(invalid(format!("theta {t} outside (0, 1]")));
        }
    }
    if p.bins == 0 {
        return Err(invalid("`bins` must be at least 1"));
    }
    match &p.sampler {
        Sampler::Exact => {
            if p.instance.n > SMALL_N.min(EXHAUSTIVE_CAP) {
                return Err(invalid(format!(
                    "sampler=exact enumerates every θ-optimal set and needs n <= {SMALL_N}, got {}",
                    p.instance.n
                )));
            }
        }
        Sampler::Algorithm(a) => {
            a.prepare().map_err(core)?;
            if p.runs == 0 {
                return Err(invalid("`runs` must be at least 1"));
            }
        }
    }
    Ok(())
}
