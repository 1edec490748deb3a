//! Line-oriented run configuration.
//!
//! ```text
//! # comments and blank lines are ignored
//! model = schelling
//! seed = 7
//! ticks = 500
//! schelling.vacancy_fraction = 0.1
//! ```
//!
//! `model` and `seed` are required. Every other key is optional and takes
//! the default listed by [`RunConfig::to_text`] on a minimal config. Unknown
//! keys, duplicates, keys of another model's section and values that fail to
//! parse or fall out of range are rejected with an error naming the key.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ant::AntParams;
use crate::engine::Boundary;
use crate::error::{Error, Result};
use crate::impact::{Aggregation, ImpactParams};
use crate::schelling::{Relocation, RuleVariant, SchellingParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Ant,
    Schelling,
    Impact,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Ant => "ant",
            ModelKind::Schelling => "schelling",
            ModelKind::Impact => "impact",
        }
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ant" => Ok(ModelKind::Ant),
            "schelling" => Ok(ModelKind::Schelling),
            "impact" => Ok(ModelKind::Impact),
            other => Err(format!(
                "expected `ant`, `schelling` or `impact`, got `{other}`"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModelConfig {
    Ant(AntParams),
    Schelling(SchellingParams),
    Impact(ImpactParams),
}

impl ModelConfig {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelConfig::Ant(_) => ModelKind::Ant,
            ModelConfig::Schelling(_) => ModelKind::Schelling,
            ModelConfig::Impact(_) => ModelKind::Impact,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModelConfig::Ant(p) => p.validate(),
            ModelConfig::Schelling(p) => p.validate(),
            ModelConfig::Impact(p) => p.validate(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    /// Ant ticks, or Schelling / impact sweeps.
    pub ticks: u64,
    pub snapshot_every: u64,
    /// Schelling and impact runs end at the first sweep that changes nothing.
    pub stop_when_settled: bool,
    pub output_dir: PathBuf,
    pub model: ModelConfig,
}

pub const DEFAULT_OUTPUT_DIR: &str = "output";

fn default_ticks(kind: ModelKind) -> u64 {
    match kind {
        ModelKind::Ant => 200_000,
        ModelKind::Schelling | ModelKind::Impact => 500,
    }
}

fn default_snapshot_every(kind: ModelKind) -> u64 {
    match kind {
        ModelKind::Ant => 10_000,
        ModelKind::Schelling | ModelKind::Impact => 1,
    }
}

impl RunConfig {
    /// A config with every optional key at its default.
    pub fn with_defaults(kind: ModelKind, seed: u64) -> Self {
        let model = match kind {
            ModelKind::Ant => ModelConfig::Ant(AntParams::default()),
            ModelKind::Schelling => ModelConfig::Schelling(SchellingParams::default()),
            ModelKind::Impact => ModelConfig::Impact(ImpactParams::default()),
        };
        RunConfig {
            seed,
            ticks: default_ticks(kind),
            snapshot_every: default_snapshot_every(kind),
            stop_when_settled: true,
            output_dir: PathBuf::from(DEFAULT_OUTPUT_DIR),
            model,
        }
    }

    pub fn kind(&self) -> ModelKind {
        self.model.kind()
    }

    pub fn validate(&self) -> Result<()> {
        if self.snapshot_every == 0 {
            return Err(Error::config("snapshot_every", "must be at least 1"));
        }
        self.model.validate()
    }

    /// Every key with its value, in canonical order.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = Vec::new();
        let mut put = |k: &str, v: &dyn Display| out.push((k.to_string(), v.to_string()));
        put("model", &self.kind().as_str());
        put("seed", &self.seed);
        put("ticks", &self.ticks);
        put("snapshot_every", &self.snapshot_every);
        put("stop_when_settled", &self.stop_when_settled);
        put("output_dir", &self.output_dir.display());
        match &self.model {
            ModelConfig::Ant(p) => {
                put("ant.width", &p.width);
                put("ant.height", &p.height);
                put("ant.boundary", &p.boundary.as_str());
                put("ant.n_ants", &p.n_ants);
                put("ant.item_types", &p.item_types);
                put("ant.items_per_type", &p.items_per_type);
                put("ant.k1", &p.k1);
                put("ant.k2", &p.k2);
                put("ant.memory_length", &p.memory_length);
                put("ant.entropy_block", &p.entropy_block);
            }
            ModelConfig::Schelling(p) => {
                put("schelling.width", &p.width);
                put("schelling.height", &p.height);
                put("schelling.boundary", &p.boundary.as_str());
                put("schelling.vacancy_fraction", &p.vacancy_fraction);
                match p.rule {
                    RuleVariant::ThresholdTable => put("schelling.rule", &"threshold-table"),
                    RuleVariant::Fraction(pref) => {
                        put("schelling.rule", &"fraction");
                        put("schelling.preference", &pref);
                    }
                }
                put(
                    "schelling.relocation",
                    &match p.relocation {
                        Relocation::Nearest => "nearest",
                        Relocation::Random => "random",
                    },
                );
                put("schelling.perturb_fraction", &p.perturb_fraction);
            }
            ModelConfig::Impact(p) => {
                put("impact.width", &p.width);
                put("impact.height", &p.height);
                put("impact.distance_exponent", &p.distance_exponent);
                put("impact.aggregation", &p.aggregation.as_str());
                put("impact.p_max", &p.p_max);
                put("impact.s_max", &p.s_max);
                put("impact.minority_fraction", &p.minority_fraction);
            }
        }
        out
    }

    /// Canonical text form; parses back to an identical config.
    pub fn to_text(&self) -> String {
        self.to_pairs()
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }
}

/// Raw `key = value` pairs, checked for syntax and duplicates only.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut pairs = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::config(
                format!("line {}", n + 1),
                format!("expected `key = value`, got `{line}`"),
            ));
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() {
            return Err(Error::config(format!("line {}", n + 1), "missing key"));
        }
        if pairs.insert(key.to_string(), value.to_string()).is_some() {
            return Err(Error::config(key, "duplicate key"));
        }
    }
    Ok(pairs)
}

struct Fields(BTreeMap<String, String>);

impl Fields {
    fn take<T>(&mut self, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.0.remove(key) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|e| Error::config(key, format!("cannot parse `{v}`: {e}"))),
        }
    }

    fn require<T>(&mut self, key: &str) -> Result<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        if !self.0.contains_key(key) {
            return Err(Error::config(key, "required key is missing"));
        }
        let v = self.0.remove(key).unwrap();
        v.parse()
            .map_err(|e| Error::config(key, format!("cannot parse `{v}`: {e}")))
    }

    fn reject_leftovers(self, kind: ModelKind) -> Result<()> {
        if let Some(key) = self.0.keys().next() {
            let message = match key.split_once('.') {
                Some((section, _)) if section.parse::<ModelKind>().is_ok() => {
                    format!(
                        "section `{section}` does not match model `{}`",
                        kind.as_str()
                    )
                }
                _ => "unknown key".to_string(),
            };
            return Err(Error::config(key.clone(), message));
        }
        Ok(())
    }
}

/// Strict parse of a run config; see the module docs.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    from_pairs(parse_pairs(text)?)
}

pub fn from_pairs(pairs: BTreeMap<String, String>) -> Result<RunConfig> {
    let mut f = Fields(pairs);
    let kind: ModelKind = f.require("model")?;
    let seed: u64 = f.require("seed")?;
    let d = RunConfig::with_defaults(kind, seed);
    let ticks = f.take("ticks", d.ticks)?;
    let snapshot_every = f.take("snapshot_every", d.snapshot_every)?;
    let stop_when_settled = f.take("stop_when_settled", d.stop_when_settled)?;
    let output_dir: String = f.take("output_dir", DEFAULT_OUTPUT_DIR.to_string())?;

    let model = match d.model {
        ModelConfig::Ant(p) => ModelConfig::Ant(AntParams {
            width: f.take("ant.width", p.width)?,
            height: f.take("ant.height", p.height)?,
            boundary: f.take::<Boundary>("ant.boundary", p.boundary)?,
            n_ants: f.take("ant.n_ants", p.n_ants)?,
            item_types: f.take("ant.item_types", p.item_types)?,
            items_per_type: f.take("ant.items_per_type", p.items_per_type)?,
            k1: f.take("ant.k1", p.k1)?,
            k2: f.take("ant.k2", p.k2)?,
            memory_length: f.take("ant.memory_length", p.memory_length)?,
            entropy_block: f.take("ant.entropy_block", p.entropy_block)?,
        }),
        ModelConfig::Schelling(p) => {
            let rule: String = f.take("schelling.rule", "threshold-table".to_string())?;
            let rule = match rule.as_str() {
                "threshold-table" => {
                    if f.0.contains_key("schelling.preference") {
                        return Err(Error::config(
                            "schelling.preference",
                            "only valid with `schelling.rule = fraction`",
                        ));
                    }
                    RuleVariant::ThresholdTable
                }
                "fraction" => RuleVariant::Fraction(f.take("schelling.preference", 0.5)?),
                other => {
                    return Err(Error::config(
                        "schelling.rule",
                        format!("expected `threshold-table` or `fraction`, got `{other}`"),
                    ))
                }
            };
            let relocation: String = f.take("schelling.relocation", "nearest".to_string())?;
            let relocation = match relocation.as_str() {
                "nearest" => Relocation::Nearest,
                "random" => Relocation::Random,
                other => {
                    return Err(Error::config(
                        "schelling.relocation",
                        format!("expected `nearest` or `random`, got `{other}`"),
                    ))
                }
            };
            ModelConfig::Schelling(SchellingParams {
                width: f.take("schelling.width", p.width)?,
                height: f.take("schelling.height", p.height)?,
                boundary: f.take::<Boundary>("schelling.boundary", p.boundary)?,
                vacancy_fraction: f.take("schelling.vacancy_fraction", p.vacancy_fraction)?,
                rule,
                relocation,
                perturb_fraction: f.take("schelling.perturb_fraction", p.perturb_fraction)?,
            })
        }
        ModelConfig::Impact(p) => ModelConfig::Impact(ImpactParams {
            width: f.take("impact.width", p.width)?,
            height: f.take("impact.height", p.height)?,
            distance_exponent: f.take("impact.distance_exponent", p.distance_exponent)?,
            aggregation: f.take::<Aggregation>("impact.aggregation", p.aggregation)?,
            p_max: f.take("impact.p_max", p.p_max)?,
            s_max: f.take("impact.s_max", p.s_max)?,
            minority_fraction: f.take("impact.minority_fraction", p.minority_fraction)?,
        }),
    };
    f.reject_leftovers(kind)?;

    let config = RunConfig {
        seed,
        ticks,
        snapshot_every,
        stop_when_settled,
        output_dir: PathBuf::from(output_dir),
        model,
    };
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn key_of(e: Error) -> String {
        match e {
            Error::Config { key, .. } => key,
            other => panic!("not a config error: {other}"),
        }
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config("model = schelling\nseed = 3\n").unwrap();
        assert_eq!(c, RunConfig::with_defaults(ModelKind::Schelling, 3));
        let text = c.to_text();
        assert!(text.contains("schelling.vacancy_fraction = 0.1\n"));
        assert!(text.contains("ticks = 500\n"));
    }

    #[test]
    fn comments_and_blank_lines() {
        let c = parse_config("# header\n\n  model = ant  \nseed=9\n  # trailing\n").unwrap();
        assert_eq!(c.kind(), ModelKind::Ant);
        assert_eq!(c.seed, 9);
    }

    #[test]
    fn unknown_key_is_named() {
        let e = parse_config("model = schelling\nseed = 1\ncolour = red\n").unwrap_err();
        assert_eq!(key_of(e), "colour");
        let e = parse_config("model = schelling\nseed = 1\nschelling.colour = red\n").unwrap_err();
        assert_eq!(key_of(e), "schelling.colour");
    }

    #[test]
    fn foreign_section_rejected() {
        let e = parse_config("model = schelling\nseed = 1\nant.k1 = 0.2\n").unwrap_err();
        assert!(e.to_string().contains("does not match model"));
        assert_eq!(key_of(e), "ant.k1");
    }

    #[test]
    fn type_and_range_errors_name_the_key() {
        let e = parse_config("model = ant\nseed = 1\nant.n_ants = many\n").unwrap_err();
        assert_eq!(key_of(e), "ant.n_ants");
        let e = parse_config("model = ant\nseed = -1\n").unwrap_err();
        assert_eq!(key_of(e), "seed");
        let e = parse_config("model = ant\nseed = 1\nant.k1 = 0\n").unwrap_err();
        assert_eq!(key_of(e), "ant.k1");
        let e = parse_config("model = schelling\nseed = 1\nschelling.vacancy_fraction = 1.5\n")
            .unwrap_err();
        assert_eq!(key_of(e), "schelling.vacancy_fraction");
        let e = parse_config("model = impact\nseed = 1\nsnapshot_every = 0\n").unwrap_err();
        assert_eq!(key_of(e), "snapshot_every");
    }

    #[test]
    fn required_and_duplicate_keys() {
        assert_eq!(key_of(parse_config("seed = 1\n").unwrap_err()), "model");
        assert_eq!(key_of(parse_config("model = ant\n").unwrap_err()), "seed");
        assert_eq!(
            key_of(parse_config("model = ant\nseed = 1\nseed = 2\n").unwrap_err()),
            "seed"
        );
        assert!(parse_config("model = ant\nseed 1\n").is_err());
    }

    #[test]
    fn preference_requires_fraction_rule() {
        let e =
            parse_config("model = schelling\nseed = 1\nschelling.preference = 0.4\n").unwrap_err();
        assert_eq!(key_of(e), "schelling.preference");
        let c = parse_config(
            "model = schelling\nseed = 1\nschelling.rule = fraction\nschelling.preference = 0.4\n",
        )
        .unwrap();
        match c.model {
            ModelConfig::Schelling(p) => assert_eq!(p.rule, RuleVariant::Fraction(0.4)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn every_model_round_trips() {
        for kind in [ModelKind::Ant, ModelKind::Schelling, ModelKind::Impact] {
            let c = RunConfig::with_defaults(kind, 17);
            assert_eq!(parse_config(&c.to_text()).unwrap(), c);
        }
    }

    proptest! {
        #[test]
        fn round_trip_random_values(
            seed in any::<u64>(),
            k1 in 1e-6f64..10.0,
            k2 in 1e-6f64..10.0,
            pref in 0.0f64..=1.0,
            vac in 0.0f64..0.99,
            exp in 0.0f64..8.0,
            bounded in any::<bool>(),
        ) {
            let boundary = if bounded { "bounded" } else { "toroidal" };
            let texts = [
                format!("model = ant\nseed = {seed}\nant.k1 = {k1}\nant.k2 = {k2}\nant.boundary = {boundary}\n"),
                format!("model = schelling\nseed = {seed}\nschelling.rule = fraction\nschelling.preference = {pref}\nschelling.vacancy_fraction = {vac}\n"),
                format!("model = impact\nseed = {seed}\nimpact.distance_exponent = {exp}\nimpact.aggregation = root-sum-square\n"),
            ];
            for t in texts {
                let c = parse_config(&t).unwrap();
                let again = parse_config(&c.to_text()).unwrap();
                prop_assert_eq!(again, c);
            }
        }
    }
}
