//! Flat `key = value` scenario files.
//!
//! ```text
//! # baseline
//! v1 = 20
//! v2 = 15
//! gamma = 0.5
//! d1 = 100
//! d2 = 10
//! f.family = sqrt
//! ```
//!
//! `satexp` additionally needs `f.a`, `f.b` and `f.c`; the other families
//! reject them.

use std::collections::BTreeMap;
use std::path::Path;

use flgame_core::{
    EffectivenessSpec, GameError, InformationEndowment, MarketPrimitives, ScenarioConfig,
};
use thiserror::Error;

const KEYS: [&str; 9] = [
    "v1", "v2", "gamma", "d1", "d2", "f.family", "f.a", "f.b", "f.c",
];

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`, found {text:?}")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{key}` already set on line {first}")]
    DuplicateKey {
        line: usize,
        key: String,
        first: usize,
    },
    #[error("line {line}: `{key}` is not a number: {value:?}")]
    BadNumber {
        line: usize,
        key: String,
        value: String,
    },
    #[error(
        "line {line}: unknown effectiveness family {value:?} (expected sqrt, log1p or satexp)"
    )]
    UnknownFamily { line: usize, value: String },
    #[error("line {line}: `{key}` only applies to the satexp family")]
    UnusedParameter { line: usize, key: String },
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("invalid scenario: {0}")]
    Invalid(#[from] GameError),
}

struct Entry {
    line: usize,
    value: String,
}

pub fn parse_scenario(text: &str) -> Result<ScenarioConfig, ParseError> {
    let mut entries: BTreeMap<&'static str, Entry> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ParseError::Syntax {
                line,
                text: content.to_string(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if value.is_empty() {
            return Err(ParseError::Syntax {
                line,
                text: content.to_string(),
            });
        }
        let Some(&known) = KEYS.iter().find(|k| **k == key) else {
            return Err(ParseError::UnknownKey {
                line,
                key: key.to_string(),
            });
        };
        if let Some(first) = entries.get(known) {
            return Err(ParseError::DuplicateKey {
                line,
                key: key.to_string(),
                first: first.line,
            });
        }
        entries.insert(
            known,
            Entry {
                line,
                value: value.to_string(),
            },
        );
    }

    // malformed values are reported in file order before any missing key
    let mut by_line: Vec<(&&'static str, &Entry)> = entries.iter().collect();
    by_line.sort_by_key(|(_, e)| e.line);
    let mut values: BTreeMap<&'static str, f64> = BTreeMap::new();
    for (&key, entry) in by_line.into_iter().filter(|(k, _)| **k != "f.family") {
        let value = entry
            .value
            .parse::<f64>()
            .map_err(|_| ParseError::BadNumber {
                line: entry.line,
                key: key.to_string(),
                value: entry.value.clone(),
            })?;
        values.insert(key, value);
    }
    let number = |key: &'static str| values.get(key).copied().ok_or(ParseError::MissingKey(key));

    let family = entries
        .get("f.family")
        .ok_or(ParseError::MissingKey("f.family"))?;
    let effectiveness = match family.value.as_str() {
        "satexp" => EffectivenessSpec::SaturatingExp {
            a: number("f.a")?,
            b: number("f.b")?,
            c: number("f.c")?,
        },
        other => {
            let spec = match other {
                "sqrt" => EffectivenessSpec::SquareRoot,
                "log1p" => EffectivenessSpec::LogPlusOne,
                _ => {
                    return Err(ParseError::UnknownFamily {
                        line: family.line,
                        value: other.to_string(),
                    })
                }
            };
            if let Some((key, entry)) = ["f.a", "f.b", "f.c"]
                .iter()
                .find_map(|k| entries.get(k).map(|e| (k, e)))
            {
                return Err(ParseError::UnusedParameter {
                    line: entry.line,
                    key: key.to_string(),
                });
            }
            spec
        }
    };

    let market = MarketPrimitives::new(number("v1")?, number("v2")?, number("gamma")?)?;
    let endowment = InformationEndowment::new(number("d1")?, number("d2")?)?;
    Ok(ScenarioConfig::new(market, endowment, effectiveness)?)
}

pub fn read_scenario(path: &Path) -> Result<ScenarioConfig, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenario(&text)
}

/// Renders a scenario back into the file format; `parse_scenario` inverts it.
pub fn render_scenario(scenario: &ScenarioConfig) -> String {
    let m = scenario.market();
    let e = scenario.endowment();
    let mut out = format!(
        "v1 = {}\nv2 = {}\ngamma = {}\nd1 = {}\nd2 = {}\nf.family = {}\n",
        m.v1(),
        m.v2(),
        m.gamma(),
        e.d1(),
        e.d2(),
        scenario.effectiveness().name()
    );
    if let EffectivenessSpec::SaturatingExp { a, b, c } = scenario.effectiveness() {
        out.push_str(&format!("f.a = {a}\nf.b = {b}\nf.c = {c}\n"));
    }
    out
}
