//! Value lists, `key = value` config files and flag/config resolution.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::error::{config_err, BenchResult};

/// Keys accepted in a config file. Dashes and underscores are interchangeable.
pub const KNOWN_KEYS: &[&str] = &[
    "algo", "d", "m", "s", "trials", "seed", "ensemble", "noise_norm", "noise_fraction", "threshold", "out",
    "format", "threads", "timing", "signal_kind", "p", "level", "mode", "n", "iters", "log_stride", "identity", "curve",
    "mu", "eps", "delta", "tol", "r", "mc_trials",
];

/// Integer list written as `a,b,c`, `start:end` or `start:end:step` (inclusive),
/// or any comma-separated mix of those.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<usize>);

impl FromStr for IntList {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let fields: Vec<&str> = part.split(':').map(str::trim).collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| format!("`{s}` is not a nonnegative integer"));
            match fields.as_slice() {
                [v] => out.push(num(v)?),
                [a, b] | [a, b, _] => {
                    let (a, b) = (num(a)?, num(b)?);
                    let step = if fields.len() == 3 { num(fields[2])? } else { 1 };
                    if step == 0 || b < a {
                        return Err(format!("bad range `{part}`"));
                    }
                    out.extend((a..=b).step_by(step));
                }
                _ => return Err(format!("bad range `{part}`")),
            }
        }
        if out.is_empty() {
            return Err("empty list".into());
        }
        Ok(IntList(out))
    }
}

/// Real list with the same syntax as [`IntList`]; ranges are evaluated as
/// `start + i·step` so the endpoints are hit without drift.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

impl FromStr for FloatList {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let fields: Vec<&str> = part.split(':').map(str::trim).collect();
            let num = |s: &str| match s.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(format!("`{s}` is not a finite number")),
            };
            match fields.as_slice() {
                [v] => out.push(num(v)?),
                [a, b, step] => {
                    let (a, b, step) = (num(a)?, num(b)?, num(step)?);
                    if !(step > 0.0) || b < a {
                        return Err(format!("bad range `{part}`"));
                    }
                    let count = ((b - a) / step + 1e-9).floor() as usize;
                    out.extend((0..=count).map(|i| a + i as f64 * step));
                }
                _ => return Err(format!("bad range `{part}` (use start:end:step)")),
            }
        }
        if out.is_empty() {
            return Err("empty list".into());
        }
        Ok(FloatList(out))
    }
}

fn normalize_key(k: &str) -> String {
    k.trim().replace('-', "_")
}

/// Parses `key = value` lines. `#` starts a comment; blank lines are ignored.
pub fn parse_config(text: &str) -> BenchResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(config_err(format!("line {}: expected `key = value`", no + 1)));
        };
        let key = normalize_key(k);
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(config_err(format!("line {}: unknown key `{}`", no + 1, k.trim())));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

/// Flag values take precedence over config values, which take precedence
/// over defaults.
#[derive(Debug, Default, Clone)]
pub struct Resolver {
    file: BTreeMap<String, String>,
}

impl Resolver {
    pub fn new(file: BTreeMap<String, String>) -> Self {
        Self { file }
    }

    pub fn from_path(path: Option<&Path>) -> BenchResult<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| config_err(format!("cannot read config {}: {e}", p.display())))?;
                Ok(Self::new(parse_config(&text)?))
            }
        }
    }

    pub fn opt<T>(&self, flag: Option<T>, key: &str) -> BenchResult<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|e| config_err(format!("config key `{key}`: {e}"))),
        }
    }

    pub fn get<T>(&self, flag: Option<T>, key: &str, default: T) -> BenchResult<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.opt(flag, key)?.unwrap_or(default))
    }

    /// Boolean switch: on when the flag is set or the config says `true`.
    pub fn switch(&self, flag: bool, key: &str) -> BenchResult<bool> {
        if flag {
            return Ok(true);
        }
        self.get(None, key, false)
    }
}
