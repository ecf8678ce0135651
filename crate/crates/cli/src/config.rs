//! Run configurations: a validated command name plus a key–value parameter
//! map, with a plain-text serialization that round-trips exactly.
//!
//! A configuration captures everything that determines a run's outputs
//! (including defaulted values and the seed), so a saved file re-executes
//! the identical run later. Parsing reports one diagnostic per offense,
//! always naming the offending key and its constraint.

use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Schema version stamped into every serialized configuration and every
/// emitted CSV artifact.
pub const FORMAT_VERSION: u32 = 1;

/// Commands the front end understands, in help order.
pub const COMMANDS: [&str; 9] = [
    "window", "spectrum", "qpe", "qsvt", "phases", "sweep", "scaling", "cost", "report",
];

/// Parameter keys accepted by each command. Keys absent from a command's
/// row are rejected at parse time with a diagnostic naming the key.
const KNOWN_KEYS: [(&str, &[&str]); 9] = [
    ("window", &["method", "alpha", "m", "p", "output"]),
    ("spectrum", &["method", "alpha", "m", "p", "pad", "output"]),
    ("qpe", &["method", "alpha", "m", "p", "phi", "emulate", "output"]),
    ("qsvt", &["m", "d", "phi", "seed", "output"]),
    ("phases", &["d", "delta", "kappa", "seed", "output"]),
    (
        "sweep",
        &["method", "alpha", "m", "p", "d", "seed", "grid", "points", "output"],
    ),
    ("scaling", &["method", "m", "p", "points", "output"]),
    ("cost", &["m", "output"]),
    (
        "report",
        &["kind", "method", "alpha", "m", "p", "d", "seed", "phi", "points", "output"],
    ),
];

/// A validated command invocation: every parameter key is known to the
/// command, though values are only checked when the command runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// One of [`COMMANDS`].
    pub command: String,
    /// Effective parameters, including defaulted values, keyed by flag name.
    pub parameters: BTreeMap<String, String>,
    /// Schema version of the serialized form.
    pub format_version: u32,
}

fn known_keys(command: &str) -> Option<&'static [&'static str]> {
    KNOWN_KEYS
        .iter()
        .find(|(name, _)| *name == command)
        .map(|(_, keys)| *keys)
}

impl RunConfig {
    /// Builds a config from a command name and `(key, value)` pairs,
    /// rejecting unknown commands and keys.
    pub fn new<I, K, V>(command: &str, params: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<String>,
    {
        let keys = known_keys(command).ok_or_else(|| {
            format!(
                "unknown command `{command}`; expected one of: {}",
                COMMANDS.join(", ")
            )
        })?;
        let mut parameters = BTreeMap::new();
        for (k, v) in params {
            let k = k.into();
            if !keys.contains(&k.as_str()) {
                return Err(format!(
                    "unknown key `{k}` for command `{command}`; expected one of: {}",
                    keys.join(", ")
                ));
            }
            if parameters.insert(k.clone(), v.into()).is_some() {
                return Err(format!("duplicate key `{k}`"));
            }
        }
        Ok(RunConfig {
            command: command.to_string(),
            parameters,
            format_version: FORMAT_VERSION,
        })
    }

    /// Serializes to the plain-text form accepted by [`parse_config`].
    /// Output is deterministic: version, command, then keys sorted.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "format_version = {}", self.format_version);
        let _ = writeln!(out, "command = {}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.parameters.get(key).map(|s| s.as_str())
    }

    /// Required integer in `lo..=hi`.
    pub fn require_usize(&self, key: &str, lo: usize, hi: usize) -> Result<usize, String> {
        let raw = self
            .get(key)
            .ok_or_else(|| format!("missing required parameter --{key}"))?;
        parse_usize(key, raw, lo, hi)
    }

    /// Optional integer in `lo..=hi`, defaulting when absent.
    pub fn usize_or(&self, key: &str, default: usize, lo: usize, hi: usize) -> Result<usize, String> {
        match self.get(key) {
            None => Ok(default),
            Some(raw) => parse_usize(key, raw, lo, hi),
        }
    }

    /// Optional unsigned 64-bit integer, defaulting when absent.
    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64, String> {
        match self.get(key) {
            None => Ok(default),
            Some(raw) => raw
                .parse::<u64>()
                .map_err(|_| format!("--{key} must be a non-negative integer: got `{raw}`")),
        }
    }

    /// Required finite float.
    pub fn require_f64(&self, key: &str) -> Result<f64, String> {
        let raw = self
            .get(key)
            .ok_or_else(|| format!("missing required parameter --{key}"))?;
        parse_f64(key, raw)
    }

    /// Optional finite float, defaulting when absent.
    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, String> {
        match self.get(key) {
            None => Ok(default),
            Some(raw) => parse_f64(key, raw),
        }
    }

    /// Optional boolean (`true`/`false`), defaulting when absent.
    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool, String> {
        match self.get(key) {
            None => Ok(default),
            Some("true") => Ok(true),
            Some("false") => Ok(false),
            Some(raw) => Err(format!("--{key} must be `true` or `false`: got `{raw}`")),
        }
    }

    /// Optional string with a default.
    pub fn str_or(&self, key: &str, default: &str) -> String {
        self.get(key).unwrap_or(default).to_string()
    }

    /// Required eigenphase in `[0, 1)`.
    pub fn require_phi(&self, key: &str) -> Result<f64, String> {
        let phi = self.require_f64(key)?;
        check_phi(key, phi)?;
        Ok(phi)
    }

    /// Optional eigenphase in `[0, 1)`, defaulting when absent.
    pub fn phi_or(&self, key: &str, default: f64) -> Result<f64, String> {
        let phi = self.f64_or(key, default)?;
        check_phi(key, phi)?;
        Ok(phi)
    }
}

fn check_phi(key: &str, phi: f64) -> Result<(), String> {
    if !(0.0..1.0).contains(&phi) {
        return Err(format!("--{key} must lie in [0, 1): got {phi}"));
    }
    Ok(())
}

fn parse_usize(key: &str, raw: &str, lo: usize, hi: usize) -> Result<usize, String> {
    let v: usize = raw
        .parse()
        .map_err(|_| format!("--{key} must be an integer in {lo}..={hi}: got `{raw}`"))?;
    if v < lo || v > hi {
        return Err(format!("--{key} must lie in {lo}..={hi}: got {v}"));
    }
    Ok(v)
}

fn parse_f64(key: &str, raw: &str) -> Result<f64, String> {
    let v: f64 = raw
        .parse()
        .map_err(|_| format!("--{key} must be a number: got `{raw}`"))?;
    if !v.is_finite() {
        return Err(format!("--{key} must be finite: got `{raw}`"));
    }
    Ok(v)
}

/// Parses the plain-text configuration format written by
/// [`RunConfig::serialize`]: one `key = value` pair per line, `#` comments
/// and blank lines ignored. `format_version` and `command` are required.
pub fn parse_config(text: &str) -> Result<RunConfig, String> {
    let mut version: Option<u32> = None;
    let mut command: Option<String> = None;
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`, got `{line}`", idx + 1))?;
        let key = key.trim();
        let value = value.trim();
        match key {
            "format_version" => {
                let v: u32 = value
                    .parse()
                    .map_err(|_| format!("format_version must be an integer: got `{value}`"))?;
                if v != FORMAT_VERSION {
                    return Err(format!(
                        "unsupported format_version {v}; this build reads version {FORMAT_VERSION}"
                    ));
                }
                version = Some(v);
            }
            "command" => command = Some(value.to_string()),
            _ => pairs.push((key.to_string(), value.to_string())),
        }
    }
    let version = version.ok_or("missing required parameter format_version")?;
    let command = command.ok_or("missing required parameter command")?;
    let mut config = RunConfig::new(&command, pairs)?;
    config.format_version = version;
    Ok(config)
}
