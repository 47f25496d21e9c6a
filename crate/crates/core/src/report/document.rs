use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use crate::Result;

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl Default for ToolInfo {
    fn default() -> Self {
        Self { name: "gstopo", version: env!("CARGO_PKG_VERSION") }
    }
}

/// The JSON document every command emits. Everything except `timing` is a
/// deterministic function of the command and its configuration.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub command: String,
    pub config: Value,
    pub passed: bool,
    pub results: Value,
    /// Wall-clock seconds per stage.
    pub timing: BTreeMap<String, f64>,
}

impl ReportDocument {
    pub fn new(command: &str, config: impl Serialize) -> Result<Self> {
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            tool: ToolInfo::default(),
            command: command.to_string(),
            config: serde_json::to_value(config)?,
            passed: true,
            results: Value::Null,
            timing: BTreeMap::new(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The document with `timing` removed, for determinism comparisons.
    pub fn without_timing(&self) -> Result<Value> {
        let mut v = serde_json::to_value(self)?;
        if let Value::Object(map) = &mut v {
            map.remove("timing");
        }
        Ok(v)
    }
}

/// Runs `f`, recording its wall-clock time under `key`.
pub(crate) fn timed<T>(timing: &mut BTreeMap<String, f64>, key: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timing.insert(key.to_string(), start.elapsed().as_secs_f64());
    out
}
