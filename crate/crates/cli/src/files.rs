//! Instance and report files.

use std::collections::BTreeMap;
use std::path::Path;

use corona_core::ring::GridSpec;
use corona_core::solve::{Certificate, HypothesisReport, Instance, Mode};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    /// Free-form note on what the instance exercises.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// Mode used when `--mode` is not given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub instance: Instance,
    #[serde(default)]
    pub grid: GridSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Certified,
    CertificateFailed,
    HypothesisFailed,
    Refused,
    Failed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalExponents {
    pub q: u32,
    pub l: u32,
}

/// Output of `solve`, re-checked by `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub mode: Mode,
    pub status: Status,
    pub ok: bool,
    pub instance: Instance,
    /// Grid for the hypothesis check.
    pub grid: GridSpec,
    /// Grid for norm measurements.
    pub norm_grid: GridSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<HypothesisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radical: Option<RadicalExponents>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Format(String),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(m) | LoadError::Format(m) => f.write_str(m),
        }
    }
}

fn read(path: &Path) -> Result<serde_json::Value, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| LoadError::Format(format!("{}: {e}", path.display())))
}

fn check_version(value: &serde_json::Value, path: &Path) -> Result<(), LoadError> {
    match value.get("version").and_then(serde_json::Value::as_u64) {
        Some(v) if v == u64::from(FORMAT_VERSION) => Ok(()),
        Some(v) => Err(LoadError::Format(format!("{}: unsupported version {v}", path.display()))),
        None => Err(LoadError::Format(format!("{}: missing version", path.display()))),
    }
}

fn require_instance(value: &serde_json::Value, path: &Path) -> Result<(), LoadError> {
    if value.get("instance").is_none() {
        return Err(LoadError::Format(format!("{}: missing instance section", path.display())));
    }
    Ok(())
}

pub fn load_instance(path: &Path) -> Result<InstanceFile, LoadError> {
    let value = read(path)?;
    check_version(&value, path)?;
    require_instance(&value, path)?;
    let file: InstanceFile =
        serde_json::from_value(value).map_err(|e| LoadError::Format(format!("{}: {e}", path.display())))?;
    GridSpec::new(file.grid.circles.clone(), file.grid.points_per_circle)
        .map_err(|e| LoadError::Format(format!("{}: grid: {e}", path.display())))?;
    Ok(file)
}

pub fn load_report(path: &Path) -> Result<Report, LoadError> {
    let value = read(path)?;
    check_version(&value, path)?;
    require_instance(&value, path)?;
    serde_json::from_value(value).map_err(|e| LoadError::Format(format!("{}: {e}", path.display())))
}

/// Pretty JSON with object keys in sorted order.
pub fn to_sorted_json<T: Serialize>(value: &T) -> String {
    // serde_json::Value keeps object keys in a BTreeMap
    let v = serde_json::to_value(value).expect("report types serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}
