//! JSON instance files.
//!
//! ```json
//! { "A": [[-1, 2], [3, -1]], "q": [1, -0.5], "x0": [0.4, 0.1],
//!   "metadata": { "classes": ["N"] } }
//! ```
//!
//! `x0`, `z1_0`, `z2_0` and `metadata` are optional. Numbers are written in
//! shortest round-trip form, so save-then-load is bit exact.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use lcpath_core::lcp::DEFAULT_SCAN;
use lcpath_core::{LcpError, LcpInstance};
use serde::{Deserialize, Serialize};

/// Class labels accepted in `metadata.classes`. `N0` may also carry an
/// order suffix such as `N02`.
pub const KNOWN_CLASSES: [&str; 9] = ["P", "N", "PSD", "C0", "almostC0", "N0k", "Q", "Q0", "Pstar"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub q: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z1_0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z2_0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<String>,
    /// Known solution, used by `bench` for the error column.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_x: Option<Vec<f64>>,
    /// Outer iteration count published for the instance, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reported_iterations: Option<usize>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputError {
    Io { path: String, msg: String },
    Parse { line: usize, column: usize, msg: String },
    Field { field: String, msg: String },
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io { path, msg } => write!(f, "{path}: {msg}"),
            InputError::Parse { line, column, msg } => write!(f, "line {line}, column {column}: {msg}"),
            InputError::Field { field, msg } => write!(f, "field `{field}`: {msg}"),
        }
    }
}

impl std::error::Error for InputError {}

fn field(field: impl Into<String>, msg: impl Into<String>) -> InputError {
    InputError::Field { field: field.into(), msg: msg.into() }
}

/// A validated instance with its starting point filled in.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub inst: LcpInstance,
    pub x0: Vec<f64>,
    pub z1_0: Vec<f64>,
    pub z2_0: Vec<f64>,
    /// `true` when `x0` came from the file rather than the scan.
    pub x0_given: bool,
    pub metadata: Metadata,
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        serde_json::from_str(text).map_err(|e| InputError::Parse {
            line: e.line(),
            column: e.column(),
            msg: strip_position(&e.to_string()),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serializes");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        Self::from_json(&text)
    }

    /// Checks shapes, finiteness, labels and the starting point.
    pub fn validate(&self) -> Result<Loaded, InputError> {
        let n = self.a.len();
        if n == 0 {
            return Err(field("A", "matrix is empty"));
        }
        for (i, row) in self.a.iter().enumerate() {
            if row.len() != n {
                return Err(field(format!("A[{i}]"), format!("row has {} entries, expected {n} (A must be square)", row.len())));
            }
            if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                return Err(field(format!("A[{i}][{j}]"), "not a finite number"));
            }
        }
        check_vec("q", &self.q, n)?;
        for (name, v) in [("x0", &self.x0), ("z1_0", &self.z1_0), ("z2_0", &self.z2_0)] {
            if let Some(v) = v {
                check_vec(name, v, n)?;
            }
        }
        let metadata = self.metadata.clone().unwrap_or_default();
        for (k, c) in metadata.classes.iter().enumerate() {
            if !is_known_class(c) {
                return Err(field(format!("metadata.classes[{k}]"), format!("unknown class label `{c}`")));
            }
        }
        if let Some(r) = &metadata.reference_x {
            check_vec("metadata.reference_x", r, n)?;
        }

        let inst = LcpInstance::from_rows(&self.a, &self.q).map_err(|e| field("A", e.to_string()))?;
        let (x0, x0_given) = match &self.x0 {
            Some(x0) => {
                if let Some(i) = x0.iter().position(|&v| v <= 0.0) {
                    return Err(field(format!("x0[{i}]"), "starting point must be strictly positive"));
                }
                let w = inst.compute_w(x0);
                if let Some(i) = w.iter().position(|&v| v <= 0.0) {
                    return Err(field("x0", format!("A x0 + q must be strictly positive, entry {i} is {}", w[i])));
                }
                (x0.clone(), true)
            }
            None => match inst.strictly_feasible_point(&DEFAULT_SCAN) {
                Ok(x) => (x, false),
                Err(LcpError::NotFound) => {
                    return Err(field("x0", "absent, and no strictly feasible point was found by the scan"))
                }
                Err(e) => return Err(field("x0", e.to_string())),
            },
        };
        let ones = vec![1.0; n];
        let z1_0 = self.z1_0.clone().unwrap_or_else(|| ones.clone());
        let z2_0 = self.z2_0.clone().unwrap_or(ones);
        for (name, z) in [("z1_0", &z1_0), ("z2_0", &z2_0)] {
            if let Some(i) = z.iter().position(|&v| v <= 0.0) {
                return Err(field(format!("{name}[{i}]"), "multiplier start must be strictly positive"));
            }
        }
        Ok(Loaded { inst, x0, z1_0, z2_0, x0_given, metadata })
    }
}

fn check_vec(name: &str, v: &[f64], n: usize) -> Result<(), InputError> {
    if v.len() != n {
        return Err(field(name, format!("has {} entries, expected {n}", v.len())));
    }
    if let Some(i) = v.iter().position(|x| !x.is_finite()) {
        return Err(field(format!("{name}[{i}]"), "not a finite number"));
    }
    Ok(())
}

fn is_known_class(c: &str) -> bool {
    if KNOWN_CLASSES.contains(&c) {
        return true;
    }
    c.strip_prefix("N0").is_some_and(|k| k.bytes().all(|b| b.is_ascii_digit()))
}

// serde_json appends " at line X column Y"; the position is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub fn load_path(path: &Path) -> Result<Loaded, InputError> {
    InstanceFile::read(path)?.validate()
}
