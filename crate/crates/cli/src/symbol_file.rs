//! Input files: a symbol, an optional witness and optional expected values
//! that turn the file into a self-checking regression case.

use serde::Deserialize;
use serde_json::{Map, Value};
use toeplitz_lab::hardy::MatrixSymbol;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolFile {
    pub schema_version: u32,
    #[serde(default)]
    pub id: Option<String>,
    pub symbol: MatrixSymbol,
    #[serde(default)]
    pub witness: Option<MatrixSymbol>,
    /// Per subcommand, dotted paths into the report body mapped to the
    /// values they must hold.
    #[serde(default)]
    pub expected: Option<Map<String, Value>>,
}

#[derive(Debug)]
pub struct SchemaViolation(pub String);

impl std::fmt::Display for SchemaViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "schema violation: {}", self.0)
    }
}

impl SymbolFile {
    pub fn parse(text: &str) -> Result<SymbolFile, SchemaViolation> {
        // Structural validation happens on the raw value first so the error
        // names the offending field rather than a numeric failure.
        let raw: Value = serde_json::from_str(text).map_err(|e| SchemaViolation(e.to_string()))?;
        let obj = raw.as_object().ok_or_else(|| SchemaViolation("top level must be an object".into()))?;
        match obj.get("schema_version").and_then(Value::as_u64) {
            Some(v) if v == SCHEMA_VERSION as u64 => {}
            Some(v) => return Err(SchemaViolation(format!("unsupported schema_version {v}"))),
            None => return Err(SchemaViolation("missing integer schema_version".into())),
        }
        let f: SymbolFile = serde_json::from_value(raw).map_err(|e| SchemaViolation(e.to_string()))?;
        if let Some(w) = &f.witness {
            if w.n() != f.symbol.n() {
                return Err(SchemaViolation(format!("witness is {0}x{0}, symbol is {1}x{1}", w.n(), f.symbol.n())));
            }
        }
        if let Some(exp) = &f.expected {
            for (cmd, block) in exp {
                if !block.is_object() {
                    return Err(SchemaViolation(format!("expected.{cmd} must be an object")));
                }
            }
        }
        Ok(f)
    }

    pub fn expected_for(&self, command: &str) -> Option<&Map<String, Value>> {
        self.expected.as_ref()?.get(command)?.as_object()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub path: String,
    pub expected: Value,
    pub actual: Option<Value>,
}

fn lookup<'a>(body: &'a Value, path: &str) -> Option<&'a Value> {
    path.split('.').try_fold(body, |v, key| match v {
        Value::Object(m) => m.get(key),
        Value::Array(a) => key.parse::<usize>().ok().and_then(|i| a.get(i)),
        _ => None,
    })
}

fn matches(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Number(a), Value::Number(b)) => {
            let (a, b) = (a.as_f64().unwrap_or(f64::NAN), b.as_f64().unwrap_or(f64::NAN));
            (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
        }
        _ => expected == actual,
    }
}

/// Compare the expected block against a report body. Paths absent from the
/// body are reported as mismatches with `actual: None`.
pub fn check_expected(expected: &Map<String, Value>, body: &Value) -> Vec<Mismatch> {
    expected
        .iter()
        .filter_map(|(path, want)| {
            let got = lookup(body, path);
            match got {
                Some(g) if matches(want, g) => None,
                _ => Some(Mismatch { path: path.clone(), expected: want.clone(), actual: got.cloned() }),
            }
        })
        .collect()
}
