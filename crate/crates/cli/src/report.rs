//! Deterministic report serialization.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?}, expected json or text")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub tol: f64,
}

/// Header plus an arbitrary JSON body. Floats are rounded once, on
/// construction, so `parse(emit(r)) == r` holds exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub header: Header,
    pub body: Value,
}

impl Report {
    pub fn new(command: &str, tol: f64, body: Value) -> Self {
        Report {
            header: Header {
                tool: "toeplitz-lab".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                command: command.into(),
                tol: round_sig(tol),
            },
            body: round_value(body),
        }
    }
}

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(0.0));
            serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round_value(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports are plain JSON");
            s.push('\n');
            s
        }
        Format::Text => {
            let h = &r.header;
            let mut s = format!("# {} {}\n# command: {}\n# tol: {:e}\n", h.tool, h.version, h.command, h.tol);
            match &r.body {
                Value::Object(m) if m.is_empty() => s.push_str("{}\n"),
                Value::Object(m) => text_lines(&mut s, "", m),
                other => {
                    s.push_str(&other.to_string());
                    s.push('\n');
                }
            }
            s
        }
    }
}

fn text_lines(out: &mut String, prefix: &str, m: &Map<String, Value>) {
    for (k, v) in m {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(inner) if !inner.is_empty() => text_lines(out, &key, inner),
            _ => out.push_str(&format!("{key} = {v}\n")),
        }
    }
}

/// Inverse of the JSON emitter.
pub fn parse(s: &str) -> serde_json::Result<Report> {
    serde_json::from_str(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_body() {
        let r = Report::new("check-normal", 1e-8, json!({}));
        let text = emit_report(&r, Format::Text);
        assert!(text.ends_with("\n{}\n"));
        assert!(text.starts_with("# toeplitz-lab"));
        assert!(emit_report(&r, Format::Json).contains("\"body\": {}"));
    }

    #[test]
    fn rounding_and_round_trip() {
        let r = Report::new("x", 1e-8, json!({"b": 0.1 + 0.2, "a": [1.0 / 3.0, 2], "z": {"y": -2.0f64.sqrt()}}));
        assert_eq!(r.body["b"], json!(0.3));
        assert_eq!(r.body["a"][0], json!(0.333333333333));
        let s = emit_report(&r, Format::Json);
        assert_eq!(parse(&s).unwrap(), r);
        // insertion order survives
        let keys: Vec<_> = r.body.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["b", "a", "z"]);
    }

    #[test]
    fn round_sig_keeps_twelve_digits() {
        assert_eq!(round_sig(1.234567890123456), 1.23456789012);
        assert_eq!(round_sig(-7.5e-13), -7.5e-13);
        assert_eq!(round_sig(0.0), 0.0);
    }
}
