// SPDX-License-Identifier: Apache-2.0

//! CSV and JSON writers. CSV starts with a `#` line carrying JSON metadata.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

/// Column-oriented table; every cell is a number or a short token.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // Adding 0.0 folds −0 into +0.
            Cell::Num(v) => format!("{:.16e}", v + 0.0),
            Cell::Text(t) if t.contains([',', '"', '\n']) => {
                format!("\"{}\"", t.replace('"', "\"\""))
            }
            Cell::Text(t) => t.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Text(t) => json!(t),
        }
    }
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self, meta: &Value) -> String {
        let mut out = format!("# {meta}\n{}\n", self.header.join(","));
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: serde_json::Map<String, Value> = self
                    .header
                    .iter()
                    .cloned()
                    .zip(r.iter().map(Cell::json))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!(rows)
    }
}

/// Hex SHA-256 of the canonical JSON form of a configuration.
pub fn config_hash<T: Serialize>(config: &T) -> Result<String> {
    let bytes = serde_json::to_vec(config)?;
    Ok(Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect())
}

pub fn metadata<T: Serialize>(command: &str, config: &T, extra: Value) -> Result<Value> {
    let mut meta = json!({
        "tool": "annulus-cp",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config_hash": config_hash(config)?,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut meta, extra) {
        m.extend(e);
    }
    Ok(meta)
}

pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["x", "tag"]);
        t.rows.push(vec![Cell::Num(0.5), Cell::Text("a,b".into())]);
        let s = t.to_csv(&json!({"k": 1}));
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "# {\"k\":1}");
        assert_eq!(lines[1], "x,tag");
        assert_eq!(lines[2], "5.0000000000000000e-1,\"a,b\"");
    }

    #[test]
    fn hash_is_stable() {
        let a = config_hash(&json!({"h": [0.0, 1.0]})).unwrap();
        assert_eq!(a, config_hash(&json!({"h": [0.0, 1.0]})).unwrap());
        assert_eq!(a.len(), 64);
    }
}
