//! Report emission: table, JSON and CSV renderings, each embedding the
//! run configuration and a content digest. JSON is canonical (sorted
//! keys, canonical rational strings), so identical configurations produce
//! byte-identical output.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Environment variable naming the default output directory for --out
/// paths that are relative.
pub const OUT_DIR_ENV: &str = "HYPERSTAB_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (table|json|csv)")),
        }
    }
}

/// Normalized run configuration: the command name plus its effective
/// arguments, sorted by key.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub args: Vec<(String, String)>,
}

impl RunConfig {
    pub fn new(command: &str, args: &[(&str, String)]) -> Self {
        let mut args: Vec<(String, String)> = args
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect();
        args.sort();
        RunConfig {
            command: command.to_string(),
            args,
        }
    }
}

/// A rendered command result, ready for any of the three formats.
#[derive(Debug)]
pub struct CmdOutput {
    pub config: RunConfig,
    pub payload: Value,
    pub table: String,
    pub csv: String,
    pub exit_code: i32,
}

impl CmdOutput {
    /// Canonical JSON: keys sorted (Value objects use a sorted map), and
    /// the digest covers the config and payload bytes.
    pub fn to_json(&self) -> String {
        let body = serde_json::json!({
            "config": &self.config,
            "payload": &self.payload,
        });
        let digest = hex::encode(Sha256::digest(body.to_string().as_bytes()));
        let full = serde_json::json!({
            "config": &self.config,
            "digest": digest,
            "payload": &self.payload,
        });
        full.to_string()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Table => {
                let mut out = String::new();
                let _ = writeln!(out, "# {}", config_line(&self.config));
                out.push_str(&self.table);
                out
            }
            Format::Csv => {
                let mut out = String::new();
                let _ = writeln!(out, "# {}", config_line(&self.config));
                out.push_str(&self.csv);
                out
            }
        }
    }

    pub fn write(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let text = self.render(format);
        match out {
            None => {
                println!("{text}");
                Ok(())
            }
            Some(path) => {
                let path = resolve_out_path(path);
                if let Some(parent) = path.parent() {
                    if !parent.as_os_str().is_empty() {
                        fs::create_dir_all(parent)
                            .with_context(|| format!("creating {}", parent.display()))?;
                    }
                }
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
            }
        }
    }
}

fn config_line(config: &RunConfig) -> String {
    let args: Vec<String> = config
        .args
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    format!("hyperstab {} {}", config.command, args.join(" "))
}

fn resolve_out_path(path: &Path) -> PathBuf {
    if path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) => PathBuf::from(dir).join(path),
        None => path.to_path_buf(),
    }
}

/// Writes one CSV line, quoting nothing: every emitted value is numeric,
/// a canonical rational, or a bare identifier.
pub fn csv_line(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}
