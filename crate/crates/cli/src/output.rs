//! Output documents, errors and exit codes.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use altiset::io::ParseError;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error(transparent)]
    Domain(#[from] altiset::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Usage(_) => 64,
        }
    }
}

/// An input file read whole, with its digest.
pub struct Input {
    pub path: PathBuf,
    pub text: String,
    pub digest: String,
}

impl Input {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        let digest = hex::encode(Sha256::digest(&bytes));
        let text = String::from_utf8(bytes).map_err(|e| CliError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::InvalidData, e),
        })?;
        Ok(Input { path: path.to_path_buf(), text, digest })
    }

    /// Runs a dataset parser, tagging failures with this file.
    pub fn parse<T>(&self, parser: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, CliError> {
        parser(&self.text).map_err(|source| CliError::Parse { path: self.path.clone(), source })
    }
}

/// A finished command: the metadata block, the result block and any side files.
pub struct Document {
    pub command: &'static str,
    pub digest: String,
    pub settings: Value,
    pub result: Value,
    pub side_files: Vec<(PathBuf, Value)>,
}

impl Document {
    pub fn new(command: &'static str, input: &Input, settings: Value, result: Value) -> Self {
        Document { command, digest: input.digest.clone(), settings, result, side_files: Vec::new() }
    }
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    text
}

pub fn write(doc: Document, output: Option<&Path>, timestamp: bool) -> Result<(), CliError> {
    let mut meta = Map::new();
    meta.insert("command".into(), json!(doc.command));
    meta.insert("input_sha256".into(), json!(doc.digest));
    meta.insert("settings".into(), doc.settings);
    meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    if timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        meta.insert("timestamp".into(), json!(secs));
    }
    let text = render(&json!({ "meta": meta, "result": doc.result }));
    for (path, value) in &doc.side_files {
        write_file(path, &render(value))?;
    }
    match output {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| match t.trim().parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("{t:?} is not a positive integer")),
    };
    match s.split_once(['x', 'X']) {
        Some((w, h)) => Ok((parse(w)?, parse(h)?)),
        None => parse(s).map(|n| (n, n)),
    }
}

pub fn parse_inflate(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        _ => Err(format!("{s:?} is not a finite non-negative number")),
    }
}
