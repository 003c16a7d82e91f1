//! Reading instance, pricing, coupling and candidate files.

use std::fs;
use std::path::{Path, PathBuf};

use maxmin::{Atom, CandidateGrid, Coupling, Graph, Instance, Pricing, Rational};
use serde::de::DeserializeOwned;
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: file not found")]
    FileNotFound { path: PathBuf },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}:{column}: {field}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
}

/// Raw bytes of every file read, in order, for the inputs digest.
#[derive(Default)]
pub struct Inputs {
    pub files: Vec<(PathBuf, Vec<u8>)>,
}

impl Inputs {
    fn read(&mut self, path: &Path) -> Result<String, InputError> {
        let bytes = fs::read(path).map_err(|source| {
            if source.kind() == std::io::ErrorKind::NotFound {
                InputError::FileNotFound { path: path.into() }
            } else {
                InputError::Io {
                    path: path.into(),
                    source,
                }
            }
        })?;
        let text = String::from_utf8(bytes.clone()).map_err(|e| InputError::Invalid {
            path: path.into(),
            message: e.to_string(),
        })?;
        self.files.push((path.into(), bytes));
        Ok(text)
    }

    fn json<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T, InputError> {
        let text = self.read(path)?;
        parse_json(path, &text)
    }

    pub fn instance(&mut self, path: &Path) -> Result<Instance, InputError> {
        let text = self.read(path)?;
        parse_instance(path, &text)
    }

    pub fn pricing(&mut self, path: &Path) -> Result<Pricing, InputError> {
        self.json(path)
    }

    pub fn coupling(&mut self, path: &Path) -> Result<Coupling, InputError> {
        self.json(path)
    }

    pub fn candidates(&mut self, path: &Path) -> Result<CandidateGrid, InputError> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Shared(Vec<Rational>),
            PerItem(Vec<Vec<Rational>>),
        }
        Ok(match self.json(path)? {
            Raw::Shared(v) => CandidateGrid::Shared(v),
            Raw::PerItem(v) => CandidateGrid::PerItem(v),
        })
    }

    pub fn graph(&mut self, path: &Path) -> Result<Graph, InputError> {
        let text = self.read(path)?;
        text.parse().map_err(|e: maxmin::Error| InputError::Invalid {
            path: path.into(),
            message: e.to_string(),
        })
    }
}

#[derive(Deserialize)]
#[allow(dead_code)]
struct RawInstance {
    items: Vec<RawItem>,
}

#[derive(Deserialize)]
#[allow(dead_code)]
struct RawItem {
    name: String,
    support: Vec<Atom>,
}

/// Checks field types against the plain file layout first, so type errors
/// name the exact field, then validates.
pub fn parse_instance(path: &Path, text: &str) -> Result<Instance, InputError> {
    parse_json::<RawInstance>(path, text)?;
    parse_json(path, text)
}

/// Deserializes `text`, reporting the failing field path and position.
pub fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let field = match e.path().to_string() {
            p if p == "." => "(root)".to_string(),
            p => p,
        };
        let inner = e.into_inner();
        InputError::Parse {
            path: path.into(),
            line: inner.line(),
            column: inner.column(),
            field,
            message: strip_position(&inner.to_string()),
        }
    })?;
    Ok(value)
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(k) => msg[..k].to_string(),
        None => msg.to_string(),
    }
}
