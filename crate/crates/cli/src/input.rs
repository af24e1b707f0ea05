use std::fmt;
use std::fs;
use std::path::Path;

use bredon::catalog::{catalog_get, CatalogEntry, Parameters};
use bredon::{ConstraintSet, NormalFormModule};
use serde::de::DeserializeOwned;

/// Input problems; all of them exit with status 2.
#[derive(Debug)]
pub enum InputError {
    Io { path: String, message: String },
    Parse { path: String, line: usize, column: usize, message: String },
    Schema { path: String, field: String, message: String },
    Usage(String),
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io { path, message } => write!(f, "IO_ERROR: {path}: {message}"),
            InputError::Parse { path, line, column, message } => {
                write!(f, "PARSE_ERROR: {path}:{line}:{column}: {message}")
            }
            InputError::Schema { path, field, message } => {
                write!(f, "SCHEMA_ERROR: {path}: field `{field}`: {message}")
            }
            InputError::Usage(message) => write!(f, "{message}"),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| InputError::Io { path: shown.clone(), message: e.to_string() })?;
    parse_json(&shown, &text)
}

pub fn parse_json<T: DeserializeOwned>(source: &str, text: &str) -> Result<T, InputError> {
    // Syntax first, so malformed JSON reports a position rather than a field.
    if let Err(e) = serde_json::from_str::<serde_json::Value>(text) {
        return Err(InputError::Parse {
            path: source.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        });
    }
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = match e.path().to_string() {
            p if p == "." => "<root>".to_string(),
            p => p,
        };
        let inner = e.into_inner();
        let message = inner.to_string();
        InputError::Schema { path: source.to_string(), field, message }
    })
}

pub fn parse_params(raw: &[String]) -> Result<Parameters, InputError> {
    let mut params = Parameters::new();
    for item in raw {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| InputError::Usage(format!("--param expects K=V, got {item:?}")))?;
        let value: i64 = value
            .trim()
            .parse()
            .map_err(|_| InputError::Usage(format!("--param {key}: {value:?} is not an integer")))?;
        params.insert(key.trim().to_string(), value);
    }
    Ok(params)
}

/// A module together with whatever catalog metadata came with it.
pub struct LoadedModule {
    pub module: NormalFormModule,
    pub entry: Option<CatalogEntry>,
}

pub fn load_module(catalog: Option<&str>, params: &[String], module: Option<&Path>) -> Result<LoadedModule, InputError> {
    match (catalog, module) {
        (Some(name), None) => {
            let params = parse_params(params)?;
            let entry = catalog_get(name, &params).map_err(|e| InputError::Usage(e.to_string()))?;
            Ok(LoadedModule { module: entry.module.clone(), entry: Some(entry) })
        }
        (None, Some(path)) => {
            let module: NormalFormModule = read_json(path)?;
            module.validate_cw().map_err(|e| InputError::Schema {
                path: path.display().to_string(),
                field: "free/antipodal".into(),
                message: e.to_string(),
            })?;
            Ok(LoadedModule { module, entry: None })
        }
        _ => Err(InputError::Usage("exactly one of --catalog or --module is required".into())),
    }
}

pub fn load_constraints(path: &Path) -> Result<ConstraintSet, InputError> {
    read_json(path)
}
