use std::fmt;
use std::path::Path;

use nivat_core::configuration::parse_grid;
use nivat_core::{CoefficientDomain, LaurentPoly, Patch, Shape, Source, TorusConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Module(nivat_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Input(_) => 65,
            CliError::Module(_) => 70,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Input(_) => "InputFormatError",
            CliError::Module(e) => e.code(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => f.write_str(m),
            CliError::Module(e) => write!(f, "{e}"),
        }
    }
}

impl From<nivat_core::Error> for CliError {
    fn from(e: nivat_core::Error) -> Self {
        CliError::Module(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Errors raised while reading user input are format errors, whatever layer
/// detected them.
fn input_err(what: &str) -> impl Fn(nivat_core::Error) -> CliError + '_ {
    move |e| CliError::Input(format!("{what}: {e}"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

pub fn digest(name: &str, bytes: &[u8]) -> InputDigest {
    let hash = Sha256::digest(bytes);
    InputDigest { name: name.to_string(), sha256: format!("{hash:x}") }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

/// Text grids become a torus, or a patch at the origin with `as_patch`;
/// JSON sources carry their own kind.
pub fn load_source(path: &Path, as_patch: bool) -> CliResult<(Source, InputDigest)> {
    let text = read_file(path)?;
    let d = digest("grid", text.as_bytes());
    let source = if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("grid JSON: {e}")))?
    } else {
        let rows = parse_grid(&text).map_err(input_err("grid"))?;
        if as_patch {
            Source::Patch(Patch::from_rows(Default::default(), &rows, None).map_err(input_err("grid"))?)
        } else {
            Source::Torus(TorusConfig::from_rows(&rows, None).map_err(input_err("grid"))?)
        }
    };
    Ok((source, d))
}

pub fn load_torus(path: &Path) -> CliResult<(TorusConfig, InputDigest)> {
    match load_source(path, false)? {
        (Source::Torus(t), d) => Ok((t, d)),
        (Source::Patch(_), _) => Err(CliError::Input("expected a torus, got a patch".into())),
    }
}

/// A path to a shape JSON file, or an inline `rect:WxH`, `plus` or JSON list.
pub fn load_shape(arg: &str) -> CliResult<(Shape, InputDigest)> {
    let text = if Path::new(arg).is_file() { read_file(Path::new(arg))? } else { arg.to_string() };
    let shape = Shape::parse_spec(&text).map_err(input_err("shape"))?;
    Ok((shape, digest("shape", text.as_bytes())))
}

pub fn parse_field(s: &str) -> CliResult<CoefficientDomain> {
    s.parse().map_err(|e| CliError::Usage(format!("--field: {e}")))
}

/// Polynomial text or JSON, inline or from a file. JSON carries its own
/// domain; text uses `field`.
pub fn load_poly(name: &str, arg: &str, field: CoefficientDomain) -> CliResult<(LaurentPoly, InputDigest)> {
    let text = if Path::new(arg).is_file() { read_file(Path::new(arg))? } else { arg.to_string() };
    let poly = if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{name}: {e}")))?
    } else {
        LaurentPoly::parse(text.trim(), field).map_err(input_err(name))?
    };
    Ok((poly, digest(name, text.as_bytes())))
}

pub fn load_json<T: serde::de::DeserializeOwned>(name: &str, path: &Path) -> CliResult<(T, InputDigest)> {
    let text = read_file(path)?;
    let v = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{name}: {e}")))?;
    Ok((v, digest(name, text.as_bytes())))
}
