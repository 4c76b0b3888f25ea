use std::io;
use std::path::PathBuf;

use hypbill::billiard::BilliardError;
use hypbill::polygon::PolygonError;
use hypbill::sftlab::SftlabError;
use hypbill::shiftspace::ShiftspaceError;
use hypbill::symdyn::SymdynError;
use serde::Serialize;
use thiserror::Error;

pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Parse(String),
    /// A well-formed request the library rejects.
    #[error("{message}")]
    Domain { kind: String, message: String },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn domain(kind: &str, message: impl Into<String>) -> Self {
        CliError::Domain {
            kind: kind.to_string(),
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain { .. } => EXIT_DOMAIN,
            CliError::Io { .. } | CliError::Parse(_) => EXIT_INPUT,
        }
    }

    pub fn report(&self) -> ErrorReport {
        let kind = match self {
            CliError::Io { .. } => "Io".to_string(),
            CliError::Parse(_) => "Parse".to_string(),
            CliError::Domain { kind, .. } => kind.clone(),
        };
        ErrorReport {
            status: "error",
            error: ErrorBody {
                kind,
                message: self.to_string(),
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub status: &'static str,
    pub error: ErrorBody,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

/// Name of the innermost enum variant in a `Debug` rendering, skipping the
/// transparent wrappers between library layers.
fn variant_name(debug: &str) -> String {
    const WRAPPERS: [&str; 5] = ["Polygon(", "Symdyn(", "Sftlab(", "Geometry(", "Shiftspace("];
    let mut s = debug;
    while let Some(rest) = WRAPPERS.iter().find_map(|w| s.strip_prefix(w)) {
        s = rest;
    }
    s.chars()
        .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
        .collect()
}

fn classify<E: std::fmt::Debug + std::fmt::Display>(e: &E, parse: bool) -> CliError {
    if parse {
        CliError::Parse(e.to_string())
    } else {
        CliError::domain(&variant_name(&format!("{e:?}")), e.to_string())
    }
}

impl From<PolygonError> for CliError {
    fn from(e: PolygonError) -> Self {
        let parse = matches!(e, PolygonError::Parse(_) | PolygonError::MalformedVertex { .. });
        classify(&e, parse)
    }
}

impl From<SymdynError> for CliError {
    fn from(e: SymdynError) -> Self {
        let parse = matches!(e, SymdynError::Parse(_));
        classify(&e, parse)
    }
}

impl From<SftlabError> for CliError {
    fn from(e: SftlabError) -> Self {
        match e {
            SftlabError::Symdyn(e) => e.into(),
            e => classify(&e, false),
        }
    }
}

impl From<BilliardError> for CliError {
    fn from(e: BilliardError) -> Self {
        match e {
            BilliardError::Polygon(e) => e.into(),
            BilliardError::Symdyn(e) => e.into(),
            e => classify(&e, false),
        }
    }
}

impl From<ShiftspaceError> for CliError {
    fn from(e: ShiftspaceError) -> Self {
        match e {
            ShiftspaceError::Polygon(e) => e.into(),
            ShiftspaceError::Symdyn(e) => e.into(),
            ShiftspaceError::Sftlab(e) => e.into(),
            e => classify(&e, false),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variant_names_skip_wrappers() {
        assert_eq!(variant_name("Polygon(DegenerateArea { area: 0.0 })"), "DegenerateArea");
        assert_eq!(variant_name("NoIntersection"), "NoIntersection");
        let e: CliError = BilliardError::AsymptoticToIdealVertex { vertex: 2 }.into();
        assert_eq!(e.exit_code(), EXIT_DOMAIN);
        assert_eq!(e.report().error.kind, "AsymptoticToIdealVertex");
    }
}
