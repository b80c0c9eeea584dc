//! Job descriptions and input resolution.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use zigzag_hh::exactla::FieldSpec;
use zigzag_hh::quiver::{
    parse_graph_document, parse_label, parse_orientation_document, Graph, Quiver,
};
use zigzag_hh::Error;

/// Failure modes, each with its own exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// exit 2
    Invalid(String),
    /// exit 3
    Inapplicable(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Inapplicable(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Inapplicable(m) => write!(f, "method inapplicable: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inapplicable { .. } => CliError::Inapplicable(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Ginzburg,
    Trace,
    Zigzag,
    All,
}

impl std::str::FromStr for MethodChoice {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "ginzburg" => Ok(MethodChoice::Ginzburg),
            "trace" => Ok(MethodChoice::Trace),
            "zigzag" => Ok(MethodChoice::Zigzag),
            "all" => Ok(MethodChoice::All),
            other => Err(CliError::Invalid(format!(
                "unknown method {other:?} (expected ginzburg, trace, zigzag or all)"
            ))),
        }
    }
}

/// Everything that determines a job's output. Serialized verbatim as `job`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: String,
    pub graph: String,
    pub characteristic: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodChoice>,
    /// `auto` or the orientation file as given
    pub orientation: String,
}

impl JobSpec {
    pub fn field(&self) -> Result<FieldSpec, CliError> {
        FieldSpec::new(self.characteristic).map_err(CliError::from)
    }

    pub fn resolve_graph(&self) -> Result<Graph, CliError> {
        resolve_graph(&self.graph)
    }

    /// The graph's orientation: sink/source when bipartite (otherwise
    /// increasing indices), or the arrows of an orientation file.
    pub fn resolve_quiver(&self, g: &Graph) -> Result<Quiver, CliError> {
        if self.orientation == "auto" {
            return Ok(g
                .orient_bipartite()
                .unwrap_or_else(|_| g.orient_increasing()));
        }
        let text = std::fs::read_to_string(&self.orientation)
            .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", self.orientation)))?;
        let arrows = parse_orientation_document(&text, g.vertex_count())?;
        Ok(g.orient_by(&arrows)?)
    }
}

/// A catalog label such as `D~4`, or a path to a graph document.
pub fn resolve_graph(source: &str) -> Result<Graph, CliError> {
    match parse_label(source) {
        Ok(g) => Ok(g),
        Err(label_err) => {
            if Path::new(source).is_file() {
                let text = std::fs::read_to_string(source)
                    .map_err(|e| CliError::Invalid(format!("cannot read {source}: {e}")))?;
                Ok(parse_graph_document(&text)?)
            } else {
                Err(label_err.into())
            }
        }
    }
}

/// Parses `a..b` (inclusive) or a single `a`.
pub fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Invalid(format!("expected a range like 1..6, got {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim_start_matches('=').trim()),
        None => (s.trim(), s.trim()),
    };
    let a: i64 = a.parse().map_err(|_| bad())?;
    let b: i64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(CliError::Invalid(format!("empty range {s:?}")));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..6"), Ok((1, 6)));
        assert_eq!(parse_range("1..=6"), Ok((1, 6)));
        assert_eq!(parse_range("2"), Ok((2, 2)));
        assert_eq!(parse_range("-2..0"), Ok((-2, 0)));
        assert!(parse_range("6..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn graphs() {
        assert_eq!(resolve_graph("D~4").unwrap().vertex_count(), 5);
        assert_eq!(resolve_graph("Q7").unwrap_err().exit_code(), 2);
    }
}
